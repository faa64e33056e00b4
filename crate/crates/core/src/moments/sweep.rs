//! Sums of `|prod_i W_i(a; q)|^j` over squarefree `q <= x`.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::sieve::{primes_up_to, smallest_prime_factors, squarefree_flags};
use crate::charsums::{sum_table, SumTable, TwistedEnvelope};
use crate::error::{Error, Result};
use crate::field_poly::{inv_mod, PolyExact};
use crate::genericity::{classify, default_certificate_primes, Verdict};

pub const DEFAULT_SWEEP_CAP: u64 = 30_000;
pub const DEFAULT_GRID: [u64; 4] = [1_000, 3_000, 10_000, 30_000];

/// Provides the table of `f` at `p`.
pub trait TableSource: Sync {
    fn table(&self, f: &PolyExact, p: u64) -> Result<SumTable>;
}

/// Builds every table from scratch.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectTables;

impl TableSource for DirectTables {
    fn table(&self, f: &PolyExact, p: u64) -> Result<SumTable> {
        let g = f.reduce_mod_p(p)?.poly;
        Ok(sum_table(&g)?.with_id(f.id()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOptions {
    pub cap: u64,
    pub grid: Vec<u64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_SWEEP_CAP, grid: DEFAULT_GRID.to_vec() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: u64,
    pub sum1: f64,
    pub sum2: f64,
    pub sum4: f64,
    /// `sum1 / x`.
    pub ratio1: f64,
    /// `sum2 / (x (log log x)^A)`.
    pub ratio2: f64,
    /// `sum4 / (x (log x)^(E-1) (log log x)^A)`.
    pub ratio4: f64,
    /// `sum4 / (x (log x)^(E-2) (log log x)^A)`.
    pub ratio4_alt: f64,
    pub envelope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub poly_ids: Vec<String>,
    pub a: u64,
    /// `A = (prod_i (d_i - 1))^2`.
    pub loglog_exponent: u32,
    /// `E = 2^(m-s) 3^s`.
    pub fourth_exponent: u32,
    pub m: usize,
    pub s: usize,
    pub rows: Vec<SweepRow>,
    /// Least-squares decay exponent of `sum1 / x` against `log log x`.
    pub gamma_hat: Option<f64>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,sum1,sum2,sum4,ratio1,ratio2,ratio4,ratio4_alt,envelope\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                r.x, r.sum1, r.sum2, r.sum4, r.ratio1, r.ratio2, r.ratio4, r.ratio4_alt, r.envelope
            )
            .unwrap();
        }
        out
    }
}

/// `x / log x * prod_{p <= x} (1 + g(p)/p) * (log log x)^M`.
pub fn envelope_bound(env: &TwistedEnvelope, x: u64) -> Result<f64> {
    let mut product = 1.0;
    for p in primes_up_to(x) {
        let g = env.g(p).ok_or(Error::MissingTable(p))?;
        product *= 1.0 + g / p as f64;
    }
    let x = x as f64;
    Ok(x / x.ln() * product * x.ln().ln().powf(env.cap))
}

/// Sum in a fixed binary tree over blocks, independent of threading.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 64 {
        v.iter().sum()
    } else {
        let (l, r) = v.split_at(v.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

/// Symmetric Sidon-Morse phases of odd degree at least 5 among `fs`.
fn count_symmetric(fs: &[PolyExact]) -> usize {
    fs.iter()
        .filter(|f| f.deg() >= 5 && f.deg() % 2 == 1)
        .filter(|f| {
            classify(f, &default_certificate_primes(f.deg(), 4))
                .is_ok_and(|r| r.verdict == Verdict::SymmetricSidonMorse)
        })
        .count()
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

const PRIME_BATCH: usize = 64;

/// Sums over squarefree `2 <= q <= x` of `|prod_i W_i(a; q)|^j` for
/// `j = 1, 2, 4`, reported at the grid points up to `x` and at `x` itself.
pub fn sweep_q<S: TableSource>(fs: &[PolyExact], a: u64, x: u64, opts: &SweepOptions, source: &S) -> Result<SweepReport> {
    if x > opts.cap {
        return Err(Error::CapExceeded { what: "x", value: x, cap: opts.cap });
    }
    if a == 0 {
        return Err(Error::InvalidInput("a must be at least 1".into()));
    }
    if x < 16 {
        return Err(Error::InvalidInput(format!("x must be at least 16, got {x}")));
    }
    if fs.is_empty() {
        return Err(Error::InvalidInput("no polynomials".into()));
    }
    if let Some(f) = fs.iter().find(|f| !f.is_integral()) {
        return Err(Error::InvalidInput(format!("sweep needs integral coefficients: {:?}", f.to_strings())));
    }
    let n = x as usize;
    let spf = smallest_prime_factors(n);
    let squarefree = squarefree_flags(&spf);
    let mut acc: Vec<Complex64> = (0..=n)
        .map(|q| if q >= 2 && squarefree[q] { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
        .collect();
    let degree_product: u32 = fs.iter().map(|f| f.deg().saturating_sub(1) as u32).product();
    let mut envelope_entries = Vec::new();
    let primes = primes_up_to(x);
    for batch in primes.chunks(PRIME_BATCH) {
        let tables: Vec<Vec<SumTable>> = batch
            .par_iter()
            .map(|&p| fs.iter().map(|f| source.table(f, p)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for (&p, ts) in batch.iter().zip(&tables) {
            let value = |b: u64| ts.iter().map(|t| t.get(b)).product::<Complex64>();
            let (mut big_g, mut total) = (0.0f64, 0.0f64);
            for b in 1..p {
                let v = value(b).norm();
                big_g = big_g.max(v);
                total += v;
            }
            envelope_entries.push((p, total / p as f64, big_g));
            let ap = a % p;
            for m in 1..=(n / p as usize) {
                if !squarefree[m] || m as u64 % p == 0 {
                    continue;
                }
                let inv = inv_mod(m as u64 % p, p).expect("m coprime to p");
                let idx = (ap as u128 * inv as u128 % p as u128) as u64;
                acc[p as usize * m] *= value(idx);
            }
        }
    }
    let cap = envelope_entries.iter().map(|e| e.2).fold(f64::from(degree_product), f64::max);
    let mut env = TwistedEnvelope::new(cap);
    for (p, g, big_g) in envelope_entries {
        env.insert(p, g, big_g)?;
    }
    let m = fs.len();
    let s = count_symmetric(fs);
    let loglog_exponent = degree_product * degree_product;
    let fourth_exponent = 2u32.pow((m - s) as u32) * 3u32.pow(s as u32);
    let mut grid: Vec<u64> = opts.grid.iter().copied().filter(|&g| g <= x && g >= 16).collect();
    if grid.last() != Some(&x) {
        grid.push(x);
    }
    grid.sort_unstable();
    grid.dedup();
    let powers: [Vec<f64>; 3] = [
        acc.iter().map(|z| z.norm()).collect(),
        acc.iter().map(|z| z.norm_sqr()).collect(),
        acc.iter().map(|z| z.norm_sqr().powi(2)).collect(),
    ];
    let rows = grid
        .iter()
        .map(|&g| {
            let xf = g as f64;
            let (l, ll) = (xf.ln(), xf.ln().ln());
            let sums: Vec<f64> = powers.iter().map(|v| pairwise_sum(&v[..=g as usize])).collect();
            let lla = ll.powi(loglog_exponent as i32);
            Ok(SweepRow {
                x: g,
                sum1: sums[0],
                sum2: sums[1],
                sum4: sums[2],
                ratio1: sums[0] / xf,
                ratio2: sums[1] / (xf * lla),
                ratio4: sums[2] / (xf * l.powi(fourth_exponent as i32 - 1) * lla),
                ratio4_alt: sums[2] / (xf * l.powi(fourth_exponent as i32 - 2) * lla),
                envelope: envelope_bound(&env, g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.ratio1 > 1e-9)
        .map(|r| ((r.x as f64).ln().ln(), r.ratio1.ln()))
        .collect();
    Ok(SweepReport {
        poly_ids: fs.iter().map(|f| f.id().hex()).collect(),
        a,
        loglog_exponent,
        fourth_exponent,
        m,
        s,
        rows,
        gamma_hat: least_squares_slope(&fit).map(|slope| -slope),
    })
}
