//! Prime-averaged laws: the fourth-moment dichotomy, the average second
//! moment, and the component counts of `(f(X) - f(Y)) / (X - Y)`.

use rayon::prelude::*;
use serde::Serialize;

use super::oracle::{second_moment_oracle, second_moment_parseval};
use super::report::GoodPrimes;
use super::sieve::primes_up_to;
use crate::charsums::{sum_table_from_dist, value_distribution};
use crate::error::{Error, Result};
use crate::field_poly::{is_prime, PolyExact};

/// Default multiple of `p^(-1/2)` in the dichotomy flags.
pub const DEFAULT_THRESHOLD: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DichotomyRow {
    pub p: u64,
    pub m2: f64,
    pub near2: bool,
    pub high: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyVerdict {
    Case1,
    Case2,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport {
    pub threshold: f64,
    pub rows: Vec<DichotomyRow>,
    pub high_fraction: f64,
    pub verdict: DichotomyVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Smallest high fraction read as the second case.
const CASE2_FRACTION: f64 = 0.05;

/// Flags each good prime as near 2 or high for `M_2(p)`. A prime within
/// both windows counts as near 2.
pub fn dichotomy_scan(f: &PolyExact, primes: &[u64], threshold: f64) -> Result<DichotomyReport> {
    let good = GoodPrimes::new(f).filter(primes);
    let rows: Vec<DichotomyRow> = good
        .par_iter()
        .map(|&p| {
            let g = f.mod_p(p)?;
            let t = sum_table_from_dist(&value_distribution(&g), f.deg());
            let m2 = t.moment(2);
            let tol = threshold / (p as f64).sqrt();
            let near2 = (m2 - 2.0).abs() <= tol;
            Ok(DichotomyRow { p, m2, near2, high: !near2 && m2 >= 3.0 - tol })
        })
        .collect::<Result<_>>()?;
    let high = rows.iter().filter(|r| r.high).count();
    let high_fraction = if rows.is_empty() { 0.0 } else { high as f64 / rows.len() as f64 };
    let (verdict, warning) = if f.deg() < 2 {
        (DichotomyVerdict::Inconclusive, Some("linear phase: every sum with a != 0 vanishes".to_string()))
    } else if rows.is_empty() {
        (DichotomyVerdict::Inconclusive, Some("no good primes in range".to_string()))
    } else if rows.iter().all(|r| r.near2) {
        (DichotomyVerdict::Case1, None)
    } else if high_fraction >= CASE2_FRACTION {
        (DichotomyVerdict::Case2, None)
    } else {
        (DichotomyVerdict::Inconclusive, None)
    };
    Ok(DichotomyReport { threshold, rows, high_fraction, verdict, warning })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KappaEstimate {
    pub kappa: u32,
    pub m: u32,
    /// Largest distance of a sampled `M_1(p)` from its rounding.
    pub residual: f64,
    pub primes_used: usize,
}

/// Minimum number of good sample primes.
pub const KAPPA_MIN_PRIMES: usize = 20;

/// `kappa - 1` is the mean of the rounded `M_1(p)` and `m` their maximum.
pub fn estimate_kappa(f: &PolyExact, sample_primes: &[u64]) -> Result<KappaEstimate> {
    let good = GoodPrimes::new(f).filter(sample_primes);
    if good.len() < KAPPA_MIN_PRIMES {
        return Err(Error::InsufficientSamples { needed: KAPPA_MIN_PRIMES, got: good.len() });
    }
    let values: Vec<f64> = good
        .par_iter()
        .map(|&p| second_moment_oracle(&f.mod_p(p)?))
        .collect::<Result<_>>()?;
    let rounded: Vec<f64> = values.iter().map(|v| v.round()).collect();
    let mean = rounded.iter().sum::<f64>() / rounded.len() as f64;
    let residual = values.iter().zip(&rounded).map(|(v, r)| (v - r).abs()).fold(0.0, f64::max);
    Ok(KappaEstimate {
        kappa: 1 + mean.round() as u32,
        m: rounded.iter().copied().fold(0.0, f64::max) as u32,
        residual,
        primes_used: good.len(),
    })
}

/// Sample primes used when no `kappa` is supplied.
pub fn default_kappa_primes() -> Vec<u64> {
    (1000..1400).filter(|&n| is_prime(n)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShaoPoint {
    pub x: u64,
    pub s: f64,
    pub kappa: u32,
    pub drift: f64,
    pub primes_used: usize,
    pub low_confidence: bool,
}

/// `S(x) = sum_{p <= x} M_1(p) / p` over primes of good reduction, at each
/// `x` in `xs`, with `drift = S(x) - (kappa - 1) log log x`.
pub fn shao_series(f: &PolyExact, xs: &[u64], kappa: Option<u32>) -> Result<Vec<ShaoPoint>> {
    if let Some(&x) = xs.iter().find(|&&x| x < 100) {
        return Err(Error::InvalidInput(format!("x must be at least 100, got {x}")));
    }
    let kappa = match kappa {
        Some(k) => k,
        None => estimate_kappa(f, &default_kappa_primes())?.kappa,
    };
    let top = xs.iter().copied().max().unwrap_or(0);
    let primes: Vec<u64> = primes_up_to(top).into_iter().filter(|&p| f.is_good_reduction(p)).collect();
    let terms: Vec<f64> = primes
        .par_iter()
        .map(|&p| {
            let g = f.mod_p(p)?;
            Ok(second_moment_parseval(&value_distribution(&g)) / p as f64)
        })
        .collect::<Result<_>>()?;
    Ok(xs
        .iter()
        .map(|&x| {
            let n = primes.partition_point(|&p| p <= x);
            let s: f64 = terms[..n].iter().sum();
            ShaoPoint {
                x,
                s,
                kappa,
                drift: s - f64::from(kappa.saturating_sub(1)) * (x as f64).ln().ln(),
                primes_used: n,
                low_confidence: x < 1000,
            }
        })
        .collect())
}

pub fn shao_partial_sum(f: &PolyExact, x: u64, kappa: Option<u32>) -> Result<ShaoPoint> {
    Ok(shao_series(f, &[x], kappa)?[0])
}
