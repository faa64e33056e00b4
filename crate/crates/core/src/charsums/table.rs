//! Per-prime tables of normalized complete sums `W(a; p)` for all `a`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::dft::{chirp_dft, dft_error_bound};
use super::dist::{value_distribution, ValueDist};
use crate::error::{Error, Result};
use crate::field_poly::{PolyExact, PolyId, PolyModP};
use crate::genericity::CriticalData;

/// Largest prime for which a full table is built.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Plain,
    Normalized,
    Measure,
}

/// `values[a]` for `a = 0..p`. The raw `a = 0` entry is kept; [`SumTable::get`]
/// masks it to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SumTable {
    pub p: u64,
    pub poly_id: PolyId,
    pub degree: usize,
    pub kind: TableKind,
    pub values: Vec<Complex64>,
    pub error_bound: f64,
}

impl SumTable {
    /// `W(a; p)`, zero when `p | a`.
    pub fn get(&self, a: u64) -> Complex64 {
        let a = a % self.p;
        if a == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[a as usize]
        }
    }

    pub fn raw(&self, a: u64) -> Complex64 {
        self.values[(a % self.p) as usize]
    }

    pub fn with_id(mut self, id: PolyId) -> Self {
        self.poly_id = id;
        self
    }

    /// `(1/p) sum_{a != 0} |W(a; p)|^(2k)`.
    pub fn moment(&self, k: u32) -> f64 {
        let s: f64 = self.values[1..].iter().map(|w| w.norm_sqr().powi(k as i32)).sum();
        s / self.p as f64
    }
}

/// `(1/sqrt p) sum_x e(a f(x) / p)` by direct summation.
pub fn sum_single(f: &PolyModP, a: u64) -> Complex64 {
    let k = f.field();
    let p = k.modulus();
    let a = a % p;
    let s: Complex64 = (0..p)
        .map(|x| {
            let v = k.mul(a, f.eval(x));
            Complex64::from_polar(1.0, TAU * v as f64 / p as f64)
        })
        .sum();
    s / (p as f64).sqrt()
}

/// Identifier of a polynomial given only modulo `p`.
pub fn mod_p_id(f: &PolyModP) -> PolyId {
    let c: Vec<i64> = f.coeffs().iter().map(|&c| c as i64).collect();
    PolyExact::from_i64s(&c).id()
}

pub fn sum_table(f: &PolyModP) -> Result<SumTable> {
    sum_table_with_cap(f, DEFAULT_TABLE_CAP)
}

pub fn sum_table_with_cap(f: &PolyModP, cap: u64) -> Result<SumTable> {
    let p = f.modulus();
    if p > cap {
        return Err(Error::PrimeTooLarge { p, cap });
    }
    let dist = value_distribution(f);
    Ok(sum_table_from_dist(&dist, f.degree().unwrap_or(0)).with_id(mod_p_id(f)))
}

/// `W(a; p) = (1/sqrt p) sum_v N[v] e(a v / p)` for all `a` at once.
pub fn sum_table_from_dist(dist: &ValueDist, degree: usize) -> SumTable {
    let p = dist.p();
    let input: Vec<Complex64> = dist.counts().iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
    let scale = 1.0 / (p as f64).sqrt();
    let values = chirp_dft(&input).into_iter().map(|z| z * scale).collect();
    SumTable {
        p,
        poly_id: PolyId([0; 32]),
        degree,
        kind: TableKind::Plain,
        values,
        error_bound: error_bound(p),
    }
}

/// Additive error bound on the entries of a plain table at `p`.
pub fn error_bound(p: u64) -> f64 {
    dft_error_bound(p, p as f64) / (p as f64).sqrt()
}

/// How the normalized table relates to the plain one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `(a/p)^(d-1) e(a c / p) W(a)` with critical shift `c`.
    Shift(u64),
    /// `e(-a delta / p) W(a)` for `f = g(X - x0) + delta` with `g` odd.
    Symmetric(u64),
}

impl Normalization {
    pub fn from_critical_data(data: &CriticalData, odd_delta: Option<u64>) -> Self {
        match odd_delta {
            Some(delta) => Normalization::Symmetric(delta),
            None => Normalization::Shift(data.shift.value()),
        }
    }
}

/// Normalized sums `W~(a; p)`, zero at `a = 0`.
pub fn normalized_table(plain: &SumTable, norm: Normalization) -> Result<SumTable> {
    let p = plain.p;
    let d = plain.degree;
    if d >= 1 && (d as u64 - 1) % p == 0 {
        return Err(Error::BadCharacteristic { p, degree: d });
    }
    let k = crate::field_poly::PrimeField::new(p)?;
    let mut values = Vec::with_capacity(p as usize);
    values.push(Complex64::new(0.0, 0.0));
    for a in 1..p {
        let w = plain.values[a as usize];
        let (sign, phase) = match norm {
            Normalization::Shift(c) => {
                let leg = if d % 2 == 0 { k.legendre(a) as f64 } else { 1.0 };
                (leg, k.mul(a, c % p))
            }
            Normalization::Symmetric(delta) => (1.0, k.neg(k.mul(a, delta % p))),
        };
        values.push(w * Complex64::from_polar(sign, TAU * phase as f64 / p as f64));
    }
    Ok(SumTable {
        values,
        kind: TableKind::Normalized,
        error_bound: plain.error_bound * 2.0,
        ..plain.clone()
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeilReport {
    pub p: u64,
    pub max_abs: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
}

/// Largest `|W(a; p)|` over `a != 0` against the bound `d - 1`.
pub fn weil_check(table: &SumTable, d: usize) -> WeilReport {
    let max_abs = table.values[1..].iter().map(|w| w.norm()).fold(0.0, f64::max);
    let bound = d.saturating_sub(1) as f64;
    WeilReport {
        p: table.p,
        max_abs,
        bound,
        margin: bound - max_abs,
        violated: max_abs > bound + table.error_bound,
    }
}
