//! Fourier transforms of per-prime probability measures and the envelope
//! `(g(p), G(p))` they induce.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::dft::{chirp_dft, dft_error_bound};
use super::table::{SumTable, TableKind};
use crate::error::{Error, Result};
use crate::field_poly::PolyId;

const MASS_TOLERANCE: f64 = 1e-9;

/// Per-prime average bound `g(p)` and uniform bound `G(p)`, capped by `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedEnvelope {
    pub cap: f64,
    pub entries: BTreeMap<u64, (f64, f64)>,
}

impl TwistedEnvelope {
    pub fn new(cap: f64) -> Self {
        Self { cap, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, p: u64, g: f64, big_g: f64) -> Result<()> {
        if !(g <= big_g + 1e-12 && big_g <= self.cap + 1e-12) {
            return Err(Error::InvalidInput(format!(
                "envelope at {p} violates g <= G <= M: {g}, {big_g}, {}",
                self.cap
            )));
        }
        self.entries.insert(p, (g, big_g));
        Ok(())
    }

    pub fn g(&self, p: u64) -> Option<f64> {
        self.entries.get(&p).map(|e| e.0)
    }

    pub fn big_g(&self, p: u64) -> Option<f64> {
        self.entries.get(&p).map(|e| e.1)
    }
}

/// `V(a; p) = sum_b v(b) e(a b / p)` with envelope `G = 1` and
/// `g = (sum v^2 - 1/p)^(1/2)`.
pub fn measure_transform(p: u64, v: &[f64]) -> Result<(SumTable, f64)> {
    if v.len() as u64 != p {
        return Err(Error::NotAMeasure(format!("expected {p} weights, got {}", v.len())));
    }
    if let Some(bad) = v.iter().find(|&&x| !(x >= 0.0)) {
        return Err(Error::NotAMeasure(format!("negative or NaN weight {bad}")));
    }
    let mass: f64 = v.iter().sum();
    if (mass - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::NotAMeasure(format!("total mass {mass}")));
    }
    let input: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let values = chirp_dft(&input);
    // Equals sum v^2 - 1/p for unit mass, without the cancellation.
    let mean = 1.0 / p as f64;
    let g = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>().sqrt();
    let table = SumTable {
        p,
        poly_id: PolyId([0; 32]),
        degree: 0,
        kind: TableKind::Measure,
        values,
        error_bound: dft_error_bound(p, 1.0),
    };
    Ok((table, g))
}

/// Transforms of several measures together with their envelope.
pub fn measure_family(measures: &BTreeMap<u64, Vec<f64>>) -> Result<(BTreeMap<u64, SumTable>, TwistedEnvelope)> {
    let mut env = TwistedEnvelope::new(1.0);
    let mut tables = BTreeMap::new();
    for (&p, v) in measures {
        let (t, g) = measure_transform(p, v)?;
        env.insert(p, g, 1.0)?;
        tables.insert(p, t);
    }
    Ok((tables, env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsums::{sum_table, value_distribution};
    use crate::field_poly::{PolyModP, PrimeField};

    #[test]
    fn uniform_and_point_masses() {
        let p = 31;
        let (t, g) = measure_transform(p, &vec![1.0 / p as f64; p as usize]).unwrap();
        assert!(g.abs() < 1e-9);
        for a in 1..p {
            assert!(t.get(a).norm() < 1e-12);
        }
        let mut point = vec![0.0; p as usize];
        point[0] = 1.0;
        let (t, g) = measure_transform(p, &point).unwrap();
        assert!((g - (1.0 - 1.0 / p as f64).sqrt()).abs() < 1e-12);
        for a in 1..p {
            assert!((t.get(a) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn image_measure_relates_to_sums() {
        let p = 101;
        let f = PolyModP::from_i64s(PrimeField::new(p).unwrap(), &[1, 1, 0, 1]);
        let dist = value_distribution(&f);
        let v: Vec<f64> = dist.counts().iter().map(|&c| c as f64 / p as f64).collect();
        let (t, _) = measure_transform(p, &v).unwrap();
        let w = sum_table(&f).unwrap();
        for a in 1..p {
            assert!((t.get(a) - w.get(a) / (p as f64).sqrt()).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_measures() {
        assert!(matches!(measure_transform(3, &[0.5, 0.5, 0.5]), Err(Error::NotAMeasure(_))));
        assert!(matches!(measure_transform(3, &[1.5, -0.5, 0.0]), Err(Error::NotAMeasure(_))));
        assert!(matches!(measure_transform(3, &[1.0]), Err(Error::NotAMeasure(_))));
    }

    #[test]
    fn envelope_ordering() {
        let mut m = BTreeMap::new();
        m.insert(5, vec![0.2; 5]);
        m.insert(7, vec![0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let (_, env) = measure_family(&m).unwrap();
        for (&p, &(g, big)) in &env.entries {
            assert!(g <= big && big <= env.cap, "p={p}");
        }
        assert!(TwistedEnvelope::new(1.0).insert(3, 2.0, 1.0).is_err());
    }
}
