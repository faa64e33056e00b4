//! Trace moments `E |Tr g|^{2k}` over `SU(n)` and `USp(n)`: exact reference
//! values and a Haar Monte Carlo sampler.

pub mod matrix;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use matrix::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SpecialUnitary,
    UnitarySymplectic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }
        if family == Family::UnitarySymplectic && n % 2 == 1 {
            return Err(Error::InvalidInput(format!("symplectic dimension must be even, got {n}")));
        }
        Ok(Self { family, n })
    }

    pub fn su(n: usize) -> Self {
        Self::new(Family::SpecialUnitary, n).expect("valid dimension")
    }

    pub fn usp(n: usize) -> Self {
        Self::new(Family::UnitarySymplectic, n).expect("valid dimension")
    }
}

/// A reference moment: exact, or only an upper bound outside the stable range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReferenceMoment {
    pub value: f64,
    pub exact: bool,
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn double_factorial_odd(k: u32) -> f64 {
    // (2k - 1)!!, with the empty product at k = 0.
    (1..=k).map(|i| f64::from(2 * i - 1)).product()
}

/// `E |Tr g|^{2k}`: `k!` on `SU(n)` for `k <= n`, `(2k-1)!!` on `USp(n)`
/// for `k <= n/2`; otherwise the same number as an upper bound.
pub fn reference_moment(spec: GroupSpec, k: u32) -> ReferenceMoment {
    match spec.family {
        Family::SpecialUnitary => ReferenceMoment { value: factorial(k), exact: k as usize <= spec.n },
        Family::UnitarySymplectic => ReferenceMoment {
            value: double_factorial_odd(k),
            exact: k as usize <= spec.n / 2,
        },
    }
}

fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * s, im * s)
        })
        .collect()
}

/// Orthogonalizes `v` against `basis` (twice, for stability) and normalizes.
fn orthonormalize(mut v: Vec<Complex64>, basis: &[Vec<Complex64>]) -> Option<Vec<Complex64>> {
    for _ in 0..2 {
        for u in basis {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (norm > 1e-8).then(|| v.into_iter().map(|z| z / norm).collect())
}

/// `-J conj(v)` for `J = diag([[0, 1], [-1, 0]], ...)`.
fn symplectic_partner(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for m in 0..v.len() / 2 {
        out[2 * m] = -v[2 * m + 1].conj();
        out[2 * m + 1] = v[2 * m].conj();
    }
    out
}

/// The standard symplectic form `J`.
pub fn symplectic_form(n: usize) -> CMatrix {
    let mut j = CMatrix::zeros(n);
    for m in 0..n / 2 {
        j[(2 * m, 2 * m + 1)] = Complex64::new(1.0, 0.0);
        j[(2 * m + 1, 2 * m)] = Complex64::new(-1.0, 0.0);
    }
    j
}

/// A Haar-distributed element of the group.
pub fn haar_sample_with_rng<R: Rng + ?Sized>(spec: GroupSpec, rng: &mut R) -> CMatrix {
    let n = spec.n;
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let Some(u) = orthonormalize(gaussian_vector(n, rng), &cols) else {
            continue;
        };
        if spec.family == Family::UnitarySymplectic {
            let partner = symplectic_partner(&u);
            cols.push(u);
            cols.push(partner);
        } else {
            cols.push(u);
        }
    }
    let m = CMatrix::from_columns(&cols);
    match spec.family {
        Family::SpecialUnitary => {
            let phase = m.det().arg() / n as f64;
            m.scale(Complex64::from_polar(1.0, -phase))
        }
        Family::UnitarySymplectic => m,
    }
}

pub fn haar_sample(spec: GroupSpec, seed: u64) -> CMatrix {
    haar_sample_with_rng(spec, &mut ChaCha8Rng::seed_from_u64(seed))
}

const CHUNK: usize = 1024;

/// Sample mean and jackknife standard error of `|Tr g|^{2k}`.
pub fn mc_trace_moment(spec: GroupSpec, k: u32, samples: usize, seed: u64) -> Result<(f64, f64)> {
    Ok(mc_trace_moments(spec, &[k], samples, seed)?[0])
}

/// Several moments from one set of samples.
pub fn mc_trace_moments(spec: GroupSpec, ks: &[u32], samples: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    if samples < 1000 {
        return Err(Error::InsufficientSamples { needed: 1000, got: samples });
    }
    let chunks = samples.div_ceil(CHUNK);
    let traces: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            (0..count)
                .map(|_| haar_sample_with_rng(spec, &mut rng).trace().norm_sqr())
                .collect::<Vec<_>>()
        })
        .collect();
    let nf = samples as f64;
    Ok(ks
        .iter()
        .map(|&k| {
            let vals = traces.iter().map(|t| t.powi(k as i32));
            let mean = vals.clone().sum::<f64>() / nf;
            let var = vals.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0);
            // For the mean, the jackknife error reduces to s / sqrt(n).
            (mean, (var / nf).sqrt())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references() {
        assert_eq!(reference_moment(GroupSpec::su(4), 2), ReferenceMoment { value: 2.0, exact: true });
        assert_eq!(reference_moment(GroupSpec::usp(4), 2), ReferenceMoment { value: 3.0, exact: true });
        assert_eq!(reference_moment(GroupSpec::su(2), 5), ReferenceMoment { value: 120.0, exact: false });
        assert_eq!(reference_moment(GroupSpec::usp(4), 0), ReferenceMoment { value: 1.0, exact: true });
        assert!(!reference_moment(GroupSpec::usp(4), 3).exact);
        for n in 2..8 {
            assert_eq!(reference_moment(GroupSpec::su(n), 1).value, 1.0);
        }
        assert!(GroupSpec::new(Family::UnitarySymplectic, 3).is_err());
    }

    #[test]
    fn samples_lie_in_the_group() {
        for seed in 0..20 {
            for n in 1..7 {
                let u = haar_sample(GroupSpec::su(n), seed);
                assert!(u.adjoint().mul(&u).max_diff(&CMatrix::identity(n)) < 1e-10);
                assert!((u.det() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
            }
            for n in [2, 4, 6] {
                let u = haar_sample(GroupSpec::usp(n), seed);
                assert!(u.adjoint().mul(&u).max_diff(&CMatrix::identity(n)) < 1e-10);
                let j = symplectic_form(n);
                assert!(u.transpose().mul(&j).mul(&u).max_diff(&j) < 1e-9);
            }
        }
        let one = haar_sample(GroupSpec::su(1), 3);
        assert!((one[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zeroth_moment_and_sample_floor() {
        assert_eq!(mc_trace_moment(GroupSpec::su(4), 0, 1000, 1).unwrap(), (1.0, 0.0));
        assert_eq!(
            mc_trace_moment(GroupSpec::su(4), 1, 10, 1).unwrap_err(),
            Error::InsufficientSamples { needed: 1000, got: 10 }
        );
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = mc_trace_moment(GroupSpec::usp(4), 2, 3000, 9).unwrap();
        let b = mc_trace_moment(GroupSpec::usp(4), 2, 3000, 9).unwrap();
        assert_eq!(a, b);
    }
}
