//! Length-`p` transforms `X[a] = sum_v x[v] e(a v / p)` by the chirp
//! factorization over a power-of-two convolution.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::algorithm::BluesteinsAlgorithm;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Transform with the `e^{+2 pi i a v / n}` kernel.
pub fn chirp_dft(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    if n == 0 {
        return Vec::new();
    }
    let mut buf = input.to_vec();
    if n == 1 {
        return buf;
    }
    let inner_len = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let inner = planner.plan_fft(inner_len, FftDirection::Inverse);
    let fft: Arc<dyn Fft<f64>> = Arc::new(BluesteinsAlgorithm::new(n, inner));
    fft.process(&mut buf);
    buf
}

/// Additive error bound for a transform of length `n` whose input has
/// absolute sum `l1`.
pub fn dft_error_bound(n: u64, l1: f64) -> f64 {
    let depth = ((4 * n.max(2)) as f64).log2();
    16.0 * f64::EPSILON * depth * l1.max(1.0)
}
