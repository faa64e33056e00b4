//! Counting oracles for the second and fourth moments, independent of the
//! Fourier transform.

use crate::charsums::ValueDist;
use crate::error::{Error, Result};
use crate::field_poly::PolyModP;

/// `#{(x, y) in F_p^2 : F(x, y) = 0}` for `F = (f(X) - f(Y)) / (X - Y)`.
pub fn divided_difference_points(f: &PolyModP) -> u64 {
    let k = f.field();
    let c = f.coeffs();
    let d = c.len().saturating_sub(1);
    if d < 2 {
        return 0;
    }
    let p = k.modulus();
    (0..p)
        .map(|x| {
            // Quotient of f(Y) - f(x) by Y - x, by synthetic division.
            let mut q = vec![0u64; d];
            q[d - 1] = c[d];
            for j in (0..d - 1).rev() {
                q[j] = k.add(c[j + 1], k.mul(x, q[j + 1]));
            }
            PolyModP::new(k, q).count_roots() as u64
        })
        .sum()
}

/// `M_1(p) = (#{F = 0} - #{x : f'(x) = 0}) / p`, by point counting.
pub fn second_moment_oracle(f: &PolyModP) -> Result<f64> {
    let d = f.degree().unwrap_or(0);
    let p = f.modulus();
    if p <= d as u64 {
        return Err(Error::SmallPrime { p, degree: d });
    }
    let points = divided_difference_points(f);
    let critical = f.derivative().count_roots() as u64;
    Ok((points as f64 - critical as f64) / p as f64)
}

/// `M_1(p) = (sum N^2 - p) / p`, from Parseval.
pub fn second_moment_parseval(dist: &ValueDist) -> f64 {
    (dist.collisions() as f64 - dist.p() as f64) / dist.p() as f64
}

/// `N_4 = #{f(x) + f(y) = f(z) + f(w)} = sum_s r(s)^2` with `r = N * N`.
pub fn additive_energy(dist: &ValueDist) -> u128 {
    let p = dist.p() as usize;
    let n = dist.counts();
    let r: Vec<u64> = if p <= 4096 {
        (0..p)
            .map(|s| (0..p).map(|v| n[v] as u64 * n[(s + p - v) % p] as u64).sum())
            .collect()
    } else {
        // Cyclic self-convolution through the length-p transform.
        use num_complex::Complex64;
        let input: Vec<Complex64> = n.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
        let spec: Vec<Complex64> = crate::charsums::dft::chirp_dft(&input).into_iter().map(|z| z * z).collect();
        let conj: Vec<Complex64> = spec.iter().map(|z| z.conj()).collect();
        crate::charsums::dft::chirp_dft(&conj)
            .into_iter()
            .map(|z| (z.re / p as f64).round() as u64)
            .collect()
    };
    debug_assert_eq!(r.iter().sum::<u64>(), (p as u64) * (p as u64));
    r.iter().map(|&x| x as u128 * x as u128).sum()
}

/// `M_2(p) = N_4 / p^2 - p`.
pub fn fourth_moment_oracle(dist: &ValueDist) -> f64 {
    let p = dist.p() as i128;
    let excess = additive_energy(dist) as i128 - p * p * p;
    excess as f64 / (p * p) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsums::value_distribution;
    use crate::field_poly::PrimeField;

    fn poly(p: u64, c: &[i64]) -> PolyModP {
        PolyModP::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn quartic_line_counts() {
        // X^4: F = (X + Y)(X^2 + Y^2); three lines through 0 when p = 1 mod 4.
        for p in [13u64, 17, 29, 101] {
            let m = second_moment_oracle(&poly(p, &[0, 0, 0, 0, 1])).unwrap();
            assert!((m - (3.0 * p as f64 - 3.0) / p as f64).abs() < 1e-12, "p={p}");
        }
        for p in [11u64, 19, 23, 103] {
            let m = second_moment_oracle(&poly(p, &[0, 0, 0, 0, 1])).unwrap();
            assert!((m - (p as f64 - 1.0) / p as f64).abs() < 1e-12, "p={p}");
        }
        assert_eq!(
            second_moment_oracle(&poly(3, &[0, 0, 0, 1])).unwrap_err(),
            Error::SmallPrime { p: 3, degree: 3 }
        );
    }

    #[test]
    fn oracles_agree_with_parseval_and_examples() {
        let f = poly(101, &[1, 1, 0, 1]);
        let dist = value_distribution(&f);
        assert!((second_moment_oracle(&f).unwrap() - second_moment_parseval(&dist)).abs() < 1e-12);
        let lin = value_distribution(&poly(31, &[0, 1]));
        assert_eq!(additive_energy(&lin), 31u128.pow(3));
        assert_eq!(fourth_moment_oracle(&lin), 0.0);
        let sq = value_distribution(&poly(31, &[0, 0, 1]));
        assert!((fourth_moment_oracle(&sq) - 30.0 / 31.0).abs() < 1e-12);
    }

    #[test]
    fn energy_paths_agree() {
        let f = poly(4099, &[3, 1, 0, 2, 1]);
        let dist = value_distribution(&f);
        let n = dist.counts();
        let p = 4099usize;
        let direct: u128 = (0..p)
            .map(|s| {
                let r: u64 = (0..p).map(|v| n[v] as u64 * n[(s + p - v) % p] as u64).sum();
                r as u128 * r as u128
            })
            .sum();
        assert_eq!(additive_energy(&dist), direct);
    }
}
