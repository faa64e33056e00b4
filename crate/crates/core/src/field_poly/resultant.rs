//! Resultants, discriminants and the critical-value polynomial
//! `CV_f(Y) = Res_X(f'(X), Y - f(X))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact::PolyExact;
use super::poly_modp::PolyModP;
use super::ring;
use crate::error::{Error, Result};

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let delta = a.len() - b.len();
    let mut steps = 0;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        steps += 1;
        r = trim(r);
    }
    let extra = lb.pow((delta + 1 - steps) as u32);
    r.into_iter().map(|c| c * &extra).collect()
}

/// Resultant of two integer polynomials by the subresultant PRS.
pub fn subresultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (ca, cb) = (content(&a), content(&b));
    let t = ca.pow((b.len() - 1) as u32) * cb.pow((a.len() - 1) as u32);
    let mut a: Vec<BigInt> = a.iter().map(|c| c / &ca).collect();
    let mut b: Vec<BigInt> = b.iter().map(|c| c / &cb).collect();
    let mut s = BigInt::one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while b.len() > 1 {
        let delta = a.len() - b.len();
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let divisor = &g * h.pow(delta as u32);
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow((delta - 1) as u32)
        };
    }
    let da = a.len() - 1;
    let lb = b[0].clone();
    let h = if da == 0 {
        BigInt::one()
    } else {
        lb.pow(da as u32) / h.pow((da - 1) as u32)
    };
    s * t * h
}

/// `Res(f, g)` over `Q`.
pub fn resultant_exact(f: &PolyExact, g: &PolyExact) -> BigRational {
    if f.is_zero() || g.is_zero() {
        return BigRational::zero();
    }
    let r = subresultant(f.numerators(), g.numerators());
    // Res(F/a, G/b) = a^-deg g * b^-deg f * Res(F, G).
    let scale = f.denominator().pow(g.deg() as u32) * g.denominator().pow(f.deg() as u32);
    BigRational::new(r, scale)
}

/// `Res(f, g)` over `F_p`.
pub fn resultant_mod_p(f: &PolyModP, g: &PolyModP) -> u64 {
    assert_eq!(f.field(), g.field(), "mixed moduli");
    ring::resultant(&f.field(), f.coeffs(), g.coeffs())
}

/// Discriminant `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &PolyExact) -> BigRational {
    let d = f.deg();
    if d == 0 {
        return BigRational::one();
    }
    let r = resultant_exact(f, &f.derivative()) / f.lead();
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// `Res_X(f(X), Y - h(X))` as a polynomial in `Y`, by evaluation at
/// `deg f + 1` integer points and interpolation.
pub fn value_resultant(f: &PolyExact, h: &PolyExact) -> PolyExact {
    let n = f.deg();
    let xs: Vec<BigRational> = (0..=n as i64).map(|y| BigRational::from_integer(y.into())).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|y| resultant_exact(f, &PolyExact::constant(y.clone()).sub(h)))
        .collect();
    interpolate_exact(&xs, &ys)
}

/// Same as [`value_resultant`] over `F_p` (needs `p > deg f`).
pub fn value_resultant_mod_p(f: &PolyModP, h: &PolyModP) -> PolyModP {
    let k = f.field();
    let n = f.degree().unwrap_or(0) as u64;
    let xs: Vec<u64> = (0..=n).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|&y| resultant_mod_p(f, &PolyModP::new(k, vec![y]).sub(h)))
        .collect();
    PolyModP::new(k, ring::interpolate(&k, &xs, &ys))
}

fn interpolate_exact(xs: &[BigRational], ys: &[BigRational]) -> PolyExact {
    let mut out = PolyExact::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = PolyExact::from_i64s(&[1]);
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&PolyExact::from_rationals(&[-xj.clone(), BigRational::one()]));
                denom *= xi - xj;
            }
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}

/// `CV_f(Y) = Res_X(f', Y - f)`: degree `d - 1`, roots the critical values.
pub fn critical_value_poly(f: &PolyExact) -> Result<PolyExact> {
    let d = f.deg();
    if d < 2 {
        return Err(Error::InvalidInput(format!("critical values need degree >= 2, got {d}")));
    }
    Ok(value_resultant(&f.derivative(), f))
}

/// Critical-value polynomial over `F_p`; requires `p > 2d - 1` and
/// `deg f' = d - 1`.
pub fn critical_value_poly_mod_p(f: &PolyModP) -> Result<PolyModP> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::InvalidInput(format!("critical values need degree >= 2, got {d}")));
    }
    if f.modulus() <= 2 * d as u64 - 1 {
        return Err(Error::SmallPrime { p: f.modulus(), degree: d });
    }
    let fd = f.derivative();
    let found = fd.degree().unwrap_or(0);
    if found < d - 1 {
        return Err(Error::DegenerateDerivative { expected: d - 1, found });
    }
    Ok(value_resultant_mod_p(&fd, f))
}

/// Rational `k`-th root of `r`, if one exists.
pub fn rational_root(r: &BigRational, k: u32) -> Option<BigRational> {
    if k == 0 {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    if r.is_negative() && k % 2 == 0 {
        return None;
    }
    let root = |v: &BigInt| {
        let c = v.abs().nth_root(k);
        (c.pow(k) == v.abs()).then_some(c)
    };
    let n = root(r.numer())?;
    let d = root(r.denom())?;
    let n = if r.is_negative() { -n } else { n };
    Some(BigRational::new(n, d))
}
