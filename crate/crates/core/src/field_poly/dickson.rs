//! Dickson polynomials `D_d(X, a)`, defined by
//! `D_d(x + a/x, a) = x^d + (a/x)^d`.

use num_rational::BigRational;
use num_traits::Zero;

use super::exact::PolyExact;
use super::poly_modp::PolyModP;
use super::prime::PrimeField;

/// `D_d(X, a)` over `Q`, from `D_0 = 2`, `D_1 = X`, `D_n = X D_{n-1} - a D_{n-2}`.
pub fn dickson(d: usize, a: &BigRational) -> PolyExact {
    let two = PolyExact::from_i64s(&[2]);
    if d == 0 {
        return two;
    }
    let x = PolyExact::x();
    let (mut prev, mut cur) = (two, x.clone());
    for _ in 1..d {
        let next = x.mul(&cur).sub(&prev.scale(a));
        prev = cur;
        cur = next;
    }
    cur
}

/// `D_d(X, a)` over `F_p`.
pub fn dickson_mod_p(field: PrimeField, d: usize, a: u64) -> PolyModP {
    let two = PolyModP::new(field, vec![2 % field.modulus()]);
    if d == 0 {
        return two;
    }
    let x = PolyModP::x(field);
    let (mut prev, mut cur) = (two, x.clone());
    for _ in 1..d {
        let next = x.mul(&cur).sub(&prev.scale(a));
        prev = cur;
        cur = next;
    }
    cur
}

/// Checks the defining identity of `D_d(X, a)` at the nonzero points `xs`.
pub fn dickson_self_test(field: PrimeField, d: usize, a: u64, xs: &[u64]) -> bool {
    let dp = dickson_mod_p(field, d, a);
    let k = field;
    xs.iter().filter(|&&x| x % k.modulus() != 0).all(|&x| {
        let Some(xinv) = k.inv(x % k.modulus()) else {
            return false;
        };
        let t = k.mul(a % k.modulus(), xinv);
        let lhs = dp.eval(k.add(x % k.modulus(), t));
        let rhs = k.add(k.pow(x % k.modulus(), d as u64), k.pow(t, d as u64));
        lhs == rhs
    })
}

/// True iff `D_d(X, a) = X^d`, i.e. `a = 0` or `d <= 1`.
pub fn is_power_map(d: usize, a: &BigRational) -> bool {
    d <= 1 || a.is_zero()
}
