//! Extension of per-prime tables to squarefree moduli by twisted
//! multiplicativity `V(a; q1 q2) = V(a inv(q1); q2) V(a inv(q2); q1)`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use super::table::SumTable;
use crate::error::{Error, Result};
use crate::field_poly::{inv_mod, PolyExact};

/// Source of masked per-prime values `V(a; p)`.
pub trait TableLookup {
    fn lookup(&self, p: u64, a: u64) -> Option<Complex64>;
}

impl TableLookup for HashMap<u64, SumTable> {
    fn lookup(&self, p: u64, a: u64) -> Option<Complex64> {
        self.get(&p).map(|t| t.get(a))
    }
}

impl TableLookup for BTreeMap<u64, SumTable> {
    fn lookup(&self, p: u64, a: u64) -> Option<Complex64> {
        self.get(&p).map(|t| t.get(a))
    }
}

/// Prime factors of `q` when `q` is squarefree.
pub fn squarefree_factors(q: u64) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return None;
            }
            out.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    Some(out)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Peels one prime at a time: `V(a; p m) = V(a inv(m); p) V(a inv(p); m)`.
fn peel<T: TableLookup + ?Sized>(tables: &T, a: u64, primes: &[u64]) -> Result<Complex64> {
    let Some((&p, rest)) = primes.split_first() else {
        return Ok(Complex64::new(1.0, 0.0));
    };
    let m: u64 = rest.iter().product();
    let idx = if m == 1 {
        a % p
    } else {
        (a as u128 * inv_mod(m % p, p).expect("coprime") as u128 % p as u128) as u64
    };
    let head = tables.lookup(p, idx).ok_or(Error::MissingTable(p))?;
    if m == 1 {
        return Ok(head);
    }
    let a_rest = (a as u128 * inv_mod(p % m, m).expect("coprime") as u128 % m as u128) as u64;
    Ok(head * peel(tables, a_rest, rest)?)
}

/// `V(a; q)`: zero if `q` is not squarefree or `gcd(a, q) > 1`; with
/// `strict`, a non-squarefree `q` is an error instead.
pub fn twisted_extend<T: TableLookup + ?Sized>(tables: &T, a: u64, q: u64, strict: bool) -> Result<Complex64> {
    let Some(primes) = squarefree_factors(q) else {
        return if strict { Err(Error::NonSquarefree(q)) } else { Ok(zero()) };
    };
    if q == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if a.gcd(&q) > 1 {
        return Ok(zero());
    }
    peel(tables, a % q, &primes)
}

/// Product form `prod_{p | q} V(a inv(q/p); p)` over the given prime order.
pub fn twisted_product<T: TableLookup + ?Sized>(tables: &T, a: u64, primes: &[u64]) -> Result<Complex64> {
    let q: u64 = primes.iter().product();
    primes.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &p| {
        let cof = q / p;
        let idx = (a % p) as u128 * inv_mod(cof % p, p).ok_or(Error::NonSquarefree(q))? as u128 % p as u128;
        Ok(acc * tables.lookup(p, idx as u64).ok_or(Error::MissingTable(p))?)
    })
}

/// `(1/sqrt q) sum_{x mod q} e(a f(x) / q)` by direct summation.
pub fn sum_direct(f: &PolyExact, a: u64, q: u64) -> Result<Complex64> {
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| {
            let num = c.numer().mod_floor(&q.into());
            let den = c.denom().mod_floor(&q.into());
            let num: u64 = num.try_into().expect("reduced");
            let den: u64 = den.try_into().expect("reduced");
            let inv = inv_mod(den, q).ok_or(Error::BadReduction { p: q })?;
            Ok((num as u128 * inv as u128 % q as u128) as u64)
        })
        .collect::<Result<_>>()?;
    let qq = q as u128;
    let s: Complex64 = (0..q)
        .map(|x| {
            let v = coeffs.iter().rev().fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % qq);
            let v = v * (a % q) as u128 % qq;
            Complex64::from_polar(1.0, TAU * v as f64 / q as f64)
        })
        .sum();
    Ok(s / (q as f64).sqrt())
}
