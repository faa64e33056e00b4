//! Prime fields `F_p` for `p < 2^62`.
//!
//! Arithmetic is done on raw `u64` residues through a [`PrimeField`]
//! context; products go through 128-bit intermediates. [`Fp`] is the
//! self-describing element type used at API boundaries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 62;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Arithmetic context for `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        // Extended Euclid on signed 128-bit values.
        let (mut r0, mut r1) = (self.p as i128, (a % self.p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }

    /// Reduces a signed integer.
    pub fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Reduces a rational; fails when `p` divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<u64> {
        let den = self.from_bigint(v.denom());
        let inv = self.inv(den).ok_or(Error::BadReduction { p: self.p })?;
        Ok(self.mul(self.from_bigint(v.numer()), inv))
    }

    /// Legendre symbol `(a/p)` as -1, 0 or 1 (odd `p`).
    pub fn legendre(&self, a: u64) -> i32 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { value: v % self.p, modulus: self.p }
    }

    /// Centered representative in `(-p/2, p/2]`.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }
}

/// An element of `F_p` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, field: PrimeField) -> Self {
        field.elem(value)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Fp> {
        self.field().inv(self.value).map(|v| self.field().elem(v))
    }

    pub fn pow(&self, e: u64) -> Fp {
        self.field().elem(self.field().pow(self.value, e))
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        self.field().elem(self.field().add(self.value, rhs.value))
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        self.field().elem(self.field().sub(self.value, rhs.value))
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        self.field().elem(self.field().mul(self.value, rhs.value))
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        self.field().elem(self.field().neg(self.value))
    }
}

/// Modular inverse of `a` modulo an arbitrary `m > 1`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = ((a % m) as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// `true` when `|v|` is divisible by `p`.
pub fn divides(p: u64, v: &BigInt) -> bool {
    (v.abs() % BigInt::from(p)).to_u64() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        // Strong pseudoprimes to several small bases.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn rejects_composites_and_oversized() {
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
        assert!(PrimeField::new(u64::MAX - 58).is_err());
    }

    #[test]
    fn inverse_round_trips() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        for a in [1u64, 2, 3, 999, 123_456_789, 1_000_000_006] {
            let i = f.inv(a).unwrap();
            assert_eq!(f.mul(a, i), 1);
        }
        assert_eq!(f.inv(0), None);
        let big = PrimeField::new((1 << 61) - 1).unwrap();
        let a = (1 << 60) + 12345;
        assert_eq!(big.mul(a, big.inv(a).unwrap()), 1);
    }

    #[test]
    fn legendre_symbol() {
        let f = PrimeField::new(7).unwrap();
        let residues: Vec<i32> = (0..7).map(|a| f.legendre(a)).collect();
        assert_eq!(residues, vec![0, 1, 1, -1, 1, -1, -1]);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), 3);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.from_rational(&half), Err(Error::BadReduction { p: 2 }));
        assert_eq!(f.from_i64(-3), 2);
    }

    #[test]
    fn composite_inverse() {
        assert_eq!(inv_mod(7, 15), Some(13));
        assert_eq!(inv_mod(6, 15), None);
    }
}
