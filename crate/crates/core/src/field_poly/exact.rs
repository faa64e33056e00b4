//! Polynomials with exact rational coefficients over a shared denominator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::poly_modp::PolyModP;
use super::prime::{divides, PrimeField};
use crate::error::{Error, Result};

/// `sum_i num[i] X^i / den`, with `den > 0`, `gcd(num.., den) = 1` and no
/// trailing zero numerators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyExact {
    num: Vec<BigInt>,
    den: BigInt,
}

/// Result of reducing a [`PolyExact`] modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub poly: PolyModP,
    /// `true` when `p` divides the leading numerator.
    pub degree_dropped: bool,
}

/// SHA-256 of the canonical serialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyId(pub [u8; 32]);

impl PolyId {
    pub fn hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl fmt::Debug for PolyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyId({})", &self.hex()[..12])
    }
}

impl PolyExact {
    pub fn zero() -> Self {
        Self { num: Vec::new(), den: BigInt::one() }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_parts(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(num, den)
    }

    pub fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Self::zero();
        }
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den = den / g;
        }
        Self { num, den }
    }

    pub fn monomial(k: usize, c: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::from_rationals(&v)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_rationals(&[c])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        match self.num.get(i) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn lead(&self) -> BigRational {
        self.degree().map_or_else(BigRational::zero, |d| self.coeff(d))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs()
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.coeffs(), other.coeffs());
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        let v: Vec<_> = (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect();
        Self::from_rationals(&v)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(self.num.iter().map(|c| -c).collect(), self.den.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_parts(
            self.num.iter().map(|c| c * s.numer()).collect(),
            &self.den * s.denom(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in other.num.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_parts(out, &self.den * &other.den)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::from_i64s(&[1]), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::from_parts(num, self.den.clone())
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    /// `self(c X + e)`.
    pub fn affine_substitute(&self, c: &BigRational, e: &BigRational) -> Self {
        self.compose(&Self::from_rationals(&[e.clone(), c.clone()]))
    }

    /// Euclidean division over `Q`. Panics on division by zero.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        let db = other.degree().expect("division by zero polynomial");
        let b = other.coeffs();
        let lead = &b[db];
        let mut r = self.coeffs();
        if r.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let c = &r[i] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i - db + j] = &r[i - db + j] - &c * bj;
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (Self::from_rationals(&q), Self::from_rationals(&r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// `true` when `g(-X) = -g(X)`.
    pub fn is_odd(&self) -> bool {
        self.num.iter().step_by(2).all(|c| c.is_zero())
    }

    /// Reduces modulo `p`; fails when `p` divides the denominator.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Reduction> {
        if divides(p, &self.den) {
            return Err(Error::BadReduction { p });
        }
        let field = PrimeField::new(p)?;
        let inv = field.inv(field.from_bigint(&self.den)).expect("unit denominator");
        let coeffs = self
            .num
            .iter()
            .map(|c| field.mul(field.from_bigint(c), inv))
            .collect();
        let poly = PolyModP::new(field, coeffs);
        let degree_dropped = poly.degree() != self.degree();
        Ok(Reduction { poly, degree_dropped })
    }

    /// Shorthand for [`reduce_mod_p`](Self::reduce_mod_p) that insists the
    /// degree is preserved.
    pub fn mod_p(&self, p: u64) -> Result<PolyModP> {
        let r = self.reduce_mod_p(p)?;
        if r.degree_dropped {
            return Err(Error::BadReduction { p });
        }
        Ok(r.poly)
    }

    /// `true` when `p` divides neither the denominator nor the leading
    /// numerator.
    pub fn is_good_reduction(&self, p: u64) -> bool {
        !divides(p, &self.den) && self.num.last().is_some_and(|l| !divides(p, l))
    }

    /// Coefficients as exact strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(rational_to_string).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_strings()).expect("string array serializes")
    }

    /// Parses a JSON array of coefficients (constant term first). Entries may
    /// be JSON integers or strings in integer, `num/den` or decimal syntax.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("{e}")))?;
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array of coefficients".into()))?;
        let coeffs = arr
            .iter()
            .map(|e| match e {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Self::from_rationals(&coeffs);
        if f.is_zero() {
            return Err(Error::Parse("zero polynomial".into()));
        }
        Ok(f)
    }

    pub fn id(&self) -> PolyId {
        let mut h = Sha256::new();
        h.update(self.to_json().as_bytes());
        PolyId(h.finalize().into())
    }
}

/// Formats `n` or `n/d`.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `n/d` or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int = if int.is_empty() || int == "-" || int == "+" { "0" } else { int };
        let whole = BigInt::from_str(int).map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = whole.abs() * &scale + f;
        let n = if neg { -mag } else { mag };
        return Ok(BigRational::new(n, scale));
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

impl fmt::Display for PolyExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = rational_to_string(&mag);
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{coef}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{coef}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyExact({self})")
    }
}

impl FromStr for PolyExact {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_json(s)
    }
}

impl Serialize for PolyExact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyExact {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v.to_string()).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduction_examples() {
        let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
        let r = f.reduce_mod_p(5).unwrap();
        assert_eq!(r.poly.coeffs(), &[1, 1, 0, 1]);
        assert!(!r.degree_dropped);

        let g = PolyExact::from_i64s(&[0, 1, 0, 6]);
        let r = g.reduce_mod_p(3).unwrap();
        assert_eq!(r.poly.coeffs(), &[0, 1]);
        assert!(r.degree_dropped);

        let h = PolyExact::from_rationals(&[q(1, 1), q(0, 1), q(1, 2)]);
        assert_eq!(h.reduce_mod_p(2), Err(Error::BadReduction { p: 2 }));
    }

    #[test]
    fn json_syntax() {
        let f = PolyExact::from_json(r#"[1, "-2/4", "0.25", "3"]"#).unwrap();
        assert_eq!(f.coeffs(), vec![q(1, 1), q(-1, 2), q(1, 4), q(3, 1)]);
        assert_eq!(f.to_json(), r#"["1","-1/2","1/4","3"]"#);
        assert_eq!(PolyExact::from_json(&f.to_json()).unwrap(), f);
        assert!(PolyExact::from_json("[1, \"x\"]").is_err());
        assert!(PolyExact::from_json("[0, 0]").is_err());
        assert!(PolyExact::from_json("{}").is_err());
        assert!(PolyExact::from_json("[\"1/0\"]").is_err());
    }

    #[test]
    fn display() {
        let f = PolyExact::from_rationals(&[q(1, 1), q(-1, 1), q(0, 1), q(3, 2)]);
        assert_eq!(f.to_string(), "3/2*X^3 - X + 1");
    }

    #[test]
    fn division_and_composition() {
        let f = PolyExact::from_i64s(&[1, 0, 2, 0, 1]);
        let h = PolyExact::from_i64s(&[0, 0, 1]);
        let g = PolyExact::from_i64s(&[1, 2, 1]);
        assert_eq!(g.compose(&h), f);
        let (quo, r) = f.divrem(&PolyExact::from_i64s(&[1, 0, 1]));
        assert_eq!(quo, PolyExact::from_i64s(&[1, 0, 1]));
        assert!(r.is_zero());
    }

    fn small_poly() -> impl Strategy<Value = PolyExact> {
        (prop::collection::vec(-20i64..20, 1..6), 1i64..6, 1i64..30).prop_map(|(mut c, den, lead)| {
            c.push(lead);
            PolyExact::from_parts(c.into_iter().map(BigInt::from).collect(), BigInt::from(den))
        })
    }

    proptest! {
        #[test]
        fn reduction_commutes_with_evaluation(f in small_poly(), x in -50i64..50) {
            for p in [7u64, 11, 101, 1_000_003] {
                if !f.is_good_reduction(p) { continue; }
                let fp = f.reduce_mod_p(p).unwrap().poly;
                let k = fp.field();
                let exact = f.eval(&BigRational::from_integer(x.into()));
                prop_assert_eq!(k.from_rational(&exact).unwrap(), fp.eval(k.from_i64(x)));
            }
        }

        #[test]
        fn json_round_trip(f in small_poly()) {
            prop_assert_eq!(PolyExact::from_json(&f.to_json()).unwrap(), f);
        }
    }
}
