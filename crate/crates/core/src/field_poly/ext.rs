//! Extension fields `F_{p^e} = F_p[t]/(m(t))`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::poly_modp::PolyModP;
use super::prime::{Fp, PrimeField};
use super::ring::{self, FieldOps};
use crate::error::{Error, Result};

/// Arithmetic context for `F_p[t]/(m)`; elements are coefficient vectors of
/// length exactly `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl ExtField {
    /// Builds the extension; `modulus` must be monic and irreducible.
    pub fn new(modulus: &PolyModP) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("extension modulus must have degree >= 1".into()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::InvalidInput(format!("modulus {modulus} is reducible")));
        }
        let m = modulus.monic();
        Ok(Self { base: m.field(), modulus: m.coeffs().to_vec() })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_poly(&self) -> PolyModP {
        PolyModP::new(self.base, self.modulus.clone())
    }

    pub fn embed(&self, v: u64) -> Vec<u64> {
        let mut out = vec![0; self.degree()];
        out[0] = v % self.base.modulus();
        out
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }

    fn reduce(&self, v: Vec<u64>) -> Vec<u64> {
        let v = ring::trim(&self.base, v);
        self.pad(ring::rem(&self.base, &v, &self.modulus))
    }

    /// `a^p`, the Frobenius automorphism.
    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        self.pow(&a.to_vec(), &BigUint::from(self.base.modulus()))
    }
}

impl FieldOps for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let a = ring::trim(&self.base, a.clone());
        let b = ring::trim(&self.base, b.clone());
        self.reduce(ring::mul(&self.base, &a, &b))
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        // Extended Euclid: track s with s*a = r (mod m).
        let k = &self.base;
        let mut r0 = self.modulus.clone();
        let mut r1 = ring::trim(k, a.clone());
        if r1.is_empty() {
            return None;
        }
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = ring::divrem(k, &r0, &r1);
            let s = ring::sub(k, &s0, &ring::mul(k, &q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since m is irreducible.
        let c = k.inv(r0[0])?;
        Some(self.reduce(ring::scale(k, &s0, &c)))
    }

    fn from_u64(&self, v: u64) -> Vec<u64> {
        self.embed(v)
    }

    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    fn ext_degree(&self) -> usize {
        self.degree()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree())
            .map(|_| rng.random_range(0..self.base.modulus()))
            .collect()
    }
}

/// An element of an extension field, sharing its field context.
#[derive(Clone)]
pub struct ExtFieldElem {
    field: Arc<ExtField>,
    coeffs: Vec<u64>,
}

impl ExtFieldElem {
    pub fn new(field: Arc<ExtField>, coeffs: Vec<u64>) -> Self {
        let coeffs = field.reduce(coeffs);
        Self { field, coeffs }
    }

    pub fn from_base(field: Arc<ExtField>, v: u64) -> Self {
        let coeffs = field.embed(v);
        Self { field, coeffs }
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.coeffs)
    }

    pub fn frobenius(&self) -> Self {
        Self { field: self.field.clone(), coeffs: self.field.frobenius(&self.coeffs) }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { field: self.field.clone(), coeffs: self.field.pow(&self.coeffs, &BigUint::from(e)) }
    }

    pub fn inv(&self) -> Option<Self> {
        self.field
            .inv(&self.coeffs)
            .map(|c| Self { field: self.field.clone(), coeffs: c })
    }

    /// Multiplies by a prime-field scalar.
    pub fn scale(&self, s: u64) -> Self {
        let k = self.field.base();
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| k.mul(c, s % k.modulus())).collect(),
        }
    }

    /// The element as an `F_p` value when it lies in the prime field.
    pub fn to_base(&self) -> Option<Fp> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.field.base().elem(self.coeffs[0]))
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "elements of different extension fields"
        );
    }
}

impl PartialEq for ExtFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other);
        self.coeffs == other.coeffs
    }
}

impl Eq for ExtFieldElem {}

impl Hash for ExtFieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl std::ops::Add for &ExtFieldElem {
    type Output = ExtFieldElem;
    fn add(self, rhs: &ExtFieldElem) -> ExtFieldElem {
        self.same_field(rhs);
        ExtFieldElem { field: self.field.clone(), coeffs: self.field.add(&self.coeffs, &rhs.coeffs) }
    }
}

impl std::ops::Sub for &ExtFieldElem {
    type Output = ExtFieldElem;
    fn sub(self, rhs: &ExtFieldElem) -> ExtFieldElem {
        self.same_field(rhs);
        ExtFieldElem { field: self.field.clone(), coeffs: self.field.sub(&self.coeffs, &rhs.coeffs) }
    }
}

impl std::ops::Mul for &ExtFieldElem {
    type Output = ExtFieldElem;
    fn mul(self, rhs: &ExtFieldElem) -> ExtFieldElem {
        self.same_field(rhs);
        ExtFieldElem { field: self.field.clone(), coeffs: self.field.mul(&self.coeffs, &rhs.coeffs) }
    }
}

impl std::ops::Neg for &ExtFieldElem {
    type Output = ExtFieldElem;
    fn neg(self) -> ExtFieldElem {
        ExtFieldElem { field: self.field.clone(), coeffs: self.field.neg(&self.coeffs) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f49() -> Arc<ExtField> {
        let k = PrimeField::new(7).unwrap();
        Arc::new(ExtField::new(&PolyModP::from_i64s(k, &[1, 0, 1])).unwrap())
    }

    #[test]
    fn rejects_reducible_modulus() {
        let k = PrimeField::new(7).unwrap();
        assert!(ExtField::new(&PolyModP::from_i64s(k, &[-1, 0, 1])).is_err());
    }

    #[test]
    fn inverses_in_f49() {
        let f = f49();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = f.random(&mut rng);
            if f.is_zero(&a) {
                continue;
            }
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), f.one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        let k = PrimeField::new(11).unwrap();
        let m = PolyModP::from_i64s(k, &[4, 1, 0, 1]); // irreducible cubic over F_11
        assert!(m.is_irreducible());
        let f = Arc::new(ExtField::new(&m).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let x = ExtFieldElem::new(f.clone(), f.random(&mut rng));
            let y = ExtFieldElem::new(f.clone(), f.random(&mut rng));
            assert_eq!((&x + &y).frobenius(), &x.frobenius() + &y.frobenius());
            assert_eq!((&x * &y).frobenius(), &x.frobenius() * &y.frobenius());
            // Frobenius has order e = 3.
            assert_eq!(x.frobenius().frobenius().frobenius(), x);
        }
    }
}
