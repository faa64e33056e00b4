//! Polynomials over `F_p`: gcd, squarefree test, factorization and roots in
//! a splitting extension.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ext::{ExtField, ExtFieldElem};
use super::prime::{Fp, PrimeField};
use super::ring::{self, FieldOps};
use crate::error::{Error, Result};

/// Default cap on the degree of a splitting extension.
pub const DEFAULT_EXTENSION_CAP: usize = 64;

impl FieldOps for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::mul(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        PrimeField::neg(self, *a)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        PrimeField::inv(self, *a)
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.modulus()
    }
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn ext_degree(&self) -> usize {
        1
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.modulus())
    }
}

/// A polynomial over `F_p`, coefficients constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyModP {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        let coeffs = ring::trim(&field, coeffs.into_iter().map(|c| c % p).collect());
        Self { field, coeffs }
    }

    pub fn from_i64s(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self { field, coeffs: vec![1] }
    }

    /// The monomial `X`.
    pub fn x(field: PrimeField) -> Self {
        Self { field, coeffs: vec![0, 1] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fp {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn degree(&self) -> Option<usize> {
        ring::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lead(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: u64) -> u64 {
        ring::eval(&self.field, &self.coeffs, &(x % self.modulus()))
    }

    fn wrap(&self, coeffs: Vec<u64>) -> Self {
        Self { field: self.field, coeffs }
    }

    pub fn derivative(&self) -> Self {
        self.wrap(ring::derivative(&self.field, &self.coeffs))
    }

    pub fn monic(&self) -> Self {
        self.wrap(ring::monic(&self.field, &self.coeffs))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.wrap(ring::add(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.wrap(ring::sub(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.wrap(ring::mul(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, s: u64) -> Self {
        self.wrap(ring::scale(&self.field, &self.coeffs, &(s % self.modulus())))
    }

    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        let (q, r) = ring::divrem(&self.field, &self.coeffs, &other.coeffs);
        (self.wrap(q), self.wrap(r))
    }

    pub fn rem(&self, other: &Self) -> Self {
        self.divrem(other).1
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        self.wrap(ring::powmod(&self.field, &self.coeffs, e, &m.coeffs))
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, &c| acc.mul(g).add(&Self::new(self.field, vec![c])))
    }

    /// `true` iff `gcd(f, f') = 1`; requires `p > deg f`.
    pub fn is_squarefree(&self) -> Result<bool> {
        let d = self.degree().unwrap_or(0);
        if self.modulus() <= d as u64 {
            return Err(Error::SmallCharacteristic { p: self.modulus(), degree: d });
        }
        if d == 0 {
            return Ok(true);
        }
        Ok(poly_gcd(self, &self.derivative()).is_one())
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = Self::x(self.field);
        let xp = |k: usize| x.wrap(ring::frobenius_power(&self.field, &x.coeffs, k, &f.coeffs));
        if xp(n) != x.rem(&f) {
            return false;
        }
        prime_divisors(n as u64)
            .into_iter()
            .all(|r| poly_gcd(&f, &xp(n / r as usize).sub(&x)).is_one())
    }

    /// Number of distinct roots in `F_p`.
    pub fn count_roots(&self) -> usize {
        if self.is_zero() {
            return self.modulus() as usize;
        }
        let x = Self::x(self.field);
        let xp = x.pow_mod(&BigUint::from(self.modulus()), self).sub(&x);
        poly_gcd(self, &xp).degree().unwrap_or(0)
    }

    /// All roots in `F_p` (with no multiplicity).
    pub fn roots_in_base(&self) -> Vec<u64> {
        let x = Self::x(self.field);
        let xp = x.pow_mod(&BigUint::from(self.modulus()), self).sub(&x);
        let g = poly_gcd(self, &xp);
        let mut rng = ChaCha8Rng::seed_from_u64(self.modulus() ^ 0x726f_6f74);
        let mut roots = ring::split_linear(&self.field, &g.coeffs, &mut rng);
        roots.sort_unstable();
        roots
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 (mod {})", self.modulus());
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*X"),
                _ => format!("{c}*X^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.modulus())
    }
}

impl fmt::Debug for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &PolyModP, g: &PolyModP) -> PolyModP {
    assert_eq!(f.field, g.field, "mixed moduli");
    f.wrap(ring::gcd(&f.field, &f.coeffs, &g.coeffs))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree decomposition of a monic `f`: pairs `(g_i, i)` with `g_i`
/// squarefree, pairwise coprime, and `f = prod g_i^i`.
fn squarefree_decomposition(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.modulus() as usize;
    let mut out = Vec::new();
    let fd = f.derivative();
    let mut c = poly_gcd(f, &fd);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = poly_gcd(&w, &c);
        let fac = w.divrem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        // c = h(X^p); in F_p the p-th root acts on exponents only.
        let root = c.wrap(c.coeffs.iter().step_by(p).copied().collect());
        for (g, m) in squarefree_decomposition(&root.monic()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic `f` by degree of its irreducible factors.
fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let x = PolyModP::x(f.field);
    let p = BigUint::from(f.modulus());
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g);
    let mut k = 1;
    while g.degree().unwrap_or(0) >= 2 * k {
        h = h.pow_mod(&p, &g);
        let d = poly_gcd(&g, &h.sub(&x));
        if !d.is_one() {
            g = g.divrem(&d).0;
            h = h.rem(&g);
            out.push((d, k));
        }
        k += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let n = g.degree().unwrap();
        out.push((g, n));
    }
    out
}

/// Splits a product of distinct irreducibles of common degree `k`.
fn equal_degree<R: Rng + ?Sized>(f: &PolyModP, k: usize, rng: &mut R) -> Vec<PolyModP> {
    let n = f.degree().unwrap_or(0);
    if n <= k {
        return vec![f.monic()];
    }
    let field = f.field;
    let p = f.modulus();
    let exponent = (BigUint::from(p).pow(k as u32) - BigUint::one()) >> 1;
    loop {
        let a = PolyModP::new(field, (0..n).map(|_| rng.random_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(nk-1)) for characteristic 2.
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod(&exponent, f).sub(&PolyModP::one(field))
        };
        let d = poly_gcd(f, &b);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            let q = f.divrem(&d).0.monic();
            let mut out = equal_degree(&d, k, rng);
            out.extend(equal_degree(&q, k, rng));
            return out;
        }
    }
}

/// Complete factorization with a caller-supplied random source.
pub fn factor_mod_p_with_rng<R: Rng + ?Sized>(
    f: &PolyModP,
    rng: &mut R,
) -> Vec<(PolyModP, usize)> {
    assert!(f.degree().unwrap_or(0) >= 1, "factorization needs degree >= 1");
    let mut out = Vec::new();
    for (sf, mult) in squarefree_decomposition(&f.monic()) {
        for (block, k) in distinct_degree(&sf) {
            for g in equal_degree(&block, k, rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.degree().cmp(&b.degree()).then(a.coeffs.cmp(&b.coeffs)).then(ma.cmp(mb))
    });
    out
}

/// Factorization into monic irreducibles with multiplicities, using a seeded
/// generator so results are reproducible.
pub fn factor_mod_p(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6661_6374 ^ f.modulus());
    factor_mod_p_with_rng(f, &mut rng)
}

/// Finds a monic irreducible polynomial of degree `e`.
pub fn find_irreducible<R: Rng + ?Sized>(field: PrimeField, e: usize, rng: &mut R) -> PolyModP {
    loop {
        let mut c: Vec<u64> = (0..e).map(|_| rng.random_range(0..field.modulus())).collect();
        c.push(1);
        let m = PolyModP::new(field, c);
        if m.is_irreducible() {
            return m;
        }
    }
}

/// The roots of a squarefree `f`, all inside one extension `F_{p^e}` with `e`
/// the lcm of the degrees of its irreducible factors.
pub fn splitting_roots(f: &PolyModP, cap: usize) -> Result<Vec<ExtFieldElem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7370_6c74 ^ f.modulus());
    splitting_roots_with_rng(f, cap, &mut rng)
}

pub fn splitting_roots_with_rng<R: Rng + ?Sized>(
    f: &PolyModP,
    cap: usize,
    rng: &mut R,
) -> Result<Vec<ExtFieldElem>> {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    if f.modulus() == 2 {
        return Err(Error::SmallCharacteristic { p: 2, degree: d });
    }
    if !poly_gcd(f, &f.derivative()).is_one() {
        return Err(Error::NotSquarefree);
    }
    let factors = factor_mod_p_with_rng(f, rng);
    let e = factors
        .iter()
        .map(|(g, _)| g.degree().unwrap())
        .fold(1usize, |acc, k| acc.lcm(&k));
    if e > cap {
        return Err(Error::ExtensionTooLarge { degree: e, cap });
    }
    let modulus = match factors.iter().find(|(g, _)| g.degree() == Some(e)) {
        Some((g, _)) => g.clone(),
        None if e == 1 => PolyModP::x(f.field),
        None => find_irreducible(f.field, e, rng),
    };
    let ext = Arc::new(ExtField::new(&modulus)?);
    let mut roots = Vec::with_capacity(d);
    for (g, _) in &factors {
        let lifted: Vec<Vec<u64>> = g.coeffs.iter().map(|&c| ext.embed(c)).collect();
        for r in ring::split_linear(ext.as_ref(), &lifted, rng) {
            roots.push(ExtFieldElem::new(ext.clone(), r));
        }
    }
    Ok(roots)
}
