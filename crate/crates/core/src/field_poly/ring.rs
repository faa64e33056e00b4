//! Dense univariate polynomial algorithms over a finite field context.
//!
//! Polynomials are coefficient slices, constant term first, with no
//! trailing zeros; the zero polynomial is the empty slice.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

/// Arithmetic context of a finite field.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under `Z -> F`.
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn ext_degree(&self) -> usize;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.ext_degree() as u32)
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

pub fn trim<F: FieldOps>(k: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn degree<E>(v: &[E]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn add<F: FieldOps>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(k, out)
}

pub fn sub<F: FieldOps>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let nb: Vec<_> = b.iter().map(|c| k.neg(c)).collect();
    add(k, a, &nb)
}

pub fn scale<F: FieldOps>(k: &F, a: &[F::Elem], s: &F::Elem) -> Vec<F::Elem> {
    trim(k, a.iter().map(|c| k.mul(c, s)).collect())
}

pub fn mul<F: FieldOps>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

/// Euclidean division `a = q b + r`. Panics on `b = 0`.
pub fn divrem<F: FieldOps>(
    k: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = k.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = k.mul(&r[i], &lead_inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = k.mul(&c, bj);
            r[i - db + j] = k.sub(&r[i - db + j], &t);
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim(k, q), trim(k, r))
}

pub fn rem<F: FieldOps>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(k, a, b).1
}

pub fn monic<F: FieldOps>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(k, a, &k.inv(l).expect("nonzero leading coefficient")),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: FieldOps>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = r;
    }
    monic(k, &x)
}

pub fn derivative<F: FieldOps>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &k.from_u64(i as u64)))
        .collect();
    trim(k, out)
}

pub fn eval<F: FieldOps>(k: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

pub fn mulmod<F: FieldOps>(
    k: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    m: &[F::Elem],
) -> Vec<F::Elem> {
    rem(k, &mul(k, a, b), m)
}

/// `base^e mod m`.
pub fn powmod<F: FieldOps>(
    k: &F,
    base: &[F::Elem],
    e: &BigUint,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let base = rem(k, base, m);
    let mut acc = rem(k, &[k.one()], m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(k, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(k, &acc, &base, m);
        }
    }
    acc
}

/// Resultant by the Euclidean scheme, valid over any field.
pub fn resultant<F: FieldOps>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    if a.is_empty() || b.is_empty() {
        return k.zero();
    }
    let mut sign_neg = false;
    let mut acc = k.one();
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            let lb = &b[0];
            let mut p = k.one();
            for _ in 0..da {
                p = k.mul(&p, lb);
            }
            acc = k.mul(&acc, &p);
            break;
        }
        let r = rem(k, &a, &b);
        if r.is_empty() {
            return k.zero();
        }
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let lb = b[db].clone();
        for _ in 0..(da + 1 - r.len()) {
            acc = k.mul(&acc, &lb);
        }
        a = b;
        b = r;
    }
    if sign_neg {
        k.neg(&acc)
    } else {
        acc
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])` with distinct `xs`.
pub fn interpolate<F: FieldOps>(k: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = Vec::new();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![k.one()];
        let mut denom = k.one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = mul(k, &basis, &[k.neg(xj), k.one()]);
            denom = k.mul(&denom, &k.sub(xi, xj));
        }
        let c = k.mul(yi, &k.inv(&denom).expect("distinct nodes"));
        out = add(k, &out, &scale(k, &basis, &c));
    }
    out
}

/// All roots of a monic squarefree `f` that splits into linear factors over
/// the field (odd characteristic), by random equal-degree splitting.
pub fn split_linear<F: FieldOps, R: Rng + ?Sized>(
    k: &F,
    f: &[F::Elem],
    rng: &mut R,
) -> Vec<F::Elem> {
    let f = monic(k, f);
    let mut out = Vec::new();
    let mut stack = vec![f];
    let half = (k.order() - BigUint::one()) >> 1;
    while let Some(g) = stack.pop() {
        match degree(&g) {
            None | Some(0) => {}
            Some(1) => out.push(k.neg(&g[0])),
            Some(_) => loop {
                let shift = k.random(rng);
                let h = powmod(k, &[shift, k.one()], &half, &g);
                let h = sub(k, &h, &[k.one()]);
                let d = gcd(k, &g, &h);
                let dd = degree(&d).unwrap_or(0);
                if dd > 0 && dd < g.len() - 1 {
                    let (q, r) = divrem(k, &g, &d);
                    debug_assert!(r.is_empty());
                    stack.push(d);
                    stack.push(monic(k, &q));
                    break;
                }
            },
        }
    }
    out
}

/// `x^(p^n) mod m` by iterated Frobenius (`n` applications of `p`-th power).
pub fn frobenius_power<F: FieldOps>(
    k: &F,
    x: &[F::Elem],
    n: usize,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let q = BigUint::from(k.characteristic()).pow(k.ext_degree() as u32);
    let mut acc = rem(k, x, m);
    for _ in 0..n {
        acc = powmod(k, &acc, &q, m);
    }
    acc
}
