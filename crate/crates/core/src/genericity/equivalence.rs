//! Linear equivalence `g(X) = a f(cX + e) + b`, Dickson equivalence and
//! the absolute-irreducibility prediction for `(f(X) - f(Y)) / (X - Y)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::decompose::is_indecomposable;
use crate::field_poly::resultant::rational_root;
use crate::field_poly::{depress_and_normalize, dickson, is_prime, PolyExact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Over {
    Rational,
    AlgebraicClosure,
}

/// `g(X) = a f(cX + e) + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub e: BigRational,
}

impl Witness {
    pub fn apply(&self, f: &PolyExact) -> PolyExact {
        f.affine_substitute(&self.c, &self.e)
            .scale(&self.a)
            .add(&PolyExact::constant(self.b.clone()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equivalence {
    /// A witness with rational entries.
    Rational(Witness),
    /// Equivalent over `Q-bar` only; the scale `c` is a root of
    /// `c^exponent = c_power` with no rational solution.
    Algebraic { exponent: u32, c_power: BigRational },
}

fn pow_i(r: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

pub fn linear_equivalent(f: &PolyExact, g: &PolyExact, over: Over) -> Option<Equivalence> {
    let d = f.deg();
    if d < 2 || g.deg() != d {
        return None;
    }
    let cf = depress_and_normalize(f).ok()?;
    let cg = depress_and_normalize(g).ok()?;
    // Canonical forms satisfy cg_j = D^(d-j) cf_j with D = 1/c.
    let mut support = Vec::new();
    for j in 1..d {
        let (x, y) = (cf.poly.coeff(j), cg.poly.coeff(j));
        if x.is_zero() != y.is_zero() {
            return None;
        }
        if !x.is_zero() {
            support.push(((d - j) as i64, y / x));
        }
    }
    // Bezout combination R = D^gcd of the ratios r_j = D^(n_j).
    let (mut gexp, mut r) = (0i64, BigRational::one());
    for (n, ratio) in &support {
        if gexp == 0 {
            gexp = *n;
            r = ratio.clone();
            continue;
        }
        let eg = gexp.extended_gcd(n);
        r = pow_i(&r, eg.x) * pow_i(ratio, eg.y);
        gexp = eg.gcd;
    }
    if gexp == 0 {
        gexp = 1;
    }
    for (n, ratio) in &support {
        if pow_i(&r, n / gexp) != *ratio {
            return None;
        }
    }
    let Some(dd) = rational_root(&r, gexp as u32) else {
        return match over {
            Over::Rational => None,
            Over::AlgebraicClosure => Some(Equivalence::Algebraic {
                exponent: gexp as u32,
                c_power: r.recip(),
            }),
        };
    };
    let c = dd.recip();
    let c_d = pow_i(&c, -(d as i64));
    let w = Witness {
        a: &c_d * &cf.a / &cg.a,
        b: (&c_d * &cf.b - &cg.b) / &cg.a,
        c: c.clone(),
        e: -&c * &cg.e + &cf.e,
    };
    (w.apply(f) == *g).then_some(Equivalence::Rational(w))
}

/// `a` with `f` linearly equivalent over `Q` to `D_d(X, a)`, for `d >= 3`.
pub fn dickson_equivalent(f: &PolyExact) -> Option<BigRational> {
    let d = f.deg();
    if d < 3 {
        return None;
    }
    let canon = depress_and_normalize(f).ok()?;
    let a = -canon.poly.coeff(d - 2) / BigRational::from_integer(BigInt::from(d));
    matches!(
        linear_equivalent(&dickson(d, &a), f, Over::Rational),
        Some(Equivalence::Rational(_))
    )
    .then_some(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FriedPrediction {
    AbsolutelyIrreducible,
    Reducible,
    Undetermined,
}

/// Predicted absolute irreducibility of `(f(X) - f(Y)) / (X - Y)`.
pub fn fried_predict(f: &PolyExact) -> FriedPrediction {
    use FriedPrediction::*;
    let d = f.deg();
    if d % 2 == 0 || !is_prime(d as u64) {
        return if is_indecomposable(f) { AbsolutelyIrreducible } else { Reducible };
    }
    if d == 3 {
        let cube = PolyExact::monomial(3, BigRational::one());
        return match linear_equivalent(&cube, f, Over::Rational) {
            Some(_) => Reducible,
            None => AbsolutelyIrreducible,
        };
    }
    match dickson_equivalent(f) {
        Some(_) => Undetermined,
        None => AbsolutelyIrreducible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolyExact {
        PolyExact::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn witness(e: Option<Equivalence>) -> Witness {
        match e {
            Some(Equivalence::Rational(w)) => w,
            other => panic!("expected a rational witness, got {other:?}"),
        }
    }

    #[test]
    fn examples() {
        let w = witness(linear_equivalent(&p(&[0, 0, 0, 1]), &p(&[3, 0, 0, 8]), Over::Rational));
        assert_eq!((w.a, w.b, w.c, w.e), (q(8, 1), q(3, 1), q(1, 1), q(0, 1)));
        assert!(linear_equivalent(&p(&[1, 1, 0, 1]), &p(&[0, 0, 0, 1]), Over::AlgebraicClosure).is_none());
        let f = p(&[0, 0, 1, 0, 1]);
        let w = witness(linear_equivalent(&f, &p(&[0, 0, 4, 0, 1]), Over::Rational));
        assert_eq!(w.apply(&f), p(&[0, 0, 4, 0, 1]));
        // X^4 - 4X^2 needs c^2 = -1/4.
        let g = p(&[0, 0, -4, 0, 1]);
        assert!(linear_equivalent(&f, &g, Over::Rational).is_none());
        assert_eq!(
            linear_equivalent(&f, &g, Over::AlgebraicClosure),
            Some(Equivalence::Algebraic { exponent: 2, c_power: q(-1, 4) })
        );
        // Support gcd 2 from exponents 2 and 4: X^5 + X^3 + X vs X^5 + 4X^3 + 16X.
        let w = witness(linear_equivalent(&p(&[0, 1, 0, 1, 0, 1]), &p(&[0, 16, 0, 4, 0, 1]), Over::Rational));
        assert_eq!(&w.c * &w.c, q(1, 4));
        assert!(linear_equivalent(&p(&[0, 1, 0, 1, 0, 1]), &p(&[0, 15, 0, 4, 0, 1]), Over::AlgebraicClosure).is_none());
        assert!(linear_equivalent(&p(&[0, 1, 0, 1]), &p(&[0, 1, 0, 0, 1]), Over::AlgebraicClosure).is_none());
    }

    #[test]
    fn cube_roots_over_the_closure() {
        // X^4 + X vs X^4 + 2X: c^3 = 1/2 has no rational solution.
        let e = linear_equivalent(&p(&[0, 1, 0, 0, 1]), &p(&[0, 2, 0, 0, 1]), Over::AlgebraicClosure);
        assert_eq!(e, Some(Equivalence::Algebraic { exponent: 3, c_power: q(1, 2) }));
    }

    #[test]
    fn dickson_examples() {
        assert_eq!(dickson_equivalent(&p(&[0, 1, 0, 1])), Some(q(-1, 3)));
        assert_eq!(dickson_equivalent(&p(&[1, 1, 0, 1])), Some(q(-1, 3)));
        assert_eq!(dickson_equivalent(&p(&[0, 5, 0, -5, 0, 1])), Some(q(1, 1)));
        assert_eq!(dickson_equivalent(&p(&[1, 0, 0, 0, 1, 1])), None);
        assert_eq!(dickson_equivalent(&p(&[0, 1, 1, 0, 0, 1])), None);
        // Scaled and shifted Dickson polynomial.
        let d5 = dickson(5, &q(3, 1));
        let f = d5.affine_substitute(&q(2, 1), &q(-1, 1)).scale(&q(7, 1)).add(&p(&[4]));
        assert!(dickson_equivalent(&f).is_some());
    }

    #[test]
    fn fried_examples() {
        use FriedPrediction::*;
        assert_eq!(fried_predict(&p(&[0, 0, 0, 0, 1])), Reducible);
        assert_eq!(fried_predict(&p(&[1, 1, 0, 1])), AbsolutelyIrreducible);
        assert_eq!(fried_predict(&p(&[2, 0, 3, 1])), AbsolutelyIrreducible);
        assert_eq!(fried_predict(&p(&[0, 0, 3, 3, 1])), AbsolutelyIrreducible);
        assert_eq!(fried_predict(&p(&[1, 3, 3, 1])), Reducible);
        assert_eq!(fried_predict(&p(&[0, 5, 0, -5, 0, 1])), Undetermined);
        assert_eq!(fried_predict(&p(&[0, 1, 0, 0, 0, 1])), AbsolutelyIrreducible);
        assert_eq!(fried_predict(&p(&[1, 0, 1])), AbsolutelyIrreducible);
    }

    fn poly_deg(d: usize) -> impl Strategy<Value = PolyExact> {
        (prop::collection::vec(-4i64..5, d), 1i64..3).prop_map(|(mut c, l)| {
            c.push(l);
            PolyExact::from_i64s(&c)
        })
    }

    fn rat() -> impl Strategy<Value = BigRational> {
        (-4i64..5, 1i64..4).prop_map(|(n, d)| q(n, d))
    }

    fn nonzero_rat() -> impl Strategy<Value = BigRational> {
        rat().prop_filter("nonzero", |r| !r.is_zero())
    }

    fn transform() -> impl Strategy<Value = Witness> {
        (nonzero_rat(), rat(), nonzero_rat(), rat()).prop_map(|(a, b, c, e)| Witness { a, b, c, e })
    }

    proptest! {
        #[test]
        fn equivalence_relation(f in poly_deg(4), t1 in transform(), t2 in transform()) {
            let g = t1.apply(&f);
            let h = t2.apply(&g);
            let w = witness(linear_equivalent(&f, &f, Over::Rational));
            prop_assert_eq!(w.apply(&f), f.clone());
            let w = witness(linear_equivalent(&f, &g, Over::Rational));
            prop_assert_eq!(w.apply(&f), g.clone());
            let w = witness(linear_equivalent(&g, &f, Over::Rational));
            prop_assert_eq!(w.apply(&g), f.clone());
            let w = witness(linear_equivalent(&f, &h, Over::Rational));
            prop_assert_eq!(w.apply(&f), h);
        }

        #[test]
        fn closure_answers_are_consistent(f in poly_deg(5), g in poly_deg(5)) {
            let cf = depress_and_normalize(&f).unwrap().poly;
            let cg = depress_and_normalize(&g).unwrap().poly;
            let closure = linear_equivalent(&f, &g, Over::AlgebraicClosure);
            if let Some(Equivalence::Rational(w)) = &closure {
                prop_assert_eq!(w.apply(&f), g.clone());
            }
            if cf.coeff(3).is_zero() != cg.coeff(3).is_zero() {
                prop_assert!(closure.is_none());
            }
        }
    }
}
