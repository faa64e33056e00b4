//! Functional decomposition `f = g(h(X))` over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::field_poly::PolyExact;

/// `f = g(h(X))` with `h` monic, `h(0) = 0` and `1 < deg h < deg f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub g: PolyExact,
    pub h: PolyExact,
}

/// The unique monic `h` of degree `e` with `h(0) = 0` whose `k`-th power
/// matches the top `e` coefficients of `f / lead(f)`, `k = d / e`.
fn right_factor_candidate(f: &PolyExact, e: usize) -> PolyExact {
    let d = f.deg();
    let k = d / e;
    let lead = f.lead();
    let kk = BigRational::from_integer(BigInt::from(k));
    let mut h: Vec<BigRational> = vec![BigRational::zero(); e + 1];
    h[e] = BigRational::from_integer(1.into());
    for i in 1..e {
        let partial = PolyExact::from_rationals(&h).pow(k);
        let target = f.coeff(d - i) / &lead;
        h[e - i] = (target - partial.coeff(d - i)) / &kk;
    }
    PolyExact::from_rationals(&h)
}

/// Digits of `f` in base `h`, if they are all constants.
fn base_expansion(f: &PolyExact, h: &PolyExact) -> Option<PolyExact> {
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divrem(h);
        if r.deg() > 0 {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(PolyExact::from_rationals(&digits))
}

/// A decomposition of `f`, or `None` when `f` is indecomposable.
pub fn decompose(f: &PolyExact) -> Option<Decomposition> {
    let d = f.deg();
    (2..d).filter(|e| d % e == 0).find_map(|e| {
        let h = right_factor_candidate(f, e);
        let g = base_expansion(f, &h)?;
        (g.compose(&h) == *f).then_some(Decomposition { g, h })
    })
}

/// `true` iff `f` is not a composition of two polynomials of degree >= 2.
pub fn is_indecomposable(f: &PolyExact) -> bool {
    decompose(f).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let w = decompose(&PolyExact::from_i64s(&[1, 0, 2, 0, 1])).unwrap();
        assert_eq!(w.h, PolyExact::from_i64s(&[0, 0, 1]));
        assert_eq!(w.g, PolyExact::from_i64s(&[1, 2, 1]));
        assert!(is_indecomposable(&PolyExact::from_i64s(&[0, 1, 0, 0, 0, 1])));
        assert!(is_indecomposable(&PolyExact::from_i64s(&[0, 1, 0, 0, 0, 0, 1])));
        assert!(!is_indecomposable(&PolyExact::from_i64s(&[0, 0, 0, 0, 1])));
    }

    fn small_poly(deg: usize) -> impl Strategy<Value = PolyExact> {
        (prop::collection::vec(-5i64..5, deg), 1i64..4).prop_map(|(mut c, l)| {
            c.push(l);
            PolyExact::from_i64s(&c)
        })
    }

    proptest! {
        #[test]
        fn compositions_are_detected(g in small_poly(2), h in small_poly(3)) {
            let f = g.compose(&h);
            let w = decompose(&f).expect("composite input");
            prop_assert_eq!(w.g.compose(&w.h), f);
            prop_assert!(w.h.lead() == BigRational::from_integer(1.into()));
            prop_assert!(w.h.coeff(0).is_zero());
        }
    }
}
