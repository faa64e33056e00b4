//! Canonical representatives under `f -> a f(cX + e) + b`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::exact::{rational_to_string, PolyExact};
use crate::error::{Error, Result};

/// `poly(X) = a * f(c X + e) + b` for the input `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub poly: PolyExact,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub e: BigRational,
}

#[derive(Serialize)]
struct CanonicalJson {
    poly: Vec<String>,
    a: String,
    b: String,
    c: String,
    e: String,
}

impl Canonical {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CanonicalJson {
            poly: self.poly.to_strings(),
            a: rational_to_string(&self.a),
            b: rational_to_string(&self.b),
            c: rational_to_string(&self.c),
            e: rational_to_string(&self.e),
        })
        .expect("serializable")
    }
}

/// Monic, depressed (no `X^{d-1}` term) and with zero constant term.
pub fn depress_and_normalize(f: &PolyExact) -> Result<Canonical> {
    let d = f.deg();
    if d < 2 {
        return Err(Error::InvalidInput(format!("canonical form needs degree >= 2, got {d}")));
    }
    let lead = f.lead();
    let a = BigRational::one() / &lead;
    let e = -f.coeff(d - 1) / (lead * BigRational::from_integer(BigInt::from(d)));
    let c = BigRational::one();
    let shifted = f.affine_substitute(&c, &e).scale(&a);
    let b = -shifted.coeff(0);
    let poly = shifted.add(&PolyExact::constant(b.clone()));
    debug_assert!(poly.coeff(d - 1).is_zero() && poly.coeff(0).is_zero());
    Ok(Canonical { poly, a, b, c, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cubic_example() {
        let f = PolyExact::from_i64s(&[1, 0, 6, 2]);
        let c = depress_and_normalize(&f).unwrap();
        assert_eq!(c.poly, PolyExact::from_i64s(&[0, -3, 0, 1]));
        assert_eq!(c.e, q(-1, 1));
        assert_eq!(c.a, q(1, 2));
        assert_eq!(c.c, q(1, 1));
    }

    #[test]
    fn fixed_points_and_quadratics() {
        let f = PolyExact::from_i64s(&[0, 1, 0, 1]);
        assert_eq!(depress_and_normalize(&f).unwrap().poly, f);
        let g = PolyExact::from_i64s(&[7, -5, 3]);
        assert_eq!(depress_and_normalize(&g).unwrap().poly, PolyExact::from_i64s(&[0, 0, 1]));
        assert!(depress_and_normalize(&PolyExact::from_i64s(&[1, 1])).is_err());
    }

    proptest! {
        #[test]
        fn records_reproduce_output(c in prop::collection::vec(-20i64..20, 2..6), l in 1i64..6) {
            let mut c = c;
            c.push(l);
            let f = PolyExact::from_i64s(&c);
            let can = depress_and_normalize(&f).unwrap();
            let rebuilt = f.affine_substitute(&can.c, &can.e).scale(&can.a)
                .add(&PolyExact::constant(can.b.clone()));
            prop_assert_eq!(&rebuilt, &can.poly);
            prop_assert!(can.poly.lead().is_one());
            // Idempotent.
            prop_assert_eq!(depress_and_normalize(&can.poly).unwrap().poly, can.poly);
        }
    }
}
