//! Odd normal forms: `f(x0 + t) - f(x0)` odd in `t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field_poly::{PolyExact, PolyModP};

/// `f(X) = g(X - x0) + delta` with `g` odd.
#[derive(Clone, Debug, PartialEq)]
pub struct OddForm {
    pub x0: BigRational,
    pub delta: BigRational,
    pub g: PolyExact,
}

/// The only possible centre is the one killing the `t^{d-1}` coefficient,
/// so `None` means no odd form exists.
pub fn odd_form(f: &PolyExact) -> Option<OddForm> {
    let d = f.degree()?;
    if d == 0 {
        return None;
    }
    let x0 = -f.coeff(d - 1) / (f.lead() * BigRational::from_integer(BigInt::from(d)));
    let delta = f.eval(&x0);
    let g = f
        .affine_substitute(&BigRational::from_integer(1.into()), &x0)
        .sub(&PolyExact::constant(delta.clone()));
    g.is_odd().then_some(OddForm { x0, delta, g })
}

/// `(x0, delta, g)` over `F_p`; requires `p` not dividing `deg f`.
pub fn odd_form_mod_p(f: &PolyModP) -> Result<Option<(u64, u64, PolyModP)>> {
    let k = f.field();
    let Some(d) = f.degree().filter(|&d| d > 0) else {
        return Ok(None);
    };
    let dd = k.inv(d as u64 % k.modulus()).ok_or_else(|| {
        Error::InvalidInput(format!("p = {} divides the degree {d}", k.modulus()))
    })?;
    let lead_inv = k.inv(f.lead().unwrap()).unwrap();
    let x0 = k.neg(k.mul(k.mul(f.coeff(d - 1).value(), lead_inv), dd));
    let delta = f.eval(x0);
    let g = f
        .compose(&PolyModP::new(k, vec![x0, 1]))
        .sub(&PolyModP::new(k, vec![delta]));
    let odd = g.coeffs().iter().step_by(2).all(|c| c.is_zero());
    Ok(odd.then_some((x0, delta, g)))
}
