//! The Morse condition and critical values over `F_p`.

use crate::error::{Error, Result};
use crate::field_poly::{
    critical_value_poly_mod_p, splitting_roots, ExtFieldElem, Fp, PolyModP, DEFAULT_EXTENSION_CAP,
};

fn degree_at_least_two(f: &PolyModP) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 2 => Ok(d),
        d => Err(Error::InvalidInput(format!(
            "Morse test needs degree >= 2, got {}",
            d.map_or("-inf".to_string(), |d| d.to_string())
        ))),
    }
}

/// `f` squarefree, `f'` squarefree of degree `d - 1`, and distinct critical
/// values. Requires `p > 2d - 1`.
pub fn is_morse(f: &PolyModP) -> Result<bool> {
    let d = degree_at_least_two(f)?;
    if f.modulus() <= 2 * d as u64 - 1 {
        return Err(Error::SmallPrime { p: f.modulus(), degree: d });
    }
    if !f.is_squarefree()? {
        return Ok(false);
    }
    let fd = f.derivative();
    if fd.degree() != Some(d - 1) || !fd.is_squarefree()? {
        return Ok(false);
    }
    critical_value_poly_mod_p(f)?.is_squarefree()
}

/// Critical values of a Morse polynomial, their sum, and the shift `c` with
/// `(d - 1) c + S = 0` that centres them.
#[derive(Clone, Debug)]
pub struct CriticalData {
    pub values: Vec<ExtFieldElem>,
    pub value_sum: Fp,
    pub shift: Fp,
}

pub fn critical_data(f: &PolyModP) -> Result<CriticalData> {
    critical_data_with_cap(f, DEFAULT_EXTENSION_CAP)
}

pub fn critical_data_with_cap(f: &PolyModP, cap: usize) -> Result<CriticalData> {
    let d = degree_at_least_two(f)?;
    let k = f.field();
    let p = k.modulus();
    if (d as u64 - 1) % p == 0 {
        return Err(Error::BadCharacteristic { p, degree: d });
    }
    if !is_morse(f)? {
        return Err(Error::InvalidInput(format!("{f} is not Morse")));
    }
    let cv = critical_value_poly_mod_p(f)?.monic();
    let values = splitting_roots(&cv, cap)?;
    let value_sum = -cv.coeff(d - 2);
    let enumerated = values
        .iter()
        .fold(ExtFieldElem::from_base(values[0].field().clone(), 0), |acc, v| &acc + v);
    debug_assert_eq!(enumerated.to_base(), Some(value_sum));
    let inv = k.inv((d as u64 - 1) % p).expect("p does not divide d - 1");
    let shift = -(value_sum * k.elem(inv));
    Ok(CriticalData { values, value_sum, shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::PrimeField;

    fn poly(p: u64, c: &[i64]) -> PolyModP {
        PolyModP::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn morse_examples() {
        assert_eq!(is_morse(&poly(11, &[0, 0, 0, 1])), Ok(false));
        assert_eq!(is_morse(&poly(11, &[1, 1, 0, 1])), Ok(true));
        assert_eq!(is_morse(&poly(7, &[1, 0, 1])), Ok(true));
        assert_eq!(is_morse(&poly(5, &[1, 1, 0, 1])), Err(Error::SmallPrime { p: 5, degree: 3 }));
        // (X^2 + 1)^2 has repeated critical values.
        assert_eq!(is_morse(&poly(101, &[1, 0, 2, 0, 1])), Ok(false));
    }

    /// Hand oracle: f, f' and CV_f have nonzero discriminants mod 11.
    #[test]
    fn cubic_conditions_by_hand() {
        // disc(X^3 + X + 1) = -31, disc(3X^2 + 1) = -12, disc(27Y^2 - 54Y + 31) = 54^2 - 4*27*31.
        for v in [-31i64, -12, 54 * 54 - 4 * 27 * 31] {
            assert_ne!(v.rem_euclid(11), 0);
        }
    }

    #[test]
    fn critical_data_examples() {
        let cd = critical_data(&poly(11, &[0, 1, 0, 1])).unwrap();
        assert_eq!(cd.value_sum.value(), 0);
        assert_eq!(cd.shift.value(), 0);
        for p in [11u64, 13, 101, 1009] {
            let cd = critical_data(&poly(p, &[1, 1, 0, 1])).unwrap();
            assert_eq!(cd.values.len(), 2);
            assert_eq!(cd.value_sum.value(), 2);
            assert_eq!(cd.shift.value(), p - 1);
        }
        assert_eq!(
            critical_data(&poly(5, &[0, 1, 0, 0, 0, 0, 1])).unwrap_err(),
            Error::BadCharacteristic { p: 5, degree: 6 }
        );
    }

    #[test]
    fn values_are_roots_of_cv() {
        let f = poly(1009, &[3, -2, 0, 5, 0, 1]);
        let cd = critical_data(&f).unwrap();
        let cv = critical_value_poly_mod_p(&f).unwrap();
        for v in &cd.values {
            let mut acc = ExtFieldElem::from_base(v.field().clone(), 0);
            for &c in cv.coeffs().iter().rev() {
                acc = &(&acc * v) + &ExtFieldElem::from_base(v.field().clone(), c);
            }
            assert!(acc.is_zero());
        }
        let d = 5u64;
        assert_eq!(((d - 1) * cd.shift.value() + cd.value_sum.value()) % 1009, 0);
    }
}
