//! Sidon and symmetric Sidon tests on finite sets of field elements.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field_poly::ExtFieldElem;

fn check_distinct(values: &[ExtFieldElem]) -> Result<()> {
    let mut seen = HashSet::new();
    if values.iter().all(|v| seen.insert(v.coeffs().to_vec())) {
        Ok(())
    } else {
        Err(Error::DuplicateValues)
    }
}

/// `true` iff two distinct unordered pairs (repetition allowed) share a sum
/// other than `skip`.
fn has_pair_collision(values: &[ExtFieldElem], skip: Option<&ExtFieldElem>) -> bool {
    let mut sums: HashMap<Vec<u64>, (usize, usize)> = HashMap::new();
    for i in 0..values.len() {
        for j in i..values.len() {
            let s = &values[i] + &values[j];
            if skip.is_some_and(|a| *a == s) {
                continue;
            }
            if sums.insert(s.coeffs().to_vec(), (i, j)).is_some() {
                return true;
            }
        }
    }
    false
}

/// Whether `a + b = c + d` has only the solutions with `a` in `{c, d}`.
pub fn is_sidon(values: &[ExtFieldElem]) -> Result<bool> {
    check_distinct(values)?;
    Ok(!has_pair_collision(values, None))
}

/// The symmetry point `alpha` if `S = alpha - S` and every solution of
/// `a + b = c + d` has `a` in `{c, d}` or `b = alpha - a`.
pub fn is_symmetric_sidon(values: &[ExtFieldElem]) -> Option<ExtFieldElem> {
    let first = values.first()?;
    check_distinct(values).ok()?;
    let field = first.field().clone();
    let k = field.base();
    let r = values.len() as u64 % k.modulus();
    let inv_r = k.inv(r)?;
    let total = values
        .iter()
        .fold(ExtFieldElem::from_base(field.clone(), 0), |acc, v| &acc + v);
    let alpha = total.scale(k.mul(2, inv_r));
    let set: HashSet<Vec<u64>> = values.iter().map(|v| v.coeffs().to_vec()).collect();
    if !values.iter().all(|v| set.contains((&alpha - v).coeffs())) {
        return None;
    }
    (!has_pair_collision(values, Some(&alpha))).then_some(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::{ExtField, PolyModP, PrimeField};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn prime_field_set(p: u64, vals: &[i64]) -> Vec<ExtFieldElem> {
        let k = PrimeField::new(p).unwrap();
        let f = Arc::new(ExtField::new(&PolyModP::x(k)).unwrap());
        vals.iter().map(|&v| ExtFieldElem::from_base(f.clone(), k.from_i64(v))).collect()
    }

    #[test]
    fn sidon_examples() {
        assert!(is_sidon(&prime_field_set(101, &[5, 17])).unwrap());
        assert!(!is_sidon(&prime_field_set(7, &[0, 1, 2, 3])).unwrap());
        assert!(is_sidon(&prime_field_set(101, &[0, 1, 3, 7])).unwrap());
        assert_eq!(is_sidon(&prime_field_set(7, &[1, 8])), Err(Error::DuplicateValues));
    }

    #[test]
    fn symmetric_examples() {
        let s = prime_field_set(101, &[-4, 4]);
        assert_eq!(is_symmetric_sidon(&s).unwrap().to_base().unwrap().value(), 0);
        // 1 + 1 = 0 + 2 is a solution with b = alpha - a, so {0,1,2} passes.
        let s = prime_field_set(101, &[0, 1, 2]);
        assert_eq!(is_symmetric_sidon(&s).unwrap().to_base().unwrap().value(), 2);
        // 0 + 2 = 1 + 1 with alpha = 3 is not obvious.
        assert!(is_symmetric_sidon(&prime_field_set(101, &[0, 1, 2, 3])).is_none());
        assert!(is_symmetric_sidon(&prime_field_set(101, &[0, 1, 3, 7])).is_none());
    }

    #[test]
    fn symmetric_pairs_in_extension() {
        let k = PrimeField::new(7).unwrap();
        let f = Arc::new(ExtField::new(&PolyModP::from_i64s(k, &[1, 0, 1])).unwrap());
        let i = ExtFieldElem::new(f.clone(), vec![0, 1]);
        let three = ExtFieldElem::from_base(f, 3);
        let s = vec![&three + &i, &three - &i];
        assert!(is_sidon(&s).unwrap());
        assert_eq!(is_symmetric_sidon(&s).unwrap().to_base().unwrap().value(), 6);
    }

    proptest! {
        #[test]
        fn sidon_is_affine_invariant(
            vals in prop::collection::hash_set(0i64..1009, 2..7),
            a in 1i64..1009,
            d in 0i64..1009,
        ) {
            let vals: Vec<i64> = vals.into_iter().collect();
            let moved: Vec<i64> = vals.iter().map(|v| a * v + d).collect();
            let s = prime_field_set(1009, &vals);
            let t = prime_field_set(1009, &moved);
            prop_assert_eq!(is_sidon(&s).unwrap(), is_sidon(&t).unwrap());
            prop_assert_eq!(is_symmetric_sidon(&s).is_some(), is_symmetric_sidon(&t).is_some());
        }
    }
}
