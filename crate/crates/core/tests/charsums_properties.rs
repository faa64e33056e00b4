use std::collections::HashMap;

use expsum::charsums::{
    normalized_table, sum_table, twisted_extend, value_distribution, Normalization, SumTable,
};
use expsum::field_poly::{is_prime, PolyExact, PolyModP, PrimeField};
use expsum::genericity::{critical_data, is_morse};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&n| is_prime(n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn parseval_and_conjugation(
        c in prop::collection::vec(-30i64..30, 2..7),
        p in prop::sample::select(primes_in(11, 3000)),
    ) {
        let f = PolyModP::from_i64s(PrimeField::new(p).unwrap(), &c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let dist = value_distribution(&f);
        let t = sum_table(&f).unwrap();
        let lhs: f64 = t.values.iter().map(|w| w.norm_sqr() * p as f64).sum();
        let rhs = (p * dist.collisions()) as f64;
        prop_assert!((lhs - rhs).abs() <= 1e-6 * rhs);
        for a in 1..p {
            let diff = t.get(p - a) - t.get(a).conj();
            prop_assert!(diff.norm() <= t.error_bound);
        }
    }
}

#[test]
fn masking_policy() {
    let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
    let tables: HashMap<u64, SumTable> = [5u64, 7, 11]
        .iter()
        .map(|&p| (p, sum_table(&f.mod_p(p).unwrap()).unwrap()))
        .collect();
    let zero = Complex64::new(0.0, 0.0);
    for (&p, t) in &tables {
        assert_eq!(t.get(0), zero);
        assert_eq!(t.get(p), zero);
        assert!(t.raw(0).norm() > 1.0);
        assert_eq!(twisted_extend(&tables, 2 * p, p, false).unwrap(), zero);
    }
    assert_eq!(twisted_extend(&tables, 7, 35, false).unwrap(), zero);
    assert_eq!(twisted_extend(&tables, 1, 25, false).unwrap(), zero);
    assert_eq!(twisted_extend(&tables, 1, 5 * 7 * 7, false).unwrap(), zero);
    assert_ne!(twisted_extend(&tables, 1, 35, false).unwrap(), zero);
}

#[test]
fn normalized_modulus_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let primes = primes_in(50, 2000);
    let mut checked = 0;
    while checked < 1000 {
        let d = rng.random_range(3..7usize);
        let p = primes[rng.random_range(0..primes.len())];
        let mut c: Vec<i64> = (0..d).map(|_| rng.random_range(-20..20)).collect();
        c.push(1);
        let f = PolyModP::from_i64s(PrimeField::new(p).unwrap(), &c);
        if (d as u64 - 1) % p == 0 || !is_morse(&f).unwrap() {
            continue;
        }
        let t = sum_table(&f).unwrap();
        let cd = critical_data(&f).unwrap();
        let n = normalized_table(&t, Normalization::from_critical_data(&cd, None)).unwrap();
        for _ in 0..10 {
            let a = rng.random_range(1..p);
            assert!((n.get(a).norm() - t.get(a).norm()).abs() < 1e-12);
        }
        checked += 10;
    }
}
