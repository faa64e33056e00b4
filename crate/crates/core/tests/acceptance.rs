//! Acceptance checks. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero when any criterion fails.

use std::collections::HashMap;
use std::time::Instant;

use expsum::charsums::{squarefree_factors, sum_direct, sum_table, twisted_extend, value_distribution, SumTable};
use expsum::field_poly::{parse_rational, PolyExact};
use expsum::genericity::{classify, default_certificate_primes, linear_equivalent, Over, Verdict};
use expsum::moments::{
    cross_moment_tables, dichotomy_scan, fourth_moment_oracle, prime_moment, primes_between, second_moment_oracle, shao_series,
    sweep_q, DirectTables, GoodPrimes, SweepOptions,
};
use expsum::rmt::{mc_trace_moment, reference_moment, GroupSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Multiple of `p^(-1/2)` allowed in the per-prime moment checks.
const T: f64 = 10.0;

fn poly(c: &[i64]) -> PolyExact {
    PolyExact::from_i64s(c)
}

fn table(f: &PolyExact, p: u64) -> SumTable {
    sum_table(&f.mod_p(p).unwrap()).unwrap()
}

fn weil_bound() -> (bool, String) {
    let f = poly(&[1, 1, 0, 1]);
    let max = primes_between(5, 2000)
        .into_iter()
        .map(|p| table(&f, p).values[1..].iter().map(|w| w.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    (max <= 2.0 + 1e-8, format!("max |W| = {max:.10}"))
}

fn twisted_multiplicativity() -> (bool, String) {
    let f = poly(&[1, 1, 0, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tables: HashMap<u64, SumTable> = HashMap::new();
    let (mut worst, mut checked) = (0.0f64, 0);
    while checked < 200 {
        let q = rng.random_range(2..=10_000u64);
        let Some(factors) = squarefree_factors(q) else { continue };
        let a = rng.random_range(1..q);
        if num_integer::gcd(a, q) != 1 {
            continue;
        }
        for p in factors {
            tables.entry(p).or_insert_with(|| table(&f, p));
        }
        let fast = twisted_extend(&tables, a, q, true).unwrap();
        let direct = sum_direct(&f, a, q).unwrap();
        worst = worst.max((fast - direct).norm() / direct.norm().max(1.0));
        checked += 1;
    }
    (worst <= 1e-6, format!("200 moduli, max relative error {worst:.2e}"))
}

fn second_moment_law() -> (bool, String) {
    let f = poly(&[1, 1, 0, 1]);
    let worst = primes_between(100, 10_000)
        .into_iter()
        .map(|p| (p as f64).sqrt() * (prime_moment(&table(&f, p), 2) - 1.0).abs())
        .fold(0.0, f64::max);
    (worst <= T, format!("max sqrt(p)|M1 - 1| = {worst:.4}"))
}

fn component_counting() -> (bool, String) {
    let f = poly(&[0, 0, 0, 0, 1]);
    let good = GoodPrimes::new(&f);
    let worst = primes_between(3, 10_000)
        .into_iter()
        .filter(|&p| good.is_good(p))
        .map(|p| {
            let target = if p % 4 == 1 { 3.0 } else { 1.0 };
            (p as f64).sqrt() * (prime_moment(&table(&f, p), 2) - target).abs()
        })
        .fold(0.0, f64::max);
    (worst <= T, format!("max sqrt(p)|M1 - target| = {worst:.4}"))
}

fn fourth_moment_dichotomy() -> (bool, String) {
    let primes = primes_between(2, 10_000);
    let f = poly(&[1, 1, 0, 1]);
    let good = GoodPrimes::new(&f);
    let worst = primes
        .iter()
        .filter(|&&p| good.is_good(p))
        .map(|&p| (p as f64).sqrt() * (prime_moment(&table(&f, p), 4) - 2.0).abs())
        .fold(0.0, f64::max);
    let scan = dichotomy_scan(&poly(&[0, 0, 0, 0, 1]), &primes, T).unwrap();
    let pass = worst <= T && scan.high_fraction >= 0.4;
    (pass, format!("cubic max sqrt(p)|M2 - 2| = {worst:.4}; quartic high fraction {:.4} ({:?})", scan.high_fraction, scan.verdict))
}

fn oracle_equivalence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = primes_between(51, 1999);
    let (mut worst, mut done) = (0.0f64, 0);
    while done < 20 {
        let d = rng.random_range(3..=6usize);
        let p = primes[rng.random_range(0..primes.len())];
        let mut c: Vec<i64> = (0..d).map(|_| rng.random_range(-100..100)).collect();
        c.push(rng.random_range(1..100));
        let f = poly(&c);
        if !f.is_good_reduction(p) {
            continue;
        }
        let g = f.mod_p(p).unwrap();
        let t = sum_table(&g).unwrap();
        let o2 = second_moment_oracle(&g).unwrap();
        let o4 = fourth_moment_oracle(&value_distribution(&g));
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        worst = worst.max(rel(prime_moment(&t, 2), o2)).max(rel(prime_moment(&t, 4), o4));
        done += 1;
    }
    (worst <= 1e-6, format!("20 instances, max relative error {worst:.2e}"))
}

fn shao_law() -> (bool, String) {
    let xs = [1_000u64, 10_000, 100_000];
    let cubic = shao_series(&poly(&[1, 1, 0, 1]), &xs, Some(2)).unwrap();
    let square = shao_series(&poly(&[1, 0, 2, 0, 1]), &xs, Some(3)).unwrap();
    let cubic_worst = cubic.iter().map(|s| s.drift.abs()).fold(0.0, f64::max);
    let square_min = square.iter().map(|s| s.drift).fold(f64::INFINITY, f64::min);
    (
        cubic_worst <= 2.0 && square_min >= -2.0,
        format!("cubic max |S - loglog x| = {cubic_worst:.4}; (X^2+1)^2 min S - 2 loglog x = {square_min:.4}"),
    )
}

fn rmt_references() -> (bool, String) {
    let (su, usp) = (GroupSpec::su(4), GroupSpec::usp(4));
    let mut pass = true;
    let mut worst = 0.0f64;
    for k in 1..=4u32 {
        let r = reference_moment(su, k);
        pass &= r.exact && r.value == (1..=k).product::<u32>() as f64;
        let (mean, se) = mc_trace_moment(su, k, 100_000, 100 + k as u64).unwrap();
        worst = worst.max((mean - r.value).abs() / se);
    }
    for k in 1..=2u32 {
        let r = reference_moment(usp, k);
        pass &= r.exact && r.value == [1.0, 3.0][k as usize - 1];
        let (mean, se) = mc_trace_moment(usp, k, 100_000, 200 + k as u64).unwrap();
        worst = worst.max((mean - r.value).abs() / se);
    }
    (pass && worst <= 3.0, format!("references exact: {pass}; max |MC - ref| / SE = {worst:.3}"))
}

fn cross_moments() -> (bool, String) {
    let (f, g, h) = (poly(&[1, 1, 0, 1]), poly(&[1, 2, 0, 1]), poly(&[0, 1, 1, 0, 0, 1]));
    let distinct = linear_equivalent(&f, &g, Over::Rational).is_none();
    let quintic = classify(&h, &default_certificate_primes(5, 4)).map(|r| r.verdict) == Ok(Verdict::SidonMorse);
    let mut pass = distinct && quintic;
    let mut detail = Vec::new();
    for p in [10_007u64, 20_011] {
        let tol = T / (p as f64).sqrt();
        let (tf, tg, th) = (table(&f, p), table(&g, p), table(&h, p));
        let cubic = |k| cross_moment_tables(&[&tf, &tg], k).unwrap();
        let (k1, k2) = (cubic(1), cubic(2));
        let mixed = cross_moment_tables(&[&th, &tf], 1).unwrap();
        pass &= (k1 - 1.0).abs() <= tol && (k2 - 4.0).abs() <= tol && (mixed - 1.0).abs() <= tol;
        detail.push(format!("p={p}: k1={k1:.4} k2={k2:.4} quintic-cubic k1={mixed:.4} (tol {tol:.4})"));
    }
    (pass, detail.join("; "))
}

fn sweep_trends() -> (bool, String) {
    let f = poly(&[1, 1, 0, 1]);
    let r = sweep_q(&[f], 1, 30_000, &SweepOptions::default(), &DirectTables).unwrap();
    let bounded = r.rows.iter().all(|row| row.ratio2 <= 1.0);
    let decreasing = r.rows.windows(2).all(|w| w[1].ratio1 < w[0].ratio1);
    let ratios: Vec<String> = r.rows.iter().map(|row| format!("x={} r1={:.4} r2={:.4}", row.x, row.ratio1, row.ratio2)).collect();
    (bounded && decreasing && r.rows.len() == 4, ratios.join(", "))
}

fn classifier() -> (bool, String) {
    let run = |c: &[i64]| classify(&poly(c), &default_certificate_primes(c.len() - 1, 4)).unwrap();
    let mut fails = Vec::new();
    if run(&[0, 0, 0, 1]).verdict != Verdict::NotMorse {
        fails.push("X^3");
    }
    let cubic = run(&[1, 1, 0, 1]);
    let witness_ok = cubic.odd_witness.as_ref().is_some_and(|o| {
        o.x0 == parse_rational("0").unwrap() && o.delta == parse_rational("1").unwrap() && o.g == poly(&[0, 1, 0, 1])
    });
    if cubic.verdict != Verdict::SymmetricSidonMorse || !witness_ok {
        fails.push("X^3+X+1");
    }
    let square = run(&[1, 0, 2, 0, 1]);
    if !square.decomposition.as_ref().is_some_and(|(g, h)| g.compose(h) == poly(&[1, 0, 2, 0, 1])) {
        fails.push("(X^2+1)^2");
    }
    if run(&[0, 1, 0, 1]).dickson_param != Some(parse_rational("-1/3").unwrap()) {
        fails.push("X^3+X");
    }
    if !run(&[0, 1, 0, 0, 0, 0, 1]).indecomposable {
        fails.push("X^6+X");
    }
    (fails.is_empty(), if fails.is_empty() { "all five examples".into() } else { format!("failed: {fails:?}") })
}

fn main() {
    let criteria: [(&str, fn() -> (bool, String)); 11] = [
        ("Weil bound", weil_bound),
        ("twisted multiplicativity", twisted_multiplicativity),
        ("second-moment law", second_moment_law),
        ("component counting", component_counting),
        ("fourth-moment dichotomy", fourth_moment_dichotomy),
        ("oracle equivalence", oracle_equivalence),
        ("average second moment", shao_law),
        ("random-matrix references", rmt_references),
        ("cross-moment targets", cross_moments),
        ("sweep trends", sweep_trends),
        ("classifier correctness", classifier),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = check();
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.1}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
