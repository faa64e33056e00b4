//! Per-prime moments of `|W(a; p)|` with their oracles and references.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::oracle::{fourth_moment_oracle, second_moment_oracle};
use crate::charsums::{sum_table_from_dist, value_distribution, SumTable};
use crate::error::{Error, Result};
use crate::field_poly::{critical_value_poly, discriminant, is_prime, PolyExact};
use crate::genericity::{GenericityReport, Verdict};
use crate::rmt::{reference_moment, GroupSpec};

/// Exponents reported by default.
pub const DEFAULT_EXPONENTS: [u32; 5] = [1, 2, 4, 6, 8];

/// `(1/p) sum_{a=1}^{p-1} |W(a; p)|^exponent`.
pub fn prime_moment(table: &SumTable, exponent: u32) -> f64 {
    let s: f64 = table.values[1..]
        .iter()
        .map(|w| match exponent {
            1 => w.norm(),
            e => w.norm_sqr().powi((e / 2) as i32) * if e % 2 == 1 { w.norm() } else { 1.0 },
        })
        .sum();
    s / table.p as f64
}

/// Primes at which the reduction of `f` keeps its degree, exceeds it, and
/// keeps `f'` and the critical-value polynomial squarefree whenever they
/// are squarefree over `Q`.
#[derive(Clone, Debug)]
pub struct GoodPrimes {
    f: PolyExact,
    discriminants: Vec<num_rational::BigRational>,
}

impl GoodPrimes {
    pub fn new(f: &PolyExact) -> Self {
        let mut discriminants = Vec::new();
        if f.deg() >= 2 {
            discriminants.push(discriminant(&f.derivative()));
            if let Ok(cv) = critical_value_poly(f) {
                discriminants.push(discriminant(&cv));
            }
        }
        discriminants.retain(|d| !d.is_zero());
        Self { f: f.clone(), discriminants }
    }

    pub fn is_good(&self, p: u64) -> bool {
        is_prime(p)
            && p > self.f.deg() as u64
            && self.f.is_good_reduction(p)
            && self.discriminants.iter().all(|d| {
                let big = num_bigint::BigInt::from(p);
                !(d.numer() % &big).is_zero() && !(d.denom() % &big).is_zero()
            })
    }

    pub fn filter(&self, primes: &[u64]) -> Vec<u64> {
        primes.iter().copied().filter(|&p| self.is_good(p)).collect()
    }
}

/// The compact group predicted for `f`, when there is one.
pub fn predicted_group(report: &GenericityReport) -> Option<GroupSpec> {
    let n = report.polynomial.deg().checked_sub(1)?;
    match report.verdict {
        Verdict::SymmetricSidonMorse if n % 2 == 0 => Some(GroupSpec::usp(n)),
        Verdict::SidonMorse => Some(GroupSpec::su(n)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub p: u64,
    pub moments: BTreeMap<u32, f64>,
    pub oracle_values: BTreeMap<u32, f64>,
    /// Exact group moments `E|Tr g|^e`, only inside the stable range.
    pub reference: BTreeMap<u32, f64>,
    /// `sqrt(p) (M - reference)` at the largest exponent having a reference.
    pub discrepancy_sqrt_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

fn check_exponents(exponents: &[u32]) -> Result<()> {
    match exponents.iter().find(|&&e| e != 1 && (e == 0 || e % 2 == 1)) {
        Some(e) => Err(Error::InvalidInput(format!("exponent {e} is neither 1 nor a positive even integer"))),
        None if exponents.is_empty() => Err(Error::InvalidInput("no exponents requested".into())),
        None => Ok(()),
    }
}

/// Moments of `f` at `p`, both oracles, and the references of `group`.
/// An oracle that cannot run at `p` is reported in `flag`.
pub fn moment_report(f: &PolyExact, p: u64, exponents: &[u32], group: Option<GroupSpec>) -> Result<MomentReport> {
    check_exponents(exponents)?;
    let reduced = f.reduce_mod_p(p)?.poly;
    let dist = value_distribution(&reduced);
    let table = sum_table_from_dist(&dist, reduced.degree().unwrap_or(0));
    let moments = exponents.iter().map(|&e| (e, prime_moment(&table, e))).collect();
    let mut oracle_values = BTreeMap::new();
    let mut flag = None;
    match second_moment_oracle(&reduced) {
        Ok(v) => {
            oracle_values.insert(2, v);
        }
        Err(e) => flag = Some(e.to_string()),
    }
    oracle_values.insert(4, fourth_moment_oracle(&dist));
    let reference: BTreeMap<u32, f64> = group
        .map(|g| {
            exponents
                .iter()
                .filter(|&&e| e % 2 == 0)
                .filter_map(|&e| {
                    let r = reference_moment(g, e / 2);
                    r.exact.then_some((e, r.value))
                })
                .collect()
        })
        .unwrap_or_default();
    let discrepancy_sqrt_p = reference
        .iter()
        .next_back()
        .map(|(e, r)| (p as f64).sqrt() * (prime_moment(&table, *e) - r));
    Ok(MomentReport { p, moments, oracle_values, reference, discrepancy_sqrt_p, flag })
}

/// One report per prime, in the order given, computed in parallel.
pub fn moment_reports(f: &PolyExact, primes: &[u64], exponents: &[u32], group: Option<GroupSpec>) -> Result<Vec<MomentReport>> {
    primes.par_iter().map(|&p| moment_report(f, p, exponents, group)).collect()
}

fn cell(v: Option<&f64>) -> String {
    v.map(|x| format!("{x:.12e}")).unwrap_or_default()
}

/// CSV with header `p,m<e>...,oracle2,oracle4,ref<e>...,discrepancy_sqrt_p,flag`.
pub fn moment_reports_csv(reports: &[MomentReport], exponents: &[u32]) -> String {
    let mut out = String::from("p");
    for e in exponents {
        write!(out, ",m{e}").unwrap();
    }
    out.push_str(",oracle2,oracle4");
    for e in exponents.iter().filter(|&&e| e % 2 == 0) {
        write!(out, ",ref{e}").unwrap();
    }
    out.push_str(",discrepancy_sqrt_p,flag\n");
    for r in reports {
        write!(out, "{}", r.p).unwrap();
        for e in exponents {
            write!(out, ",{}", cell(r.moments.get(e))).unwrap();
        }
        write!(out, ",{},{}", cell(r.oracle_values.get(&2)), cell(r.oracle_values.get(&4))).unwrap();
        for e in exponents.iter().filter(|&&e| e % 2 == 0) {
            write!(out, ",{}", cell(r.reference.get(e))).unwrap();
        }
        let flag = r.flag.as_deref().unwrap_or("").replace([',', '\n'], ";");
        writeln!(out, ",{},{}", cell(r.discrepancy_sqrt_p.as_ref()), flag).unwrap();
    }
    out
}

/// `(1/p) sum_{a != 0} |prod_i W_i(a; p)|^(2k)` from tables at one prime.
pub fn cross_moment_tables(tables: &[&SumTable], k: u32) -> Result<f64> {
    let p = tables.first().ok_or_else(|| Error::InvalidInput("no tables".into()))?.p;
    if tables.iter().any(|t| t.p != p) {
        return Err(Error::InvalidInput("tables at different primes".into()));
    }
    let s: f64 = (1..p)
        .map(|a| {
            let n: f64 = tables.iter().map(|t| t.get(a).norm_sqr()).product();
            n.powi(k as i32)
        })
        .sum();
    Ok(s / p as f64)
}

/// Cross moment of `fs` at `p`; every `f_i` must reduce well at `p`.
pub fn cross_moment(fs: &[PolyExact], p: u64, k: u32) -> Result<f64> {
    let tables = fs
        .par_iter()
        .map(|f| {
            let g = f.mod_p(p)?;
            crate::charsums::sum_table(&g)
        })
        .collect::<Result<Vec<_>>>()?;
    cross_moment_tables(&tables.iter().collect::<Vec<_>>(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsums::sum_table;
    use crate::genericity::{classify, default_certificate_primes};

    #[test]
    fn gauss_sum_moments() {
        let f = PolyExact::from_i64s(&[0, 0, 1]);
        for p in [101u64, 1009] {
            let t = sum_table(&f.mod_p(p).unwrap()).unwrap();
            let target = (p - 1) as f64 / p as f64;
            for e in [1, 2, 4, 6] {
                assert!((prime_moment(&t, e) - target).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn cubic_fourth_moment_near_two() {
        let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
        let p = 9973u64;
        let t = sum_table(&f.mod_p(p).unwrap()).unwrap();
        assert!((prime_moment(&t, 4) - 2.0).abs() <= 10.0 / (p as f64).sqrt());
    }

    #[test]
    fn report_matches_oracles_and_references() {
        let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
        let cls = classify(&f, &default_certificate_primes(3, 4)).unwrap();
        let group = predicted_group(&cls);
        assert_eq!(group, Some(GroupSpec::usp(2)));
        let r = moment_report(&f, 101, &DEFAULT_EXPONENTS, group).unwrap();
        assert!((r.moments[&2] - r.oracle_values[&2]).abs() <= 1e-6 * r.oracle_values[&2]);
        assert!((r.moments[&4] - r.oracle_values[&4]).abs() <= 1e-6 * r.oracle_values[&4]);
        assert_eq!(r.reference.get(&2), Some(&1.0));
        assert_eq!(r.reference.get(&4), None);
        assert!(r.flag.is_none());
        let small = moment_report(&f, 3, &DEFAULT_EXPONENTS, None).unwrap();
        assert!(small.flag.is_some() && !small.oracle_values.contains_key(&2));
        let csv = moment_reports_csv(&[r], &DEFAULT_EXPONENTS);
        assert!(csv.starts_with("p,m1,m2,m4,m6,m8,oracle2,oracle4,ref2,ref4,ref6,ref8,"));
        assert_eq!(moment_report(&f, 101, &[3], None).unwrap_err().to_string().is_empty(), false);
    }

    #[test]
    fn good_prime_screen() {
        let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
        let good = GoodPrimes::new(&f);
        assert!(!good.is_good(2) && !good.is_good(3));
        assert!(good.is_good(5) && good.is_good(31) && good.is_good(101));
        let quartic = GoodPrimes::new(&PolyExact::from_i64s(&[0, 0, 0, 0, 1]));
        assert!(quartic.is_good(5) && !quartic.is_good(3));
    }

    #[test]
    fn single_factor_cross_moment() {
        let f = PolyExact::from_i64s(&[1, 1, 0, 1]);
        let t = sum_table(&f.mod_p(211).unwrap()).unwrap();
        let c = cross_moment(std::slice::from_ref(&f), 211, 1).unwrap();
        assert!((c - prime_moment(&t, 2)).abs() < 1e-12);
    }
}
