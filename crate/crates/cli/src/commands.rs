//! Subcommand implementations. Each returns the process exit code.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use expsum::charsums::{sum_direct, sum_single, sum_table, twisted_extend, value_distribution, SumTable};
use expsum::field_poly::{is_prime, PolyExact};
use expsum::genericity::{classify, default_certificate_primes, Sidon};
use expsum::moments::{
    cross_moment_tables, dichotomy_scan, fourth_moment_oracle, moment_report, moment_reports_csv, predicted_group,
    prime_moment, second_moment_oracle, shao_series, sweep_q, MomentReport, SweepOptions, TableSource,
    DEFAULT_EXPONENTS, DEFAULT_GRID, DEFAULT_SWEEP_CAP, DEFAULT_THRESHOLD,
};
use expsum::rmt::{mc_trace_moments, reference_moment, Family, GroupSpec};
use rayon::prelude::*;

use crate::cache::{CachedTables, TableCache};
use crate::config::RunConfig;
use crate::exit::{self, usage, Mismatch};
use crate::{CacheCommand, Cli, Command, Format};

pub const SCHEMA_LINE: &str = "# expsum-lab schema v1";
const DEFAULT_SAMPLES: usize = 100_000;
const DEFAULT_SEED: u64 = 1;

struct Ctx {
    config: RunConfig,
    format: Format,
    cache: Option<TableCache>,
}

impl Ctx {
    fn source(&self) -> CachedTables<'_> {
        CachedTables { cache: self.cache.as_ref() }
    }

    fn poly(&self, flag: Option<String>) -> Result<PolyExact> {
        let text = self.config.pick(flag, "poly")?.ok_or_else(|| usage("missing --poly"))?;
        parse_poly(&text)
    }

    fn polys(&self, flags: Vec<String>) -> Result<Vec<PolyExact>> {
        let texts = if flags.is_empty() { self.config.all("poly").to_vec() } else { flags };
        if texts.is_empty() {
            return Err(usage("missing --poly"));
        }
        texts.iter().map(|t| parse_poly(t)).collect()
    }

    fn emit_csv(&self, body: &str) {
        print!("{SCHEMA_LINE}\n{body}");
    }
}

pub fn parse_poly(text: &str) -> Result<PolyExact> {
    PolyExact::from_json(text).map_err(|e| usage(format!("bad polynomial `{text}`: {e}")))
}

/// `lo..hi` (inclusive, primes only) or a comma-separated list of primes.
pub fn parse_primes(text: &str) -> Result<Vec<u64>> {
    let num = |s: &str| s.trim().parse::<u64>().map_err(|e| usage(format!("bad number `{s}`: {e}")));
    let primes: Vec<u64> = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi)?);
        expsum::moments::primes_between(lo, hi)
    } else {
        let list = text.split(',').filter(|s| !s.trim().is_empty()).map(num).collect::<Result<Vec<_>>>()?;
        if let Some(&n) = list.iter().find(|&&n| !is_prime(n)) {
            return Err(usage(format!("{n} is not prime")));
        }
        list
    };
    if primes.is_empty() {
        return Err(usage(format!("no primes in `{text}`")));
    }
    Ok(primes)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let v = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<T>().map_err(|e| usage(format!("bad {what} `{s}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(usage(format!("empty {what} list")));
    }
    Ok(v)
}

pub fn run(cli: Cli) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let threads = config.pick(cli.threads, "threads")?;
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker pool")?;
    }
    let format = config.pick(cli.format, "format")?.unwrap_or(Format::Csv);
    let cache_dir = if cli.no_cache { None } else { config.pick(cli.cache_dir.clone(), "cache_dir")? };
    let cache = cache_dir.map(TableCache::new).transpose()?;
    let ctx = Ctx { config, format, cache };
    match cli.command {
        Command::Classify(a) => cmd_classify(&ctx, a.poly, a.primes),
        Command::Moments(a) => cmd_moments(&ctx, a.poly, a.primes, a.exponents),
        Command::Dichotomy(a) => cmd_dichotomy(&ctx, a.poly, a.primes, a.threshold),
        Command::Shao(a) => cmd_shao(&ctx, a.poly, a.x, a.kappa),
        Command::Cross(a) => cmd_cross(&ctx, a.poly, a.p, a.k),
        Command::Sweep(a) => cmd_sweep(&ctx, a.poly, a.a, a.x, a.cap, a.grid),
        Command::Rmt(a) => cmd_rmt(&ctx, &a.family, a.n, a.k, a.samples, a.seed),
        Command::Oracle(a) => cmd_oracle(&ctx, a.poly, a.p),
        Command::Cache(c) => cmd_cache(&ctx, c),
    }
}

fn cmd_classify(ctx: &Ctx, poly: Option<String>, primes: Option<String>) -> Result<i32> {
    let f = ctx.poly(poly)?;
    let primes = match ctx.config.pick(primes, "primes")? {
        Some(s) => parse_primes(&s)?,
        None => default_certificate_primes(f.deg(), 8),
    };
    let report = classify(&f, &primes)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    Ok(if report.morse && report.sidon == Sidon::Unknown { exit::INDEFINITE } else { exit::OK })
}

fn require_primes(ctx: &Ctx, primes: Option<String>) -> Result<Vec<u64>> {
    let text = ctx.config.pick(primes, "primes")?.ok_or_else(|| usage("missing --primes"))?;
    parse_primes(&text)
}

fn cmd_moments(ctx: &Ctx, poly: Option<String>, primes: Option<String>, exponents: Option<String>) -> Result<i32> {
    let f = ctx.poly(poly)?;
    let primes = require_primes(ctx, primes)?;
    let exponents = match ctx.config.pick(exponents, "exponents")? {
        Some(s) => parse_list::<u32>(&s, "exponent")?,
        None => DEFAULT_EXPONENTS.to_vec(),
    };
    if let Some(e) = exponents.iter().find(|&&e| e != 1 && (e == 0 || e % 2 == 1)) {
        return Err(usage(format!("exponent {e} is neither 1 nor even")));
    }
    let group = (f.deg() >= 2)
        .then(|| classify(&f, &default_certificate_primes(f.deg(), 8)).ok())
        .flatten()
        .as_ref()
        .and_then(predicted_group);
    let reports: Vec<MomentReport> = primes
        .par_iter()
        .map(|&p| {
            moment_report(&f, p, &exponents, group).unwrap_or_else(|e| MomentReport {
                p,
                moments: Default::default(),
                oracle_values: Default::default(),
                reference: Default::default(),
                discrepancy_sqrt_p: None,
                flag: Some(e.to_string()),
            })
        })
        .collect();
    match ctx.format {
        Format::Csv => ctx.emit_csv(&moment_reports_csv(&reports, &exponents)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
    }
    Ok(exit::OK)
}

fn cmd_dichotomy(ctx: &Ctx, poly: Option<String>, primes: Option<String>, threshold: Option<f64>) -> Result<i32> {
    let f = ctx.poly(poly)?;
    let primes = require_primes(ctx, primes)?;
    let threshold = ctx.config.pick(threshold, "threshold")?.unwrap_or(DEFAULT_THRESHOLD);
    let r = dichotomy_scan(&f, &primes, threshold)?;
    if let Some(w) = &r.warning {
        eprintln!("warning: {w}");
    }
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
        Format::Csv => {
            let mut out = String::from("p,m2,near2,high\n");
            for row in &r.rows {
                writeln!(out, "{},{:.12e},{},{}", row.p, row.m2, row.near2, row.high)?;
            }
            writeln!(out, "# verdict={:?} high_fraction={:.6} threshold={}", r.verdict, r.high_fraction, r.threshold)?;
            ctx.emit_csv(&out);
        }
    }
    Ok(exit::OK)
}

fn cmd_shao(ctx: &Ctx, poly: Option<String>, x: Option<String>, kappa: Option<u32>) -> Result<i32> {
    let f = ctx.poly(poly)?;
    let xs = match ctx.config.pick(x, "x")? {
        Some(s) => parse_list::<u64>(&s, "x")?,
        None => vec![1_000, 10_000, 100_000],
    };
    let kappa = ctx.config.pick(kappa, "kappa")?;
    let points = shao_series(&f, &xs, kappa)?;
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&points)?),
        Format::Csv => {
            let mut out = String::from("x,s,kappa,drift,primes_used,low_confidence\n");
            for p in &points {
                writeln!(out, "{},{:.12e},{},{:.12e},{},{}", p.x, p.s, p.kappa, p.drift, p.primes_used, p.low_confidence)?;
            }
            ctx.emit_csv(&out);
        }
    }
    Ok(exit::OK)
}

fn cmd_cross(ctx: &Ctx, polys: Vec<String>, p: Option<u64>, k: Option<u32>) -> Result<i32> {
    let fs = ctx.polys(polys)?;
    let p = p.ok_or_else(|| usage("missing --p"))?;
    if !is_prime(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    let k = ctx.config.pick(k, "k")?.unwrap_or(1);
    if !(1..=2).contains(&k) {
        return Err(usage("k must be 1 or 2"));
    }
    let source = ctx.source();
    let tables = fs
        .iter()
        .map(|f| {
            f.mod_p(p)?;
            source.table(f, p)
        })
        .collect::<expsum::Result<Vec<SumTable>>>()?;
    let value = cross_moment_tables(&tables.iter().collect::<Vec<_>>(), k)?;
    match ctx.format {
        Format::Json => println!("{}", serde_json::json!({ "p": p, "k": k, "m": fs.len(), "value": value })),
        Format::Csv => ctx.emit_csv(&format!("p,k,m,value\n{p},{k},{},{value:.12e}\n", fs.len())),
    }
    Ok(exit::OK)
}

fn cmd_sweep(
    ctx: &Ctx,
    polys: Vec<String>,
    a: Option<u64>,
    x: Option<u64>,
    cap: Option<u64>,
    grid: Option<String>,
) -> Result<i32> {
    let fs = ctx.polys(polys)?;
    let a = ctx.config.pick(a, "a")?.unwrap_or(1);
    if a == 0 {
        return Err(usage("a must be at least 1"));
    }
    let cap = ctx.config.pick(cap, "cap")?.unwrap_or(DEFAULT_SWEEP_CAP);
    let x = ctx.config.pick(x, "x")?.unwrap_or(cap.min(DEFAULT_SWEEP_CAP));
    let grid = match ctx.config.pick(grid, "grid")? {
        Some(s) => parse_list::<u64>(&s, "grid point")?,
        None => DEFAULT_GRID.to_vec(),
    };
    let report = sweep_q(&fs, a, x, &SweepOptions { cap, grid }, &ctx.source())?;
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Csv => {
            let mut out = report.to_csv();
            writeln!(
                out,
                "# a={} m={} s={} A={} E={} gamma_hat={}",
                report.a,
                report.m,
                report.s,
                report.loglog_exponent,
                report.fourth_exponent,
                report.gamma_hat.map(|g| format!("{g:.6}")).unwrap_or_else(|| "none".into())
            )?;
            ctx.emit_csv(&out);
        }
    }
    Ok(exit::OK)
}

fn cmd_rmt(ctx: &Ctx, family: &str, n: usize, k: Option<u32>, samples: Option<usize>, seed: Option<u64>) -> Result<i32> {
    let family = match family {
        "su" => Family::SpecialUnitary,
        "usp" => Family::UnitarySymplectic,
        other => return Err(usage(format!("unknown family `{other}` (su or usp)"))),
    };
    let spec = GroupSpec::new(family, n).map_err(|e| usage(e.to_string()))?;
    let k = ctx.config.pick(k, "k")?.unwrap_or(4);
    let samples = ctx.config.pick(samples, "samples")?.unwrap_or(DEFAULT_SAMPLES);
    let seed = ctx.config.pick(seed, "seed")?.unwrap_or(DEFAULT_SEED);
    let ks: Vec<u32> = (1..=k).collect();
    let mc = mc_trace_moments(spec, &ks, samples, seed)?;
    let rows: Vec<_> = ks
        .iter()
        .zip(&mc)
        .map(|(&k, &(mean, se))| {
            let r = reference_moment(spec, k);
            serde_json::json!({ "k": k, "reference": r.value, "exact": r.exact, "mc_mean": mean, "mc_se": se,
                "z": (mean - r.value) / se })
        })
        .collect();
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Csv => {
            let mut out = String::from("k,reference,exact,mc_mean,mc_se,z\n");
            for ((&k, &(mean, se)), r) in ks.iter().zip(&mc).zip(ks.iter().map(|&k| reference_moment(spec, k))) {
                writeln!(out, "{k},{},{},{mean:.12e},{se:.12e},{:.6}", r.value, r.exact, (mean - r.value) / se)?;
            }
            ctx.emit_csv(&out);
        }
    }
    Ok(exit::OK)
}

struct Check {
    name: String,
    left: f64,
    right: f64,
    tolerance: f64,
}

impl Check {
    fn pass(&self) -> bool {
        (self.left - self.right).abs() <= self.tolerance
    }
}

fn cmd_oracle(ctx: &Ctx, poly: Option<String>, p: Option<u64>) -> Result<i32> {
    let f = ctx.poly(poly)?;
    let p = p.ok_or_else(|| usage("missing --p"))?;
    if !is_prime(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    let g = f.mod_p(p)?;
    let fresh = sum_table(&g)?.with_id(f.id());
    let mut checks = Vec::new();
    let stride = (p / 64).max(1);
    let tol = fresh.error_bound + 1e-9;
    let worst = (1..p)
        .step_by(stride as usize)
        .map(|a| (sum_single(&g, a) - fresh.raw(a)).norm())
        .fold(0.0, f64::max);
    checks.push(Check { name: "table vs direct sum (max |diff|)".into(), left: worst, right: 0.0, tolerance: tol });
    if let Some(cache) = &ctx.cache {
        let cached = cache.get_or_compute(&f, p)?;
        let diff = cached.values.iter().zip(&fresh.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        checks.push(Check { name: "cached vs fresh table".into(), left: diff, right: 0.0, tolerance: 0.0 });
    }
    if let Some(other) = (2..).filter(|&r| is_prime(r) && r != p && f.is_good_reduction(r)).next() {
        let q = p * other;
        if q <= 2_000_000 {
            let mut tables = std::collections::HashMap::new();
            tables.insert(p, fresh.clone());
            tables.insert(other, sum_table(&f.mod_p(other)?)?);
            let worst = (1..q)
                .filter(|a| a % p != 0 && a % other != 0)
                .step_by((q / 16).max(1) as usize)
                .map(|a| Ok((twisted_extend(&tables, a, q, true)? - sum_direct(&f, a, q)?).norm()))
                .collect::<expsum::Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            checks.push(Check { name: format!("twisted vs CRT sum, q={q}"), left: worst, right: 0.0, tolerance: 1e-6 });
        }
    }
    let m2 = prime_moment(&fresh, 2);
    match second_moment_oracle(&g) {
        Ok(o2) => checks.push(Check { name: "M1 vs point count".into(), left: m2, right: o2, tolerance: 1e-6 * o2.abs().max(1.0) }),
        Err(e) => eprintln!("note: second-moment oracle skipped: {e}"),
    }
    let o4 = fourth_moment_oracle(&value_distribution(&g));
    checks.push(Check {
        name: "M2 vs additive energy".into(),
        left: prime_moment(&fresh, 4),
        right: o4,
        tolerance: 1e-6 * o4.abs().max(1.0),
    });
    let mut out = String::from("check,left,right,tolerance,status\n");
    for c in &checks {
        writeln!(out, "{},{:.12e},{:.12e},{:.3e},{}", c.name, c.left, c.right, c.tolerance, if c.pass() { "pass" } else { "FAIL" })?;
    }
    ctx.emit_csv(&out);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass()).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(exit::OK)
    } else {
        Err(Mismatch(format!("failed checks: {}", failed.join("; "))).into())
    }
}

fn cmd_cache(ctx: &Ctx, cmd: CacheCommand) -> Result<i32> {
    let cache = ctx.cache.as_ref().ok_or_else(|| usage("no cache directory (use --cache-dir or EXPSUM_CACHE_DIR)"))?;
    match cmd {
        CacheCommand::List => {
            let mut out = String::from("hash,kind,p,bytes\n");
            for e in cache.list()? {
                writeln!(out, "{},{},{},{}", e.hash, e.kind, e.p, e.bytes)?;
            }
            ctx.emit_csv(&out);
            Ok(exit::OK)
        }
        CacheCommand::Evict { hash, all } => {
            let n = cache.evict(if all { None } else { hash.as_deref() })?;
            eprintln!("evicted {n} entries");
            Ok(exit::OK)
        }
        CacheCommand::Verify => {
            let bad = cache.verify()?;
            for (e, why) in &bad {
                eprintln!("corrupt: {} ({why}); evicted", e.path.display());
            }
            if bad.is_empty() {
                eprintln!("all entries verified");
                Ok(exit::OK)
            } else {
                Err(Mismatch(format!("{} corrupt entries evicted", bad.len())).into())
            }
        }
    }
}
