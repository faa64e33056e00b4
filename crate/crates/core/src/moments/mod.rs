//! Moment statistics of complete sums: per-prime moments checked against
//! counting oracles, prime-averaged laws, cross moments and sums over
//! squarefree moduli.

pub mod laws;
pub mod oracle;
pub mod report;
pub mod sieve;
pub mod sweep;

pub use laws::{
    default_kappa_primes, dichotomy_scan, estimate_kappa, shao_partial_sum, shao_series, DichotomyReport,
    DichotomyRow, DichotomyVerdict, KappaEstimate, ShaoPoint, DEFAULT_THRESHOLD, KAPPA_MIN_PRIMES,
};
pub use oracle::{
    additive_energy, divided_difference_points, fourth_moment_oracle, second_moment_oracle, second_moment_parseval,
};
pub use report::{
    cross_moment, cross_moment_tables, moment_report, moment_reports, moment_reports_csv, predicted_group,
    prime_moment, GoodPrimes, MomentReport, DEFAULT_EXPONENTS,
};
pub use sieve::{primes_between, primes_up_to, smallest_prime_factors, squarefree_flags};
pub use sweep::{
    envelope_bound, pairwise_sum, sweep_q, DirectTables, SweepOptions, SweepReport, SweepRow, TableSource,
    DEFAULT_GRID, DEFAULT_SWEEP_CAP,
};
