//! Complete exponential sums `W(a; q)`: per-prime tables for every `a`,
//! normalized variants, and extension to squarefree moduli.

pub mod dft;
pub mod dist;
pub mod format;
pub mod measure;
pub mod table;
pub mod twisted;

pub use dist::{value_distribution, ValueDist};
pub use format::{decode_dist, decode_table, encode_dist, encode_table};
pub use measure::{measure_family, measure_transform, TwistedEnvelope};
pub use table::{
    error_bound, mod_p_id, normalized_table, sum_single, sum_table, sum_table_from_dist,
    sum_table_with_cap, weil_check, Normalization, SumTable, TableKind, WeilReport,
    DEFAULT_TABLE_CAP,
};
pub use twisted::{squarefree_factors, sum_direct, twisted_extend, twisted_product, TableLookup};
