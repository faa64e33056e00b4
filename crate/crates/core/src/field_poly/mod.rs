//! Prime fields, extension fields and polynomial arithmetic over `Q` and `F_p`.

pub mod canonical;
pub mod dickson;
pub mod exact;
pub mod ext;
pub mod poly_modp;
pub mod prime;
pub mod resultant;
pub mod ring;

pub use canonical::{depress_and_normalize, Canonical};
pub use dickson::{dickson, dickson_mod_p, dickson_self_test};
pub use exact::{parse_rational, rational_to_string, PolyExact, PolyId, Reduction};
pub use ext::{ExtField, ExtFieldElem};
pub use poly_modp::{
    factor_mod_p, factor_mod_p_with_rng, find_irreducible, poly_gcd, splitting_roots,
    splitting_roots_with_rng, PolyModP, DEFAULT_EXTENSION_CAP,
};
pub use prime::{inv_mod, is_prime, Fp, PrimeField, MAX_MODULUS};
pub use resultant::{
    critical_value_poly, critical_value_poly_mod_p, discriminant, resultant_exact,
    resultant_mod_p, value_resultant,
};
