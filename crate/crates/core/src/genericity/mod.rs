//! Genericity of phase polynomials: Morse, Sidon, symmetric Sidon,
//! indecomposable and Dickson-equivalent.

pub mod classify;
pub mod decompose;
pub mod equivalence;
pub mod morse;
pub mod odd;
pub mod sidon;

pub use classify::{
    classify, default_certificate_primes, GenericityReport, PrimeCertificate, Sidon, Verdict,
};
pub use decompose::{decompose, is_indecomposable, Decomposition};
pub use equivalence::{
    dickson_equivalent, fried_predict, linear_equivalent, Equivalence, FriedPrediction, Over,
    Witness,
};
pub use morse::{critical_data, critical_data_with_cap, is_morse, CriticalData};
pub use odd::{odd_form, odd_form_mod_p, OddForm};
pub use sidon::{is_sidon, is_symmetric_sidon};
