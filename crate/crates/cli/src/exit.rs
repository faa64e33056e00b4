//! Exit-code contract.

use std::fmt;

use expsum::Error;

pub const OK: i32 = 0;
pub const INDEFINITE: i32 = 2;
pub const USAGE: i32 = 64;
pub const CAP: i32 = 65;
pub const MISMATCH: i32 = 70;

/// Bad arguments or configuration.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A self-check disagreed beyond tolerance.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

pub fn code_for(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<Usage>().is_some() {
        return USAGE;
    }
    if err.downcast_ref::<Mismatch>().is_some() {
        return MISMATCH;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. } | Error::PrimeTooLarge { .. } | Error::ExtensionTooLarge { .. }) => CAP,
        Some(
            Error::NotPrime(_)
            | Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::BadReduction { .. }
            | Error::SmallPrime { .. }
            | Error::SmallCharacteristic { .. }
            | Error::BadCharacteristic { .. }
            | Error::NoGoodPrime
            | Error::InsufficientSamples { .. }
            | Error::NonSquarefree(_)
            | Error::NotAMeasure(_),
        ) => USAGE,
        _ => MISMATCH,
    }
}
