//! Classification of a rational phase polynomial from exact invariants and
//! good-prime specializations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::decompose::decompose;
use super::equivalence::{dickson_equivalent, fried_predict, FriedPrediction};
use super::morse::{critical_data, is_morse};
use super::odd::{odd_form, OddForm};
use super::sidon::{is_sidon, is_symmetric_sidon};
use crate::error::{Error, Result};
use crate::field_poly::{
    critical_value_poly, discriminant, is_prime, rational_to_string, PolyExact,
};

/// Sidon status of the critical values over `Q-bar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sidon {
    Yes,
    No,
    Unknown,
}

impl Serialize for Sidon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sidon::Yes => s.serialize_bool(true),
            Sidon::No => s.serialize_bool(false),
            Sidon::Unknown => s.serialize_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    NotMorse,
    MorseOnly,
    SidonMorse,
    SymmetricSidonMorse,
}

/// Outcome of the tests at one specialization prime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeCertificate {
    pub prime: u64,
    pub good: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morse: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sidon: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub polynomial: PolyExact,
    pub morse: bool,
    pub sidon: Sidon,
    /// Good primes at which the critical values were not Sidon.
    pub sidon_failures: usize,
    pub symmetric: bool,
    pub odd_witness: Option<OddForm>,
    pub indecomposable: bool,
    pub decomposition: Option<(PolyExact, PolyExact)>,
    pub dickson_param: Option<BigRational>,
    pub fried: FriedPrediction,
    pub critical_value_sum: BigRational,
    pub critical_shift: BigRational,
    pub verdict: Verdict,
    pub certificates: Vec<PrimeCertificate>,
}

impl GenericityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.polynomial.to_strings(),
            "degree": self.polynomial.deg(),
            "morse": self.morse,
            "sidon": self.sidon,
            "sidon_failures": self.sidon_failures,
            "symmetric": self.symmetric,
            "odd_witness": self.odd_witness.as_ref().map(|o| json!({
                "x0": rational_to_string(&o.x0),
                "delta": rational_to_string(&o.delta),
                "g": o.g.to_strings(),
            })),
            "indecomposable": self.indecomposable,
            "decomposition": self.decomposition.as_ref().map(|(g, h)| json!({
                "g": g.to_strings(),
                "h": h.to_strings(),
            })),
            "dickson_param": self.dickson_param.as_ref().map(rational_to_string),
            "fried": self.fried,
            "critical_value_sum": rational_to_string(&self.critical_value_sum),
            "critical_shift": rational_to_string(&self.critical_shift),
            "verdict": self.verdict,
            "certificates": self.certificates,
        })
    }
}

/// Exact quantities whose nonvanishing mod `p` makes `p` good for `f`.
struct Screens {
    degree: usize,
    discs: Vec<BigRational>,
}

impl Screens {
    fn new(f: &PolyExact, cv: &PolyExact) -> Self {
        let discs = vec![discriminant(f), discriminant(&f.derivative()), discriminant(cv)];
        Self { degree: f.deg(), discs }
    }

    fn morse(&self) -> bool {
        self.discs.iter().all(|d| !d.is_zero())
    }

    /// `None` when `p` is good, otherwise the reason it is not.
    fn reject(&self, f: &PolyExact, p: u64) -> Option<String> {
        let d = self.degree as u64;
        if !is_prime(p) {
            return Some("not prime".into());
        }
        if p <= 2 * d - 1 {
            return Some(format!("p <= 2d - 1 = {}", 2 * d - 1));
        }
        if (d - 1) % p == 0 {
            return Some("p divides d - 1".into());
        }
        if !f.is_good_reduction(p) {
            return Some("p divides a denominator or the leading coefficient".into());
        }
        let pb = BigInt::from(p);
        for (disc, name) in self.discs.iter().zip(["disc f", "disc f'", "disc CV_f"]) {
            if !disc.is_zero() && (disc.numer() % &pb).is_zero() {
                return Some(format!("p divides {name}"));
            }
        }
        None
    }
}

/// Verdict at one good prime from its Morse, Sidon and symmetry results.
fn prime_verdict(morse: bool, sidon: Option<bool>, symmetric: Option<bool>) -> Verdict {
    if !morse {
        Verdict::NotMorse
    } else if symmetric == Some(true) {
        Verdict::SymmetricSidonMorse
    } else if sidon == Some(true) {
        Verdict::SidonMorse
    } else {
        Verdict::MorseOnly
    }
}

fn certify(f: &PolyExact, odd: Option<&OddForm>, screens: &Screens, p: u64) -> PrimeCertificate {
    let mut cert = PrimeCertificate {
        prime: p,
        good: false,
        morse: None,
        sidon: None,
        symmetric: None,
        verdict: None,
        note: None,
    };
    if let Some(reason) = screens.reject(f, p) {
        cert.note = Some(reason);
        return cert;
    }
    cert.good = true;
    let run = |cert: &mut PrimeCertificate| -> Result<()> {
        let fp = f.mod_p(p)?;
        let morse = is_morse(&fp)?;
        cert.morse = Some(morse);
        if morse {
            cert.sidon = Some(is_sidon(&critical_data(&fp)?.values)?);
            if let Some(o) = odd {
                let gp = o.g.mod_p(p)?;
                cert.symmetric = Some(is_symmetric_sidon(&critical_data(&gp)?.values).is_some());
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut cert) {
        cert.note = Some(e.to_string());
    }
    if let Some(m) = cert.morse {
        cert.verdict = Some(prime_verdict(m, cert.sidon, cert.symmetric));
    }
    cert
}

/// Classifies `f` over `Q`. Morse is decided exactly; Sidon and symmetric
/// Sidon are certified by any single good prime.
pub fn classify(f: &PolyExact, certificate_primes: &[u64]) -> Result<GenericityReport> {
    let d = f.deg();
    if d < 2 {
        return Err(Error::InvalidInput(format!("classification needs degree >= 2, got {d}")));
    }
    let cv = critical_value_poly(f)?;
    let screens = Screens::new(f, &cv);
    let morse = screens.morse();
    let odd = odd_form(f);
    let certificates: Vec<PrimeCertificate> = certificate_primes
        .par_iter()
        .map(|&p| certify(f, odd.as_ref(), &screens, p))
        .collect();
    if !certificates.iter().any(|c| c.good) {
        return Err(Error::NoGoodPrime);
    }
    let sidon_failures = certificates.iter().filter(|c| c.sidon == Some(false)).count();
    let sidon = if !morse {
        Sidon::Unknown
    } else if certificates.iter().any(|c| c.sidon == Some(true)) {
        Sidon::Yes
    } else if odd.is_some() && d >= 4 {
        // Pairs {v, alpha - v} give v + (alpha - v) = w + (alpha - w).
        Sidon::No
    } else {
        Sidon::Unknown
    };
    let symmetric = morse && certificates.iter().any(|c| c.symmetric == Some(true));
    let verdict = prime_verdict(morse, (sidon == Sidon::Yes).then_some(true), Some(symmetric));
    let value_sum = -cv.coeff(d - 2) / cv.coeff(d - 1);
    let critical_shift = -&value_sum / BigRational::from_integer(BigInt::from(d - 1));
    let decomposition = decompose(f).map(|w| (w.g, w.h));
    Ok(GenericityReport {
        polynomial: f.clone(),
        morse,
        sidon,
        sidon_failures,
        symmetric,
        odd_witness: odd,
        indecomposable: decomposition.is_none(),
        decomposition,
        dickson_param: dickson_equivalent(f),
        fried: fried_predict(f),
        critical_value_sum: value_sum,
        critical_shift,
        verdict,
        certificates,
    })
}

/// The first `count` primes above `max(1000, 2 deg)`.
pub fn default_certificate_primes(degree: usize, count: usize) -> Vec<u64> {
    let start = 1000.max(2 * degree as u64);
    (start + 1..).filter(|&n| is_prime(n)).take(count).collect()
}
