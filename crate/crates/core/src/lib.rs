//! Cubic field tabulation and the arithmetic statistics of genus numbers.
//!
//! The crate enumerates cubic fields by discriminant through reduced binary
//! cubic forms, attaches Fröhlich genus numbers to every field, evaluates the
//! Euler-product constants that govern the limiting genus statistics, and
//! computes the exact rational Heilbronn-criterion weights `b_F` together
//! with the constant `B` that measures how often the criterion applies.
//!
//! Module map:
//!
//! - [`arith`]: sieving, factorization, fundamental discriminants, exact rationals.
//! - [`forms`]: binary cubic forms, local maximality, splitting types, enumeration.
//! - [`census`]: per-field records, genus exponents, summaries and CSV/JSON output.
//! - [`constants`]: certified evaluation of zeta values and Euler products.
//! - [`heilbronn`]: Heilbronn pairs, `b_F`, the constant `B`.
//! - [`padic`]: the 3-adic density of triple-root maximal forms.
//! - [`cli`]: the command-line front end.

pub mod arith;
pub mod budget;
pub mod census;
pub mod cli;
pub mod constants;
pub mod error;
pub mod forms;
pub mod heilbronn;
pub mod padic;

pub use error::{Error, Result};

/// Sign of a discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

impl Sign {
    pub fn of(delta: i64) -> Option<Sign> {
        match delta.signum() {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "pos",
            Sign::Negative => "neg",
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
