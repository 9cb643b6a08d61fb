//! Modular data of rank ≤ 4, modular invariants, exponents, and the
//! comparison between invariant exponents and NIM-rep exponents.

mod catalog;
mod exponent;
mod invariants;
mod report;

use num_complex::Complex64;
use thiserror::Error;

use crate::classify::ClassifyError;
use crate::fusion::FusionError;
use crate::nimrep::NimRepError;

pub use catalog::{catalog, catalog_entry, catalog_names, verlinde, Family, ModularData};
pub use exponent::{exponent_of_invariant, exponent_of_nimrep, ExponentMultiset, EIGEN_TOLERANCE};
pub use invariants::{
    enumerate_invariants, modular_invariants, InvariantSearch, ModularInvariant, DEFAULT_INVARIANT_BOUND,
    MAX_COMMUTANT_DIM,
};
pub use report::{catalog_nimreps, conjecture_report, ExponentClass, MatchReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("modular data `{name}` is invalid: {reason}")]
    InvalidData { name: String, reason: String },
    #[error("commutant has dimension {0}, above the enumeration limit")]
    CommutantTooLarge(usize),
    #[error("eigenvalue {1} of label {0} matches no S-ratio")]
    EigenvalueUnmatched(usize, Complex64),
    #[error("eigenvalue {1} of label {0} is close to two distinct S-ratios")]
    AmbiguousEigenvalue(usize, Complex64),
    #[error("eigenvalue counts of label {0} disagree with the multiplicity of exponent {1}")]
    InconsistentAcrossLabels(usize, usize),
    #[error("NIM-rep ring does not match the fusion rules of the modular data")]
    RingMismatch,
    #[error("unknown modular data `{0}`")]
    UnknownMtc(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    NimRep(#[from] NimRepError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}
