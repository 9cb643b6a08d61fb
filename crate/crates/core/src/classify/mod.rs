//! Classification of NIM-reps, family by family, plus a generic exhaustive
//! search used as an independent oracle.

mod brute;
mod group;
mod neargroup;
mod su2half;

use thiserror::Error;

use crate::fusion::FusionError;
use crate::nimrep::NimRepError;

pub use brute::{
    brute_force_irreducible, brute_force_nimreps, brute_force_nimreps_with, canonical_form, default_entry_bounds,
    BruteOptions, Classified, DEFAULT_NODE_CAP,
};
pub use group::{coset_nimrep, group_ring_nimreps, GroupNimSpec};
pub use neargroup::{
    alpha_from_solution, default_neargroup_bound, is_perfect_square, neargroup_brute, neargroup_one_orbit,
    neargroup_to_nimrep, neargroup_to_nimrep_in, neargroup_two_orbit, parity_law_holds, NearGroupBrute,
    NearGroupSolution, NearGroupWarning,
};
pub use su2half::{su2half_admissible, su2half_length_order, su2half_table_form};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("search exceeded the node cap of {cap}")]
    SearchExploded { cap: u64 },
    #[error("constructed NIM-rep failed verification: {0}")]
    VerificationFailed(#[from] NimRepError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("inconsistent solution: {0}")]
    Inconsistent(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
