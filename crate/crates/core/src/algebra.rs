//! Admissibility (base-point criterion) and algebra objects.
//!
//! A basis element `m₀` is a base point when every basis element is the image
//! `b_j ▷ m₀` of a single ring basis element. For a base point the algebra
//! object is `⊕_i a_i b_i` with `a_i = (N_i)_{m₀ m₀}`, the number of
//! `b_i`-labelled self-loops at `m₀`.

use std::sync::Arc;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::classify::{neargroup_to_nimrep, ClassifyError, NearGroupSolution};
use crate::fusion::{fp_dims, FusionError, FusionRing};
use crate::nimrep::NimRep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis element {0} is not a base point")]
    NotAdmissibleAt(usize),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraObject {
    pub ring: Arc<FusionRing>,
    /// `a_i` per ring label.
    pub multiplicities: Vec<u32>,
    pub base_point: usize,
}

impl AlgebraObject {
    /// `(name, a_i)` for the non-zero multiplicities, in label order.
    pub fn terms(&self) -> Vec<(String, u32)> {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a > 0)
            .map(|(i, &a)| (self.ring.name(i).to_string(), a))
            .collect()
    }

    /// `Σ_i a_i FPdim(b_i)`.
    pub fn fp_dim(&self) -> Result<f64, AlgebraError> {
        let d = fp_dims(&self.ring)?;
        Ok(self.multiplicities.iter().zip(&d.dims).map(|(&a, &x)| a as f64 * x).sum())
    }
}

impl std::fmt::Display for AlgebraObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(name, a)| if a == 1 { name } else { format!("{a}{name}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Base points of an irreducible NIM-rep; empty for reducible ones.
pub fn admissible_base_points(n: &NimRep) -> Vec<usize> {
    if !n.is_irreducible() {
        return Vec::new();
    }
    let d = n.dim();
    (0..d)
        .filter(|&m0| {
            let mut reached = vec![false; d];
            for mat in n.mats() {
                let row = mat.row(m0);
                if row.iter().map(|&x| x as u64).sum::<u64>() == 1 {
                    let m = row.iter().position(|&x| x == 1).expect("row sum is one");
                    reached[m] = true;
                }
            }
            reached.into_iter().all(|r| r)
        })
        .collect()
}

pub fn is_admissible(n: &NimRep) -> bool {
    !admissible_base_points(n).is_empty()
}

pub fn algebra_object(n: &NimRep, m0: usize) -> Result<AlgebraObject, AlgebraError> {
    if !admissible_base_points(n).contains(&m0) {
        return Err(AlgebraError::NotAdmissibleAt(m0));
    }
    Ok(AlgebraObject {
        ring: n.ring().clone(),
        multiplicities: n.mats().iter().map(|m| m[(m0, m0)]).collect(),
        base_point: m0,
    })
}

/// Positive Perron vector of `Σ_i N_i` (symmetric by rigidity), normalised to
/// unit length. For an irreducible NIM-rep it is a common eigenvector of
/// every `N_i`.
pub fn module_perron_vector(n: &NimRep) -> Vec<f64> {
    let d = n.dim();
    let mut sum = DMatrix::<f64>::zeros(d, d);
    for m in n.mats() {
        sum += m.to_f64();
    }
    let eig = sum.symmetric_eigen();
    let top = eig.eigenvalues.iter().enumerate().fold(0, |best, (i, &x)| if x > eig.eigenvalues[best] { i } else { best });
    let v: Vec<f64> = eig.eigenvectors.column(top).iter().map(|x| x.abs()).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Expected `FPdim(A)` for the algebra at `m0`: `D² v_{m0}² / |v|²`, with
/// `D² = Σ_i FPdim(b_i)²` and `v` the module Perron vector.
pub fn expected_algebra_fp_dim(n: &NimRep, m0: usize) -> Result<f64, AlgebraError> {
    let d = fp_dims(n.ring())?;
    let global: f64 = d.dims.iter().map(|x| x * x).sum();
    let v = module_perron_vector(n);
    Ok(global * v[m0] * v[m0])
}

#[derive(Debug, Clone)]
pub struct NearGroupAdmissibility {
    pub solution: NearGroupSolution,
    pub nimrep: NimRep,
    pub base_points: Vec<usize>,
    /// At the least base point, if any.
    pub algebra: Option<AlgebraObject>,
}

#[derive(Debug, Clone)]
pub struct NearGroupAdmissibilityReport {
    pub entries: Vec<NearGroupAdmissibility>,
    /// Admissible solutions that are neither single-orbit nor two-orbit with
    /// a zero diagonal entry.
    pub violations: Vec<String>,
}

impl NearGroupAdmissibilityReport {
    pub fn admissible(&self) -> impl Iterator<Item = &NearGroupAdmissibility> {
        self.entries.iter().filter(|e| !e.base_points.is_empty())
    }
}

/// Admissibility of each near-group solution, checked against the expected
/// shape: any single-orbit solution, or two orbits with `c₁₁ = 0` or
/// `c₂₂ = 0`.
pub fn classify_admissible_neargroup(solutions: &[NearGroupSolution]) -> Result<NearGroupAdmissibilityReport, ClassifyError> {
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    for sol in solutions {
        let nimrep = neargroup_to_nimrep(sol)?;
        let base_points = admissible_base_points(&nimrep);
        let algebra = base_points.first().map(|&m0| algebra_object(&nimrep, m0).expect("base point"));
        if !base_points.is_empty() {
            let shape_ok = match sol.p() {
                1 => true,
                2 => sol.c[0][0] == 0 || sol.c[1][1] == 0,
                _ => false,
            };
            if !shape_ok {
                violations.push(format!(
                    "admissible solution with {} orbits and C = {:?} has an unexpected shape",
                    sol.p(),
                    sol.c
                ));
            }
        }
        entries.push(NearGroupAdmissibility { solution: sol.clone(), nimrep, base_points, algebra });
    }
    Ok(NearGroupAdmissibilityReport { entries, violations })
}
