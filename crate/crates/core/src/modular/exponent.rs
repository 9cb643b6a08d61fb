//! Exponents: for an invariant, the diagonal of `Z`; for a NIM-rep, the
//! multiset `{b}` such that the spectrum of each `N_a` is
//! `{S_ab / S_0b : b ∈ Exp}`.

use std::fmt;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::{verlinde, ModularData, ModularError, ModularInvariant};
use crate::nimrep::NimRep;

/// Eigenvalues must lie this close to an `S`-ratio.
pub const EIGEN_TOLERANCE: f64 = 1e-6;
/// Two `S`-ratios this close are the same target.
const SAME_TARGET: f64 = 1e-9;

/// Multiplicity of each label in the exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentMultiset {
    pub mult: Vec<u32>,
}

impl ExponentMultiset {
    pub fn size(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    pub fn has_multiplicities(&self) -> bool {
        self.max_multiplicity() > 1
    }

    /// `1^1 X1^0 …` style rendering with the given label names.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.mult.iter().zip(names).map(|(m, n)| format!("{n}^{m}")).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mult.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn exponent_of_invariant(z: &ModularInvariant) -> ExponentMultiset {
    ExponentMultiset { mult: (0..z.rank()).map(|a| z.z[a][a]).collect() }
}

/// Exponent of a NIM-rep over the fusion ring of `md`.
///
/// Multiplicities come from projector traces,
/// `n_b = S_0b Σ_a conj(S_ab) tr N_a`; the spectrum of every `N_a` is then
/// checked against them. Distinct labels with equal ratios `S_ab / S_0b` are
/// counted together.
pub fn exponent_of_nimrep(md: &ModularData, n: &NimRep) -> Result<ExponentMultiset, ModularError> {
    let r = md.rank();
    if n.ring().rank() != r {
        return Err(ModularError::RingMismatch);
    }
    let v = verlinde(&md.s);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if (v[i][j][k] - n.ring().coeff(i, j, k) as f64).abs() > EIGEN_TOLERANCE {
                    return Err(ModularError::RingMismatch);
                }
            }
        }
    }

    let ratios: Vec<Vec<Complex64>> = (0..r).map(|a| (0..r).map(|b| md.s[(a, b)] / md.s[(0, b)]).collect()).collect();

    // Per label: count of eigenvalues falling on each target group.
    let mut counts: Vec<Vec<(Vec<usize>, usize)>> = Vec::with_capacity(r);
    for a in 0..r {
        let groups = target_groups(&ratios[a]);
        let mut tally = vec![0usize; groups.len()];
        for ev in eigenvalues(n, a) {
            let distance = |g: usize| (ratios[a][groups[g][0]] - ev).norm();
            let near: Vec<usize> = (0..groups.len()).filter(|&g| distance(g) <= 2.0 * EIGEN_TOLERANCE).collect();
            if near.len() > 1 {
                return Err(ModularError::AmbiguousEigenvalue(a, ev));
            }
            match near.first() {
                Some(&g) if distance(g) <= EIGEN_TOLERANCE => tally[g] += 1,
                _ => return Err(ModularError::EigenvalueUnmatched(a, ev)),
            }
        }
        counts.push(groups.into_iter().zip(tally).collect());
    }

    let raw: Vec<f64> = (0..r)
        .map(|b| {
            let s: Complex64 = (0..r).map(|a| md.s[(a, b)].conj() * n.mat(a).as_slice().iter().step_by(n.dim() + 1).map(|&x| x as f64).sum::<f64>()).sum();
            (md.s[(0, b)] * s).re
        })
        .collect();
    let mult: Vec<u32> = raw.iter().map(|x| x.round().max(0.0) as u32).collect();

    for (a, label_counts) in counts.iter().enumerate() {
        for (group, count) in label_counts {
            let total: u32 = group.iter().map(|&b| mult[b]).sum();
            if total as usize != *count {
                return Err(ModularError::InconsistentAcrossLabels(a, group[0]));
            }
        }
    }
    if let Some(b) = (0..r).find(|&b| (raw[b] - raw[b].round()).abs() > EIGEN_TOLERANCE || raw[b] < -EIGEN_TOLERANCE) {
        return Err(ModularError::InconsistentAcrossLabels(md.ring.unit(), b));
    }
    Ok(ExponentMultiset { mult })
}

/// Labels grouped by (numerically) equal target value, in first-occurrence order.
fn target_groups(targets: &[Complex64]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (b, t) in targets.iter().enumerate() {
        match groups.iter_mut().find(|g| (targets[g[0]] - t).norm() <= SAME_TARGET) {
            Some(g) => g.push(b),
            None => groups.push(vec![b]),
        }
    }
    groups
}

/// Spectrum via a real Schur decomposition. Unshifted QR can stall on
/// permutation matrices (all eigenvalues on one circle), so on
/// non-convergence the matrix is shifted by a real constant and the shift
/// undone afterwards.
fn eigenvalues(n: &NimRep, a: usize) -> Vec<Complex64> {
    let m: DMatrix<f64> = n.mat(a).to_f64();
    let d = m.nrows();
    if d == 1 {
        return vec![Complex64::new(m[(0, 0)], 0.0)];
    }
    for shift in [0.0, 0.5, 1.25, 2.75] {
        let shifted = &m + DMatrix::<f64>::identity(d, d) * shift;
        if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().map(|z| z - shift).collect();
        }
    }
    unreachable!("Schur decomposition failed for every shift")
}
