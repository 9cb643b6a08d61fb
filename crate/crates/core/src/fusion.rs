//! Fusion rings given by their structure constants `c_{ij}^k`.
//!
//! A [`FusionRing`] is only ever constructed through [`ring_from_tensor`],
//! which checks the unit, the dual involution, Frobenius symmetry and
//! associativity. The family constructors build a tensor and pass it through
//! the same validation, so the closed-form fusion rules are tested on every
//! construction.

use thiserror::Error;

use crate::groups::{builtin_group, FiniteGroup};
use crate::matrix::Mat;
use crate::par::map_collect;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("index {0} does not act as a two-sided unit")]
    BadUnit(usize),
    #[error("dual map is not an involution fixing the unit (at index {0})")]
    BadDual(usize),
    #[error("Frobenius symmetry fails at (i, j, k) = ({0}, {1}, {2})")]
    RigidityViolation(usize, usize, usize),
    #[error("associativity fails at (i, j, k, l) = ({0}, {1}, {2}, {3})")]
    NotAssociative(usize, usize, usize, usize),
    #[error("restriction to even labels is not closed under fusion")]
    NotClosed,
    #[error("Perron-Frobenius iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    names: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    coeffs: Vec<u32>,
    /// Non-zero `(k, c_{ij}^k)` for each `i * rank + j`.
    products: Vec<Vec<(usize, u32)>>,
}

impl FusionRing {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `c_{ij}^k`
    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        self.coeffs[(i * self.rank + j) * self.rank + k]
    }

    /// Non-zero terms of `b_i b_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.rank + j]
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| (0..self.rank).map(|k| self.coeff(i, j, k)).collect()).collect())
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// The same ring with basis reordered: new index `t` is old `order[t]`.
    pub fn permuted(&self, order: &[usize]) -> Result<FusionRing, FusionError> {
        let n = self.rank;
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(FusionError::BadShape(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let mut position = vec![0; n];
        for (t, &o) in order.iter().enumerate() {
            position[o] = t;
        }
        let names = order.iter().map(|&o| self.names[o].clone()).collect();
        let dual = order.iter().map(|&o| position[self.dual[o]]).collect();
        let coeffs = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.coeff(order[i], order[j], order[k])).collect()).collect())
            .collect();
        ring_from_tensor(names, position[self.unit], dual, coeffs)
    }

    /// Left-multiplication matrices, `(L_i)_{lk} = c_{il}^k`. These are the
    /// matrices of the ring acting on itself.
    pub fn regular_matrices(&self) -> Vec<Mat> {
        (0..self.rank).map(|i| Mat::from_fn(self.rank, |l, k| self.coeff(i, l, k))).collect()
    }
}

/// Validates a coefficient tensor. Checks run in the order shape, unit, dual,
/// Frobenius symmetry, associativity; the first violation is reported.
pub fn ring_from_tensor(
    names: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    coeffs: Vec<Vec<Vec<u32>>>,
) -> Result<FusionRing, FusionError> {
    let rank = coeffs.len();
    if rank == 0 {
        return Err(FusionError::BadShape("rank must be positive".into()));
    }
    if names.len() != rank || dual.len() != rank {
        return Err(FusionError::BadShape(format!(
            "rank {rank} but {} names and {} duals",
            names.len(),
            dual.len()
        )));
    }
    if coeffs.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
        return Err(FusionError::BadShape("coefficient tensor is not rank^3".into()));
    }
    if unit >= rank {
        return Err(FusionError::BadUnit(unit));
    }
    let flat: Vec<u32> = coeffs.into_iter().flatten().flatten().collect();
    let c = |i: usize, j: usize, k: usize| flat[(i * rank + j) * rank + k];

    for j in 0..rank {
        for k in 0..rank {
            let delta = u32::from(j == k);
            if c(unit, j, k) != delta || c(j, unit, k) != delta {
                return Err(FusionError::BadUnit(unit));
            }
        }
    }

    for (i, &d) in dual.iter().enumerate() {
        if d >= rank || dual[d] != i {
            return Err(FusionError::BadDual(i));
        }
    }
    if dual[unit] != unit {
        return Err(FusionError::BadDual(unit));
    }

    for i in 0..rank {
        for j in 0..rank {
            if c(i, j, unit) != u32::from(i == dual[j]) {
                return Err(FusionError::RigidityViolation(i, j, unit));
            }
            for k in 0..rank {
                let v = c(i, j, k);
                if v != c(dual[i], k, j) || v != c(k, dual[j], i) {
                    return Err(FusionError::RigidityViolation(i, j, k));
                }
            }
        }
    }

    let products: Vec<Vec<(usize, u32)>> = (0..rank * rank)
        .map(|ij| (0..rank).filter_map(|k| Some((k, flat[ij * rank + k])).filter(|&(_, v)| v > 0)).collect())
        .collect();

    let ring = FusionRing { rank, names, unit, dual, coeffs: flat, products };
    if let Some((i, j, k, l)) = first_associativity_failure(&ring) {
        return Err(FusionError::NotAssociative(i, j, k, l));
    }
    Ok(ring)
}

/// Compares `(b_i b_j) b_k` with `b_i (b_j b_k)` using the sparse products.
fn first_associativity_failure(ring: &FusionRing) -> Option<(usize, usize, usize, usize)> {
    let n = ring.rank;
    let per_i = map_collect((0..n).collect(), true, |i| {
        let mut left = vec![0u64; n];
        let mut right = vec![0u64; n];
        for j in 0..n {
            for k in 0..n {
                left.iter_mut().for_each(|x| *x = 0);
                right.iter_mut().for_each(|x| *x = 0);
                for &(m, a) in ring.product(i, j) {
                    for &(l, b) in ring.product(m, k) {
                        left[l] += a as u64 * b as u64;
                    }
                }
                for &(m, a) in ring.product(j, k) {
                    for &(l, b) in ring.product(i, m) {
                        right[l] += a as u64 * b as u64;
                    }
                }
                if let Some(l) = (0..n).find(|&l| left[l] != right[l]) {
                    return Some((i, j, k, l));
                }
            }
        }
        None
    });
    per_i.into_iter().flatten().next()
}

fn build(
    names: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    mut f: impl FnMut(usize, usize, usize) -> u32,
) -> Result<FusionRing, FusionError> {
    let n = names.len();
    let coeffs = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| f(i, j, k)).collect()).collect()).collect();
    ring_from_tensor(names, unit, dual, coeffs)
}

/// The group ring `R(G)`: basis `G`, product the group law, duals the inverses.
pub fn group_ring(g: &FiniteGroup) -> FusionRing {
    let dual = (0..g.order()).map(|x| g.inverse(x)).collect();
    build(g.names().to_vec(), g.identity(), dual, |a, b, k| u32::from(g.mul(a, b) == k))
        .expect("a valid group gives a valid fusion ring")
}

/// The near-group ring `K(G, α)`: basis `G ∪ {X}` with `X` last,
/// `gX = Xg = X` and `X² = Σ_g g + αX`.
pub fn near_group_ring(g: &FiniteGroup, alpha: u32) -> FusionRing {
    let n = g.order();
    let x = n;
    let mut names = g.names().to_vec();
    names.push("X".into());
    let mut dual: Vec<usize> = (0..n).map(|a| g.inverse(a)).collect();
    dual.push(x);
    build(names, g.identity(), dual, |a, b, k| match (a == x, b == x) {
        (false, false) => u32::from(k != x && g.mul(a, b) == k),
        (true, true) => {
            if k == x {
                alpha
            } else {
                1
            }
        }
        _ => u32::from(k == x),
    })
    .expect("near-group fusion rules are valid")
}

fn su2_coeff(l: usize, i: usize, j: usize, k: usize) -> u32 {
    let lo = i.abs_diff(j);
    let hi = (i + j).min(2 * l - i - j);
    u32::from(lo <= k && k <= hi && (i + j + k) % 2 == 0)
}

/// `A(1, l)`: basis `V0..Vl`, all self-dual, truncated Clebsch–Gordan rules.
pub fn su2_ring(l: usize) -> Result<FusionRing, FusionError> {
    if l == 0 {
        return Err(FusionError::InvalidParameter("level must be at least 1".into()));
    }
    let names = (0..=l).map(|i| format!("V{i}")).collect();
    build(names, 0, (0..=l).collect(), |i, j, k| su2_coeff(l, i, j, k))
}

/// The even-label subring of `A(1, l)` for odd `l`, basis `V0, V2, …, V(l−1)`.
pub fn su2_half_ring(l: usize) -> Result<FusionRing, FusionError> {
    if l < 3 || l % 2 == 0 {
        return Err(FusionError::InvalidParameter(format!("level {l} must be odd and at least 3")));
    }
    let labels: Vec<usize> = (0..=l).step_by(2).filter(|&v| v < l).collect();
    for &i in &labels {
        for &j in &labels {
            if (0..=l).any(|k| k % 2 == 1 && su2_coeff(l, i, j, k) > 0) {
                return Err(FusionError::NotClosed);
            }
        }
    }
    let names = labels.iter().map(|v| format!("V{v}")).collect();
    let r = labels.len();
    build(names, 0, (0..r).collect(), |a, b, c| su2_coeff(l, labels[a], labels[b], labels[c]))
}

/// The Ising ring on `{1, X, Y}`: `X² = 1 + Y`, `Y² = 1`, `XY = YX = X`.
pub fn ising() -> FusionRing {
    let rules: [[[u32; 3]; 3]; 3] = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 1], [0, 1, 0]],
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    ];
    let coeffs = rules.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    ring_from_tensor(vec!["1".into(), "X".into(), "Y".into()], 0, vec![0, 1, 2], coeffs)
        .expect("Ising rules are valid")
}

/// Parses a family spec: `group:<g>`, `neargroup:<g>:<alpha>`, `su2:<l>`,
/// `su2half:<l>` or `ising`, where `<g>` is a builtin group spec.
pub fn family_ring(spec: &str) -> Result<FusionRing, FusionError> {
    let bad = || FusionError::InvalidParameter(format!("unrecognised ring family `{spec}`"));
    let group = |g: &str| builtin_group(g).map_err(|e| FusionError::InvalidParameter(e.to_string()));
    let level = |l: &str| l.trim().parse::<usize>().map_err(|_| bad());
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match family.trim() {
        "ising" if rest.is_empty() => Ok(ising()),
        "group" => Ok(group_ring(&group(rest)?)),
        "neargroup" => {
            let (g, alpha) = rest.rsplit_once(':').ok_or_else(bad)?;
            let alpha = alpha.trim().parse::<u32>().map_err(|_| bad())?;
            Ok(near_group_ring(&group(g)?, alpha))
        }
        "su2" => su2_ring(level(rest)?),
        "su2half" => su2_half_ring(level(rest)?),
        _ => Err(bad()),
    }
}

/// Number of simple summands, with multiplicity, of `b_i · b_i`.
pub fn length(ring: &FusionRing, i: usize) -> u32 {
    ring.product(i, i).iter().map(|&(_, c)| c).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FPDimVector {
    pub dims: Vec<f64>,
    pub tolerance: f64,
}

pub const FP_TOLERANCE: f64 = 1e-9;
pub const FP_MAX_ITERATIONS: usize = 100_000;

/// Frobenius–Perron dimensions.
///
/// `d` is the common positive eigenvector of all fusion matrices, so it is
/// the Perron vector of `I + Σ_i L_i`; power iteration on that matrix (the
/// identity shift removes periodicity) converges to `d` scaled so that
/// `d[unit] = 1`.
pub fn fp_dims(ring: &FusionRing) -> Result<FPDimVector, FusionError> {
    fp_dims_with(ring, FP_TOLERANCE, FP_MAX_ITERATIONS)
}

pub fn fp_dims_with(ring: &FusionRing, tolerance: f64, max_iter: usize) -> Result<FPDimVector, FusionError> {
    let n = ring.rank;
    // A_{jk} = Σ_i c_{ij}^k, stored sparsely by row.
    let mut a = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in ring.product(i, j) {
                a[j][k] += c as f64;
            }
        }
    }
    let sparse: Vec<Vec<(usize, f64)>> = a
        .into_iter()
        .enumerate()
        .map(|(j, row)| {
            row.into_iter()
                .enumerate()
                .map(|(k, v)| (k, v + if j == k { 1.0 } else { 0.0 }))
                .filter(|&(_, v)| v != 0.0)
                .collect()
        })
        .collect();

    let mut v = vec![1.0; n];
    for _ in 0..max_iter {
        let mut w: Vec<f64> = sparse.iter().map(|row| row.iter().map(|&(k, x)| x * v[k]).sum()).collect();
        let scale = w[ring.unit];
        w.iter_mut().for_each(|x| *x /= scale);
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < tolerance * 1e-3 {
            v[ring.unit] = 1.0;
            return Ok(FPDimVector { dims: v, tolerance });
        }
    }
    Err(FusionError::NoConvergence(max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin_group;

    fn regular_sq_eq(ring: &FusionRing, i: usize, expected: &[(usize, u32)]) {
        assert_eq!(ring.product(i, i), expected, "{}^2", ring.name(i));
    }

    #[test]
    fn trivial_ring() {
        let r = ring_from_tensor(vec!["1".into()], 0, vec![0], vec![vec![vec![1]]]).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(length(&r, 0), 1);
    }

    #[test]
    fn ising_valid_and_broken() {
        let r = ising();
        regular_sq_eq(&r, 1, &[(0, 1), (2, 1)]);
        let mut t = r.tensor();
        t[2][2] = vec![0, 1, 0];
        let err = ring_from_tensor(r.names().to_vec(), 0, vec![0, 1, 2], t).unwrap_err();
        assert!(matches!(err, FusionError::RigidityViolation(..)), "{err:?}");
    }

    #[test]
    fn validation_errors() {
        let r = ising();
        assert_eq!(
            ring_from_tensor(r.names().to_vec(), 1, vec![0, 1, 2], r.tensor()).unwrap_err(),
            FusionError::BadUnit(1)
        );
        assert!(matches!(
            ring_from_tensor(r.names().to_vec(), 0, vec![0, 2, 2], r.tensor()).unwrap_err(),
            FusionError::BadDual(_)
        ));
        assert!(matches!(
            ring_from_tensor(vec!["1".into()], 0, vec![0], vec![vec![vec![1, 0]]]).unwrap_err(),
            FusionError::BadShape(_)
        ));
    }

    #[test]
    fn associativity_violation_detected() {
        // x² = 1, y² = 1, xy = 0 is Frobenius-symmetric but (xx)y = y ≠ x(xy) = 0
        let t = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
            vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]],
        ];
        let names = vec!["1".into(), "x".into(), "y".into()];
        let err = ring_from_tensor(names, 0, vec![0, 1, 2], t).unwrap_err();
        assert!(matches!(err, FusionError::NotAssociative(..)), "{err:?}");
    }

    #[test]
    fn near_group_z2_zero_is_ising() {
        let z2 = builtin_group("Z_2").unwrap();
        let k = near_group_ring(&z2, 0);
        assert_eq!(k.permuted(&[0, 2, 1]).unwrap().tensor(), ising().tensor());
        let triv = near_group_ring(&builtin_group("Z_1").unwrap(), 0);
        assert_eq!(triv.rank(), 2);
        regular_sq_eq(&triv, 1, &[(0, 1)]);
    }

    #[test]
    fn near_group_large() {
        let k = near_group_ring(&builtin_group("Z_75").unwrap(), 10);
        assert_eq!(k.rank(), 76);
        assert_eq!(k.coeff(75, 75, 75), 10);
        assert!(k.is_commutative());
    }

    #[test]
    fn su2_small_levels() {
        let r1 = su2_ring(1).unwrap();
        regular_sq_eq(&r1, 1, &[(0, 1)]);
        let r2 = su2_ring(2).unwrap();
        regular_sq_eq(&r2, 1, &[(0, 1), (2, 1)]);
        regular_sq_eq(&r2, 2, &[(0, 1)]);
        assert_eq!(r2.product(1, 2), &[(1, 1)]);
        let r3 = su2_ring(3).unwrap();
        assert_eq!(r3.product(1, 2), &[(1, 1), (3, 1)]);
        assert!(su2_ring(0).is_err());
    }

    #[test]
    fn su2_half_levels() {
        let fib = su2_half_ring(3).unwrap();
        assert_eq!(fib.names(), &["V0", "V2"]);
        regular_sq_eq(&fib, 1, &[(0, 1), (1, 1)]);
        let r5 = su2_half_ring(5).unwrap();
        assert_eq!(r5.names(), &["V0", "V2", "V4"]);
        assert_eq!((0..3).map(|i| length(&r5, i)).collect::<Vec<_>>(), vec![1, 3, 2]);
        assert_eq!(su2_half_ring(4).unwrap_err(), FusionError::InvalidParameter("level 4 must be odd and at least 3".into()));
    }

    #[test]
    fn fp_dims_examples() {
        let d = fp_dims(&ising()).unwrap();
        assert!((d.dims[1] - 2f64.sqrt()).abs() < 1e-9);
        assert!((d.dims[2] - 1.0).abs() < 1e-9);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let d = fp_dims(&su2_half_ring(3).unwrap()).unwrap();
        assert!((d.dims[1] - phi).abs() < 1e-9);
        let d = fp_dims(&group_ring(&builtin_group("D_4").unwrap())).unwrap();
        assert!(d.dims.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        let d = fp_dims(&near_group_ring(&builtin_group("Z_175").unwrap(), 62)).unwrap();
        let expected = (62.0 + (62f64 * 62.0 + 700.0).sqrt()) / 2.0;
        assert!((d.dims[175] - expected).abs() < 1e-9);
    }

    #[test]
    fn regular_matrices_follow_left_multiplication() {
        let r = su2_ring(3).unwrap();
        let m = r.regular_matrices();
        // V1 · V2 = V1 + V3 appears as row 2 of L_{V1}
        assert_eq!(m[1].row(2), &[0, 1, 0, 1]);
    }

    #[test]
    fn family_specs() {
        assert_eq!(family_ring("ising").unwrap().rank(), 3);
        assert_eq!(family_ring("group:D_3").unwrap().rank(), 6);
        assert_eq!(family_ring("group:Z_2 x Z_2").unwrap().rank(), 4);
        let k = family_ring("neargroup:Z_3:2").unwrap();
        assert_eq!(k.coeff(3, 3, 3), 2);
        assert_eq!(family_ring("su2:4").unwrap().rank(), 5);
        assert_eq!(family_ring("su2half:7").unwrap().rank(), 4);
        for bad in ["", "group", "neargroup:Z_3", "su2:x", "su2half:4", "tambara"] {
            assert!(family_ring(bad).is_err(), "{bad}");
        }
    }
}
