//! NIM-reps: non-negative integer matrix representations of a fusion ring.
//!
//! # Matrix convention
//!
//! `(N_i)_{lk}` is the multiplicity of `m_k` in `b_i ▷ m_l`, i.e. row `l` of
//! `N_i` is the image of `m_l`. Acting first by `b_j` and then by `b_i`
//! composes as the matrix product `N_j · N_i`, so the module axiom is
//!
//! ```text
//! N_j · N_i = Σ_k c_{ij}^k N_k        for all i, j
//! ```
//!
//! and the rigidity condition is `N_{i*} = N_iᵀ`. The regular NIM-rep of a
//! ring has `(N_i)_{lk} = c_{il}^k`.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::fusion::FusionRing;
use crate::matrix::Mat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NimRepError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("the unit does not act as the identity matrix")]
    BadUnit,
    #[error("label {0} acts as the zero matrix")]
    ZeroAction(usize),
    #[error("rigidity fails: N of the dual of label {0} is not the transpose")]
    RigidityFail(usize),
    #[error("module axiom fails for labels ({0}, {1})")]
    ModuleAxiomFail(usize, usize),
    #[error("NIM-reps are over different rings")]
    RingMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimRep {
    ring: Arc<FusionRing>,
    dim: usize,
    mats: Vec<Mat>,
    basis_names: Vec<String>,
}

pub fn default_basis_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("m{i}")).collect()
}

/// Validates a matrix tuple against the ring. Checks run in the order shape,
/// unit, zero action, rigidity, module axiom.
pub fn verify(ring: Arc<FusionRing>, mats: Vec<Mat>, basis_names: Vec<String>) -> Result<NimRep, NimRepError> {
    let rank = ring.rank();
    if mats.len() != rank {
        return Err(NimRepError::BadShape(format!("{} matrices for a rank-{rank} ring", mats.len())));
    }
    let dim = mats[0].dim();
    if dim == 0 || mats.iter().any(|m| m.dim() != dim) {
        return Err(NimRepError::BadShape("matrices must be square, non-empty and of equal size".into()));
    }
    if basis_names.len() != dim {
        return Err(NimRepError::BadShape(format!("{} basis names for dimension {dim}", basis_names.len())));
    }
    if mats[ring.unit()] != Mat::identity(dim) {
        return Err(NimRepError::BadUnit);
    }
    if let Some(i) = mats.iter().position(Mat::is_zero) {
        return Err(NimRepError::ZeroAction(i));
    }
    for i in 0..rank {
        if mats[ring.dual(i)] != mats[i].transpose() {
            return Err(NimRepError::RigidityFail(i));
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            if !module_axiom_holds(&ring, &mats, i, j) {
                return Err(NimRepError::ModuleAxiomFail(i, j));
            }
        }
    }
    Ok(NimRep { ring, dim, mats, basis_names })
}

fn module_axiom_holds(ring: &FusionRing, mats: &[Mat], i: usize, j: usize) -> bool {
    let Some(lhs) = mats[j].mul(&mats[i]) else { return false };
    let mut rhs = Mat::zeros(lhs.dim());
    for &(k, c) in ring.product(i, j) {
        if rhs.add_scaled(&mats[k], c).is_none() {
            return false;
        }
    }
    lhs == rhs
}

/// The ring acting on itself, with the ring's basis names.
pub fn regular_nimrep(ring: Arc<FusionRing>) -> NimRep {
    let mats = ring.regular_matrices();
    let names = ring.names().to_vec();
    verify(ring, mats, names).expect("regular representation of a valid ring")
}

impl NimRep {
    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<NimRep, NimRepError> {
        if names.len() != self.dim {
            return Err(NimRepError::BadShape(format!("{} basis names for dimension {}", names.len(), self.dim)));
        }
        self.basis_names = names;
        Ok(self)
    }

    /// Relabels the module basis: old `m_l` becomes new index `perm[l]`.
    pub fn permute_basis(&self, perm: &[usize]) -> NimRep {
        let mut names = vec![String::new(); self.dim];
        for (l, &p) in perm.iter().enumerate() {
            names[p] = self.basis_names[l].clone();
        }
        NimRep {
            ring: self.ring.clone(),
            dim: self.dim,
            mats: self.mats.iter().map(|m| m.conjugate_by(perm)).collect(),
            basis_names: names,
        }
    }

    /// Transports this NIM-rep to `ring`, which must be this ring with its basis
    /// reordered so that new label `t` is old label `order[t]`.
    pub fn relabel_ring(&self, ring: Arc<FusionRing>, order: &[usize]) -> Result<NimRep, NimRepError> {
        if order.len() != self.mats.len() || order.iter().any(|&o| o >= self.mats.len()) {
            return Err(NimRepError::BadShape("label order does not match the ring rank".into()));
        }
        let mats = order.iter().map(|&o| self.mats[o].clone()).collect();
        verify(ring, mats, self.basis_names.clone())
    }

    /// Connected support graph of `Σ_i N_i`.
    pub fn is_irreducible(&self) -> bool {
        component_labels(self).iter().all(|&c| c == 0)
    }

    /// Component index of each basis element, numbered by first appearance.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = component_labels(self);
        let count = labels.iter().max().map_or(0, |&m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (l, &c) in labels.iter().enumerate() {
            out[c].push(l);
        }
        out
    }

    /// Restriction to a subset of the basis closed under the action.
    pub fn restrict(&self, basis: &[usize]) -> Result<NimRep, NimRepError> {
        let mats = self
            .mats
            .iter()
            .map(|m| Mat::from_fn(basis.len(), |r, c| m[(basis[r], basis[c])]))
            .collect();
        let names = basis.iter().map(|&l| self.basis_names[l].clone()).collect();
        verify(self.ring.clone(), mats, names)
    }

    /// Largest eigenvalue modulus of each `N_i`.
    pub fn pf_eigenvalues(&self) -> Vec<f64> {
        self.mats.iter().map(spectral_radius).collect()
    }

    pub fn graph(&self) -> NimGraph {
        let mut edges = Vec::new();
        for (i, m) in self.mats.iter().enumerate() {
            if i == self.ring.unit() {
                continue;
            }
            for l in 0..self.dim {
                for k in 0..self.dim {
                    if m[(l, k)] > 0 {
                        edges.push(NimEdge { source: l, target: k, label: i, multiplicity: m[(l, k)] });
                    }
                }
            }
        }
        NimGraph { nodes: self.basis_names.clone(), edges }
    }

    pub fn to_dot(&self) -> String {
        to_dot(self)
    }
}

fn component_labels(n: &NimRep) -> Vec<usize> {
    let d = n.dim;
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for m in &n.mats {
        for l in 0..d {
            for k in 0..d {
                if m[(l, k)] > 0 {
                    let (a, b) = (find(&mut parent, l), find(&mut parent, k));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut label_of_root = vec![usize::MAX; d];
    let mut next = 0;
    (0..d)
        .map(|l| {
            let r = find(&mut parent, l);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            label_of_root[r]
        })
        .collect()
}

pub fn spectral_radius(m: &Mat) -> f64 {
    if m.dim() == 1 {
        return m[(0, 0)] as f64;
    }
    m.to_f64().complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_irreducible(n: &NimRep) -> bool {
    n.is_irreducible()
}

/// Block-diagonal sum. Basis names of `b` that clash with names of `a` get a
/// trailing `'`.
pub fn direct_sum(a: &NimRep, b: &NimRep) -> Result<NimRep, NimRepError> {
    if a.ring != b.ring {
        return Err(NimRepError::RingMismatch);
    }
    let mats = a.mats.iter().zip(&b.mats).map(|(x, y)| x.direct_sum(y)).collect();
    let mut names = a.basis_names.clone();
    for name in &b.basis_names {
        let mut candidate = name.clone();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    Ok(NimRep { ring: a.ring.clone(), dim: a.dim + b.dim, mats, basis_names: names })
}

/// A basis bijection `σ` with `N^b[σl][σk] = N^a[l][k]` for every label, if
/// one exists.
pub fn are_equivalent(a: &NimRep, b: &NimRep) -> Option<Vec<usize>> {
    if a.ring != b.ring || a.dim != b.dim {
        return None;
    }
    let d = a.dim;
    let signature = |n: &NimRep, l: usize| -> Vec<(u32, u64)> {
        n.mats.iter().map(|m| (m[(l, l)], m.row_sum(l))).collect()
    };
    let sig_a: Vec<_> = (0..d).map(|l| signature(a, l)).collect();
    let sig_b: Vec<_> = (0..d).map(|l| signature(b, l)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    // Assign basis elements of `a` in breadth-first order over the support
    // graph so that every new element is adjacent to an assigned one.
    let mut order = Vec::with_capacity(d);
    let mut placed = vec![false; d];
    for start in 0..d {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let l = order[head];
            head += 1;
            for k in 0..d {
                if !placed[k] && a.mats.iter().any(|m| m[(l, k)] > 0 || m[(k, l)] > 0) {
                    placed[k] = true;
                    order.push(k);
                }
            }
        }
    }

    struct Search<'a> {
        a: &'a NimRep,
        b: &'a NimRep,
        sig_a: &'a [Vec<(u32, u64)>],
        sig_b: &'a [Vec<(u32, u64)>],
        order: &'a [usize],
        sigma: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self, depth: usize) -> bool {
            let l = self.order[depth];
            let sl = self.sigma[l];
            self.order[..=depth].iter().all(|&k| {
                let sk = self.sigma[k];
                self.a.mats.iter().zip(&self.b.mats).all(|(ma, mb)| ma[(l, k)] == mb[(sl, sk)] && ma[(k, l)] == mb[(sk, sl)])
            })
        }

        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let l = self.order[depth];
            for t in 0..self.used.len() {
                if self.used[t] || self.sig_a[l] != self.sig_b[t] {
                    continue;
                }
                self.sigma[l] = t;
                if self.consistent(depth) {
                    self.used[t] = true;
                    if self.go(depth + 1) {
                        return true;
                    }
                    self.used[t] = false;
                }
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        order: &order,
        sigma: vec![usize::MAX; d],
        used: vec![false; d],
    };
    search.go(0).then_some(search.sigma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NimEdge {
    pub source: usize,
    pub target: usize,
    pub label: usize,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimGraph {
    pub nodes: Vec<String>,
    /// Non-unit labels only; unit self-loops are omitted.
    pub edges: Vec<NimEdge>,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of the NIM-graph.
///
/// Nodes are `n0, n1, …` in basis order. For each non-unit label and each
/// pair `l < k`, a pair of opposite arrows is drawn as one `dir=both` edge;
/// leftover one-way arrows and self-loops follow. Every unit of multiplicity
/// is a separate edge.
pub fn to_dot(n: &NimRep) -> String {
    let mut out = String::from("digraph nimrep {\n");
    for (l, name) in n.basis_names.iter().enumerate() {
        let _ = writeln!(out, "  n{l} [label=\"{}\"];", dot_escape(name));
    }
    let ring = &n.ring;
    for (i, m) in n.mats.iter().enumerate() {
        if i == ring.unit() {
            continue;
        }
        let label = dot_escape(ring.name(i));
        for l in 0..n.dim {
            for k in l..n.dim {
                let (fwd, back) = (m[(l, k)], m[(k, l)]);
                if l == k {
                    for _ in 0..fwd {
                        let _ = writeln!(out, "  n{l} -> n{l} [label=\"{label}\"];");
                    }
                    continue;
                }
                let both = fwd.min(back);
                for _ in 0..both {
                    let _ = writeln!(out, "  n{l} -> n{k} [label=\"{label}\", dir=both];");
                }
                for _ in both..fwd {
                    let _ = writeln!(out, "  n{l} -> n{k} [label=\"{label}\"];");
                }
                for _ in both..back {
                    let _ = writeln!(out, "  n{k} -> n{l} [label=\"{label}\"];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
