//! Exhaustive NIM-rep search for an arbitrary fusion ring.
//!
//! The unknowns are the entries of `N_i` for every non-unit label. A dual
//! pair shares its cells (`N_{i*} = N_iᵀ`) and self-dual labels are
//! symmetric. Step `r` of the search fixes row `r` of every label's matrix;
//! because row `r` of `N_{i*}` is column `r` of `N_i`, after step `r` the
//! first `r + 1` rows of all matrices are known, and so is every entry
//! `(l, p)` with `l ≤ r` of both sides of `N_b N_a = Σ_k c_{ab}^k N_k`.
//!
//! Within a step the diagonal entries are chosen first. They determine the
//! squared row norm `Σ_m (N_i)_{rm}² = Σ_k c_{i* i}^k (N_k)_{rr}`, which
//! bounds the off-diagonal choices.
//!
//! Irreducible NIM-reps are searched with basis orderings in which every
//! element after the first is joined to an earlier one; every connected
//! NIM-rep has such an ordering. Entries are bounded by the FP dimension of
//! their label. Results are deduplicated by a canonical form, so the output
//! does not depend on the order in which (possibly parallel) branches finish.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use super::ClassifyError;
use crate::fusion::{fp_dims, FusionRing};
use crate::matrix::Mat;
use crate::nimrep::{default_basis_names, direct_sum, verify, NimRep};
use crate::par::map_collect;

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteOptions {
    /// Uniform entry bound overriding the per-label FP-dimension bound.
    pub bound: Option<u32>,
    /// Maximum number of cell assignments per search.
    pub node_cap: u64,
    pub parallel: bool,
    /// Build reducible NIM-reps as direct sums of irreducible ones (default).
    /// When false, a single search runs without the connectivity restriction.
    pub decompose: bool,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions { bound: None, node_cap: DEFAULT_NODE_CAP, parallel: true, decompose: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classified {
    pub nimrep: NimRep,
    pub irreducible: bool,
}

/// `⌊FPdim(b_i)⌋` per label. For an irreducible NIM-rep with Perron vector
/// `v`, `(N_i)_{lk} v_k ≤ d_i v_l` and `(N_i)_{lk} v_l ≤ d_i v_k`, so every
/// entry of `N_i` is at most `d_i`.
pub fn default_entry_bounds(ring: &FusionRing) -> Result<Vec<u32>, ClassifyError> {
    let dims = fp_dims(ring)?;
    Ok(dims.dims.iter().map(|&d| (d + 1e-6).floor() as u32).collect())
}

/// All NIM-reps of dimension `dim` up to basis permutation, with default options.
pub fn brute_force_nimreps(
    ring: Arc<FusionRing>,
    dim: usize,
    bound: Option<u32>,
) -> Result<Vec<Classified>, ClassifyError> {
    brute_force_nimreps_with(ring, dim, &BruteOptions { bound, ..BruteOptions::default() })
}

/// Irreducible NIM-reps first, then reducible ones, each group sorted by
/// canonical form.
pub fn brute_force_nimreps_with(
    ring: Arc<FusionRing>,
    dim: usize,
    opts: &BruteOptions,
) -> Result<Vec<Classified>, ClassifyError> {
    if dim == 0 {
        return Err(ClassifyError::InvalidParameter("dimension must be at least 1".into()));
    }
    if !opts.decompose {
        let found = search(&ring, dim, opts, false)?;
        let (mut irr, mut red): (Vec<_>, Vec<_>) = found.into_iter().partition(NimRep::is_irreducible);
        let mut out: Vec<Classified> =
            irr.drain(..).map(|nimrep| Classified { nimrep, irreducible: true }).collect();
        out.extend(red.drain(..).map(|nimrep| Classified { nimrep, irreducible: false }));
        return Ok(out);
    }

    let by_dim: Vec<Vec<NimRep>> =
        (1..=dim).map(|d| brute_force_irreducible(ring.clone(), d, opts)).collect::<Result<_, _>>()?;
    let mut out: Vec<Classified> =
        by_dim[dim - 1].iter().cloned().map(|nimrep| Classified { nimrep, irreducible: true }).collect();

    // Multisets of irreducible classes with total dimension `dim`, as
    // non-increasing sequences of (dimension, class index).
    fn parts(
        remaining: usize,
        max: (usize, usize),
        by_dim: &[Vec<NimRep>],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for d in (1..=remaining.min(max.0)).rev() {
            let top = if d == max.0 { max.1 + 1 } else { by_dim[d - 1].len() };
            for idx in (0..top.min(by_dim[d - 1].len())).rev() {
                cur.push((d, idx));
                parts(remaining - d, (d, idx), by_dim, cur, out);
                cur.pop();
            }
        }
    }
    let mut combos = Vec::new();
    if dim > 1 {
        parts(dim, (dim - 1, usize::MAX - 1), &by_dim, &mut Vec::new(), &mut combos);
    }
    let mut reducible = BTreeMap::new();
    for combo in combos {
        let mut acc = by_dim[combo[0].0 - 1][combo[0].1].clone();
        for &(d, idx) in &combo[1..] {
            acc = direct_sum(&acc, &by_dim[d - 1][idx])?;
        }
        let (key, perm) = canonical_form(&acc);
        let n = acc.permute_basis(&perm).with_basis_names(default_basis_names(dim))?;
        reducible.insert(key, n);
    }
    out.extend(reducible.into_values().map(|nimrep| Classified { nimrep, irreducible: false }));
    Ok(out)
}

/// Irreducible NIM-reps of dimension `dim` up to basis permutation, sorted by
/// canonical form.
pub fn brute_force_irreducible(
    ring: Arc<FusionRing>,
    dim: usize,
    opts: &BruteOptions,
) -> Result<Vec<NimRep>, ClassifyError> {
    if dim == 0 {
        return Err(ClassifyError::InvalidParameter("dimension must be at least 1".into()));
    }
    search(&ring, dim, opts, true)
}

fn search(ring: &Arc<FusionRing>, dim: usize, opts: &BruteOptions, connected: bool) -> Result<Vec<NimRep>, ClassifyError> {
    let bounds = match opts.bound {
        Some(b) => vec![b; ring.rank()],
        None => default_entry_bounds(ring)?,
    };
    let labels: Vec<usize> = (0..ring.rank()).filter(|&i| i != ring.unit()).collect();
    let pairs = labels
        .iter()
        .flat_map(|&a| labels.iter().map(move |&b| (a, b)))
        .map(|(a, b)| (a, b, ring.product(a, b).to_vec()))
        .collect();
    let norm_terms = (0..ring.rank()).map(|i| ring.product(ring.dual(i), i).to_vec()).collect();
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let problem = Problem {
        ring,
        d: dim,
        labels,
        bounds,
        pairs,
        norm_terms,
        connected,
        cap: opts.node_cap,
        nodes: &nodes,
        abort: &abort,
    };
    let exploded = || ClassifyError::SearchExploded { cap: opts.node_cap };

    let mut top = Collector { split_at: Some(1), frontier: Vec::new(), solutions: Vec::new() };
    let mut start = State::new(ring, dim);
    problem.step(&mut start, 0, &mut top).map_err(|_| exploded())?;

    let branches = map_collect(top.frontier, opts.parallel, |mut st| {
        let mut c = Collector { split_at: None, frontier: Vec::new(), solutions: Vec::new() };
        problem.step(&mut st, 1, &mut c).map(|_| c.solutions)
    });

    let mut canonical: BTreeMap<Vec<u32>, Vec<Mat>> = BTreeMap::new();
    for branch in branches {
        for mats in branch.map_err(|_| exploded())? {
            let raw = verify(ring.clone(), mats, default_basis_names(dim))?;
            let (key, perm) = canonical_form(&raw);
            canonical.entry(key).or_insert_with(|| raw.permute_basis(&perm).mats().to_vec());
        }
    }
    canonical
        .into_values()
        .map(|mats| Ok(verify(ring.clone(), mats, default_basis_names(dim))?))
        .collect()
}

const UNKNOWN: i32 = -1;

#[derive(Clone)]
struct State {
    d: usize,
    /// Per ring label, row-major, `UNKNOWN` where unassigned.
    cells: Vec<Vec<i32>>,
    dual: Vec<usize>,
}

impl State {
    fn new(ring: &FusionRing, d: usize) -> Self {
        let mut cells = vec![vec![UNKNOWN; d * d]; ring.rank()];
        cells[ring.unit()] = (0..d * d).map(|x| i32::from(x / d == x % d)).collect();
        State { d, cells, dual: ring.duals().to_vec() }
    }

    #[inline]
    fn get(&self, i: usize, r: usize, c: usize) -> i32 {
        self.cells[i][r * self.d + c]
    }

    #[inline]
    fn set(&mut self, i: usize, r: usize, c: usize, v: i32) {
        let d = self.d;
        self.cells[i][r * d + c] = v;
        let j = self.dual[i];
        self.cells[j][c * d + r] = v;
    }

    fn to_mats(&self) -> Vec<Mat> {
        self.cells.iter().map(|m| Mat::from_fn(self.d, |r, c| m[r * self.d + c] as u32)).collect()
    }
}

struct Collector {
    split_at: Option<usize>,
    frontier: Vec<State>,
    solutions: Vec<Vec<Mat>>,
}

struct Exploded;

struct Problem<'a> {
    ring: &'a FusionRing,
    d: usize,
    labels: Vec<usize>,
    bounds: Vec<u32>,
    /// `(a, b, c_{ab}^•)` for the constraint `N_b N_a = Σ_k c_{ab}^k N_k`.
    pairs: Vec<(usize, usize, Vec<(usize, u32)>)>,
    /// Terms of `b_{i*} b_i`, giving the squared row norms of `N_i`.
    norm_terms: Vec<Vec<(usize, u32)>>,
    connected: bool,
    cap: u64,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

/// Running squared-norm bookkeeping for the current row, per label.
struct RowNorms {
    target: Vec<i64>,
    partial: Vec<i64>,
    remaining: Vec<usize>,
}

impl Problem<'_> {
    fn tick(&self) -> Result<(), Exploded> {
        if self.abort.load(Ordering::Relaxed) {
            return Err(Exploded);
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            self.abort.store(true, Ordering::Relaxed);
            return Err(Exploded);
        }
        Ok(())
    }

    fn step(&self, st: &mut State, r: usize, out: &mut Collector) -> Result<(), Exploded> {
        if out.split_at == Some(r) {
            out.frontier.push(st.clone());
            return Ok(());
        }
        if r == self.d {
            out.solutions.push(st.to_mats());
            return Ok(());
        }
        if self.connected && r > 0 && !self.labels.iter().any(|&i| (0..r).any(|l| st.get(i, l, r) > 0)) {
            return Ok(());
        }
        let diag: Vec<usize> =
            self.labels.iter().copied().filter(|&i| i <= self.ring.dual(i) && st.get(i, r, r) == UNKNOWN).collect();
        let mut off: Vec<(usize, usize)> = Vec::new();
        for &i in &self.labels {
            for k in r + 1..self.d {
                if st.get(i, r, k) == UNKNOWN {
                    off.push((i, k));
                }
            }
        }
        self.assign_diag(st, r, &diag, &off, out)
    }

    fn assign_diag(
        &self,
        st: &mut State,
        r: usize,
        diag: &[usize],
        off: &[(usize, usize)],
        out: &mut Collector,
    ) -> Result<(), Exploded> {
        let Some((&i, rest)) = diag.split_first() else {
            return self.start_off(st, r, off, out);
        };
        for v in 0..=self.bounds[i] as i32 {
            self.tick()?;
            st.set(i, r, r, v);
            self.assign_diag(st, r, rest, off, out)?;
        }
        st.set(i, r, r, UNKNOWN);
        Ok(())
    }

    fn start_off(&self, st: &mut State, r: usize, off: &[(usize, usize)], out: &mut Collector) -> Result<(), Exploded> {
        let n = self.ring.rank();
        let mut norms = RowNorms { target: vec![0; n], partial: vec![0; n], remaining: vec![0; n] };
        for &(i, _) in off {
            norms.remaining[i] += 1;
        }
        for &i in &self.labels {
            norms.target[i] =
                self.norm_terms[i].iter().map(|&(k, c)| c as i64 * st.get(k, r, r) as i64).sum();
            norms.partial[i] = (0..=r).map(|m| (st.get(i, r, m) as i64).pow(2)).sum();
            let cap = norms.remaining[i] as i64 * (self.bounds[i] as i64).pow(2);
            if norms.partial[i] > norms.target[i] || norms.partial[i] + cap < norms.target[i] {
                return Ok(());
            }
        }
        self.assign_off(st, r, off, &mut norms, out)
    }

    fn assign_off(
        &self,
        st: &mut State,
        r: usize,
        off: &[(usize, usize)],
        norms: &mut RowNorms,
        out: &mut Collector,
    ) -> Result<(), Exploded> {
        let Some((&(i, k), rest)) = off.split_first() else {
            if self.row_constraints_hold(st, r) {
                return self.step(st, r + 1, out);
            }
            return Ok(());
        };
        let b = self.bounds[i] as i64;
        let before = norms.partial[i];
        norms.remaining[i] -= 1;
        let cap_after = norms.remaining[i] as i64 * b * b;
        for v in 0..=b {
            let now = before + v * v;
            if now > norms.target[i] {
                break;
            }
            if now + cap_after < norms.target[i] {
                continue;
            }
            self.tick()?;
            st.set(i, r, k, v as i32);
            norms.partial[i] = now;
            let res = self.assign_off(st, r, rest, norms, out);
            if res.is_err() {
                return res;
            }
        }
        norms.partial[i] = before;
        norms.remaining[i] += 1;
        st.set(i, r, k, UNKNOWN);
        Ok(())
    }

    /// Entries `(l, p)` with `l ≤ r` of `N_b N_a = Σ_k c_{ab}^k N_k`: exact
    /// where all terms are known (`p ≤ r`), an upper bound otherwise. Rows
    /// `l < r` were already checked exactly for `p < r`.
    fn row_constraints_hold(&self, st: &State, r: usize) -> bool {
        let d = self.d;
        for (a, b, terms) in &self.pairs {
            for l in 0..=r {
                let from = if l == r { 0 } else { r };
                for p in from..d {
                    let known_m = if p <= r { d } else { r + 1 };
                    let lhs: i64 = (0..known_m).map(|m| st.get(*b, l, m) as i64 * st.get(*a, m, p) as i64).sum();
                    let rhs: i64 = terms.iter().map(|&(k, c)| c as i64 * st.get(k, l, p) as i64).sum();
                    if lhs > rhs || (p <= r && lhs != rhs) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Canonical form under simultaneous basis permutation.
///
/// The key lists, for `t = 0, 1, …`, the block of every non-unit label
/// consisting of row `t` up to the diagonal followed by column `t` above it.
/// Block `t` depends only on which elements occupy positions `0..=t`, so the
/// lexicographically least key is found level by level, keeping every
/// prefix that ties. Returns the key and the permutation (old index ↦ new
/// index) realising it.
pub fn canonical_form(n: &NimRep) -> (Vec<u32>, Vec<usize>) {
    let d = n.dim();
    let unit = n.ring().unit();
    let mats: Vec<&Mat> = n.mats().iter().enumerate().filter(|&(i, _)| i != unit).map(|(_, m)| m).collect();
    let block = |prefix: &[usize]| -> Vec<u32> {
        let t = prefix.len() - 1;
        let x = prefix[t];
        let mut out = Vec::with_capacity(mats.len() * (2 * t + 1));
        for m in &mats {
            out.extend(prefix.iter().map(|&c| m[(x, c)]));
            out.extend(prefix[..t].iter().map(|&r| m[(r, x)]));
        }
        out
    };
    let mut key = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d {
        let mut best: Option<Vec<u32>> = None;
        let mut next = Vec::new();
        for prefix in &frontier {
            for x in (0..d).filter(|x| !prefix.contains(x)) {
                let mut cand = prefix.clone();
                cand.push(x);
                let b = block(&cand);
                match best.as_ref().map(|cur| b.cmp(cur)) {
                    Some(std::cmp::Ordering::Greater) => {}
                    Some(std::cmp::Ordering::Equal) => next.push(cand),
                    _ => {
                        best = Some(b);
                        next.clear();
                        next.push(cand);
                    }
                }
            }
        }
        key.extend(best.unwrap_or_default());
        frontier = next;
    }
    let order = &frontier[0];
    let mut perm = vec![0; d];
    for (t, &old) in order.iter().enumerate() {
        perm[old] = t;
    }
    (key, perm)
}
