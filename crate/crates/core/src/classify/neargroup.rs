//! NIM-reps of near-group rings `K(G, α)`.
//!
//! A NIM-rep splits into group orbits `G/H_1, …, G/H_p`; the group acts by
//! coset permutations and `X` maps every element of orbit `i` to
//! `Σ_j c_{ij} (sum of orbit j)`. With `b_j = |G:H_j|` the module axiom for
//! `X² = Σg + αX` becomes, entry by entry,
//!
//! ```text
//! |H_i| + α c_ii = Σ_j c_ij² b_j
//! α c_iq         = Σ_j c_ij c_jq b_j      (q ≠ i)
//! ```
//!
//! Everything here is exact integer arithmetic.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::ClassifyError;
use crate::fusion::{near_group_ring, FusionRing};
use crate::groups::{conjugacy_classes_of_subgroups, coset_action, FiniteGroup, Subgroup};
use crate::matrix::Mat;
use crate::nimrep::{verify, NimRep};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearGroupSolution {
    pub alpha: u32,
    pub group: Arc<FiniteGroup>,
    pub orbits: Vec<Subgroup>,
    pub c: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NearGroupWarning {
    /// A closed-form solution has an entry larger than the search bound.
    BoundTooSmall { bound: u32, needed: u32 },
}

/// Result of the bounded exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearGroupBrute {
    pub solutions: Vec<NearGroupSolution>,
    pub bound: u32,
    pub warnings: Vec<NearGroupWarning>,
}

impl NearGroupSolution {
    pub fn p(&self) -> usize {
        self.orbits.len()
    }

    /// `b_j = |G : H_j|`
    pub fn indices(&self) -> Vec<u64> {
        self.orbits.iter().map(|h| h.index_in(&self.group) as u64).collect()
    }

    pub fn max_entry(&self) -> u32 {
        self.c.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Exact check of the element-wise system.
    pub fn satisfies_cbc(&self) -> bool {
        let p = self.p();
        let b = self.indices();
        let alpha = self.alpha as u64;
        if self.c.len() != p || self.c.iter().any(|r| r.len() != p) {
            return false;
        }
        (0..p).all(|i| {
            (0..p).all(|q| {
                let sum: u64 = (0..p).map(|j| self.c[i][j] as u64 * self.c[j][q] as u64 * b[j]).sum();
                let lhs = alpha * self.c[i][q] as u64 + if i == q { self.orbits[i].order() as u64 } else { 0 };
                sum == lhs && self.c[i][q] == self.c[q][i]
            })
        })
    }

    /// Support graph of `C` on orbit labels is connected.
    pub fn is_connected(&self) -> bool {
        connected(&self.c)
    }

    /// Orbits sorted by `(|H|, elements)`, then the lexicographically least
    /// `C` among reorderings of equal orbits.
    pub fn canonicalize(mut self) -> Self {
        let p = self.p();
        let mut idx: Vec<usize> = (0..p).collect();
        idx.sort_by(|&a, &b| self.orbits[a].cmp(&self.orbits[b]));
        let orbits: Vec<Subgroup> = idx.iter().map(|&i| self.orbits[i].clone()).collect();
        let base: Vec<Vec<u32>> = idx.iter().map(|&i| idx.iter().map(|&j| self.c[i][j]).collect()).collect();
        let mut best = base.clone();
        for perm in permutations(p) {
            if perm.iter().enumerate().any(|(t, &s)| orbits[t] != orbits[s]) {
                continue;
            }
            let cand: Vec<Vec<u32>> = perm.iter().map(|&i| perm.iter().map(|&j| base[i][j]).collect()).collect();
            if cand < best {
                best = cand;
            }
        }
        self.orbits = orbits;
        self.c = best;
        self
    }

    fn key(&self) -> (Vec<Subgroup>, Vec<Vec<u32>>) {
        (self.orbits.clone(), self.c.clone())
    }
}

fn connected(c: &[Vec<u32>]) -> bool {
    let p = c.len();
    if p == 0 {
        return false;
    }
    let mut seen = vec![false; p];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..p {
            if c[i][j] > 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// Odd number of orbits exactly when `α² + 4|G|` is a perfect square.
pub fn parity_law_holds(sol: &NearGroupSolution) -> bool {
    let disc = (sol.alpha as u64).pow(2) + 4 * sol.group.order() as u64;
    (sol.p() % 2 == 1) == is_perfect_square(disc)
}

fn class_reps(g: &FiniteGroup) -> Vec<Subgroup> {
    conjugacy_classes_of_subgroups(g).into_iter().map(|c| c.representative).collect()
}

fn dedup(solutions: Vec<NearGroupSolution>) -> Vec<NearGroupSolution> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<NearGroupSolution> = solutions
        .into_iter()
        .map(NearGroupSolution::canonicalize)
        .filter(|s| seen.insert(s.key()))
        .collect();
    out.sort_by_key(|s| (s.p(), s.key()));
    out
}

/// Single-orbit solutions: `α = c|G:H| − |H|/c` with `c` dividing `|H|`.
pub fn neargroup_one_orbit(g: &FiniteGroup, alpha: u32) -> Vec<NearGroupSolution> {
    let group = Arc::new(g.clone());
    let mut out = Vec::new();
    for h in class_reps(g) {
        let order = h.order() as i64;
        let b = h.index_in(g) as i64;
        for c in (1..=order).filter(|c| order % c == 0) {
            if c * b - order / c == alpha as i64 {
                out.push(NearGroupSolution {
                    alpha,
                    group: group.clone(),
                    orbits: vec![h.clone()],
                    c: vec![vec![c as u32]],
                });
            }
        }
    }
    dedup(out)
}

/// Two-orbit solutions `(H₁, H₂, c₁₁, c₂₂)` with `α = c₁₁b₁ + c₂₂b₂`,
/// `|G|` dividing `|H₁||H₂|` and `c₁₂² = |H₁||H₂|/|G| + c₁₁c₂₂`.
pub fn neargroup_two_orbit(g: &FiniteGroup, alpha: u32) -> Vec<NearGroupSolution> {
    let group = Arc::new(g.clone());
    let reps = class_reps(g);
    let n = g.order() as u64;
    let a = alpha as u64;
    let mut out = Vec::new();
    for (x, h1) in reps.iter().enumerate() {
        for h2 in &reps[x..] {
            let prod = (h1.order() * h2.order()) as u64;
            if prod % n != 0 {
                continue;
            }
            let (b1, b2) = ((n / h1.order() as u64), (n / h2.order() as u64));
            for c11 in 0..=a / b1 {
                let rest = a - c11 * b1;
                if rest % b2 != 0 {
                    continue;
                }
                let c22 = rest / b2;
                let sq = prod / n + c11 * c22;
                if !is_perfect_square(sq) {
                    continue;
                }
                let c12 = sq.isqrt();
                let to = |v: u64| u32::try_from(v).expect("entries fit in u32");
                let sol = NearGroupSolution {
                    alpha,
                    group: group.clone(),
                    orbits: vec![h1.clone(), h2.clone()],
                    c: vec![vec![to(c11), to(c12)], vec![to(c12), to(c22)]],
                };
                debug_assert!(sol.satisfies_cbc());
                out.push(sol);
            }
        }
    }
    dedup(out)
}

/// Smallest integer `c` with `c · min_b ≥ (α + √(α² + 4|G|)) / 2`, where
/// `min_b` is the smallest subgroup index (1, for `H = G`). Every entry of a
/// solution satisfies `c_ij √(b_i b_j) ≤ (α + √(α² + 4|G|)) / 2`, the largest
/// eigenvalue of `CB`, so this bound makes the search exhaustive.
pub fn default_neargroup_bound(g: &FiniteGroup, alpha: u32) -> u32 {
    let a = alpha as u64;
    let disc = a * a + 4 * g.order() as u64;
    // c·m ≥ (a + √disc)/2  ⇔  2cm − a ≥ 0 and (2cm − a)² ≥ disc   (m = 1)
    (1u32..)
        .find(|&c| {
            let t = 2 * c as u64;
            t >= a && (t - a) * (t - a) >= disc
        })
        .expect("bound exists")
}

/// Exhaustive search over up to `max_orbits` orbits with entries of `C` in
/// `[0, bound]` (default: [`default_neargroup_bound`]).
///
/// Odd orbit counts are skipped unless `α² + 4|G|` is a perfect square: for
/// odd `p` the eigenvalues of `CB` force this (the converse does not hold).
pub fn neargroup_brute(
    g: &FiniteGroup,
    alpha: u32,
    max_orbits: usize,
    bound: Option<u32>,
) -> Result<NearGroupBrute, ClassifyError> {
    if max_orbits == 0 {
        return Err(ClassifyError::InvalidParameter("max_orbits must be at least 1".into()));
    }
    let bound = bound.unwrap_or_else(|| default_neargroup_bound(g, alpha));
    if bound == 0 {
        return Err(ClassifyError::InvalidParameter("entry bound must be at least 1".into()));
    }
    let group = Arc::new(g.clone());
    let reps = class_reps(g);
    let odd_allowed = is_perfect_square((alpha as u64).pow(2) + 4 * g.order() as u64);

    let mut warnings = Vec::new();
    let needed = neargroup_one_orbit(g, alpha)
        .iter()
        .chain(&neargroup_two_orbit(g, alpha))
        .map(NearGroupSolution::max_entry)
        .max()
        .unwrap_or(0);
    if needed > bound {
        warnings.push(NearGroupWarning::BoundTooSmall { bound, needed });
    }

    let mut found = Vec::new();
    for p in 1..=max_orbits {
        if p % 2 == 1 && !odd_allowed {
            continue;
        }
        for multiset in multisets(reps.len(), p) {
            let orbits: Vec<Subgroup> = multiset.iter().map(|&i| reps[i].clone()).collect();
            let mut search = CbcSearch {
                alpha: alpha as u64,
                bound,
                b: orbits.iter().map(|h| h.index_in(g) as u64).collect(),
                h: orbits.iter().map(|h| h.order() as u64).collect(),
                c: vec![vec![0; p]; p],
                out: Vec::new(),
            };
            search.row(0);
            for c in search.out {
                if connected(&c) {
                    found.push(NearGroupSolution { alpha, group: group.clone(), orbits: orbits.clone(), c });
                }
            }
        }
    }
    Ok(NearGroupBrute { solutions: dedup(found), bound, warnings })
}

/// Non-decreasing index sequences of length `p` over `0..n`.
fn multisets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Row-by-row search for symmetric `C`. Row `i` is fixed left of the diagonal
/// by symmetry; the diagonal equation `Σ_j c_ij² b_j = |H_i| + α c_ii` bounds
/// the remaining entries, and off-diagonal equations are checked as soon as
/// both rows involved are complete.
struct CbcSearch {
    alpha: u64,
    bound: u32,
    b: Vec<u64>,
    h: Vec<u64>,
    c: Vec<Vec<u32>>,
    out: Vec<Vec<Vec<u32>>>,
}

impl CbcSearch {
    fn p(&self) -> usize {
        self.b.len()
    }

    fn row(&mut self, i: usize) {
        if i == self.p() {
            self.out.push(self.c.clone());
            return;
        }
        let fixed: u64 = (0..i).map(|j| (self.c[i][j] as u64).pow(2) * self.b[j]).sum();
        for cii in 0..=self.bound {
            let target = self.h[i] + self.alpha * cii as u64;
            let with_diag = fixed + (cii as u64).pow(2) * self.b[i];
            if with_diag > target {
                // the target grows linearly in c_ii, the diagonal term quadratically
                continue;
            }
            self.c[i][i] = cii;
            self.fill(i, i + 1, target - with_diag);
        }
    }

    fn fill(&mut self, i: usize, j: usize, remaining: u64) {
        let p = self.p();
        if j == p {
            if remaining == 0 && self.off_diagonal_ok(i) {
                self.row(i + 1);
            }
            return;
        }
        for v in 0..=self.bound {
            let cost = (v as u64).pow(2) * self.b[j];
            if cost > remaining {
                break;
            }
            self.c[i][j] = v;
            self.c[j][i] = v;
            self.fill(i, j + 1, remaining - cost);
        }
        self.c[i][j] = 0;
        self.c[j][i] = 0;
    }

    fn off_diagonal_ok(&self, i: usize) -> bool {
        (0..i).all(|q| {
            let sum: u64 = (0..self.p()).map(|j| self.c[i][j] as u64 * self.c[j][q] as u64 * self.b[j]).sum();
            sum == self.alpha * self.c[i][q] as u64
        })
    }
}

/// The NIM-rep of a solution over a freshly built `K(G, α)`.
pub fn neargroup_to_nimrep(sol: &NearGroupSolution) -> Result<NimRep, ClassifyError> {
    neargroup_to_nimrep_in(sol, Arc::new(near_group_ring(&sol.group, sol.alpha)))
}

/// The NIM-rep of a solution over an existing `K(G, α)` (group labels first,
/// `X` last). Basis element `m<i>_<r>` is coset `rH_i` of orbit `i`
/// (1-based).
pub fn neargroup_to_nimrep_in(sol: &NearGroupSolution, ring: Arc<FusionRing>) -> Result<NimRep, ClassifyError> {
    let g = &sol.group;
    let n = g.order();
    if ring.rank() != n + 1 || ring.coeff(n, n, n) != sol.alpha {
        return Err(ClassifyError::Inconsistent("ring is not K(G, alpha) for this solution".into()));
    }
    let actions: Vec<_> = sol.orbits.iter().map(|h| coset_action(g, h)).collect();
    let offsets: Vec<usize> = actions
        .iter()
        .scan(0, |acc, a| {
            let start = *acc;
            *acc += a.index();
            Some(start)
        })
        .collect();
    let dim: usize = actions.iter().map(|a| a.index()).sum();
    let orbit_of: Vec<usize> = (0..actions.len()).flat_map(|i| std::iter::repeat(i).take(actions[i].index())).collect();

    let mut mats: Vec<Mat> = (0..n)
        .map(|x| {
            let mut m = Mat::zeros(dim);
            for (a, off) in actions.iter().zip(&offsets) {
                for i in 0..a.index() {
                    m[(off + i, off + a.act[x][i])] = 1;
                }
            }
            m
        })
        .collect();
    mats.push(Mat::from_fn(dim, |r, c| sol.c[orbit_of[r]][orbit_of[c]]));
    let names = actions
        .iter()
        .enumerate()
        .flat_map(|(i, a)| a.reps.iter().map(move |&r| format!("m{}_{}", i + 1, g.name(r))))
        .collect();
    Ok(verify(ring, mats, names)?)
}

/// Recomputes `α` from `C` and the orbit indices alone: for one orbit
/// `α = c₁₁|G:H₁| − |H₁|/c₁₁`; otherwise `α = Σ_j c_ij c_jq |G:H_j| / c_iq`
/// for any `c_iq > 0` with `i ≠ q`.
pub fn alpha_from_solution(sol: &NearGroupSolution) -> Result<u32, ClassifyError> {
    let b = sol.indices();
    let bad = |why: &str| ClassifyError::Inconsistent(why.to_string());
    let alpha: i64 = if sol.p() == 1 {
        let c = sol.c[0][0] as i64;
        let h = sol.orbits[0].order() as i64;
        if c == 0 || h % c != 0 {
            return Err(bad("single-orbit c must divide |H|"));
        }
        c * b[0] as i64 - h / c
    } else {
        let (i, q) = (0..sol.p())
            .flat_map(|i| (0..sol.p()).map(move |q| (i, q)))
            .find(|&(i, q)| i != q && sol.c[i][q] > 0)
            .ok_or_else(|| bad("no non-zero off-diagonal entry"))?;
        let num: u64 = (0..sol.p()).map(|j| sol.c[i][j] as u64 * sol.c[j][q] as u64 * b[j]).sum();
        let den = sol.c[i][q] as u64;
        if num % den != 0 {
            return Err(bad("alpha is not an integer"));
        }
        (num / den) as i64
    };
    if alpha != sol.alpha as i64 {
        return Err(bad(&format!("recomputed alpha {alpha} differs from {}", sol.alpha)));
    }
    Ok(sol.alpha)
}
