//! The ten modular data of rank at most four.
//!
//! Pointed entries use `S_ab = e^{−2πi b(a,b)} / √n` and `T_a = e^{2πi q(a)}`
//! with `b(a,b) = q(a+b) − q(a) − q(b)`:
//!
//! | entry  | group       | q                    | basis order          |
//! |--------|-------------|----------------------|----------------------|
//! | semion | Z2          | a²/4                 | 0, 1                 |
//! | Z3     | Z3          | a²/3                 | 0, 1, 2              |
//! | Z4     | Z4          | a²/8                 | 0, 2, 1, 3           |
//! | toric  | Z2 × Z2     | xy/2                 | 00, 01, 10, 11       |
//! | D(4,1) | Z2 × Z2     | (x² + xy + y²)/2     | 00, 01, 10, 11       |
//!
//! `A(1, l)` entries use `S_ij = √(2/(l+2)) sin(π(i+1)(j+1)/(l+2))` and
//! `T_j = e^{2πi j(j+2) / (4(l+2))}`; the even halves restrict to even labels
//! and rescale `S` so its first row has unit norm. Ising is
//! `(1, ψ, σ)` with `T = (1, −1, e^{2πi/16})`.
//!
//! T is stored up to a global phase. Objects are named `1, X1, X2, X3` in
//! the listed order.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ModularError;
use crate::fusion::{group_ring, near_group_ring, ring_from_tensor, su2_half_ring, su2_ring, FusionRing};
use crate::groups::builtin_group;

const TOL: f64 = 1e-9;

/// Where the NIM-reps of an entry come from, and how the family ring's labels
/// map to the entry's labels (entry label `t` is family label `order[t]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Group { group: &'static str, order: Vec<usize> },
    NearGroup { group: &'static str, alpha: u32, order: Vec<usize> },
    Su2Half { level: usize, order: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    pub name: String,
    pub s: DMatrix<Complex64>,
    /// Diagonal of `T`, up to a global phase.
    pub t: Vec<Complex64>,
    pub object_names: Vec<String>,
    pub ring: Arc<FusionRing>,
    pub family: Family,
}

impl ModularData {
    /// Checks: `S` symmetric and unitary, first row positive, `S²` a
    /// permutation matrix, `(ST)³ ∝ S²`, and Verlinde coefficients equal to
    /// the ring tensor.
    pub fn new(
        name: &str,
        s: DMatrix<Complex64>,
        t: Vec<Complex64>,
        ring: Arc<FusionRing>,
        family: Family,
    ) -> Result<Self, ModularError> {
        let invalid = |reason: &str| ModularError::InvalidData { name: name.to_string(), reason: reason.to_string() };
        let n = s.nrows();
        if s.ncols() != n || t.len() != n || ring.rank() != n || n == 0 {
            return Err(invalid("shape mismatch"));
        }
        if (&s - s.transpose()).norm() > TOL {
            return Err(invalid("S is not symmetric"));
        }
        if (&s * s.adjoint() - DMatrix::identity(n, n)).norm() > TOL {
            return Err(invalid("S is not unitary"));
        }
        if (0..n).any(|j| s[(0, j)].re <= TOL || s[(0, j)].im.abs() > TOL) {
            return Err(invalid("first row of S is not positive"));
        }
        let s2 = &s * &s;
        if charge_conjugation(&s2).is_none() {
            return Err(invalid("S² is not a permutation matrix"));
        }
        let tm = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(t.clone()));
        let st = &s * &tm;
        let st3 = &st * &st * &st;
        let (r, c) = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).max_by(|a, b| {
            s2[*a].norm().partial_cmp(&s2[*b].norm()).expect("finite")
        }).expect("non-empty");
        let scale = st3[(r, c)] / s2[(r, c)];
        if (&st3 - s2.map(|x| x * scale)).norm() > TOL {
            return Err(invalid("(ST)³ is not proportional to S²"));
        }
        let v = verlinde(&s);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if (v[i][j][k] - ring.coeff(i, j, k) as f64).abs() > 1e-6 {
                        return Err(invalid("Verlinde coefficients differ from the fusion ring"));
                    }
                }
            }
        }
        let object_names = ring.names().to_vec();
        Ok(ModularData { name: name.to_string(), s, t, object_names, ring, family })
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    /// Charge conjugation `C = S²` as a permutation.
    pub fn charge_conjugation(&self) -> Vec<usize> {
        charge_conjugation(&(&self.s * &self.s)).expect("validated")
    }
}

fn charge_conjugation(s2: &DMatrix<Complex64>) -> Option<Vec<usize>> {
    let n = s2.nrows();
    let mut perm = Vec::with_capacity(n);
    for r in 0..n {
        let ones: Vec<usize> = (0..n).filter(|&c| (s2[(r, c)] - Complex64::new(1.0, 0.0)).norm() < TOL).collect();
        let zeros = (0..n).filter(|&c| s2[(r, c)].norm() < TOL).count();
        if ones.len() != 1 || zeros != n - 1 {
            return None;
        }
        perm.push(ones[0]);
    }
    Some(perm)
}

/// `N_ij^k = Σ_b S_ib S_jb conj(S_kb) / S_0b` (real parts).
pub fn verlinde(s: &DMatrix<Complex64>) -> Vec<Vec<Vec<f64>>> {
    let n = s.nrows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| (0..n).map(|b| s[(i, b)] * s[(j, b)] * s[(k, b)].conj() / s[(0, b)]).sum::<Complex64>().re)
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn phase(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

fn object_names(n: usize) -> Vec<String> {
    std::iter::once("1".to_string()).chain((1..n).map(|i| format!("X{i}"))).collect()
}

fn renamed(ring: &FusionRing) -> Arc<FusionRing> {
    Arc::new(
        ring_from_tensor(object_names(ring.rank()), ring.unit(), ring.duals().to_vec(), ring.tensor())
            .expect("renaming keeps validity"),
    )
}

fn pointed(
    name: &str,
    group: &'static str,
    elements: Vec<Vec<i64>>,
    moduli: &[i64],
    q: impl Fn(&[i64]) -> f64,
    order: Vec<usize>,
) -> Result<ModularData, ModularError> {
    let n = elements.len();
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect() };
    let bil = |a: &[i64], b: &[i64]| q(&add(a, b)) - q(a) - q(b);
    let norm = 1.0 / (n as f64).sqrt();
    let s = DMatrix::from_fn(n, n, |r, c| phase(-bil(&elements[r], &elements[c])) * norm);
    let t = elements.iter().map(|a| phase(q(a))).collect();
    let g = builtin_group(group).expect("builtin");
    let ring = renamed(&group_ring(&g).permuted(&order)?);
    ModularData::new(name, s, t, ring, Family::Group { group, order })
}

fn su2_data(l: usize, labels: &[usize]) -> (DMatrix<Complex64>, Vec<Complex64>) {
    let k = (l + 2) as f64;
    let full = |i: usize, j: usize| (2.0 / k).sqrt() * (PI * ((i + 1) * (j + 1)) as f64 / k).sin();
    let row0: f64 = labels.iter().map(|&j| full(0, j).powi(2)).sum::<f64>().sqrt();
    let n = labels.len();
    let s = DMatrix::from_fn(n, n, |r, c| Complex64::new(full(labels[r], labels[c]) / row0, 0.0));
    let t = labels.iter().map(|&j| phase((j * (j + 2)) as f64 / (4.0 * k))).collect();
    (s, t)
}

fn su2_half_entry(name: &str, l: usize, order: Vec<usize>) -> Result<ModularData, ModularError> {
    let natural: Vec<usize> = (0..l).step_by(2).collect();
    let labels: Vec<usize> = order.iter().map(|&o| natural[o]).collect();
    let (s, t) = su2_data(l, &labels);
    let ring = renamed(&su2_half_ring(l)?.permuted(&order)?);
    ModularData::new(name, s, t, ring, Family::Su2Half { level: l, order })
}

pub fn catalog_names() -> Vec<&'static str> {
    vec!["semion", "fibonacci", "Z3", "ising", "A(1,2)", "A(1,5)_1/2", "Z4", "toric", "D(4,1)", "A(1,7)_1/2"]
}

/// All ten entries, in order of rank.
pub fn catalog() -> Vec<ModularData> {
    catalog_names().into_iter().map(|n| catalog_entry(n).expect("catalog entries are valid")).collect()
}

/// Looks up an entry by name (case-insensitive; `A(1,5)_1/2` also as `a15half`).
pub fn catalog_entry(name: &str) -> Result<ModularData, ModularError> {
    let key: String = name.to_lowercase().chars().filter(|c| c.is_alphanumeric()).collect();
    let z2 = || vec![vec![0], vec![1]];
    let klein = || vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    match key.as_str() {
        "semion" => pointed("semion", "Z_2", z2(), &[2], |a| (a[0] * a[0]) as f64 / 4.0, vec![0, 1]),
        "fibonacci" | "fib" => su2_half_entry("fibonacci", 3, vec![0, 1]),
        "z3" => pointed("Z3", "Z_3", vec![vec![0], vec![1], vec![2]], &[3], |a| (a[0] * a[0]) as f64 / 3.0, vec![0, 1, 2]),
        "ising" => {
            let r2 = 0.5f64.sqrt();
            let s = DMatrix::from_row_slice(3, 3, &[0.5, 0.5, r2, 0.5, 0.5, -r2, r2, -r2, 0.0]).map(|x| Complex64::new(x, 0.0));
            let t = vec![phase(0.0), phase(0.5), phase(1.0 / 16.0)];
            let g = builtin_group("Z_2").expect("builtin");
            let order = vec![0, 1, 2];
            let ring = renamed(&near_group_ring(&g, 0));
            ModularData::new("ising", s, t, ring, Family::NearGroup { group: "Z_2", alpha: 0, order })
        }
        "a12" => {
            let (s, t) = su2_data(2, &[0, 2, 1]);
            let ring = renamed(&su2_ring(2)?.permuted(&[0, 2, 1])?);
            // same fusion rules as K(Z2, 0) in the order (1, ψ, σ)
            ModularData::new("A(1,2)", s, t, ring, Family::NearGroup { group: "Z_2", alpha: 0, order: vec![0, 1, 2] })
        }
        "a1512" | "a15half" => su2_half_entry("A(1,5)_1/2", 5, vec![0, 2, 1]),
        "z4" => pointed(
            "Z4",
            "Z_4",
            vec![vec![0], vec![2], vec![1], vec![3]],
            &[4],
            |a| (a[0] * a[0]) as f64 / 8.0,
            vec![0, 2, 1, 3],
        ),
        "toric" => pointed("toric", "Z_2 x Z_2", klein(), &[2, 2], |a| (a[0] * a[1]) as f64 / 2.0, vec![0, 1, 2, 3]),
        "d41" => pointed(
            "D(4,1)",
            "Z_2 x Z_2",
            klein(),
            &[2, 2],
            |a| (a[0] * a[0] + a[0] * a[1] + a[1] * a[1]) as f64 / 2.0,
            vec![0, 1, 2, 3],
        ),
        "a1712" | "a17half" => su2_half_entry("A(1,7)_1/2", 7, vec![0, 3, 1, 2]),
        _ => Err(ModularError::UnknownMtc(name.to_string())),
    }
}
