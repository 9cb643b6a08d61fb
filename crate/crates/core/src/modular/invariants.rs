//! Physical modular invariants: non-negative integer `Z` with `Z₀₀ = 1`
//! commuting with `S` and `T`.
//!
//! Commutation with `T` forces `Z_ab = 0` unless `T_a = T_b`. The remaining
//! real linear system (real and imaginary parts of `ZS − SZ`) is reduced to
//! row-echelon form; the free variables are enumerated in `[0, bound]` and
//! every dependent entry must come out a non-negative integer in range.

use std::fmt;

use super::{ModularData, ModularError};

pub const DEFAULT_INVARIANT_BOUND: u32 = 4;
/// Beyond this commutant dimension the enumeration is refused.
pub const MAX_COMMUTANT_DIM: usize = 16;

const TOL: f64 = 1e-9;
const INT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModularInvariant {
    pub z: Vec<Vec<u32>>,
}

impl ModularInvariant {
    pub fn rank(&self) -> usize {
        self.z.len()
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().enumerate().all(|(r, row)| row.iter().enumerate().all(|(c, &x)| x == u32::from(r == c)))
    }

    /// `Z` is a permutation matrix.
    pub fn is_permutation(&self) -> bool {
        let n = self.rank();
        let rows_ok = self.z.iter().all(|row| row.iter().sum::<u32>() == 1);
        let cols_ok = (0..n).all(|c| self.z.iter().map(|row| row[c]).sum::<u32>() == 1);
        rows_ok && cols_ok
    }
}

impl fmt::Display for ModularInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .z
            .iter()
            .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSearch {
    pub invariants: Vec<ModularInvariant>,
    pub commutant_dim: usize,
    /// A null-space basis vector has an entry of modulus above the bound, so
    /// the enumeration may be incomplete.
    pub warnings: Vec<String>,
}

/// Physical invariants with entries in `[0, bound]`, sorted.
pub fn modular_invariants(md: &ModularData, bound: u32) -> Result<Vec<ModularInvariant>, ModularError> {
    Ok(enumerate_invariants(md, bound)?.invariants)
}

pub fn enumerate_invariants(md: &ModularData, bound: u32) -> Result<InvariantSearch, ModularError> {
    let n = md.rank();
    // variables: Z_ab with T_a = T_b
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| (md.t[a] - md.t[b]).norm() <= TOL)
        .collect();
    let index = |a: usize, b: usize| vars.iter().position(|&v| v == (a, b));
    let nv = vars.len();

    // (ZS − SZ)_{ac} = Σ_b Z_ab S_bc − S_ab Z_bc
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for a in 0..n {
        for c in 0..n {
            let mut re = vec![0.0; nv];
            let mut im = vec![0.0; nv];
            for b in 0..n {
                if let Some(v) = index(a, b) {
                    re[v] += md.s[(b, c)].re;
                    im[v] += md.s[(b, c)].im;
                }
                if let Some(v) = index(b, c) {
                    re[v] -= md.s[(a, b)].re;
                    im[v] -= md.s[(a, b)].im;
                }
            }
            rows.push(re);
            rows.push(im);
        }
    }
    let (rref, pivots) = row_reduce(rows, nv);
    let free: Vec<usize> = (0..nv).filter(|v| !pivots.contains(v)).collect();
    if free.len() > MAX_COMMUTANT_DIM {
        return Err(ModularError::CommutantTooLarge(free.len()));
    }

    let mut warnings = Vec::new();
    for (k, &f) in free.iter().enumerate() {
        let worst = rref.iter().zip(&pivots).map(|(row, _)| row[f].abs()).fold(0.0, f64::max);
        if worst > bound as f64 + TOL {
            warnings.push(format!("commutant basis vector {k} has an entry of modulus {worst:.3} above the bound {bound}"));
        }
    }

    let z00 = index(0, 0).expect("T_0 = T_0");
    let c = md.charge_conjugation();
    let mut found = Vec::new();
    let mut values = vec![0u32; free.len()];
    loop {
        if let Some(z) = assemble(&rref, &pivots, &free, &values, z00, bound) {
            let mut mat = vec![vec![0u32; n]; n];
            for (v, &(a, b)) in vars.iter().enumerate() {
                mat[a][b] = z[v];
            }
            if commutes(md, &mat, &c) {
                found.push(ModularInvariant { z: mat });
            }
        }
        // odometer over [0, bound]^free
        let mut pos = 0;
        loop {
            if pos == values.len() {
                found.sort();
                return Ok(InvariantSearch { invariants: found, commutant_dim: free.len(), warnings });
            }
            if values[pos] < bound {
                values[pos] += 1;
                break;
            }
            values[pos] = 0;
            pos += 1;
        }
    }
}

/// Reduced row-echelon form with partial pivoting; returns the non-zero rows
/// and their pivot columns.
fn row_reduce(mut rows: Vec<Vec<f64>>, cols: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len()).max_by(|&x, &y| rows[x][c].abs().partial_cmp(&rows[y][c].abs()).expect("finite"));
        let Some(best) = best.filter(|&b| rows[b][c].abs() > TOL) else { continue };
        rows.swap(r, best);
        let p = rows[r][c];
        rows[r].iter_mut().for_each(|x| *x /= p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c].abs() > 0.0 {
                let f = row[c];
                row.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn assemble(
    rref: &[Vec<f64>],
    pivots: &[usize],
    free: &[usize],
    values: &[u32],
    z00: usize,
    bound: u32,
) -> Option<Vec<u32>> {
    let nv = pivots.len() + free.len();
    let mut z = vec![0u32; nv];
    for (&f, &v) in free.iter().zip(values) {
        z[f] = v;
    }
    for (row, &p) in rref.iter().zip(pivots) {
        let x: f64 = -free.iter().zip(values).map(|(&f, &v)| row[f] * v as f64).sum::<f64>();
        let rounded = x.round();
        if (x - rounded).abs() > INT_TOL || rounded < 0.0 || rounded > bound as f64 {
            return None;
        }
        z[p] = rounded as u32;
    }
    (z[z00] == 1).then_some(z)
}

fn commutes(md: &ModularData, z: &[Vec<u32>], c: &[usize]) -> bool {
    let n = md.rank();
    for a in 0..n {
        for b in 0..n {
            // Z C = C Z with C the permutation a ↦ c[a]: Z_{a, c[b]} = Z_{c[a], b}
            if z[a][c[b]] != z[c[a]][b] {
                return false;
            }
            let zs: num_complex::Complex64 = (0..n).map(|k| md.s[(k, b)] * z[a][k] as f64).sum();
            let sz: num_complex::Complex64 = (0..n).map(|k| md.s[(a, k)] * z[k][b] as f64).sum();
            if (zs - sz).norm() > TOL {
                return false;
            }
            if z[a][b] != 0 && (md.t[a] - md.t[b]).norm() > TOL {
                return false;
            }
        }
    }
    true
}
