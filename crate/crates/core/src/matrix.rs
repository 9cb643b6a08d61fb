//! Small dense square matrices of non-negative integers.

use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// `None` if the rows are ragged.
    pub fn from_rows(rows: &[Vec<u32>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Mat { n, data: rows.concat() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Mat { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.n.max(1)).map(<[u32]>::to_vec).take(self.n).collect()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.n, |r, c| self[(c, r)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Matrix product with overflow-checked `u64` accumulation.
    pub fn mul(&self, other: &Mat) -> Option<Mat> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Mat::zeros(n);
        for r in 0..n {
            for m in 0..n {
                let a = self[(r, m)] as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = out.data[r * n + c] as u64 + a * other[(m, c)] as u64;
                    out.data[r * n + c] = u32::try_from(v).ok()?;
                }
            }
        }
        Some(out)
    }

    /// `self + k·other`, overflow-checked.
    pub fn add_scaled(&mut self, other: &Mat, k: u32) -> Option<()> {
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = a.checked_add(b.checked_mul(k)?)?;
        }
        Some(())
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let (a, b) = (self.n, other.n);
        Mat::from_fn(a + b, |r, c| match (r < a, c < a) {
            (true, true) => self[(r, c)],
            (false, false) => other[(r - a, c - a)],
            _ => 0,
        })
    }

    /// `P M P⁻¹` for the basis relabelling `l ↦ perm[l]`.
    pub fn conjugate_by(&self, perm: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out[(perm[r], perm[c])] = self[(r, c)];
            }
        }
        out
    }

    pub fn row_sum(&self, r: usize) -> u64 {
        self.row(r).iter().map(|&x| x as u64).sum()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |r, c| self[(r, c)] as f64)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = u32;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        &mut self.data[r * self.n + c]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(u32::to_string).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
