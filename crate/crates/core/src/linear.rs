//! Operator seminorm on finite-dimensional Euclidean spaces.
//!
//! `‖A‖ = max(0, -log σ_min(A))` measures how much `A` can shrink vectors;
//! its left dual `max(0, log σ_max(A))` is the rescaled operator norm.

use serde::{Deserialize, Serialize};

use crate::ext::ExtReal;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("entry ({0}, {1}) is not finite")]
    NonFinite(usize, usize),
}

/// Dense real matrix, row major. A `rows × cols` matrix maps `R^cols → R^rows`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(MatrixError::Empty);
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: c,
                    got: row.len(),
                });
            }
            for (j, x) in row.into_iter().enumerate() {
                if !x.is_finite() {
                    return Err(MatrixError::NonFinite(i, j));
                }
                data.push(x);
            }
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1.0; n])
    }

    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = Matrix {
            rows: n,
            cols: n,
            data: vec![0.0; n * n],
        };
        for (i, &x) in d.iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    /// `self · other`, i.e. `other` applied first.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Singular values in ascending order, `cols` of them (zeros included
    /// when `rows < cols`).
    pub fn singular_values(&self) -> Vec<f64> {
        let gram = self.transpose().mul(self);
        let mut ev = symmetric_eigenvalues(&gram);
        ev.sort_by(f64::total_cmp);
        // eigenvalues of AᵀA carry roundoff of order ε·λ_max, which the
        // square root would inflate to √ε·σ_max
        let floor = self.cols as f64 * f64::EPSILON * ev.last().copied().unwrap_or(0.0);
        // rank is at most `rows`
        let structural = self.cols.saturating_sub(self.rows);
        ev.into_iter()
            .enumerate()
            .map(|(i, x)| if i < structural || x <= floor { 0.0 } else { x.sqrt() })
            .collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = MatrixError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix.
fn symmetric_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.rows;
    let mut a = m.data.clone();
    let at = |a: &[f64], i: usize, j: usize| a[i * n + j];
    let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs())).max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| at(&a, i, j).powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-12 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = at(&a, p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (at(&a, q, q) - at(&a, p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = at(&a, k, p);
                    let akq = at(&a, k, q);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = at(&a, p, k);
                    let aqk = at(&a, q, k);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| at(&a, i, i)).collect()
}

/// Relative threshold below which `σ_min` is treated as exactly zero.
const RANK_TOL: f64 = 1e-12;

/// `max(0, -log σ_min(A))`; `∞` when `A` is not injective.
pub fn operator_seminorm(a: &Matrix) -> ExtReal {
    let sv = a.singular_values();
    let smin = sv[0];
    let smax = *sv.last().expect("nonempty");
    if smin <= RANK_TOL * smax.max(1.0) {
        return ExtReal::PosInf;
    }
    ExtReal::new((-smin.ln()).max(0.0))
}

/// `max(0, log σ_max(A))`.
pub fn operator_left_dual(a: &Matrix) -> ExtReal {
    let smax = *a.singular_values().last().expect("nonempty");
    if smax == 0.0 {
        return ExtReal::ZERO;
    }
    ExtReal::new(smax.ln().max(0.0))
}
