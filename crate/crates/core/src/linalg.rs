//! Minimal dense linear algebra: just enough to form and solve normal
//! equations for a handful of predictors.

use crate::error::{Error, Result};
use std::ops::{Index, IndexMut};

/// Relative pivot tolerance for the Cholesky factorization. A pivot below
/// `PIVOT_RTOL` times the largest diagonal magnitude is treated as singular.
pub const PIVOT_RTOL: f64 = 1e-12;

/// Dense row-major matrix of `f64` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCountMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if !entries.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "matrix entry",
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    /// Identity matrix of order `n` (`n >= 1`).
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity requires n >= 1");
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Builds a matrix from equally sized rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != n_cols {
                return Err(Error::EntryCountMismatch {
                    rows: n_rows,
                    cols: n_cols,
                    len: r.len() * n_rows,
                });
            }
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Borrows row `r` as a contiguous slice.
    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.entries[r * self.cols + c]
    }
}

/// Forms the normal-equation products `(XᵀX, Xᵀy)`.
///
/// The product matrix is filled one triangle at a time and mirrored, so the
/// result is symmetric entry-for-entry, not merely up to rounding.
pub fn gram_products(x: &Matrix, y: &[f64]) -> Result<(Matrix, Vec<f64>)> {
    if x.rows() != y.len() {
        return Err(Error::DimensionMismatch {
            context: "gram products: matrix rows vs vector",
            expected: x.rows(),
            actual: y.len(),
        });
    }
    if !y.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite {
            context: "vector entry",
        });
    }

    let n = x.cols();
    let mut gram = Matrix::zeros(n, n)?;
    for i in 0..n {
        for j in i..n {
            let mut sum = 0.0;
            for k in 0..x.rows() {
                sum += x[(k, i)] * x[(k, j)];
            }
            gram[(i, j)] = sum;
            gram[(j, i)] = sum;
        }
    }

    let mut moments = vec![0.0; n];
    for (i, m) in moments.iter_mut().enumerate() {
        *m = (0..x.rows()).map(|k| x[(k, i)] * y[k]).sum();
    }

    Ok((gram, moments))
}

/// Solves `Ax = b` for symmetric positive-definite `A` by an unpivoted
/// Cholesky factorization.
///
/// A non-positive pivot, or one below [`PIVOT_RTOL`] times the largest
/// diagonal magnitude, reports the system as singular. No pivoting is
/// performed: SPD inputs do not need it.
pub fn solve_spd(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            context: "solve: matrix order vs right-hand side",
            expected: n,
            actual: b.len(),
        });
    }
    if !b.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite {
            context: "vector entry",
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if a[(i, j)] != a[(j, i)] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }

    let max_diag = (0..n).map(|i| a[(i, i)].abs()).fold(0.0, f64::max);
    let threshold = PIVOT_RTOL * max_diag;

    // Lower-triangular factor L with A = LLᵀ.
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 || d < threshold {
            return Err(Error::SingularSystem { pivot: j });
        }
        let ljj = d.sqrt();
        l[j * n + j] = ljj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / ljj;
        }
    }

    // Forward substitution: Lz = b.
    let mut z = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * z[k];
        }
        z[i] = s / l[i * n + i];
    }

    // Back substitution: Lᵀx = z.
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = z[i];
        for k in (i + 1)..n {
            s -= l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }

    Ok(x)
}
