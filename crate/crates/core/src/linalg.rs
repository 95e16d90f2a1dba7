//! Dense real linear algebra: general and symmetric matrices, the cyclic Jacobi
//! eigensolver, Kronecker/outer products and partial traces.
//!
//! Composite indices of a two-factor space with dimensions `(d1, d2)` are
//! `first * d2 + second` throughout.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Default relative off-diagonal tolerance for [`jacobi_eigen`].
pub const DEFAULT_JACOBI_TOL: f64 = 1e-12;

/// Sweep cap for [`jacobi_eigen`].
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in `[-EIG_CLAMP_EPS, 0)` are treated as rounding noise and clamped to 0.
pub const EIG_CLAMP_EPS: f64 = 1e-10;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
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

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `A Aᵀ`, symmetric by construction.
    pub fn gram(&self) -> SymMatrix {
        SymMatrix::from_fn(self.rows, |i, j| {
            let (ri, rj) = (self.row(i), self.row(j));
            ri.iter().zip(rj).map(|(a, b)| a * b).sum()
        })
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("max_abs_diff shapes differ".into()));
        }
        Ok(max_abs_diff(&self.data, &other.data))
    }
}

/// Dense symmetric matrix. Both halves are stored and kept equal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = v;
        }
        m
    }

    /// Evaluates `f` on the upper triangle and mirrors it.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts a square matrix whose halves agree within `tol`, keeping the upper triangle.
    pub fn from_matrix(m: &Matrix, tol: f64) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                m.rows, m.cols
            )));
        }
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if (m.get(i, j) - m.get(j, i)).abs() > tol {
                    return Err(Error::DimensionMismatch(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::from_fn(m.rows, |i, j| m.get(i, j)))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_matrix(&Matrix::from_rows(rows)?, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_same_dim(other)?;
        Ok(SymMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(max_abs_diff(&self.data, &other.data))
    }

    fn check_same_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "dimensions {} and {} differ",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Eigenvalues sorted non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Clamps values in `[-eps, 0)` to zero; anything more negative is an error.
    pub fn clamped(&self, eps: f64) -> Result<Spectrum> {
        let mut values = self.values.clone();
        for v in &mut values {
            if *v < -eps {
                return Err(Error::NegativeEigenvalue(*v));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(Spectrum { values })
    }

    /// Values with `|λ| >= threshold`, still non-increasing.
    pub fn nonzero(&self, threshold: f64) -> Spectrum {
        Spectrum {
            values: self
                .values
                .iter()
                .copied()
                .filter(|v| v.abs() >= threshold)
                .collect(),
        }
    }

    /// Largest elementwise gap between two spectra of equal length, or `None` when the
    /// lengths differ.
    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| max_abs_diff(&self.values, &other.values))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Spectrum {
        Spectrum::new(self.values.iter().map(|&v| f(v)).collect())
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps visit the upper triangle row-major and stop once the off-diagonal
/// Frobenius norm is at most `tol` times the Frobenius norm of `a`.
pub fn jacobi_eigen(a: &SymMatrix, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {tol}")));
    }
    let n = a.dim;
    let mut w = a.data.clone();
    let target = tol * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&w, n);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (w[q * n + q] - w[p * n + p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // columns p, q
                for k in 0..n {
                    let akp = w[k * n + p];
                    let akq = w[k * n + q];
                    w[k * n + p] = c * akp - s * akq;
                    w[k * n + q] = s * akp + c * akq;
                }
                // rows p, q
                for k in 0..n {
                    let apk = w[p * n + k];
                    let aqk = w[q * n + k];
                    w[p * n + k] = c * apk - s * aqk;
                    w[q * n + k] = s * apk + c * aqk;
                }
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
            }
        }
    }
    Ok(Spectrum::new((0..n).map(|i| w[i * n + i]).collect()))
}

/// Which factor of a bipartite space survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of a density-like matrix on a `d1 x d2` composite space.
pub fn partial_trace(rho: &SymMatrix, dims: (usize, usize), keep: Keep) -> Result<SymMatrix> {
    let (d1, d2) = dims;
    if rho.dim != d1 * d2 {
        return Err(Error::DimensionMismatch(format!(
            "matrix of dimension {} cannot factor as {d1} x {d2}",
            rho.dim
        )));
    }
    Ok(match keep {
        Keep::First => SymMatrix::from_fn(d1, |i, j| {
            (0..d2).map(|k| rho.get(i * d2 + k, j * d2 + k)).sum()
        }),
        Keep::Second => SymMatrix::from_fn(d2, |k, l| {
            (0..d1).map(|i| rho.get(i * d2 + k, i * d2 + l)).sum()
        }),
    })
}

/// Partial trace of `ψψᵀ` contracted directly from the vector, without forming
/// the `d1·d2`-dimensional outer product.
pub fn partial_trace_pure(psi: &[f64], dims: (usize, usize), keep: Keep) -> Result<SymMatrix> {
    let (d1, d2) = dims;
    if psi.len() != d1 * d2 {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} cannot factor as {d1} x {d2}",
            psi.len()
        )));
    }
    let block = |i: usize| &psi[i * d2..(i + 1) * d2];
    Ok(match keep {
        Keep::First => SymMatrix::from_fn(d1, |i, j| {
            block(i).iter().zip(block(j)).map(|(a, b)| a * b).sum()
        }),
        Keep::Second => {
            let mut out = SymMatrix::zeros(d2);
            for i in 0..d1 {
                let b = block(i);
                for (k, &bk) in b.iter().enumerate() {
                    if bk == 0.0 {
                        continue;
                    }
                    for l in k..d2 {
                        let v = out.get(k, l) + bk * b[l];
                        out.set(k, l, v);
                    }
                }
            }
            out
        }
    })
}

/// `u ⊗ v` as a vector of length `u.len() * v.len()`.
pub fn kron_vec(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect()
}

/// Kronecker product of two general matrices.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols)
    })
}

/// Kronecker product of two symmetric matrices (symmetric again).
pub fn kron_sym(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    SymMatrix::from_fn(a.dim * b.dim, |i, j| {
        a.get(i / b.dim, j / b.dim) * b.get(i % b.dim, j % b.dim)
    })
}

/// `u vᵀ`.
pub fn outer(u: &[f64], v: &[f64]) -> Matrix {
    Matrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j])
}

/// `v vᵀ`.
pub fn outer_sym(v: &[f64]) -> SymMatrix {
    SymMatrix::from_fn(v.len(), |i, j| v[i] * v[j])
}
