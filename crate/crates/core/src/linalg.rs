//! Dense real matrix primitives: row-major storage, symmetric
//! eigendecomposition by cyclic Jacobi sweeps, Cholesky, positive
//! definite square roots, the standard symplectic form J, the
//! symplecticity test, and 2n×2n block handling.
//!
//! Target scale is 2n up to a few hundred; everything is dense and
//! unblocked. All residual checks are relative to the Frobenius norm
//! with an additive 1 guard for near-zero matrices.

use crate::error::{Error, Result};

/// Relative symmetry tolerance for [`SymmetricMatrix`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Default tolerance for [`is_symplectic`] membership.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Off-diagonal mass threshold for Jacobi convergence, relative to ‖S‖_F.
const JACOBI_TOL: f64 = 1e-14;

/// Dense real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows must be nonempty and equal length".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn diagonal_matrix(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: f64) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// (A + Aᵀ)/2.
    pub fn symmetrized(&self) -> Matrix {
        assert!(self.is_square());
        Matrix::from_fn(self.rows, self.cols, |i, j| 0.5 * (self[(i, j)] + self[(j, i)]))
    }

    pub fn symmetry_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut d = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        d
    }

    pub fn is_symmetric_within_tol(&self) -> bool {
        self.symmetry_defect() <= SYMMETRY_TOL * (1.0 + self.max_abs())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Square matrix validated to be symmetric within [`SYMMETRY_TOL`].
#[derive(Clone, Debug)]
pub struct SymmetricMatrix(Matrix);

impl SymmetricMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "symmetric matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_symmetric_within_tol() {
            return Err(Error::Constraint {
                index: 0,
                message: format!("matrix is not symmetric, defect {}", m.symmetry_defect()),
            });
        }
        Ok(Self(m))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// Symmetric matrix validated positive definite by Cholesky.
#[derive(Clone, Debug)]
pub struct PositiveDefiniteMatrix(Matrix);

impl PositiveDefiniteMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let s = SymmetricMatrix::new(m)?;
        if !is_positive_definite(s.as_matrix()) {
            return Err(Error::Definiteness(
                "Cholesky factorization failed: matrix is not positive definite".into(),
            ));
        }
        Ok(Self(s.into_matrix()))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// 2n×2n matrix validated to satisfy MᵀJM = J within [`SYMPLECTIC_TOL`].
#[derive(Clone, Debug)]
pub struct SymplecticMatrix(Matrix);

impl SymplecticMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let check = is_symplectic(&m, SYMPLECTIC_TOL)?;
        if !check.holds {
            return Err(Error::Constraint {
                index: 0,
                message: format!("matrix is not symplectic, residual {}", check.residual),
            });
        }
        Ok(Self(m))
    }

    /// For matrices symplectic by construction but checked at a looser
    /// tolerance by the caller.
    pub fn new_with_tol(m: Matrix, tol: f64) -> Result<Self> {
        let check = is_symplectic(&m, tol)?;
        if !check.holds {
            return Err(Error::Constraint {
                index: 0,
                message: format!("matrix is not symplectic, residual {}", check.residual),
            });
        }
        Ok(Self(m))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// The four n×n blocks of a 2n×2n matrix.
#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub a11: Matrix,
    pub a12: Matrix,
    pub a21: Matrix,
    pub a22: Matrix,
}

/// The 2n×2n matrix [[0, I], [−I, 0]]; Jᵀ = −J and J² = −I exactly.
pub fn standard_symplectic_form(n: usize) -> Matrix {
    assert!(n >= 1);
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

fn require_even_square(m: &Matrix, what: &str) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{what} requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() % 2 != 0 || m.rows() == 0 {
        return Err(Error::Dimension(format!(
            "{what} requires even dimension 2n >= 2, got {}",
            m.rows()
        )));
    }
    Ok(m.rows() / 2)
}

/// Verdict and measured residual ‖MᵀJM − J‖_F of a symplecticity test.
#[derive(Clone, Copy, Debug)]
pub struct SymplecticCheck {
    pub holds: bool,
    pub residual: f64,
}

/// Tests MᵀJM = J; the verdict compares the Frobenius residual against
/// tol × (1 + ‖M‖_F²).
pub fn is_symplectic(m: &Matrix, tol: f64) -> Result<SymplecticCheck> {
    let n = require_even_square(m, "symplecticity test")?;
    let j = standard_symplectic_form(n);
    let residual = m.transpose().mul(&j).mul(m).sub(&j).frobenius_norm();
    let nf = m.frobenius_norm();
    Ok(SymplecticCheck {
        holds: residual <= tol * (1.0 + nf * nf),
        residual,
    })
}

/// Splits a 2n×2n matrix into its four n×n blocks.
pub fn block_partition(a: &Matrix) -> Result<BlockPartition> {
    let n = require_even_square(a, "block partition")?;
    let blk = |ri: usize, ci: usize| Matrix::from_fn(n, n, |i, j| a[(ri * n + i, ci * n + j)]);
    Ok(BlockPartition {
        a11: blk(0, 0),
        a12: blk(0, 1),
        a21: blk(1, 0),
        a22: blk(1, 1),
    })
}

/// Reassembles four n×n blocks into the 2n×2n matrix.
pub fn block_assemble(p: &BlockPartition) -> Matrix {
    let n = p.a11.rows();
    assert!(
        [&p.a11, &p.a12, &p.a21, &p.a22]
            .iter()
            .all(|b| b.rows() == n && b.cols() == n),
        "blocks must all be n x n"
    );
    Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => p.a11[(i, j)],
        (true, false) => p.a12[(i, j - n)],
        (false, true) => p.a21[(i - n, j)],
        (false, false) => p.a22[(i - n, j - n)],
    })
}

/// diag(D) ⊕ diag(D), the 2n×2n Williamson normal form for spectrum D.
pub fn direct_sum_pair(d: &[f64]) -> Matrix {
    let n = d.len();
    assert!(n >= 1);
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for (i, &v) in d.iter().enumerate() {
        m[(i, i)] = v;
        m[(n + i, n + i)] = v;
    }
    m
}

/// Lower-triangular L with LLᵀ = A, or None if a pivot is not strictly
/// positive.
pub fn cholesky(a: &Matrix) -> Option<Matrix> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[(i, i)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}

pub fn is_positive_definite(s: &Matrix) -> bool {
    cholesky(s).is_some()
}

fn off_diagonal_mass(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Symmetric eigendecomposition S = Q diag(λ) Qᵀ by cyclic Jacobi
/// sweeps. Returns (Q, λ) with λ ascending and the columns of Q the
/// matching eigenvectors. Errors if S is not symmetric within tolerance
/// or the sweep budget is exhausted before the off-diagonal mass drops
/// below 1e-14 × ‖S‖_F.
pub fn symmetric_eigendecomposition(s: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    if !s.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition requires a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if !s.is_symmetric_within_tol() {
        return Err(Error::Constraint {
            index: 0,
            message: format!("matrix is not symmetric, defect {}", s.symmetry_defect()),
        });
    }

    let n = s.rows();
    let mut a = s.symmetrized();
    let mut q = Matrix::identity(n);
    if n == 1 {
        return Ok((q, vec![a[(0, 0)]]));
    }

    let norm = a.frobenius_norm();
    let threshold = JACOBI_TOL * norm;
    let sweep_budget = 30 * n * n;
    let mut converged = norm == 0.0;

    for _ in 0..sweep_budget {
        if off_diagonal_mass(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apq = a[(p, r)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(r, r)];
                // stable rotation: t = sign(τ)/(|τ| + sqrt(1+τ²))
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;

                a[(p, p)] = app - t * apq;
                a[(r, r)] = aqq + t * apq;
                a[(p, r)] = 0.0;
                a[(r, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != r {
                        let akp = a[(k, p)];
                        let akq = a[(k, r)];
                        a[(k, p)] = c * akp - sn * akq;
                        a[(p, k)] = a[(k, p)];
                        a[(k, r)] = sn * akp + c * akq;
                        a[(r, k)] = a[(k, r)];
                    }
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkq = q[(k, r)];
                    q[(k, p)] = c * qkp - sn * qkq;
                    q[(k, r)] = sn * qkp + c * qkq;
                }
            }
        }
    }
    if !converged && off_diagonal_mass(&a) > threshold {
        return Err(Error::Numerical(format!(
            "Jacobi eigensolver did not converge within {sweep_budget} sweeps (off-diagonal mass {})",
            off_diagonal_mass(&a)
        )));
    }

    // sort ascending, permuting eigenvector columns along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let lambda: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let q_sorted = Matrix::from_fn(n, n, |i, j| q[(i, order[j])]);
    Ok((q_sorted, lambda))
}

fn pd_power(a: &Matrix, exponent: f64, what: &str) -> Result<Matrix> {
    let (q, lambda) = symmetric_eigendecomposition(a)?;
    let n = a.rows();
    if lambda[0] <= 0.0 {
        return Err(Error::Definiteness(format!(
            "{what} requires a positive definite matrix; smallest eigenvalue {}",
            lambda[0]
        )));
    }
    let powed: Vec<f64> = lambda.iter().map(|&l| l.powf(exponent)).collect();
    // Q diag(λ^e) Qᵀ
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = 0.0;
            for k in 0..n {
                s += q[(i, k)] * powed[k] * q[(j, k)];
            }
            out[(i, j)] = s;
            out[(j, i)] = s;
        }
    }
    Ok(out)
}

/// The unique symmetric positive definite square root of A.
pub fn sqrt_pd(a: &Matrix) -> Result<Matrix> {
    pd_power(a, 0.5, "matrix square root")
}

/// The unique symmetric positive definite inverse square root of A.
pub fn inv_sqrt_pd(a: &Matrix) -> Result<Matrix> {
    pd_power(a, -0.5, "matrix inverse square root")
}

/// Householder QR: A = QR with Q orthogonal and R upper triangular.
/// Used by the samplers; not part of the public surface contract.
pub(crate) fn qr(a: &Matrix) -> (Matrix, Matrix) {
    assert!(a.is_square(), "qr helper expects a square matrix");
    let n = a.rows();
    let mut r = a.clone();
    let mut q = Matrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let mut norm2 = 0.0;
        for i in k..n {
            norm2 += r[(i, k)] * r[(i, k)];
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if r[(k, k)] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        v[k] = r[(k, k)] - alpha;
        for i in k + 1..n {
            v[i] = r[(i, k)];
        }
        let vtv: f64 = v[k..].iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        // R <- (I - 2 v vᵀ / vᵀv) R, Q <- Q (I - 2 v vᵀ / vᵀv)
        for j in 0..n {
            let mut dot = 0.0;
            for i in k..n {
                dot += v[i] * r[(i, j)];
            }
            let f = 2.0 * dot / vtv;
            for i in k..n {
                r[(i, j)] -= f * v[i];
            }
        }
        for i in 0..n {
            let mut dot = 0.0;
            for j in k..n {
                dot += q[(i, j)] * v[j];
            }
            let f = 2.0 * dot / vtv;
            for j in k..n {
                q[(i, j)] -= f * v[j];
            }
        }
    }
    (q, r)
}
