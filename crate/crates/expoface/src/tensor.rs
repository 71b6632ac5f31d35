//! The isomorphism between `M_{m x n}` and `C^n (x) C^m`, product vectors,
//! partial conjugation, partial transposition, and the `Subspace` and
//! `BlockState` value types.
//!
//! A tensor `v` in `C^n (x) C^m` is stored flat with component `(j, i)` at
//! index `i*n + j`, so a product vector `eta (x) xi` is the Kronecker product
//! `kron(xi, eta)` and an operator on the tensor space is an `m x m` array of
//! `n x n` blocks indexed by the `C^m` slot.

use crate::error::{Error, Result};
use crate::scalar::real;
use crate::linalg::{self, Tolerance};
use crate::scalar::{canonical_phase, CMatrix, CVector, Cx, RealScalar};
use nalgebra::ComplexField;
use nalgebra::Complex;

/// A vector of `C^n (x) C^m` with component `(j, i)` stored at `i*n + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector<R: RealScalar> {
    n: usize,
    m: usize,
    data: CVector<R>,
}

impl<R: RealScalar> TensorVector<R> {
    pub fn new(n: usize, m: usize, data: CVector<R>) -> Result<Self> {
        if data.len() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "tensor length {} != n*m = {}",
                data.len(),
                n * m
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("tensor entries must be finite".into()));
        }
        Ok(Self { n, m, data })
    }

    /// Standard basis tensor `e_j (x) e_i` (zero-based indices).
    pub fn basis(n: usize, m: usize, j: usize, i: usize) -> Self {
        let mut data = CVector::zeros(n * m);
        data[i * n + j] = Complex::new(R::one(), R::zero());
        Self { n, m, data }
    }

    /// The matrix-to-tensor direction of the isomorphism: component `(j, i)`
    /// of the result stores `z_{ij}` of the `m x n` input.
    pub fn from_matrix(z: &CMatrix<R>) -> Self {
        let (m, n) = z.shape();
        let mut data = CVector::zeros(n * m);
        for i in 0..m {
            for j in 0..n {
                data[i * n + j] = z[(i, j)];
            }
        }
        Self { n, m, data }
    }

    /// The tensor-to-matrix direction: returns the `m x n` matrix with
    /// `z_{ij}` = component `(j, i)`.
    pub fn to_matrix(&self) -> CMatrix<R> {
        CMatrix::from_fn(self.m, self.n, |i, j| self.data[i * self.n + j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Component `(j, i)` with `j` indexing the `C^n` slot.
    pub fn component(&self, j: usize, i: usize) -> Cx<R> {
        self.data[i * self.n + j]
    }

    pub fn as_vector(&self) -> &CVector<R> {
        &self.data
    }

    pub fn into_vector(self) -> CVector<R> {
        self.data
    }

    pub fn norm(&self) -> R {
        self.data.norm()
    }

    /// Contraction against a `C^m` vector: returns `w` in `C^n` with
    /// `w_j = sum_i conj(chi_i) v_{(j,i)}`.
    pub fn contract_m(&self, chi: &CVector<R>) -> CVector<R> {
        assert_eq!(chi.len(), self.m);
        CVector::from_fn(self.n, |j, _| {
            (0..self.m).map(|i| chi[i].conj() * self.data[i * self.n + j]).sum()
        })
    }

    /// Extract product factors when the associated matrix has numerical rank
    /// one: the dominant singular pair of `to_matrix()`, reassembled so that
    /// the embedding reproduces this tensor up to phase.
    pub fn product_factors(&self, tol: Tolerance<R>) -> Option<ProductVector<R>> {
        let z = self.to_matrix();
        if linalg::rank(&z, tol) != 1 {
            return None;
        }
        let svd = z.clone().svd(true, true);
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
        let top = order[0];
        let xi = svd.u.as_ref().unwrap().column(top).into_owned();
        let row = svd.v_t.as_ref().unwrap().row(top).into_owned();
        // z ~ sigma * xi * row, and z = xi * eta^T means eta = row^T (no
        // conjugation: v_t rows are already the conjugated right factors).
        let eta = CVector::from_fn(self.n, |j, _| row[j]);
        ProductVector::new(eta, xi).ok()
    }
}

/// A product vector `eta (x) xi` held in canonical form: both factors unit
/// norm with first significant component real positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector<R: RealScalar> {
    eta: CVector<R>,
    xi: CVector<R>,
}

impl<R: RealScalar> ProductVector<R> {
    pub fn new(eta: CVector<R>, xi: CVector<R>) -> Result<Self> {
        let eta = canonical_phase(&eta)
            .ok_or_else(|| Error::InvalidInput("eta factor must be nonzero".into()))?;
        let xi = canonical_phase(&xi)
            .ok_or_else(|| Error::InvalidInput("xi factor must be nonzero".into()))?;
        Ok(Self { eta, xi })
    }

    pub fn eta(&self) -> &CVector<R> {
        &self.eta
    }

    pub fn xi(&self) -> &CVector<R> {
        &self.xi
    }

    /// The tensor `eta (x) xi`.
    pub fn embed(&self) -> TensorVector<R> {
        let n = self.eta.len();
        let m = self.xi.len();
        let mut data = CVector::zeros(n * m);
        for i in 0..m {
            for j in 0..n {
                data[i * n + j] = self.eta[j] * self.xi[i];
            }
        }
        TensorVector { n, m, data }
    }

    /// Conjugate the `C^m` factor: `eta (x) xi  ->  eta (x) conj(xi)`.
    /// Involutive on canonical representatives.
    pub fn partial_conjugate(&self) -> Self {
        Self::new(self.eta.clone(), self.xi.map(|z| z.conj())).expect("factors stay nonzero")
    }

    /// The rank-one `m x n` matrix whose tensor image is `embed()`,
    /// i.e. `xi * eta^T`.
    pub fn to_matrix(&self) -> CMatrix<R> {
        let m = self.xi.len();
        let n = self.eta.len();
        CMatrix::from_fn(m, n, |i, j| self.xi[i] * self.eta[j])
    }

    /// Projective closeness of the embedded rays: `1 - |<u, v>| < eps`.
    pub fn projectively_close(&self, other: &Self, eps: R) -> bool {
        let u = self.embed();
        let v = other.embed();
        let ip = (u.as_vector().adjoint() * v.as_vector())[(0, 0)].modulus();
        R::one() - ip < eps
    }
}

/// A linear subspace of `C^n (x) C^m` held as an orthonormal basis
/// (columns of `basis`). `m = 1` doubles as a plain subspace of `C^n`.
#[derive(Debug, Clone)]
pub struct Subspace<R: RealScalar> {
    n: usize,
    m: usize,
    basis: CMatrix<R>,
}

impl<R: RealScalar> Subspace<R> {
    /// Span of the given columns, orthonormalized. Dependent inputs simply
    /// produce a lower-dimensional subspace.
    pub fn from_columns(n: usize, m: usize, columns: &CMatrix<R>, tol: Tolerance<R>) -> Result<Self> {
        if columns.nrows() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} != n*m = {}",
                columns.nrows(),
                n * m
            )));
        }
        let basis = linalg::orthonormal_columns(columns, tol);
        Ok(Self { n, m, basis })
    }

    pub fn from_vectors(vectors: &[TensorVector<R>], tol: Tolerance<R>) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::InvalidInput("from_vectors needs at least one vector".into()))?;
        let (n, m) = (first.n, first.m);
        if vectors.iter().any(|v| v.n != n || v.m != m) {
            return Err(Error::DimensionMismatch("mixed tensor shapes".into()));
        }
        let mut cols = CMatrix::zeros(n * m, vectors.len());
        for (c, v) in vectors.iter().enumerate() {
            cols.set_column(c, v.as_vector());
        }
        Self::from_columns(n, m, &cols, tol)
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, m, basis: CMatrix::zeros(n * m, 0) }
    }

    pub fn full(n: usize, m: usize) -> Self {
        Self { n, m, basis: CMatrix::identity(n * m, n * m) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n * self.m
    }

    pub fn basis(&self) -> &CMatrix<R> {
        &self.basis
    }

    pub fn basis_vector(&self, idx: usize) -> TensorVector<R> {
        TensorVector { n: self.n, m: self.m, data: self.basis.column(idx).into_owned() }
    }

    pub fn projector(&self) -> CMatrix<R> {
        &self.basis * self.basis.adjoint()
    }

    pub fn project(&self, v: &CVector<R>) -> CVector<R> {
        &self.basis * (self.basis.adjoint() * v)
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &CVector<R>) -> R {
        (v - self.project(v)).norm()
    }

    pub fn contains(&self, v: &CVector<R>, tol: Tolerance<R>) -> bool {
        self.residual(v) <= tol.rel * v.norm() + tol.abs
    }

    pub fn contains_subspace(&self, other: &Subspace<R>, tol: Tolerance<R>) -> bool {
        (0..other.dim()).all(|c| self.contains(&other.basis.column(c).into_owned(), tol))
    }

    /// Orthogonal complement within the full tensor space.
    pub fn complement(&self, tol: Tolerance<R>) -> Subspace<R> {
        let basis = linalg::orthocomplement(&self.basis, self.ambient_dim(), tol);
        Subspace { n: self.n, m: self.m, basis }
    }

    /// Orthogonal complement of `inner` within `self` (`inner` must be
    /// contained in `self`).
    pub fn direct_difference(&self, inner: &Subspace<R>, tol: Tolerance<R>) -> Result<Subspace<R>> {
        if inner.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch("ambient dimensions differ".into()));
        }
        if !self.contains_subspace(inner, tol) {
            return Err(Error::InvalidInput("direct_difference requires inner within self".into()));
        }
        // Remove the inner component from each basis vector, then re-span.
        let proj = inner.projector();
        let mut cols = CMatrix::zeros(self.ambient_dim(), self.dim());
        for c in 0..self.dim() {
            let v = self.basis.column(c).into_owned();
            cols.set_column(c, &(&v - &proj * &v));
        }
        let basis = linalg::orthonormal_columns(&cols, tol);
        Ok(Subspace { n: self.n, m: self.m, basis })
    }

    /// Image under `(1 - p) (x) I` for a projection `p` on `C^n`,
    /// re-orthonormalized.
    pub fn compress(&self, p: &CMatrix<R>, tol: Tolerance<R>) -> Result<Subspace<R>> {
        if p.nrows() != self.n || p.ncols() != self.n {
            return Err(Error::DimensionMismatch("projection must act on C^n".into()));
        }
        let q = CMatrix::identity(self.n, self.n) - p;
        let op = CMatrix::identity(self.m, self.m).kronecker(&q);
        let image = &op * &self.basis;
        let basis = linalg::orthonormal_columns(&image, tol);
        Ok(Subspace { n: self.n, m: self.m, basis })
    }

    /// Spectral-norm distance between the orthogonal projectors.
    pub fn distance(&self, other: &Subspace<R>) -> R {
        let diff = self.projector() - other.projector();
        let (values, _) = linalg::hermitian_eigen(&diff);
        values.iter().map(|v| v.abs()).fold(R::zero(), |a, b| a.max(b))
    }
}

/// A Hermitian operator on `C^n (x) C^m` viewed as an `m x m` array of
/// `n x n` blocks.
#[derive(Debug, Clone)]
pub struct BlockState<R: RealScalar> {
    n: usize,
    m: usize,
    mat: CMatrix<R>,
}

impl<R: RealScalar> BlockState<R> {
    pub fn new(n: usize, m: usize, mat: CMatrix<R>) -> Result<Self> {
        if mat.nrows() != n * m || mat.ncols() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "state must be {0}x{0}",
                n * m
            )));
        }
        let herm_defect = (&mat - mat.adjoint()).norm();
        if herm_defect > real::<R>(1e-10) * R::one().max(mat.norm()) {
            return Err(Error::InvalidInput("state must be Hermitian within 1e-10".into()));
        }
        Ok(Self { n, m, mat })
    }

    /// Weighted sum of projectors onto embedded product vectors.
    pub fn from_product_projectors(n: usize, m: usize, terms: &[(R, ProductVector<R>)]) -> Self {
        let mut mat = CMatrix::zeros(n * m, n * m);
        for (c, pv) in terms {
            let z = pv.embed().into_vector();
            mat += (&z * z.adjoint()).map(|e| e * Complex::new(*c, R::zero()));
        }
        Self { n, m, mat }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &CMatrix<R> {
        &self.mat
    }

    pub fn norm(&self) -> R {
        self.mat.norm()
    }

    /// Block transpose: transposes the `C^m` block index, leaving each
    /// `n x n` block untouched.
    pub fn partial_transpose(&self) -> Self {
        let mut out = CMatrix::zeros(self.mat.nrows(), self.mat.ncols());
        for bi in 0..self.m {
            for bj in 0..self.m {
                for r in 0..self.n {
                    for c in 0..self.n {
                        out[(bi * self.n + r, bj * self.n + c)] =
                            self.mat[(bj * self.n + r, bi * self.n + c)];
                    }
                }
            }
        }
        Self { n: self.n, m: self.m, mat: out }
    }

    /// Eigenvalues sorted in descending order.
    pub fn eigenvalues(&self) -> Vec<R> {
        linalg::hermitian_eigen(&self.mat).0
    }

    pub fn min_eigenvalue(&self) -> R {
        self.eigenvalues().last().copied().unwrap_or_else(R::zero)
    }

    pub fn rank(&self, tol: Tolerance<R>) -> usize {
        linalg::rank(&self.mat, tol)
    }

    /// Range space: eigenvectors with eigenvalue modulus above the cutoff.
    pub fn range(&self, tol: Tolerance<R>) -> Subspace<R> {
        let (values, vectors) = linalg::hermitian_eigen(&self.mat);
        let lambda_max = values.iter().map(|v| v.abs()).fold(R::zero(), |a, b| a.max(b));
        let cut = tol.cutoff(lambda_max);
        let kept: Vec<usize> =
            (0..values.len()).filter(|&i| values[i].abs() > cut).collect();
        let mut basis = CMatrix::zeros(self.mat.nrows(), kept.len());
        for (c, &i) in kept.iter().enumerate() {
            basis.set_column(c, &vectors.column(i));
        }
        Subspace { n: self.n, m: self.m, basis }
    }

    pub fn kernel(&self, tol: Tolerance<R>) -> Subspace<R> {
        self.range(tol).complement(tol)
    }

    pub fn apply(&self, v: &CVector<R>) -> CVector<R> {
        &self.mat * v
    }
}
