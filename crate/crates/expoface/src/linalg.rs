//! Deterministic dense complex linear algebra at small dimensions: numerical
//! rank, orthonormalization, complements, minimum-norm least squares, and
//! generalized eigenvalues of matrix pencils `M0 + t M1`.
//!
//! Singular value and Hermitian eigendecompositions are Jacobi iterations
//! with closed-form 2x2 rotations. At the dimensions this crate targets
//! (ambient <= ~32) they converge in a handful of sweeps and deliver
//! machine-precision factors, which the rank decisions at `rel = 1e-8`
//! depend on.

use crate::error::{Error, Result};
use crate::scalar::{cx, real, CMatrix, CVector, ComplexGaussian, Cx, RealScalar};
use nalgebra::{Complex, ComplexField};
use num_traits::ToPrimitive;

/// Relative/absolute thresholds for singular-value cutoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<R: RealScalar> {
    pub rel: R,
    pub abs: R,
}

impl<R: RealScalar> Default for Tolerance<R> {
    fn default() -> Self {
        Self { rel: real(1e-8), abs: real(1e-12) }
    }
}

impl<R: RealScalar> Tolerance<R> {
    pub fn new(rel: R, abs: R) -> Result<Self> {
        if !(rel > R::zero()) || !(abs >= R::zero()) {
            return Err(Error::InvalidInput("tolerance requires rel > 0, abs >= 0".into()));
        }
        Ok(Self { rel, abs })
    }

    /// Singular-value cutoff given the largest singular value.
    pub fn cutoff(&self, sigma_max: R) -> R {
        self.rel * sigma_max + self.abs
    }
}

/// Unitary Jacobi rotation `R` with `R^H G R` diagonal for the Hermitian
/// 2x2 block `G = [[a, g], [conj(g), b]]`, in the cancellation-free
/// tangent form (stable for tiny rotation angles).
fn herm2x2_rotation<R: RealScalar>(a: R, b: R, g: Cx<R>) -> [[Cx<R>; 2]; 2] {
    let one = Complex::new(R::one(), R::zero());
    let zero = Complex::new(R::zero(), R::zero());
    let absg = g.modulus();
    if absg <= R::zero() {
        return [[one, zero], [zero, one]];
    }
    let phase = g / Complex::new(absg, R::zero());
    // real Jacobi on [[a, |g|], [|g|, b]]
    let tau = (b - a) / (absg + absg);
    let t = if tau >= R::zero() {
        R::one() / (tau + (R::one() + tau * tau).sqrt())
    } else {
        -R::one() / (-tau + (R::one() + tau * tau).sqrt())
    };
    let c = R::one() / (R::one() + t * t).sqrt();
    let s = t * c;
    let cphase = phase.conj();
    [
        [Complex::new(c, R::zero()), Complex::new(s, R::zero())],
        [cphase * Complex::new(-s, R::zero()), cphase * Complex::new(c, R::zero())],
    ]
}

/// Thin SVD `M = U diag(sigma) V^H`.
///
/// `sigma` has length `min(rows, cols)`, descending; `u` and `v` carry one
/// column per singular value, except that for tall inputs `v` is square
/// (its trailing columns span the null space) and symmetrically `u` is
/// square for wide inputs.
#[derive(Debug, Clone)]
pub struct Svd<R: RealScalar> {
    pub u: CMatrix<R>,
    pub sigma: Vec<R>,
    pub v: CMatrix<R>,
}

fn one_sided_jacobi<R: RealScalar>(m: &CMatrix<R>) -> (CMatrix<R>, CMatrix<R>) {
    let c = m.ncols();
    let mut w = m.clone();
    let mut v = CMatrix::identity(c, c);
    if c <= 1 {
        return (w, v);
    }
    let eps = R::default_epsilon() * real(8.0);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..c - 1 {
            for q in p + 1..c {
                let wp = w.column(p).into_owned();
                let wq = w.column(q).into_owned();
                let alpha = wp.norm_squared();
                let beta = wq.norm_squared();
                let gamma = (wp.adjoint() * &wq)[(0, 0)];
                let scale = (alpha * beta).sqrt();
                if scale <= R::zero() || gamma.modulus() <= eps * scale {
                    continue;
                }
                rotated = true;
                let r = herm2x2_eigvecs(alpha, beta, gamma);
                w.set_column(p, &(&wp * r[0][0] + &wq * r[1][0]));
                w.set_column(q, &(&wp * r[0][1] + &wq * r[1][1]));
                let vp = v.column(p).into_owned();
                let vq = v.column(q).into_owned();
                v.set_column(p, &(&vp * r[0][0] + &vq * r[1][0]));
                v.set_column(q, &(&vp * r[0][1] + &vq * r[1][1]));
            }
        }
        if !rotated {
            break;
        }
    }
    (w, v)
}

/// One-sided Jacobi SVD, any shape.
pub fn svd<R: RealScalar>(m: &CMatrix<R>) -> Svd<R> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Svd { u: CMatrix::zeros(rows, 0), sigma: Vec::new(), v: CMatrix::zeros(cols, 0) };
    }
    if rows >= cols {
        let (w, v) = one_sided_jacobi(m);
        let norms: Vec<R> = (0..cols).map(|j| w.column(j).norm()).collect();
        let mut order: Vec<usize> = (0..cols).collect();
        order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
        let mut u = CMatrix::zeros(rows, cols);
        let mut vv = CMatrix::zeros(cols, cols);
        let mut sigma = Vec::with_capacity(cols);
        for (k, &j) in order.iter().enumerate() {
            let s = norms[j];
            sigma.push(s);
            if s > R::zero() {
                u.set_column(k, &(w.column(j) / Complex::new(s, R::zero())));
            }
            vv.set_column(k, &v.column(j));
        }
        Svd { u, sigma, v: vv }
    } else {
        let adj = svd(&m.adjoint());
        Svd { u: adj.v, sigma: adj.sigma, v: adj.u }
    }
}

/// Singular values of `m`, sorted in descending order.
pub fn singular_values<R: RealScalar>(m: &CMatrix<R>) -> Vec<R> {
    svd(m).sigma
}

/// Numerical rank: the number of singular values above `rel * sigma_max + abs`.
pub fn rank<R: RealScalar>(m: &CMatrix<R>, tol: Tolerance<R>) -> usize {
    let sv = singular_values(m);
    let sigma_max = sv.first().copied().unwrap_or_else(R::zero);
    let cut = tol.cutoff(sigma_max);
    sv.iter().filter(|s| **s > cut).count()
}

/// Orthonormal basis of the column span of `a` (columns of the result).
pub fn orthonormal_columns<R: RealScalar>(a: &CMatrix<R>, tol: Tolerance<R>) -> CMatrix<R> {
    let rows = a.nrows();
    if rows == 0 || a.ncols() == 0 {
        return CMatrix::zeros(rows, 0);
    }
    let f = svd(a);
    let sigma_max = f.sigma.first().copied().unwrap_or_else(R::zero);
    let cut = tol.cutoff(sigma_max);
    let kept = f.sigma.iter().filter(|s| **s > cut).count();
    f.u.columns(0, kept).into_owned()
}

/// Extend orthonormal columns to an orthonormal basis of the ambient space
/// by pivoted two-pass Gram-Schmidt over the standard basis; returns only
/// the new columns.
pub fn complete_orthonormal<R: RealScalar>(basis: &CMatrix<R>) -> CMatrix<R> {
    let ambient = basis.nrows();
    let r = basis.ncols();
    let mut cols: Vec<CVector<R>> = (0..r).map(|j| basis.column(j).into_owned()).collect();
    let mut fresh: Vec<CVector<R>> = Vec::with_capacity(ambient - r);
    while cols.len() < ambient {
        let mut best: Option<(R, usize)> = None;
        for i in 0..ambient {
            let mut v = CVector::zeros(ambient);
            v[i] = Complex::new(R::one(), R::zero());
            for c in &cols {
                let coeff = (c.adjoint() * &v)[(0, 0)];
                v -= c * coeff;
            }
            let n = v.norm();
            if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                best = Some((n, i));
            }
        }
        let (_, i) = best.expect("ambient > 0");
        let mut v = CVector::zeros(ambient);
        v[i] = Complex::new(R::one(), R::zero());
        for _pass in 0..2 {
            for c in &cols {
                let coeff = (c.adjoint() * &v)[(0, 0)];
                v -= c * coeff;
            }
        }
        let n = v.norm();
        let unit = v / Complex::new(n, R::zero());
        cols.push(unit.clone());
        fresh.push(unit);
    }
    let mut out = CMatrix::zeros(ambient, fresh.len());
    for (k, v) in fresh.iter().enumerate() {
        out.set_column(k, v);
    }
    out
}

/// Orthonormal basis of the orthogonal complement of `span(s)` inside
/// `C^ambient_dim`; `s` holds the spanning vectors as columns.
pub fn orthocomplement<R: RealScalar>(
    s: &CMatrix<R>,
    ambient_dim: usize,
    tol: Tolerance<R>,
) -> CMatrix<R> {
    if s.ncols() == 0 {
        return CMatrix::identity(ambient_dim, ambient_dim);
    }
    assert_eq!(s.nrows(), ambient_dim, "spanning vectors must have the ambient length");
    let basis = orthonormal_columns(s, tol);
    complete_orthonormal(&basis)
}

/// Orthonormal basis of the right null space of `m`.
pub fn kernel_basis<R: RealScalar>(m: &CMatrix<R>, tol: Tolerance<R>) -> CMatrix<R> {
    let (rows, cols) = m.shape();
    if rows == 0 {
        return CMatrix::identity(cols, cols);
    }
    if rows >= cols {
        // V is square: its trailing columns, below the cutoff, span the
        // kernel exactly.
        let f = svd(m);
        let sigma_max = f.sigma.first().copied().unwrap_or_else(R::zero);
        let cut = tol.cutoff(sigma_max);
        let kept = f.sigma.iter().filter(|s| **s > cut).count();
        f.v.columns(kept, cols - kept).into_owned()
    } else {
        orthocomplement(&m.adjoint(), cols, tol)
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian
/// matrix, by cyclic Jacobi with closed-form 2x2 rotations.
pub fn hermitian_eigen<R: RealScalar>(h: &CMatrix<R>) -> (Vec<R>, CMatrix<R>) {
    let n = h.nrows();
    assert_eq!(h.ncols(), n, "hermitian_eigen needs a square matrix");
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let mut a = h.clone();
    let mut q = CMatrix::identity(n, n);
    let eps = R::default_epsilon() * real(8.0);
    let scale = a.norm().max(R::default_epsilon());
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for r in p + 1..n {
                let g = a[(p, r)];
                if g.modulus() <= eps * scale {
                    continue;
                }
                rotated = true;
                let rot = herm2x2_eigvecs(a[(p, p)].re, a[(r, r)].re, g);
                for i in 0..n {
                    let ap = a[(i, p)];
                    let ar = a[(i, r)];
                    a[(i, p)] = ap * rot[0][0] + ar * rot[1][0];
                    a[(i, r)] = ap * rot[0][1] + ar * rot[1][1];
                    let qp = q[(i, p)];
                    let qr = q[(i, r)];
                    q[(i, p)] = qp * rot[0][0] + qr * rot[1][0];
                    q[(i, r)] = qp * rot[0][1] + qr * rot[1][1];
                }
                for j in 0..n {
                    let ap = a[(p, j)];
                    let ar = a[(r, j)];
                    a[(p, j)] = ap * rot[0][0].conj() + ar * rot[1][0].conj();
                    a[(r, j)] = ap * rot[0][1].conj() + ar * rot[1][1].conj();
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values: Vec<R> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        vectors.set_column(c, &q.column(i));
    }
    (values, vectors)
}

/// Minimum-norm least-squares solution of `a x = b` via the SVD
/// pseudo-inverse. Errors when the residual exceeds `rel * |b| + abs`.
pub fn least_squares<R: RealScalar>(
    a: &CMatrix<R>,
    b: &CVector<R>,
    tol: Tolerance<R>,
) -> Result<CVector<R>> {
    assert_eq!(a.nrows(), b.len(), "rhs length must match the row count");
    let threshold = tol.rel * b.norm() + tol.abs;
    let fail = |residual: R| Error::Inconsistent {
        residual: residual.to_f64().unwrap_or(f64::NAN),
        threshold: threshold.to_f64().unwrap_or(f64::NAN),
    };
    if a.ncols() == 0 || a.nrows() == 0 {
        let x = CVector::zeros(a.ncols());
        let residual = b.norm();
        if residual <= threshold {
            return Ok(x);
        }
        return Err(fail(residual));
    }
    let f = svd(a);
    let sigma_max = f.sigma.first().copied().unwrap_or_else(R::zero);
    let cut = tol.cutoff(sigma_max);
    let mut x = CVector::zeros(a.ncols());
    for (i, &s) in f.sigma.iter().enumerate() {
        if s > cut {
            let coeff = (f.u.column(i).adjoint() * b)[(0, 0)] / Complex::new(s, R::zero());
            x += f.v.column(i) * coeff;
        }
    }
    let residual = (a * &x - b).norm();
    if residual > threshold {
        return Err(fail(residual));
    }
    Ok(x)
}

/// Apply the Moore-Penrose inverse of a Hermitian PSD matrix to a vector,
/// through its eigendecomposition.
pub fn psd_pinv_apply<R: RealScalar>(
    h: &CMatrix<R>,
    x: &CVector<R>,
    tol: Tolerance<R>,
) -> CVector<R> {
    let (values, vectors) = hermitian_eigen(h);
    let lambda_max = values.first().copied().unwrap_or_else(R::zero).max(R::zero());
    let cut = tol.cutoff(lambda_max);
    let mut out = CVector::zeros(x.len());
    for (i, &lambda) in values.iter().enumerate() {
        if lambda > cut {
            let q = vectors.column(i);
            let coeff = (q.adjoint() * x)[(0, 0)] / Complex::new(lambda, R::zero());
            out += q * coeff;
        }
    }
    out
}

/// Deterministic sample points for pencil probing: 1, -1, 2, -2, ... plus one
/// seeded complex point.
pub fn pencil_sample_points<R: RealScalar>(dim: usize) -> Vec<Cx<R>> {
    let count = 8usize.max(2 * dim);
    let mut points = Vec::with_capacity(count + 1);
    let mut k = 1i64;
    while points.len() < count {
        points.push(cx(k as f64, 0.0));
        if points.len() < count {
            points.push(cx(-(k as f64), 0.0));
        }
        k += 1;
    }
    let mut g = ComplexGaussian::new(0xE1_u64.wrapping_add(dim as u64));
    points.push(g.sample());
    points
}

/// Outcome of a square-pencil eigenvalue computation.
#[derive(Debug, Clone)]
pub enum PencilEigenvalues<R: RealScalar> {
    /// `det(M0 + t M1)` vanishes identically (within tolerance at every
    /// deterministic sample point).
    Singular,
    /// Finite eigenvalues plus a flag for an eigenvalue at infinity
    /// (`M1` singular).
    Regular { finite: Vec<Cx<R>>, infinite: bool },
}

/// Generalized eigenvalues `t` of the square pencil `det(M0 + t M1) = 0`.
///
/// The pencil is reduced through the substitution `t = mu - 1/lambda` with a
/// shift `mu` picked from the deterministic sample points at which
/// `M0 + mu M1` is best conditioned; the `lambda` are then ordinary
/// eigenvalues of `(M0 + mu M1)^{-1} M1`. Callers re-verify every candidate
/// against their full system.
pub fn pencil_eigenvalues<R: RealScalar>(
    m0: &CMatrix<R>,
    m1: &CMatrix<R>,
    tol: Tolerance<R>,
) -> PencilEigenvalues<R> {
    let d = m0.nrows();
    assert_eq!(m0.shape(), m1.shape(), "pencil matrices must share a shape");
    assert_eq!(m0.nrows(), m0.ncols(), "pencil matrices must be square");
    if d == 0 {
        return PencilEigenvalues::Regular { finite: Vec::new(), infinite: false };
    }

    let infinite = rank(m1, tol) < d;
    let points = pencil_sample_points::<R>(d);
    let mut shifts: Vec<(R, Cx<R>)> = points
        .iter()
        .map(|&mu| {
            let sv = singular_values(&(m0 + m1 * mu));
            let smax = sv.first().copied().unwrap_or_else(R::zero);
            let smin = sv.last().copied().unwrap_or_else(R::zero);
            let ratio = if smax > R::zero() { smin / smax } else { R::zero() };
            (ratio, mu)
        })
        .collect();
    shifts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    if shifts.iter().all(|(ratio, _)| *ratio <= tol.rel) {
        return PencilEigenvalues::Singular;
    }

    for &(ratio, mu) in shifts.iter().take(4) {
        if ratio <= tol.rel {
            continue;
        }
        let n = m0 + m1 * mu;
        let Some(k) = n.lu().solve(m1) else { continue };
        let max_iter = 200 * d.max(4);
        let Some(schur) = k.try_schur(real(1e-14), max_iter) else { continue };
        let Some(lambdas) = schur.eigenvalues() else { continue };
        let lambda_max = lambdas.iter().map(|l| l.modulus()).fold(R::zero(), |a, b| a.max(b));
        let zero_cut = tol.rel * lambda_max;
        let finite: Vec<Cx<R>> = lambdas
            .iter()
            .filter(|l| l.modulus() > zero_cut)
            .map(|&l| mu - Complex::new(R::one(), R::zero()) / l)
            .collect();
        return PencilEigenvalues::Regular { finite, infinite };
    }
    PencilEigenvalues::Singular
}

/// A few Newton corrections of a pencil value `t` toward a rank drop of
/// `M0 + t M1` below `target_rank`, using the singular pair of the
/// `target_rank`-th singular value: `dt = -(u^H M v) / (u^H M1 v)`.
pub fn refine_pencil_value<R: RealScalar>(
    m0: &CMatrix<R>,
    m1: &CMatrix<R>,
    mut t: Cx<R>,
    target_rank: usize,
) -> Cx<R> {
    for _ in 0..3 {
        let m = m0 + m1 * t;
        let f = svd(&m);
        if target_rank == 0 || target_rank > f.sigma.len() {
            return t;
        }
        let idx = target_rank - 1;
        let sigma = f.sigma[idx];
        let sigma_max = f.sigma[0];
        if sigma <= sigma_max * real(1e-14) {
            break;
        }
        let u_k = f.u.column(idx).into_owned();
        let v_k = f.v.column(idx).into_owned();
        let denom = (u_k.adjoint() * m1 * &v_k)[(0, 0)];
        let numer = (u_k.adjoint() * &m * &v_k)[(0, 0)];
        if denom.modulus() <= sigma_max * real(1e-14) {
            break;
        }
        let dt = -numer / denom;
        t += dt;
        if dt.modulus() <= t.modulus() * real(1e-15) {
            break;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type C = Complex<f64>;
    type M = CMatrix<f64>;
    type V = CVector<f64>;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn rank_zero_matrix() {
        let z = M::zeros(2, 3);
        assert_eq!(rank(&z, tol()), 0);
    }

    #[test]
    fn rank_identity() {
        let id = M::identity(2, 2);
        assert_eq!(rank(&id, tol()), 2);
    }

    #[test]
    fn rank_outer_product() {
        let m = M::from_row_slice(2, 2, &[cx(1., 0.), cx(1., 0.), cx(1., 0.), cx(1., 0.)]);
        assert_eq!(rank(&m, tol()), 1);
    }

    #[test]
    fn rank_invariant_under_transpose_and_conjugate() {
        let mut g = ComplexGaussian::new(7);
        for _ in 0..10 {
            let m: M = g.matrix(3, 5);
            let r = rank(&m, tol());
            assert_eq!(rank(&m.transpose(), tol()), r);
            assert_eq!(rank(&m.adjoint(), tol()), r);
            assert_eq!(rank(&m.map(|z| z.conj()), tol()), r);
        }
    }

    #[test]
    fn orthocomplement_of_e1_in_c3() {
        let e1 = M::from_column_slice(3, 1, &[cx(1., 0.), cx(0., 0.), cx(0., 0.)]);
        let comp = orthocomplement(&e1, 3, tol());
        assert_eq!(comp.ncols(), 2);
        for c in 0..2 {
            assert!(comp.column(c)[0].norm() < 1e-12);
        }
    }

    #[test]
    fn orthocomplement_of_empty_set() {
        let empty = M::zeros(2, 0);
        let comp = orthocomplement(&empty, 2, tol());
        assert_eq!(comp.ncols(), 2);
        assert!((comp.adjoint() * &comp - M::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn orthocomplement_random_subspace() {
        let mut g = ComplexGaussian::new(11);
        let s: M = g.matrix(6, 2);
        let comp = orthocomplement(&s, 6, tol());
        assert_eq!(comp.ncols(), 4);
        let cross = s.adjoint() * &comp;
        assert!(cross.norm() < 1e-10);
        assert!((comp.adjoint() * &comp - M::identity(4, 4)).norm() < 1e-10);
    }

    #[test]
    fn orthocomplement_twice_restores_span() {
        let mut g = ComplexGaussian::new(13);
        for trial in 0..5 {
            let s: M = g.matrix(5, 2 + trial % 2);
            let b = orthonormal_columns(&s, tol());
            let comp = orthocomplement(&s, 5, tol());
            let back = orthocomplement(&comp, 5, tol());
            assert_eq!(back.ncols(), b.ncols());
            let pa = &b * b.adjoint();
            let pb = &back * back.adjoint();
            assert!((pa - pb).norm() < 1e-8, "double complement must restore the span");
        }
    }

    #[test]
    fn least_squares_identity() {
        let a = M::identity(2, 2);
        let b = V::from_column_slice(&[cx(1., 0.), cx(2., 0.)]);
        let x = least_squares(&a, &b, tol()).unwrap();
        assert!((x - b).norm() < 1e-12);
    }

    #[test]
    fn least_squares_minimum_norm() {
        let a = M::from_row_slice(1, 2, &[cx(1., 0.), cx(0., 0.)]);
        let b = V::from_column_slice(&[cx(3., 0.)]);
        let x = least_squares(&a, &b, tol()).unwrap();
        assert!((x[0] - cx::<f64>(3., 0.)).norm() < 1e-12);
        assert!(x[1].norm() < 1e-12);
    }

    #[test]
    fn least_squares_random_full_row_rank() {
        let mut g = ComplexGaussian::new(17);
        let a: M = g.matrix(3, 5);
        let b: V = g.vector(3);
        let x = least_squares(&a, &b, tol()).unwrap();
        assert!((a * x - b).norm() < 1e-10);
    }

    #[test]
    fn least_squares_inconsistent_detected() {
        let a = M::from_row_slice(2, 1, &[cx(1., 0.), cx(0., 0.)]);
        let b = V::from_column_slice(&[cx(0., 0.), cx(1., 0.)]);
        assert!(matches!(least_squares(&a, &b, tol()), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn pencil_diagonal_case() {
        let m0 = M::from_row_slice(2, 2, &[cx(1., 0.), cx(0., 0.), cx(0., 0.), cx(2., 0.)]);
        let m1 = -M::identity(2, 2);
        let PencilEigenvalues::Regular { mut finite, infinite } = pencil_eigenvalues(&m0, &m1, tol())
        else {
            panic!("regular pencil misdetected as singular");
        };
        assert!(!infinite);
        finite.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert_eq!(finite.len(), 2);
        assert!((finite[0] - cx::<f64>(1., 0.)).norm() < 1e-9);
        assert!((finite[1] - cx::<f64>(2., 0.)).norm() < 1e-9);
    }

    #[test]
    fn pencil_zero_m0() {
        let m0 = M::zeros(2, 2);
        let m1 = M::identity(2, 2);
        let PencilEigenvalues::Regular { finite, infinite } = pencil_eigenvalues(&m0, &m1, tol())
        else {
            panic!("regular pencil misdetected as singular");
        };
        assert!(!infinite);
        assert!(finite.iter().all(|t| t.norm() < 1e-9));
    }

    #[test]
    fn pencil_singular_detected() {
        let m = M::from_row_slice(2, 2, &[cx(1., 0.), cx(0., 0.), cx(0., 0.), cx(0., 0.)]);
        assert!(matches!(pencil_eigenvalues(&m, &m, tol()), PencilEigenvalues::Singular));
    }

    #[test]
    fn pencil_planted_eigenvalues_recovered() {
        // Diagonal construction with known eigenvalues, conjugated by random
        // unitaries so nothing stays diagonal.
        let mut g = ComplexGaussian::new(23);
        for trial in 0..8 {
            let d = 3 + trial % 3;
            let planted: Vec<C> = (0..d).map(|_| g.sample()).collect();
            let diag0 = M::from_diagonal(&V::from_iterator(d, planted.iter().copied()));
            let diag1 = -M::identity(d, d);
            let left = orthonormal_columns(&g.matrix(d, d), tol());
            let right = orthonormal_columns(&g.matrix(d, d), tol());
            let m0 = &left * diag0 * &right;
            let m1 = &left * diag1 * &right;
            let PencilEigenvalues::Regular { finite, .. } = pencil_eigenvalues(&m0, &m1, tol())
            else {
                panic!("regular pencil misdetected as singular");
            };
            assert_eq!(finite.len(), d);
            for want in &planted {
                let best = finite.iter().map(|t| (t - want).norm()).fold(f64::MAX, f64::min);
                assert!(best < 1e-7, "planted eigenvalue {want} missed (err {best:e})");
            }
        }
    }

    #[test]
    fn kernel_basis_wide_matrix() {
        let m = M::from_row_slice(2, 3, &[
            cx(1., 0.), cx(0., 0.), cx(0., 0.),
            cx(0., 0.), cx(1., 0.), cx(0., 0.),
        ]);
        let k = kernel_basis(&m, tol());
        assert_eq!(k.ncols(), 1);
        assert!((m * &k).norm() < 1e-12);
    }

    #[test]
    fn psd_pinv_apply_inverts_on_range() {
        let mut g = ComplexGaussian::new(31);
        let b: M = g.matrix(4, 2);
        let h = &b * b.adjoint();
        let x: V = &b * g.vector(2); // in the range
        let y = psd_pinv_apply(&h, &x, tol());
        assert!((h * y - x).norm() < 1e-9);
    }
}
