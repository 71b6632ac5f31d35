//! Product-vector enumeration in subspaces of `C^n (x) C^2` through matrix
//! pencils, detection of completely entangled / completely separable
//! structure, and extraction of the product part of a subspace.
//!
//! Writing `D^perp = span{G_r}` with `G_r = g_r1 (x) e1 + g_r2 (x) e2`, a
//! product vector `eta (x) (e1 + t e2)` lies in `D` exactly when
//! `(M0 + t M1) eta = 0` where row `r` of `M0` (resp. `M1`) is the conjugate
//! of `g_r1` (resp. `g_r2`). Rank drops of this pencil therefore parametrize
//! the product vectors; the chart point `t = infinity` is the separate case
//! `xi = e2` governed by `M1` alone.

use crate::error::{Error, Result};
use crate::linalg::{self, PencilEigenvalues, Tolerance};
use crate::scalar::{cx, real, CMatrix, CVector, ComplexGaussian, Cx, RealScalar};
use crate::tensor::{ProductVector, Subspace, TensorVector};
use nalgebra::{Complex, ComplexField};

/// The rectangular pencil `(M0, M1)` associated with a subspace.
#[derive(Debug, Clone)]
pub struct Pencil<R: RealScalar> {
    pub m0: CMatrix<R>,
    pub m1: CMatrix<R>,
}

impl<R: RealScalar> Pencil<R> {
    pub fn rows(&self) -> usize {
        self.m0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.m0.ncols()
    }

    pub fn eval(&self, t: Cx<R>) -> CMatrix<R> {
        &self.m0 + &self.m1 * t
    }
}

/// A chart point on the projective `xi` line: finite `t` for
/// `xi = (e1 + t e2)/|..|`, or the point at infinity for `xi = e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartPoint<R: RealScalar> {
    Finite(Cx<R>),
    Infinity,
}

impl<R: RealScalar> ChartPoint<R> {
    pub fn xi(&self) -> CVector<R> {
        match self {
            ChartPoint::Finite(t) => {
                let mut v = CVector::zeros(2);
                v[0] = Complex::new(R::one(), R::zero());
                v[1] = *t;
                let norm = v.norm();
                v / Complex::new(norm, R::zero())
            }
            ChartPoint::Infinity => {
                let mut v = CVector::zeros(2);
                v[1] = Complex::new(R::one(), R::zero());
                v
            }
        }
    }
}

/// Build the pencil for `D`: rows come from an orthonormal basis of `D^perp`.
pub fn build_pencil<R: RealScalar>(d: &Subspace<R>, tol: Tolerance<R>) -> Result<Pencil<R>> {
    if d.m() != 2 {
        return Err(Error::InvalidInput("pencil construction requires m = 2".into()));
    }
    if d.dim() == 0 {
        return Err(Error::EmptySubspace("pencil of the zero subspace".into()));
    }
    let n = d.n();
    let comp = d.complement(tol);
    let rows = comp.dim();
    let mut m0 = CMatrix::zeros(rows, n);
    let mut m1 = CMatrix::zeros(rows, n);
    for r in 0..rows {
        let g = comp.basis_vector(r);
        for j in 0..n {
            m0[(r, j)] = g.component(j, 0).conj();
            m1[(r, j)] = g.component(j, 1).conj();
        }
    }
    Ok(Pencil { m0, m1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationKind {
    Finite,
    InfiniteFamily,
}

/// Result of a product-vector search in a subspace.
#[derive(Debug, Clone)]
pub struct PencilEnumeration<R: RealScalar> {
    pub kind: EnumerationKind,
    /// Canonical, pairwise projectively distinct rays (finite case).
    pub rays: Vec<ProductVector<R>>,
    /// Sampled members of the family (infinite case).
    pub family_samples: Vec<ProductVector<R>>,
    pub pencil: Pencil<R>,
}

impl<R: RealScalar> PencilEnumeration<R> {
    /// All product vectors carried by the result, rays or samples.
    pub fn members(&self) -> &[ProductVector<R>] {
        match self.kind {
            EnumerationKind::Finite => &self.rays,
            EnumerationKind::InfiniteFamily => &self.family_samples,
        }
    }
}

const PROJECTIVE_EPS: f64 = 1e-7;

fn push_deduped<R: RealScalar>(list: &mut Vec<ProductVector<R>>, pv: ProductVector<R>) -> bool {
    let eps = real::<R>(PROJECTIVE_EPS);
    if list.iter().any(|q| q.projectively_close(&pv, eps)) {
        return false;
    }
    list.push(pv);
    true
}

/// Deterministic sweep of chart points: 0, 1, -1, 2, -2, ... then a golden
/// spiral of complex points. Supplies arbitrarily many values.
fn sweep_point<R: RealScalar>(idx: usize) -> Cx<R> {
    if idx == 0 {
        return cx(0.0, 0.0);
    }
    if idx <= 8 {
        let k = idx.div_ceil(2) as f64;
        let sign = if idx % 2 == 1 { 1.0 } else { -1.0 };
        return cx(sign * k, 0.0);
    }
    let j = (idx - 8) as f64;
    let golden = 0.618_033_988_749_894_9_f64;
    let theta = 2.0 * std::f64::consts::PI * (j * golden).fract();
    let rho = 0.5 + 0.25 * j;
    cx(rho * theta.cos(), rho * theta.sin())
}

/// Deterministic projectively-distinct combinations of kernel basis columns.
fn kernel_member<R: RealScalar>(kernel: &CMatrix<R>, idx: usize) -> CVector<R> {
    let kdim = kernel.ncols();
    if idx < kdim {
        return kernel.column(idx).into_owned();
    }
    let golden = 0.618_033_988_749_894_9_f64;
    let j = (idx - kdim + 1) as f64;
    let mut v = CVector::zeros(kernel.nrows());
    for a in 0..kdim {
        let theta = 2.0 * std::f64::consts::PI * ((a as f64 + 1.0) * j * golden).fract();
        let coeff = cx::<R>(theta.cos(), theta.sin());
        v += kernel.column(a) * coeff;
    }
    v
}

struct ChartKernel<R: RealScalar> {
    point: ChartPoint<R>,
    kernel: CMatrix<R>,
}

/// Enumerate all product vectors in `D`, with a target sample count for the
/// infinite-family case.
pub fn enumerate_with_budget<R: RealScalar>(
    d: &Subspace<R>,
    tol: Tolerance<R>,
    seed: u64,
    samples_target: usize,
) -> Result<PencilEnumeration<R>> {
    let n = d.n();
    if d.m() != 2 {
        return Err(Error::InvalidInput("enumeration requires m = 2".into()));
    }
    if d.dim() == 0 {
        return Err(Error::EmptySubspace("cannot enumerate the zero subspace".into()));
    }

    // Full space: every vector is unconstrained.
    if d.dim() == 2 * n {
        let pencil = Pencil { m0: CMatrix::zeros(0, n), m1: CMatrix::zeros(0, n) };
        let identity = CMatrix::identity(n, n);
        let mut samples = Vec::new();
        let mut idx = 0usize;
        while samples.len() < samples_target && idx < 16 * samples_target + 32 {
            let point = if idx % 8 == 7 {
                ChartPoint::Infinity
            } else {
                ChartPoint::Finite(sweep_point(idx))
            };
            let eta = kernel_member(&identity, idx);
            if let Ok(pv) = ProductVector::new(eta, point.xi()) {
                push_deduped(&mut samples, pv);
            }
            idx += 1;
        }
        return Ok(PencilEnumeration {
            kind: EnumerationKind::InfiniteFamily,
            rays: Vec::new(),
            family_samples: samples,
            pencil,
        });
    }

    let pencil = build_pencil(d, tol)?;
    let rows = pencil.rows();

    // Generic rank of the rectangular pencil over deterministic samples plus
    // one seeded point.
    let mut probe_points: Vec<Cx<R>> = linalg::pencil_sample_points(n);
    probe_points.push(ComplexGaussian::new(seed ^ 0x9E37_79B9).sample());
    let rstar = probe_points
        .iter()
        .map(|&t| linalg::rank(&pencil.eval(t), tol))
        .max()
        .unwrap_or(0);
    if rstar == 0 {
        // No constraints bite anywhere; treat like the full-space family.
        return Err(Error::CompressionFailure);
    }

    // Candidate chart points.
    let mut candidates: Vec<Cx<R>> = Vec::new();
    if rows == n && rstar == n {
        match linalg::pencil_eigenvalues(&pencil.m0, &pencil.m1, tol) {
            PencilEigenvalues::Regular { finite, .. } => candidates.extend(finite),
            PencilEigenvalues::Singular => {
                // contradicts rstar == n; fall back to compressed draws below
            }
        }
    }
    if candidates.is_empty() {
        let mut verified_counts: Vec<usize> = Vec::new();
        let mut all_singular = true;
        for attempt in 0..3u64 {
            let mut g = ComplexGaussian::new(seed.wrapping_add(attempt.wrapping_mul(0xC2B2)));
            let left: CMatrix<R> = g.matrix(rstar, rows);
            let right: CMatrix<R> =
                if rstar == n { CMatrix::identity(n, n) } else { g.matrix(n, rstar) };
            let a0 = &left * &pencil.m0 * &right;
            let a1 = &left * &pencil.m1 * &right;
            match linalg::pencil_eigenvalues(&a0, &a1, tol) {
                PencilEigenvalues::Regular { finite, .. } => {
                    all_singular = false;
                    let before = candidates.len();
                    candidates.extend(finite);
                    verified_counts.push(candidates.len() - before);
                    if attempt >= 1 {
                        break;
                    }
                }
                PencilEigenvalues::Singular => continue,
            }
        }
        if all_singular && rstar > 0 {
            return Err(Error::CompressionFailure);
        }
    }

    // Verify each candidate against the full rectangular pencil: accept when
    // the rstar-th singular value drops below rel * sigma_max after Newton
    // refinement, then extract the kernel.
    let mut charts: Vec<ChartKernel<R>> = Vec::new();
    let mut seen: Vec<Cx<R>> = Vec::new();
    for t0 in candidates {
        let t = linalg::refine_pencil_value(&pencil.m0, &pencil.m1, t0, rstar);
        if seen
            .iter()
            .any(|s| (s - t).modulus() <= real::<R>(1e-9) * (R::one() + t.modulus()))
        {
            continue;
        }
        let m_t = pencil.eval(t);
        let sv = linalg::singular_values(&m_t);
        let sigma_max = sv.first().copied().unwrap_or_else(R::zero);
        if rstar == 0 || sv.len() < rstar {
            continue;
        }
        if sv[rstar - 1] < tol.rel * sigma_max {
            let kernel = linalg::kernel_basis(&m_t, tol);
            if kernel.ncols() > n - rstar {
                seen.push(t);
                charts.push(ChartKernel { point: ChartPoint::Finite(t), kernel });
            }
        }
    }
    // The point at infinity: xi = e2, governed by M1 alone.
    {
        let sv = linalg::singular_values(&pencil.m1);
        let sigma_max = sv.first().copied().unwrap_or_else(R::zero);
        let rank_inf = sv.iter().filter(|s| **s > tol.cutoff(sigma_max)).count();
        if rank_inf < rstar {
            let kernel = linalg::kernel_basis(&pencil.m1, tol);
            if kernel.ncols() > n - rstar {
                charts.push(ChartKernel { point: ChartPoint::Infinity, kernel });
            }
        }
    }

    let generic_kernel_dim = n - rstar;
    let infinite = generic_kernel_dim > 0
        || charts.iter().any(|c| c.kernel.ncols() >= 2);

    if !infinite {
        let mut rays = Vec::new();
        for chart in &charts {
            let eta = chart.kernel.column(0).into_owned();
            let Ok(pv) = ProductVector::new(eta, chart.point.xi()) else { continue };
            if d.contains(pv.embed().as_vector(), tol) {
                push_deduped(&mut rays, pv);
            }
        }
        return Ok(PencilEnumeration {
            kind: EnumerationKind::Finite,
            rays,
            family_samples: Vec::new(),
            pencil,
        });
    }

    // Infinite family: deterministic samples from every jump kernel plus,
    // when the generic kernel is nontrivial, a sweep over chart points.
    let mut samples: Vec<ProductVector<R>> = Vec::new();
    let per_chart = samples_target.div_ceil(charts.len().max(1)).max(4);
    for chart in &charts {
        for idx in 0..(per_chart * 4) {
            if samples.len() >= samples_target && idx >= chart.kernel.ncols() {
                break;
            }
            let eta = kernel_member(&chart.kernel, idx);
            let Ok(pv) = ProductVector::new(eta, chart.point.xi()) else { continue };
            if d.contains(pv.embed().as_vector(), tol) {
                push_deduped(&mut samples, pv);
            }
        }
    }
    if generic_kernel_dim > 0 {
        let mut idx = 0usize;
        let cap = 64 * samples_target + 64;
        while samples.len() < samples_target && idx < cap {
            let point = if idx % 16 == 15 {
                ChartPoint::Infinity
            } else {
                ChartPoint::Finite(sweep_point(idx))
            };
            let m_t = match point {
                ChartPoint::Finite(t) => pencil.eval(t),
                ChartPoint::Infinity => pencil.m1.clone(),
            };
            let kernel = linalg::kernel_basis(&m_t, tol);
            for rep in 0..kernel.ncols().max(1).min(generic_kernel_dim + 1) {
                if kernel.ncols() == 0 {
                    break;
                }
                let eta = kernel_member(&kernel, rep);
                let Ok(pv) = ProductVector::new(eta, point.xi()) else { continue };
                if d.contains(pv.embed().as_vector(), tol) {
                    push_deduped(&mut samples, pv);
                }
            }
            idx += 1;
        }
    }

    Ok(PencilEnumeration {
        kind: EnumerationKind::InfiniteFamily,
        rays: Vec::new(),
        family_samples: samples,
        pencil,
    })
}

/// Enumerate all product vectors in `D` (default sample budget `4(n+1)`).
pub fn enumerate<R: RealScalar>(
    d: &Subspace<R>,
    tol: Tolerance<R>,
    seed: u64,
) -> Result<PencilEnumeration<R>> {
    enumerate_with_budget(d, tol, seed, 4 * (d.n() + 1))
}

/// A subspace is completely entangled when it contains no product vectors.
pub fn is_completely_entangled<R: RealScalar>(
    d: &Subspace<R>,
    tol: Tolerance<R>,
    seed: u64,
) -> Result<bool> {
    let e = enumerate(d, tol, seed)?;
    Ok(e.kind == EnumerationKind::Finite && e.rays.is_empty())
}

/// Structure of a completely separable subspace of `C^n (x) C^2`.
#[derive(Debug, Clone)]
pub enum SeparableForm<R: RealScalar> {
    /// `B (x) alpha` for a subspace `B` of `C^n` and a unit `alpha` in `C^2`.
    BTensorAlpha { b: Subspace<R>, alpha: CVector<R> },
    /// `beta (x) C^2` for a unit `beta` in `C^n`.
    BetaTensorC2 { beta: CVector<R> },
}

/// Decide whether every element of `S` has rank at most one, and if so
/// return the structural form. Tests the basis plus `max(8, 2 dim)` seeded
/// random combinations, then certifies the common factor structurally.
pub fn is_completely_separable<R: RealScalar>(
    s: &Subspace<R>,
    tol: Tolerance<R>,
    seed: u64,
) -> Option<SeparableForm<R>> {
    let dim = s.dim();
    if dim == 0 {
        return None;
    }
    let mut factors: Vec<ProductVector<R>> = Vec::with_capacity(dim);
    for c in 0..dim {
        factors.push(s.basis_vector(c).product_factors(tol)?);
    }
    let mut g = ComplexGaussian::new(seed ^ 0x5E9A_17B3);
    let trials = 8usize.max(2 * dim);
    for _ in 0..trials {
        let coeffs: CVector<R> = g.vector(dim);
        let v = s.basis() * &coeffs;
        let t = TensorVector::new(s.n(), s.m(), v).ok()?;
        t.product_factors(tol)?;
    }
    let eps = real::<R>(1e-8);
    let xi0 = factors[0].xi().clone();
    let all_xi_parallel = factors.iter().all(|f| {
        R::one() - (xi0.adjoint() * f.xi())[(0, 0)].modulus() < eps
    });
    if all_xi_parallel {
        let mut etas = CMatrix::zeros(s.n(), dim);
        for (c, f) in factors.iter().enumerate() {
            etas.set_column(c, f.eta());
        }
        let b = Subspace::from_columns(s.n(), 1, &etas, tol).ok()?;
        if b.dim() != dim {
            return None;
        }
        return Some(SeparableForm::BTensorAlpha { b, alpha: xi0 });
    }
    let eta0 = factors[0].eta().clone();
    let all_eta_parallel = factors.iter().all(|f| {
        R::one() - (eta0.adjoint() * f.eta())[(0, 0)].modulus() < eps
    });
    if all_eta_parallel && dim <= 2 {
        return Some(SeparableForm::BetaTensorC2 { beta: eta0 });
    }
    None
}

/// Span of all product vectors found in `D`, with stabilization of the
/// sample budget for infinite families, plus whether that span is itself
/// completely separable.
pub fn product_part<R: RealScalar>(
    d: &Subspace<R>,
    tol: Tolerance<R>,
    seed: u64,
) -> Result<(Subspace<R>, bool)> {
    let d1 = product_span(d, tol, seed)?;
    if d1.dim() == 0 {
        return Ok((d1, true));
    }
    let separable = is_completely_separable(&d1, tol, seed).is_some();
    Ok((d1, separable))
}

/// Span of the product vectors in `D`. Doubles the sample budget (up to
/// three times) until the span dimension stabilizes.
pub fn product_span<R: RealScalar>(
    d: &Subspace<R>,
    tol: Tolerance<R>,
    seed: u64,
) -> Result<Subspace<R>> {
    let mut budget = 4 * (d.n() + 1);
    let first = enumerate_with_budget(d, tol, seed, budget)?;
    if first.kind == EnumerationKind::Finite {
        return span_of(d, &first.rays, tol);
    }
    let mut current = span_of(d, &first.family_samples, tol)?;
    for _ in 0..3 {
        budget *= 2;
        let next = enumerate_with_budget(d, tol, seed, budget)?;
        let next_span = span_of(d, &next.family_samples, tol)?;
        if next_span.dim() == current.dim() {
            return Ok(next_span);
        }
        current = next_span;
    }
    Ok(current)
}

/// Orthonormal span of embedded product vectors, re-projected onto `d` so the
/// result is an exact subspace of `d`'s stored basis.
fn span_of<R: RealScalar>(
    d: &Subspace<R>,
    pvs: &[ProductVector<R>],
    tol: Tolerance<R>,
) -> Result<Subspace<R>> {
    if pvs.is_empty() {
        return Ok(Subspace::zero(d.n(), d.m()));
    }
    let mut cols = CMatrix::zeros(d.ambient_dim(), pvs.len());
    for (c, pv) in pvs.iter().enumerate() {
        cols.set_column(c, &d.project(pv.embed().as_vector()));
    }
    Subspace::from_columns(d.n(), d.m(), &cols, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type M = CMatrix<f64>;
    type V = CVector<f64>;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn e(n: usize, j: usize) -> V {
        let mut v = V::zeros(n);
        v[j] = cx(1., 0.);
        v
    }

    /// Subspace of M_{2xn} spanned by the given 2xn matrices.
    fn span_mats(n: usize, mats: &[M]) -> Subspace<f64> {
        let vectors: Vec<TensorVector<f64>> =
            mats.iter().map(TensorVector::from_matrix).collect();
        Subspace::from_vectors(&vectors, tol()).unwrap()
    }

    fn matrix_unit(n: usize, i: usize, j: usize) -> M {
        let mut z = M::zeros(2, n);
        z[(i - 1, j - 1)] = cx(1., 0.);
        z
    }

    fn random_subspace(n: usize, dim: usize, seed: u64) -> Subspace<f64> {
        let mut g = ComplexGaussian::new(seed);
        let cols: M = g.matrix(2 * n, dim);
        Subspace::from_columns(n, 2, &cols, tol()).unwrap()
    }

    #[test]
    fn pencil_shape_and_kernel_condition() {
        // D = span{e1 (x) e1} in C^2 (x) C^2: 3x2 pencil, root only at t = 0
        // with eta = e1.
        let d = span_mats(2, &[matrix_unit(2, 1, 1)]);
        let p = build_pencil(&d, tol()).unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 2));
        let eta = e(2, 0);
        assert!((p.eval(cx(0., 0.)) * &eta).norm() < 1e-12);
        assert!((p.eval(cx(1., 0.)) * &eta).norm() > 0.1);
    }

    #[test]
    fn enumerate_single_ray_2x3() {
        // D = span{e11, e12 + e21} in M_{2x3}: the 2x2 minors force c2^2 = 0,
        // so e11 is the only ray.
        let d = span_mats(3, &[
            matrix_unit(3, 1, 1),
            matrix_unit(3, 1, 2) + matrix_unit(3, 2, 1),
        ]);
        let en = enumerate(&d, tol(), 1).unwrap();
        assert_eq!(en.kind, EnumerationKind::Finite);
        assert_eq!(en.rays.len(), 1);
        let expect = ProductVector::new(e(3, 0), e(2, 0)).unwrap();
        assert!(en.rays[0].projectively_close(&expect, 1e-9));
    }

    #[test]
    fn enumerate_two_rays_2x2() {
        // D = span{e11, e12 + e21 + e22}: det = c1 c2 - c2^2, so c2 = 0 or
        // c1 = c2; the rays are e11 and the all-ones matrix.
        let d = span_mats(2, &[
            matrix_unit(2, 1, 1),
            matrix_unit(2, 1, 2) + matrix_unit(2, 2, 1) + matrix_unit(2, 2, 2),
        ]);
        let en = enumerate(&d, tol(), 1).unwrap();
        assert_eq!(en.kind, EnumerationKind::Finite);
        assert_eq!(en.rays.len(), 2);
        let ones = ProductVector::new(
            V::from_column_slice(&[cx(1., 0.), cx(1., 0.)]),
            V::from_column_slice(&[cx(1., 0.), cx(1., 0.)]),
        )
        .unwrap();
        let e11 = ProductVector::new(e(2, 0), e(2, 0)).unwrap();
        for want in [e11, ones] {
            assert!(
                en.rays.iter().any(|r| r.projectively_close(&want, 1e-9)),
                "missing expected ray"
            );
        }
    }

    #[test]
    fn enumerate_infinity_chart_ray() {
        // D^perp of the unexposed 2x2 fixture: span{e12 - e21, e22} has
        // exactly one product vector, e22, sitting at the chart point
        // xi = e2.
        let d = span_mats(2, &[
            matrix_unit(2, 1, 2) - matrix_unit(2, 2, 1),
            matrix_unit(2, 2, 2),
        ]);
        let en = enumerate(&d, tol(), 1).unwrap();
        assert_eq!(en.kind, EnumerationKind::Finite);
        assert_eq!(en.rays.len(), 1);
        let expect = ProductVector::new(e(2, 1), e(2, 1)).unwrap();
        assert!(en.rays[0].projectively_close(&expect, 1e-9));
    }

    #[test]
    fn enumerate_generic_counts() {
        for n in 2..=4usize {
            let d = random_subspace(n, n, 100 + n as u64);
            let en = enumerate(&d, tol(), 7).unwrap();
            assert_eq!(en.kind, EnumerationKind::Finite, "generic n-dim must be finite");
            assert_eq!(en.rays.len(), n, "generic n-dim subspace has exactly n rays");
            for ray in &en.rays {
                assert!(d.residual(ray.embed().as_vector()) < 1e-8);
                assert!(ray.embed().product_factors(tol()).is_some());
            }
            let d_big = random_subspace(n, n + 1, 200 + n as u64);
            let en = enumerate(&d_big, tol(), 7).unwrap();
            assert_eq!(en.kind, EnumerationKind::InfiniteFamily);
            assert!(en.family_samples.len() >= 4 * (n + 1));
            for s in &en.family_samples {
                assert!(d_big.residual(s.embed().as_vector()) < 1e-8);
            }
            for (a, i) in en.family_samples.iter().zip(0..) {
                for b in &en.family_samples[i + 1..] {
                    assert!(!a.projectively_close(b, 1e-7), "samples must be distinct");
                }
            }
        }
    }

    #[test]
    fn completely_entangled_examples() {
        // span{e12 + e21 + e22} in M_{2x2} is completely entangled.
        let d = span_mats(2, &[
            matrix_unit(2, 1, 2) + matrix_unit(2, 2, 1) + matrix_unit(2, 2, 2),
        ]);
        assert!(is_completely_entangled(&d, tol(), 1).unwrap());
        let d = span_mats(2, &[matrix_unit(2, 1, 1)]);
        assert!(!is_completely_entangled(&d, tol(), 1).unwrap());
    }

    #[test]
    fn b_tensor_alpha_family_detected() {
        // D = span{e1, e2} (x) e1 has a projective line of product vectors.
        let d = span_mats(3, &[matrix_unit(3, 1, 1), matrix_unit(3, 1, 2)]);
        let en = enumerate(&d, tol(), 3).unwrap();
        assert_eq!(en.kind, EnumerationKind::InfiniteFamily);
        let (d1, is_sub) = product_part(&d, tol(), 3).unwrap();
        assert_eq!(d1.dim(), 2);
        assert!(is_sub);
        assert!(d.distance(&d1) < 1e-8);
    }

    #[test]
    fn separable_form_examples() {
        let b_alpha = span_mats(2, &[matrix_unit(2, 1, 1), matrix_unit(2, 1, 2)]);
        match is_completely_separable(&b_alpha, tol(), 5) {
            Some(SeparableForm::BTensorAlpha { b, alpha }) => {
                assert_eq!(b.dim(), 2);
                assert!((alpha[0].norm() - 1.0).abs() < 1e-12);
            }
            other => panic!("expected BTensorAlpha, got {other:?}"),
        }
        let beta_c2 = span_mats(2, &[matrix_unit(2, 1, 1), matrix_unit(2, 2, 1)]);
        match is_completely_separable(&beta_c2, tol(), 5) {
            Some(SeparableForm::BetaTensorC2 { beta }) => {
                assert!((beta[0].norm() - 1.0).abs() < 1e-12);
            }
            other => panic!("expected BetaTensorC2, got {other:?}"),
        }
        let entangled_span = span_mats(2, &[matrix_unit(2, 1, 1), matrix_unit(2, 2, 2)]);
        assert!(is_completely_separable(&entangled_span, tol(), 5).is_none());
    }

    #[test]
    fn product_part_examples() {
        // Non-face counterexample: both rays span D but the set of product
        // vectors is not closed under addition.
        let d = span_mats(2, &[
            matrix_unit(2, 1, 1),
            matrix_unit(2, 1, 2) + matrix_unit(2, 2, 1) + matrix_unit(2, 2, 2),
        ]);
        let (d1, is_sub) = product_part(&d, tol(), 1).unwrap();
        assert_eq!(d1.dim(), 2);
        assert!(!is_sub);

        let ces = span_mats(2, &[
            matrix_unit(2, 1, 2) + matrix_unit(2, 2, 1) + matrix_unit(2, 2, 2),
        ]);
        let (d1, is_sub) = product_part(&ces, tol(), 1).unwrap();
        assert_eq!(d1.dim(), 0);
        assert!(is_sub);
    }

    #[test]
    fn full_space_short_circuit() {
        let d = Subspace::full(2, 2);
        let en = enumerate(&d, tol(), 1).unwrap();
        assert_eq!(en.kind, EnumerationKind::InfiniteFamily);
        assert!(en.family_samples.len() >= 12);
    }

    #[test]
    fn zero_subspace_rejected() {
        let d = Subspace::zero(2, 2);
        assert!(matches!(enumerate(&d, tol(), 1), Err(Error::EmptySubspace(_))));
    }
}
