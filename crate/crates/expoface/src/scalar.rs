//! Scalar abstraction: the library is generic over the underlying real
//! floating-point type. All complex arithmetic is `Complex<R>` on top of it.

use nalgebra::{Complex, ComplexField, DMatrix, DVector, RealField};
use num_traits::{FromPrimitive, ToPrimitive};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Real scalar for tolerance-based numerics: f32 or f64.
pub trait RealScalar: RealField + FromPrimitive + ToPrimitive + Copy {}

impl<T: RealField + FromPrimitive + ToPrimitive + Copy> RealScalar for T {}

/// Lift an `f64` constant into the scalar type.
pub fn real<R: RealScalar>(x: f64) -> R {
    R::from_f64(x).expect("f64 constant representable")
}

/// Complex scalar over a real base type.
pub type Cx<R> = Complex<R>;
/// Dense complex matrix.
pub type CMatrix<R> = DMatrix<Complex<R>>;
/// Dense complex column vector.
pub type CVector<R> = DVector<Complex<R>>;

/// Shorthand complex constructor from `f64` parts.
pub fn cx<R: RealScalar>(re: f64, im: f64) -> Cx<R> {
    Complex::new(real(re), real(im))
}

/// Modulus of a complex scalar, available for any `RealScalar` base.
pub fn cmod<R: RealScalar>(z: Cx<R>) -> R {
    z.modulus()
}

/// Deterministic stream of standard complex Gaussians (Box-Muller over a
/// seeded ChaCha stream). Seeds are always explicit inputs, never ambient.
pub struct ComplexGaussian {
    rng: ChaCha8Rng,
}

impl ComplexGaussian {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn unit_f64(&mut self) -> f64 {
        // 53 random bits into (0, 1]
        let bits = self.rng.next_u64() >> 11;
        (bits as f64 + 1.0) / (1u64 << 53) as f64
    }

    pub fn sample<R: RealScalar>(&mut self) -> Cx<R> {
        let u1 = self.unit_f64();
        let u2 = self.unit_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        cx(r * theta.cos(), r * theta.sin())
    }

    pub fn vector<R: RealScalar>(&mut self, len: usize) -> CVector<R> {
        CVector::from_fn(len, |_, _| self.sample())
    }

    pub fn matrix<R: RealScalar>(&mut self, rows: usize, cols: usize) -> CMatrix<R> {
        CMatrix::from_fn(rows, cols, |_, _| self.sample())
    }
}

/// Index of the first component whose modulus is significant relative to the
/// largest one; `None` for the zero vector.
pub fn first_significant<R: RealScalar>(v: &CVector<R>) -> Option<usize> {
    let max = v.iter().map(|z| z.modulus()).fold(R::zero(), |a, b| a.max(b));
    if max == R::zero() {
        return None;
    }
    let cutoff = max * real(1e-10);
    v.iter().position(|z| z.modulus() > cutoff)
}

/// Rescale `v` to unit norm with its first significant component real
/// positive. Returns `None` for the zero vector.
pub fn canonical_phase<R: RealScalar>(v: &CVector<R>) -> Option<CVector<R>> {
    let idx = first_significant(v)?;
    let pivot = v[idx];
    let phase = pivot / Complex::new(pivot.modulus(), R::zero());
    let w = v.map(|z| z / phase);
    let norm = w.norm();
    Some(w / Complex::new(norm, R::zero()))
}
