//! Facial structure of the decomposable positive-map cone over subspaces of
//! 2 x n complex matrices.

pub mod error;
pub mod linalg;
pub mod products;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::Tolerance;

/// Concrete f64 instantiations used by the CLI and most callers.
pub type Real = f64;
pub type Cx64 = scalar::Cx<f64>;
pub type CMat = scalar::CMatrix<f64>;
pub type CVec = scalar::CVector<f64>;
pub type Tol = Tolerance<f64>;
