//! Exact symbolic kernel for quantum-group covariant tensors over Q(q^(1/2)):
//! braid matrices, (anti)symmetriser towers, q-epsilon tensors and the
//! differential calculus on quantum Euclidean space.

pub mod braid;
pub mod checks;
pub mod diffcalc;
pub mod error;
pub mod exterior;
pub mod model;
pub mod oracle;
pub mod projectors;
pub mod qcoeff;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use model::{Kind, Model, Sign};
pub use scalar::{ExtScalar, Scalar};
