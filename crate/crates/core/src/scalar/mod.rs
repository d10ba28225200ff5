//! Exact arithmetic in the rational function field Q(v), with v^2 = q.

mod acc;
mod ext;
mod parse;
pub mod poly;
#[allow(clippy::module_inception)]
mod scalar;

pub use acc::Acc;
pub use ext::ExtScalar;
pub use poly::Poly;
pub use scalar::{rat, Scalar};
