//! Exact computations on tropical curves: Jacobians, Abel–Jacobi images,
//! intermediate Jacobians and (pointed, unpointed) tropical Ceresa classes,
//! plus the finite group `B̄(δ_Γ)` carrying the Morita class.
//!
//! All arithmetic is exact over big rationals.

pub mod abel_jacobi;
pub mod ceresa;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod jacobian;
pub mod linalg;
pub mod morita;

pub use error::{Error, Result};
pub use graph::{MetricGraph, Point, PointedModel, SpanningTree};
pub use jacobian::{JacobianData, TensorElement};
pub use linalg::{FiniteAbelianGroup, QuotientStructure, Rat, TorsionOrder};
