//! Vectors of `l^p_n (+) L^p[0,1]` and `l^p (+) L^p[0,1]`: norms, the subvector
//! order and support predicates, all computed exactly on rational data.

mod coeff;
mod step;
mod support;
mod vector;

pub use coeff::Coefficient;
pub use step::StepFunction;
pub use support::Support;
pub use vector::{ApproxVector, Dim, DimJson, HybridVector, StepJson, Vector, VectorJson};
