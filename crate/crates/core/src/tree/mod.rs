//! Trees in `N^*`, materialized and oracle-backed disintegrations, and the
//! norm of rational vectors computed from node masses.

mod disintegration;
mod materialize;
mod norm;
mod oracle;
mod path;
mod standard;

pub use disintegration::{ConcreteDisintegration, NodeJson, TreeJson, ValidationReport};
pub use materialize::materialize;
pub use norm::{rational_vector_norm, rational_vector_norm_p};
pub use oracle::{ConcreteOracle, Membership, PresentationOracle};
pub use path::{downset, NodePath};
pub use standard::{dyadic_interval, StandardPresentation};
