//! Almost norm-maximizing chains: certified child selection, the stagewise
//! chain partition, chain infima and the projection onto the nonatomic part.

mod limit;
mod partition;
mod projection;
mod select;

pub use limit::{chain_limit, extract_atoms, node_norm, AtomApprox, AtomJson, AtomReport};
pub use partition::{partition_chains, Chain, ChainPartition};
pub use projection::{Combination, Projection, Projector};
pub use select::{select_anm_child, verify_certificate, Certificate};
