pub mod arith;
pub mod error;
pub mod tree;
pub mod vectors;
pub mod chains;
pub mod adversarial;
pub mod isometry;
pub mod cli;
