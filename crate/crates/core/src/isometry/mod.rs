//! Finite-depth isometric maps from the standard presentation onto a target
//! presentation, glued from an atomic part and a mass-transport part.

mod build;
mod generator;
mod map;
mod verify;

pub use build::{build_t1, build_t2, glue};
pub use generator::Generator;
pub use map::{AtomImage, AtomImageJson, IsometryJson, PartialIsometry, PieceJson, Transport, TransportJson, TransportPiece};
pub use verify::{random_standard_vector, verify_isometry, GeneratorCheck, IsometryReport, SampleCheck};
