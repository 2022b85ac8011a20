//! The two lower-bound presentations driven by c.e.-set schedules, their
//! ground truths, and the decoders that read `gamma` and Fin back off
//! projection oracles.

mod decode;
mod finite;
mod infinite;
mod schedule;

pub use decode::{
    decode_fin, decode_gamma, decode_membership, Complement, FinDecision, GroundTruthProjection, ProjectionKind,
    ProjectionOracle,
};
pub use finite::FiniteAtomicOracle;
pub use infinite::InfiniteAtomicOracle;
pub use schedule::{left_ce_from_schedule, CESetSchedule, LeftCEReal, QSequence, ScheduleJson};
