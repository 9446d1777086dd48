//! Simulation backends used to verify synthesized circuits.

pub mod branch;
pub mod dense;
pub mod filter;
pub mod stabilizer;
pub mod state;
pub mod verify;

pub use branch::{run_all_branches, run_branch, sample_run, Branch, OutcomeVector};
pub use filter::{filter_identity_check, random_channel, DensityMatrix, FilterReport, KrausChannel};
pub use stabilizer::{same_group, stabilizer_run, StabilizerGroup, StabilizerState};
pub use state::{apply_gates, equal_up_to_global_phase, StateVector};
pub use verify::{Target, VerificationReport, VerifyMode};
