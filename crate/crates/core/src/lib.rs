//! Measurement-assisted Clifford synthesis.
//!
//! A Clifford `C`, given by its stabilizer tableau, is compiled into a staged
//! circuit: `|+>` ancilla preparation, controlled-Paulis whose payloads are
//! the rows of the tableau of `C†`, a layer of single-qubit controlled-Paulis,
//! X-basis ancilla measurements and classically controlled Pauli corrections.
//! The [`sim`] module checks such circuits with dense branch enumeration,
//! Monte Carlo sampling and a stabilizer simulator.

pub mod circuit;
pub mod error;
pub mod parallel;
pub mod pauli;
pub mod sim;
pub mod tableau;

pub use circuit::{synthesize, synthesize_from_inverse, Circuit, Gate, Stage};
pub use error::{Error, Result};
pub use parallel::Execution;
pub use pauli::{Factor, PauliString, PhasedPauli, SignedPauli};
pub use tableau::{random_clifford, CliffordGate, GateList, Tableau};
