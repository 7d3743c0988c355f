//! CNOT-count lower bounds for linear reversible circuits over GF(2).
//!
//! A matrix is lowered to three gate budgets: link gates that merge
//! components of its vertex graph, cut gates that split components of its
//! edge graph, and middle gates needed to reach a permutation-free support.
//! The [`oracle`] module computes exact sizes for `n <= 5` by breadth-first
//! search, which the bound is checked against.

pub mod bound;
pub mod classifier;
pub mod connectivity;
pub mod error;
pub mod format;
pub mod gf2;
pub mod linkability;
pub mod oracle;
pub mod perm;
pub mod permsynth;
pub mod rivers;

pub use bound::{lmc_bound, lmc_bound_with, BoundOptions, LmcReport, TransposeRule};
pub use classifier::{classify_gate, classify_synthesis, is_middle_fast, GateClass};
pub use error::{Error, Result};
pub use gf2::{BinMatrix, CnotGate, Synthesis, MAX_KEY_QUBITS, MAX_QUBITS};
pub use linkability::{decide_linkable, LinkabilityResult, NotLinkableReason};
pub use oracle::{confusion, ConfusionMatrix, Metrics, SizeTable};
pub use perm::Permutation;
pub use permsynth::{synth_cycle, synth_permutation, ConstructionId};
pub use rivers::MiddleRounding;
