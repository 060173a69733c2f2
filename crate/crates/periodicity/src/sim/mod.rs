//! Gate-level construction of driving cycles and their (noisy) evolution.

mod channels;
mod cycle;
mod evolve;
mod gates;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::series::SeriesError;

pub use channels::{AppliedChannel, ChannelLabel, KrausChannel};
pub use cycle::{cycle_unitary, CycleSpec, EnvMode};
pub use evolve::{evolve, gibbs_qubit, recurrence_exact, recurrence_sampled, simulate_series};
pub use gates::{embed, gate_unitary, GateKind, GateSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid gate: {0}")]
    Gate(String),
    #[error("invalid channel: {0}")]
    Channel(String),
    #[error("invalid cycle spec: {0}")]
    Spec(String),
    #[error("register of {0} qubits is too large")]
    Register(usize),
    #[error("state dimension {got} does not match register dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("shots must be at least 1")]
    Shots,
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
