//! Simulation of Grover-based quantum counting and of quantum counting with
//! coined walks on complete bipartite graphs.
//!
//! Everything numeric is generic over `T: Real` (`f32` or `f64`); the `*F64`
//! aliases below fix the reference precision.

pub mod error;
pub mod fourier;
pub mod graph;
pub mod grover;
pub mod output;
pub mod qcircuit;
pub mod qstate;
pub mod rng;
pub mod scalar;
pub mod stats;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, SimpleGraph};
pub use grover::{CountEstimate, GroverAngles, GroverCounter, MarkedSet};
pub use qcircuit::{CircuitPlan, GateKind, GateSpec, PhaseEstimate, PhaseEstimator};
pub use qstate::{tensor, DenseUnitary, HilbertDims, MeasurementOutcome, StateVector, TensorProduct};
pub use rng::SimRng;
pub use scalar::{Real, Tolerances, C};
pub use stats::TrialStats;
pub use walk::{BipartiteCounter, BipartiteMarking, ReducedWalkSystem, WalkAngles, WalkSpace};

pub type StateVectorF64 = StateVector<f64>;
pub type StateVectorF32 = StateVector<f32>;
pub type DenseUnitaryF64 = DenseUnitary<f64>;
pub type DenseUnitaryF32 = DenseUnitary<f32>;
pub type WalkAnglesF64 = WalkAngles<f64>;
pub type ReducedWalkSystemF64 = ReducedWalkSystem<f64>;
