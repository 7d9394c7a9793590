//! Floating-point experiments with explicit Liouville dynamics and
//! earthquake isotopies.

mod earthquake;
mod morse_bott;
mod poly;
mod scan;

pub use earthquake::{
    earthquake_section, fault_samples, graph_plane, tectonic_jump_check, EarthquakeSpec, Fault, FaultSides, JumpSample, Section, Side,
    Theta, FAULT_TOL, RANK_RATIO,
};
pub use morse_bott::{
    distance_to_critical_set, liouville_scaling_ratio, lyapunov_check, rk4_step, skeleton_estimate, trajectory, Cutoff,
    FactorIndex, Grid, LyapunovReport, MorseBottModel, DIVERGENCE_BOUND,
};
pub use poly::{Polynomial, Term};
pub use scan::{transversality_scan, EtaField, ScanGrid, TangencyLocus};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("grid must exclude a positive band around the critical set")]
    GridTouchesCriticalSet,
    #[error("backward flow from seed {seed:?} diverged at time {time}")]
    Diverged { seed: Vec<f64>, time: f64 },
    #[error("invalid earthquake spec: {0}")]
    InvalidSpec(String),
    #[error("sample {q:?} is not on fault {fault}")]
    OffFault { fault: usize, q: Vec<f64> },
    #[error("sample {0:?} lies on a fault intersection")]
    FaultIntersection(Vec<f64>),
}
