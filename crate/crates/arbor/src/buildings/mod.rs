//! Cotangent buildings: gluing bookkeeping and pointwise positivity.

mod graph;
mod probe;
mod sampler;

pub use graph::{convert_nucleus, vertical_glue, Attachment, Block, BuildingGraph, Conversion, Face, FaceKind};
pub use probe::{
    blend_distributions, distribution_form, find_positive_distribution, reduce_by_span, reduced_tuple,
    verify_distribution_positivity, verify_probe_positivity, BuildingProbe, PositivityReport, ProbeFailure,
};
pub use sampler::{positive_probe, transform_probe};

use crate::positivity::PositivityError;
use crate::symplin::SymplinError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BuildingError {
    #[error(transparent)]
    Linear(#[from] SymplinError),
    #[error(transparent)]
    Positivity(#[from] PositivityError),
    #[error("invalid probe: {0}")]
    InvalidProbe(String),
    #[error("probe has no candidate distribution")]
    MissingEta,
    #[error("no positive distribution for probe {probe}: {constraint} fails")]
    Infeasible { probe: usize, constraint: String },
    #[error("invalid building graph: {0}")]
    Graph(String),
}
