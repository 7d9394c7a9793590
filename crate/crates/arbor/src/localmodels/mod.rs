//! Explicit `A`-type and ridge local models: flags and the sign
//! classification of compatible forms, stabilized normalization, ridge
//! stratification and rendered fronts.

mod flag;
mod fronts;
mod ridge;
mod stabilize;

pub use flag::{convex_interpolation_check, omega_component, same_orientation_structure, FlagCondition, FlagData};
pub use fronts::{render_front, Arrow, FrontModel, FrontOptions, FrontScene, Label, Piece, PieceKind};
pub use ridge::{ridge_stratify, ridge_tangent_planes, FactorBranch, RidgeModel};
pub use stabilize::{difference_block, normalize_stabilized_pair, normalize_stabilized_pair_with, pulled_back_agrees};

use crate::symplin::SymplinError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LocalModelError {
    #[error(transparent)]
    Linear(#[from] SymplinError),
    #[error("expected a square basis of even size, got {0}×{1}")]
    FlagShape(usize, usize),
    #[error("V_{index} violates the flag condition: {condition}")]
    FlagViolation { index: usize, condition: FlagCondition },
    #[error("forms lie in different components: {left:?} vs {right:?}")]
    ComponentMismatch { left: Vec<i8>, right: Vec<i8> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("point is off the model: {0}")]
    OffModel(String),
    #[error("unknown front model {0:?}")]
    UnknownModel(String),
    #[error("orientation {orientation} out of range; the model has {classes} classes")]
    BadOrientation { orientation: u32, classes: u32 },
}
