//! Ridge models `R_{k,n} = R^k × ℝ^{n-k}` with `R = {qp = 0, q ≥ 0, p ≥ 0}`
//! in coordinates `(q_1..q_n, p_1..p_n)`.

use super::LocalModelError;
use crate::rational::Q;
use crate::symplin::{LagrangianPlane, Matrix, SymplecticSpace};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RidgeModel {
    order: usize,
    dim: usize,
}

/// Local shape of one `(q_j, p_j)` factor at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorBranch {
    /// On the positive `q` axis, or a zero-section factor.
    Horizontal,
    /// On the positive `p` axis.
    Vertical,
    /// At the corner of a ridge factor.
    Corner,
}

impl RidgeModel {
    pub fn new(order: usize, dim: usize) -> Result<Self, LocalModelError> {
        if order > dim {
            return Err(LocalModelError::Precondition(format!("ridge order {order} exceeds dimension {dim}")));
        }
        Ok(RidgeModel { order, dim })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> SymplecticSpace {
        SymplecticSpace::standard(self.dim)
    }

    /// Per-factor classification; errors if the point is off the model.
    pub fn classify(&self, point: &[Q]) -> Result<Vec<FactorBranch>, LocalModelError> {
        let n = self.dim;
        if point.len() != 2 * n {
            return Err(LocalModelError::OffModel(format!("expected {} coordinates, got {}", 2 * n, point.len())));
        }
        (0..n)
            .map(|j| {
                let (q, p) = (&point[j], &point[n + j]);
                if j >= self.order {
                    return if p.is_zero() {
                        Ok(FactorBranch::Horizontal)
                    } else {
                        Err(LocalModelError::OffModel(format!("factor {j} needs p = 0")))
                    };
                }
                match (q.is_zero(), p.is_zero()) {
                    (true, true) => Ok(FactorBranch::Corner),
                    (false, true) if q.is_positive() => Ok(FactorBranch::Horizontal),
                    (true, false) if p.is_positive() => Ok(FactorBranch::Vertical),
                    _ => Err(LocalModelError::OffModel(format!("factor {j} is off the corner q p = 0, q, p ≥ 0"))),
                }
            })
            .collect()
    }
}

/// Number of factors sitting at a corner; `0` on the smooth locus.
pub fn ridge_stratify(model: &RidgeModel, point: &[Q]) -> Result<usize, LocalModelError> {
    Ok(model.classify(point)?.iter().filter(|b| **b == FactorBranch::Corner).count())
}

/// Tangent planes of the smooth pieces through `point`: one choice of `∂q_j`
/// or `∂p_j` per corner factor, so `2^order` planes.
pub fn ridge_tangent_planes(model: &RidgeModel, point: &[Q]) -> Result<Vec<LagrangianPlane>, LocalModelError> {
    let branches = model.classify(point)?;
    let n = model.dim;
    let corners: Vec<usize> = (0..n).filter(|&j| branches[j] == FactorBranch::Corner).collect();
    let space = model.space();
    let id = Matrix::identity(2 * n);
    let mut planes = Vec::with_capacity(1 << corners.len());
    for mask in 0u64..(1u64 << corners.len()) {
        let cols: Vec<usize> = (0..n)
            .map(|j| {
                let vertical = match branches[j] {
                    FactorBranch::Horizontal => false,
                    FactorBranch::Vertical => true,
                    FactorBranch::Corner => {
                        let bit = corners.iter().position(|&c| c == j).expect("corner index");
                        mask >> bit & 1 == 1
                    }
                };
                if vertical { n + j } else { j }
            })
            .collect();
        planes.push(LagrangianPlane::new(&space, id.select_columns(&cols))?);
    }
    Ok(planes)
}
