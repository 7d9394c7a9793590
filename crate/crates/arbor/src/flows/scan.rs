//! Transversality of `L_t` to a Lagrangian field `η` over a base grid.

use super::earthquake::{graph_plane, EarthquakeSpec, Side};
use super::FlowError;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaField {
    /// A fixed plane, as `2n` rows of `n` basis coefficients.
    Constant(Vec<Vec<f64>>),
    /// `η(q) = span(∂q_i + κ q_i ∂p_i)`, horizontal at the origin.
    Shear { kappa: f64 },
}

impl EtaField {
    pub fn vertical(n: usize) -> Self {
        EtaField::Constant((0..2 * n).map(|r| (0..n).map(|c| if r == n + c { 1.0 } else { 0.0 }).collect()).collect())
    }

    pub fn horizontal(n: usize) -> Self {
        EtaField::Constant((0..2 * n).map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect()).collect())
    }

    pub fn basis(&self, q: &[f64]) -> DMatrix<f64> {
        let n = q.len();
        match self {
            EtaField::Constant(rows) => DMatrix::from_fn(2 * n, n, |r, c| rows[r][c]),
            EtaField::Shear { kappa } => DMatrix::from_fn(2 * n, n, |r, c| {
                if r == c {
                    1.0
                } else if r == n + c {
                    kappa * q[c]
                } else {
                    0.0
                }
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanGrid {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Points per axis.
    pub points: usize,
    /// Threshold on the normalized smallest singular value.
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangencyLocus {
    /// Grid points where `[T | η]` is numerically singular.
    pub vertices: Vec<Vec<f64>>,
    /// Grid edges with no fault crossing across which `det[T | η]` changes sign.
    pub segments: Vec<[Vec<f64>; 2]>,
}

impl TangencyLocus {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.segments.is_empty()
    }
}

fn unit_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = m.clone();
    for mut c in m.column_iter_mut() {
        let n = c.norm();
        if n > 0.0 {
            c /= n;
        }
    }
    m
}

/// `(σ_min, det)` of `[T | η]` with unit columns. On a fault the minus side
/// of every fault through the point is used.
fn measure(e: &EarthquakeSpec, eta: &EtaField, q: &[f64], t: f64) -> (f64, f64) {
    let sides: Vec<Option<Side>> = e
        .phi(q)
        .iter()
        .map(|v| (v.abs() <= super::earthquake::FAULT_TOL).then_some(Side::Minus))
        .collect();
    let h: Vec<Vec<f64>> = e.hessian_with(q, &sides).into_iter().map(|r| r.into_iter().map(|v| t * v).collect()).collect();
    let n = q.len();
    let mut full = DMatrix::zeros(2 * n, 2 * n);
    full.view_mut((0, 0), (2 * n, n)).copy_from(&unit_columns(&graph_plane(&h)));
    full.view_mut((0, n), (2 * n, n)).copy_from(&unit_columns(&eta.basis(q)));
    let det = full.determinant();
    let smin = full.svd(false, false).singular_values.min();
    (smin, det)
}

pub fn transversality_scan(e: &EarthquakeSpec, eta: &EtaField, t: f64, grid: &ScanGrid) -> Result<TangencyLocus, FlowError> {
    e.validate()?;
    let n = e.dim;
    if grid.lo.len() != n || grid.hi.len() != n || grid.points < 2 {
        return Err(FlowError::InvalidSpec("scan grid does not match the base dimension".into()));
    }
    let k = grid.points;
    let coord = |i: usize, a: usize| grid.lo[a] + (grid.hi[a] - grid.lo[a]) * i as f64 / (k - 1) as f64;
    let total = k.pow(n as u32);
    let index = |mut idx: usize| -> Vec<usize> {
        (0..n).map(|_| { let i = idx % k; idx /= k; i }).collect()
    };
    let point = |ix: &[usize]| -> Vec<f64> { ix.iter().enumerate().map(|(a, &i)| coord(i, a)).collect() };
    let values: Vec<(f64, f64)> = (0..total).map(|idx| measure(e, eta, &point(&index(idx)), t)).collect();
    let mut locus = TangencyLocus { vertices: Vec::new(), segments: Vec::new() };
    for idx in 0..total {
        let ix = index(idx);
        let x = point(&ix);
        if values[idx].0 < grid.tol {
            locus.vertices.push(x.clone());
        }
        let mut stride = 1;
        for a in 0..n {
            if ix[a] + 1 < k {
                let jdx = idx + stride;
                let y = point(&index(jdx));
                let (d0, d1) = (values[idx].1, values[jdx].1);
                let crosses_fault = e.phi(&x).iter().zip(e.phi(&y)).any(|(u, v)| u.signum() != v.signum() || *u == 0.0 || v == 0.0);
                if d0 * d1 < 0.0 && !crosses_fault {
                    locus.segments.push([x.clone(), y]);
                }
            }
            stride *= k;
        }
    }
    Ok(locus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::{Fault, Polynomial, Theta};

    fn two_ridges() -> EarthquakeSpec {
        let fault = |c: f64| Fault { phi: Polynomial::affine(c, &[1.0]), theta: Theta::Constant(1.0), injected_jump: None };
        EarthquakeSpec { schema_version: 1, dim: 1, faults: vec![fault(0.5), fault(-0.5)] }
    }

    #[test]
    fn ridges_remove_tangency() {
        let e = two_ridges();
        let eta = EtaField::Shear { kappa: 1.0 };
        let grid = ScanGrid { lo: vec![-1.0], hi: vec![1.0], points: 201, tol: 1e-3 };
        assert!(transversality_scan(&e, &eta, 1.0, &grid).unwrap().is_empty());
        assert!(!transversality_scan(&e, &eta, 0.0, &grid).unwrap().is_empty());
    }
}
