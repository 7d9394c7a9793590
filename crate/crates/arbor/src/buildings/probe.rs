//! Pointwise probes of a cotangent building and their positivity checks.

use super::BuildingError;
use crate::positivity::{cyclic_order_violations, in_positive_zone, Direction, PlaneTuple};
use crate::rational::{one, zero, Q};
use crate::symplin::{
    graph_form, plane_from_form, planes_transverse, symplectic_complement, LagrangianPlane, Matrix,
    QuadraticForm, Reduction, Subspace, SymplecticSpace,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Linear data at a point `a` of the interior of `M_j` of type
/// `I = (i_1 < … < i_m)`.
#[derive(Debug, Clone)]
pub struct BuildingProbe {
    pub ambient: SymplecticSpace,
    pub block_index: usize,
    pub type_index: Vec<usize>,
    /// `T_a M_j`.
    pub tangent: LagrangianPlane,
    /// `ν_i(a)` for `i ∈ I ∪ {j}`.
    pub verticals: BTreeMap<usize, LagrangianPlane>,
    /// `Z_i(a)` for `i ∈ I`.
    pub liouville: BTreeMap<usize, Vec<Q>>,
    pub eta: Option<LagrangianPlane>,
}

impl BuildingProbe {
    pub fn vertical(&self, i: usize) -> &LagrangianPlane {
        &self.verticals[&i]
    }

    /// `ν_j(a)`.
    pub fn own_vertical(&self) -> &LagrangianPlane {
        self.vertical(self.block_index)
    }

    /// `Z_i` for the listed indices, in that order.
    pub fn liouville_vectors(&self, indices: &[usize]) -> Vec<Vec<Q>> {
        indices.iter().map(|i| self.liouville[i].clone()).collect()
    }

    /// Checks the structural invariants: index order, `Z_i ∈ ν_i ∩ T`,
    /// independence of the `Z_i`, and that every plane lives in the ambient space.
    pub fn validate(&self) -> Result<(), BuildingError> {
        let bad = |m: String| Err(BuildingError::InvalidProbe(m));
        let j = self.block_index;
        if self.type_index.windows(2).any(|w| w[0] >= w[1]) {
            return bad("type index must be strictly increasing".into());
        }
        if self.type_index.last().is_some_and(|&last| last >= j) {
            return bad(format!("type index must lie below the block index {j}"));
        }
        let planes = std::iter::once(&self.tangent).chain(self.verticals.values()).chain(self.eta.as_ref());
        for p in planes {
            if *p.ambient() != self.ambient {
                return bad("a plane lives in a different ambient space".into());
            }
        }
        for i in self.type_index.iter().chain(std::iter::once(&j)) {
            if !self.verticals.contains_key(i) {
                return bad(format!("missing vertical plane ν_{i}"));
            }
        }
        if self.liouville.keys().ne(self.type_index.iter()) {
            return bad("Liouville vectors must be given exactly for the type indices".into());
        }
        for &i in &self.type_index {
            let z = &self.liouville[&i];
            if z.len() != self.ambient.dim() {
                return bad(format!("Z_{i} has length {}, expected {}", z.len(), self.ambient.dim()));
            }
            if !self.vertical(i).as_subspace().contains_vector(z) {
                return bad(format!("Z_{i} does not lie in ν_{i}"));
            }
            if !self.tangent.as_subspace().contains_vector(z) {
                return bad(format!("Z_{i} is not tangent to the zero section"));
            }
        }
        let zs = Matrix::from_columns(self.ambient.dim(), &self.liouville_vectors(&self.type_index));
        if zs.rank() != self.type_index.len() {
            return bad("Liouville vectors are linearly dependent".into());
        }
        Ok(())
    }
}

/// `[plane]^I`: reduction by `W = span(Z)^⊥`. The empty list is the identity.
pub fn reduce_by_span(plane: &LagrangianPlane, vectors: &[Vec<Q>]) -> Result<LagrangianPlane, BuildingError> {
    if vectors.is_empty() {
        return Ok(plane.clone());
    }
    let reduction = span_reduction(plane.ambient(), vectors)?;
    Ok(reduction.reduce(plane)?)
}

fn span_reduction(space: &SymplecticSpace, vectors: &[Vec<Q>]) -> Result<Reduction, BuildingError> {
    let span = Subspace::span_of(space, vectors)?;
    if !span.is_isotropic() {
        return Err(BuildingError::InvalidProbe("span of the Liouville vectors is not isotropic".into()));
    }
    Ok(Reduction::new(&symplectic_complement(&span))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeFailure {
    /// Positions `i < j` in the reduced tuple are not transverse.
    NotTransverse { s: usize, pair: [usize; 2] },
    /// A cyclically ordered triple of tuple positions violates `≺`.
    Triple { s: usize, triple: [usize; 3] },
}

/// Tuple positions are `0 = [T]`, `1 = [ν_j]`, then `[ν_{i_m}], …, [ν_{i_s}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub verdict: bool,
    pub failures: Vec<ProbeFailure>,
}

impl PositivityReport {
    fn from_failures(failures: Vec<ProbeFailure>) -> Self {
        PositivityReport { verdict: failures.is_empty(), failures }
    }
}

/// The reduced tuple for `I(s)`, with `s` 1-based.
pub fn reduced_tuple(p: &BuildingProbe, s: usize) -> Result<Vec<LagrangianPlane>, BuildingError> {
    let m = p.type_index.len();
    let sub = &p.type_index[s - 1..m];
    let reduction = span_reduction(&p.ambient, &p.liouville_vectors(sub))?;
    let mut planes = vec![reduction.reduce(&p.tangent)?, reduction.reduce(p.own_vertical())?];
    for i in sub.iter().rev() {
        planes.push(reduction.reduce(p.vertical(*i))?);
    }
    Ok(planes)
}

/// Checks `≺`-cyclic order of every reduced tuple, `s = 1..m`.
pub fn verify_probe_positivity(p: &BuildingProbe) -> Result<PositivityReport, BuildingError> {
    p.validate()?;
    let m = p.type_index.len();
    if m == 0 {
        return Err(BuildingError::InvalidProbe("probe positivity needs a nonempty type".into()));
    }
    let mut failures = Vec::new();
    for s in 1..=m {
        let tuple = PlaneTuple::new(reduced_tuple(p, s)?)?;
        if let Some((a, b)) = tuple.first_non_transverse_pair() {
            failures.push(ProbeFailure::NotTransverse { s, pair: [a, b] });
            continue;
        }
        for triple in cyclic_order_violations(&tuple, Direction::Prec)? {
            failures.push(ProbeFailure::Triple { s, triple });
        }
    }
    Ok(PositivityReport::from_failures(failures))
}

/// `η ⋔ T` and `[ν_j]^I ∈ C([T]^I, [η]^I)`.
pub fn verify_distribution_positivity(p: &BuildingProbe) -> Result<bool, BuildingError> {
    p.validate()?;
    let eta = p.eta.as_ref().ok_or(BuildingError::MissingEta)?;
    distribution_is_positive(p, eta)
}

fn distribution_is_positive(p: &BuildingProbe, eta: &LagrangianPlane) -> Result<bool, BuildingError> {
    if !planes_transverse(eta, &p.tangent) {
        return Ok(false);
    }
    let zs = p.liouville_vectors(&p.type_index);
    let nu = reduce_by_span(p.own_vertical(), &zs)?;
    let t = reduce_by_span(&p.tangent, &zs)?;
    let e = reduce_by_span(eta, &zs)?;
    if !planes_transverse(&t, &e) {
        return Ok(false);
    }
    Ok(in_positive_zone(&nu, &t, &e)?)
}

/// The form of `η` over the polarization `(ν_j, T)`, on `ν_j`'s basis.
pub fn distribution_form(p: &BuildingProbe, eta: &LagrangianPlane) -> Result<QuadraticForm, BuildingError> {
    Ok(graph_form(eta, p.own_vertical(), &p.tangent)?)
}

/// The plane whose form is `(1-t)·Q₀ + t·Q₁` over `(ν_j, T)`.
pub fn blend_distributions(
    p: &BuildingProbe,
    eta0: &LagrangianPlane,
    eta1: &LagrangianPlane,
    t: &Q,
) -> Result<LagrangianPlane, BuildingError> {
    let q0 = distribution_form(p, eta0)?;
    let q1 = distribution_form(p, eta1)?;
    let q = q0.scale(&(one() - t)).add(&q1.scale(t));
    Ok(plane_from_form(p.own_vertical(), &p.tangent, &q)?)
}

/// Positive distributions for each probe. Probes sharing `(T, ν_j)` get one
/// common plane. Its form over `(ν_j, T)` is the identity on
/// `D = ν_j ∩ span(Z)^⊥` (intersected over the group) and `scale` times the
/// identity on a complement; any positive definite form would do.
pub fn find_positive_distribution(
    probes: &[BuildingProbe],
    scale: &Q,
) -> Result<Vec<LagrangianPlane>, BuildingError> {
    use num::Signed;
    if !scale.is_positive() {
        return Err(BuildingError::InvalidProbe("distribution scale must be positive".into()));
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (k, p) in probes.iter().enumerate() {
        p.validate()?;
        let found = groups.iter_mut().find(|(rep, _)| {
            let r = &probes[*rep];
            r.tangent == p.tangent && r.own_vertical() == p.own_vertical()
        });
        match found {
            Some((_, members)) => members.push(k),
            None => groups.push((k, vec![k])),
        }
    }
    let mut out: Vec<Option<LagrangianPlane>> = vec![None; probes.len()];
    for (rep, members) in groups {
        let p = &probes[rep];
        let nu = p.own_vertical();
        if !planes_transverse(nu, &p.tangent) {
            return Err(BuildingError::Infeasible { probe: rep, constraint: "ν_j transverse to the tangent plane".into() });
        }
        let mut d = nu.as_subspace().clone();
        for &k in &members {
            let zs = probes[k].liouville_vectors(&probes[k].type_index);
            if !zs.is_empty() {
                let perp = symplectic_complement(&Subspace::span_of(&p.ambient, &zs)?);
                d = d.intersection(&perp);
            }
        }
        let q = adapted_form(nu, &d, scale);
        let eta = plane_from_form(nu, &p.tangent, &q)?;
        for &k in &members {
            if !distribution_is_positive(&probes[k], &eta)? {
                return Err(BuildingError::Infeasible { probe: k, constraint: "reduced zone membership of ν_j".into() });
            }
            out[k] = Some(eta.clone());
        }
    }
    Ok(out.into_iter().map(|e| e.expect("every probe is grouped")).collect())
}

/// In `ν`'s basis coordinates: identity on `d`, `scale`·identity on the
/// greedy complement of `d` inside `ν`.
fn adapted_form(nu: &LagrangianPlane, d: &Subspace, scale: &Q) -> QuadraticForm {
    let n = nu.dim();
    let nb = nu.basis();
    // Coordinates of d's basis in ν's basis.
    let d_coords = nb.solve(d.basis()).expect("d ⊂ ν");
    let mut cols = d_coords.columns();
    let k = cols.len();
    for i in 0..n {
        let e: Vec<Q> = (0..n).map(|r| if r == i { one() } else { zero() }).collect();
        let mut trial = cols.clone();
        trial.push(e.clone());
        if Matrix::from_columns(n, &trial).rank() == trial.len() {
            cols = trial;
        }
    }
    let basis = Matrix::from_columns(n, &cols);
    let diag: Vec<Q> = (0..n).map(|i| if i < k { one() } else { scale.clone() }).collect();
    // Form B^{-T} D B^{-1} has diagonal D in the adapted basis.
    let b_inv = basis.inverse().expect("adapted basis");
    QuadraticForm::new(b_inv.transpose().mul(&Matrix::diagonal(&diag)).mul(&b_inv)).expect("symmetric")
}
