//! The ternary positivity relation `L ≻_ν τ` and its consequences.
//!
//! `compare(L, τ, ν)` is `succ` when the graph form `L^{(τ,ν)}` is positive
//! definite, `prec` when negative definite and `neither` otherwise.
//! Positive zones are `C(τ, ν) = {L ⋔ ν : L ≻_ν τ}`.

use crate::rational::Q;
use crate::symplin::{
    self, graph_form, lagrangian_complement, minors_negative, minors_positive, plane_from_form, planes_transverse, LagrangianPlane,
    Matrix, QuadraticForm, Reduction, Subspace, SymplecticSpace, SymplinError,
};
use num::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PositivityError {
    #[error(transparent)]
    Linear(#[from] SymplinError),
    #[error("tuple needs at least 3 planes, got {0}")]
    TupleTooShort(usize),
    #[error("planes {0} and {1} of the tuple are not transverse")]
    TupleNotTransverse(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("reduced polarization is degenerate: [tau]^W and [nu]^W are not transverse")]
    DegenerateReducedPolarization,
    #[error("covector is zero")]
    ZeroCovector,
    #[error("common negative plane failed post-verification against plane {0}")]
    PostVerification(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Succ,
    Prec,
    Neither,
}

impl Relation {
    pub fn flip(self) -> Relation {
        match self {
            Relation::Succ => Relation::Prec,
            Relation::Prec => Relation::Succ,
            Relation::Neither => Relation::Neither,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Succ,
    Prec,
}

impl Direction {
    fn relation(self) -> Relation {
        match self {
            Direction::Succ => Relation::Succ,
            Direction::Prec => Relation::Prec,
        }
    }
}

/// `relation = succ` iff the witness is positive definite, `prec` iff negative definite.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityVerdict {
    pub relation: Relation,
    pub witness: Option<QuadraticForm>,
}

/// Decide `L ≻_ν τ`, `L ≺_ν τ`, or neither.
pub fn compare(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
) -> Result<PositivityVerdict, PositivityError> {
    let q = graph_form(l, tau, nu)?;
    let relation = classify(&q);
    Ok(PositivityVerdict { relation, witness: Some(q) })
}

/// Shorthand for the relation only.
pub fn relation(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
) -> Result<Relation, PositivityError> {
    Ok(compare(l, tau, nu)?.relation)
}

/// Definite forms of size zero count as both; `succ` wins.
pub fn classify(q: &QuadraticForm) -> Relation {
    let minors = q.leading_minors();
    if minors_positive(&minors) {
        Relation::Succ
    } else if minors_negative(&minors) {
        Relation::Prec
    } else {
        Relation::Neither
    }
}

/// An ordered list of at least three Lagrangian planes in one space.
#[derive(Debug, Clone)]
pub struct PlaneTuple {
    ambient: SymplecticSpace,
    planes: Vec<LagrangianPlane>,
}

impl PlaneTuple {
    pub fn new(planes: Vec<LagrangianPlane>) -> Result<Self, PositivityError> {
        if planes.len() < 3 {
            return Err(PositivityError::TupleTooShort(planes.len()));
        }
        let ambient = planes[0].ambient().clone();
        if planes.iter().any(|p| *p.ambient() != ambient) {
            return Err(SymplinError::AmbientMismatch.into());
        }
        Ok(PlaneTuple { ambient, planes })
    }

    pub fn ambient(&self) -> &SymplecticSpace {
        &self.ambient
    }

    pub fn planes(&self) -> &[LagrangianPlane] {
        &self.planes
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    /// First non-transverse pair, if any.
    pub fn first_non_transverse_pair(&self) -> Option<(usize, usize)> {
        let m = self.planes.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| !planes_transverse(&self.planes[i], &self.planes[j]))
    }
}

/// Every cyclically ordered index triple `(i1, i2, i3)` of `ℤ/m`.
pub fn cyclic_triples(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                out.push([a, b, c]);
                out.push([b, c, a]);
                out.push([c, a, b]);
            }
        }
    }
    out
}

/// Cyclically ordered triples `(i1, i2, i3)` violating `L_{i2} ≻_{L_{i1}} L_{i3}`
/// (resp. `≺`).
pub fn cyclic_order_violations(
    t: &PlaneTuple,
    direction: Direction,
) -> Result<Vec<[usize; 3]>, PositivityError> {
    if let Some((i, j)) = t.first_non_transverse_pair() {
        return Err(PositivityError::TupleNotTransverse(i, j));
    }
    // In a zero-dimensional space every empty form is definite of both signs.
    if t.ambient.dim_half() == 0 {
        return Ok(Vec::new());
    }
    let want = direction.relation();
    let p = &t.planes;
    let mut bad = Vec::new();
    for [i1, i2, i3] in cyclic_triples(p.len()) {
        if relation(&p[i2], &p[i3], &p[i1])? != want {
            bad.push([i1, i2, i3]);
        }
    }
    Ok(bad)
}

pub fn cyclically_ordered(t: &PlaneTuple, direction: Direction) -> Result<bool, PositivityError> {
    Ok(cyclic_order_violations(t, direction)?.is_empty())
}

/// `L ∈ C(τ, ν)`. A plane not transverse to `ν` is simply outside the zone.
pub fn in_positive_zone(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
) -> Result<bool, PositivityError> {
    if !planes_transverse(tau, nu) {
        return Err(SymplinError::NotTransverse("tau and nu").into());
    }
    if !planes_transverse(l, nu) {
        return Ok(false);
    }
    Ok(relation(l, tau, nu)? == Relation::Succ)
}

/// A plane `L₋` with every `T` in `planes` inside `C(L₋, L)`.
///
/// Each `T` is read as a form `Q_T` on an auxiliary `H ⋔ L`; the answer is
/// the plane of `Q₋ = (c − 1)·I` where `c` is the least Gershgorin bound
/// over all `Q_T`. Each `Q_T − Q₋` is certified positive definite by LDLᵀ,
/// and the returned plane is re-checked with [`compare`].
pub fn find_common_negative(
    planes: &[LagrangianPlane],
    l: &LagrangianPlane,
) -> Result<LagrangianPlane, PositivityError> {
    if planes.is_empty() {
        return Err(PositivityError::Precondition("plane list is empty"));
    }
    for t in planes {
        if !planes_transverse(t, l) {
            return Err(SymplinError::NotTransverse("a listed plane and L").into());
        }
    }
    let h = lagrangian_complement(l);
    let forms: Vec<QuadraticForm> =
        planes.iter().map(|t| graph_form(t, &h, l)).collect::<Result<_, _>>()?;
    let bound = forms
        .iter()
        .map(|q| q.gershgorin_lower_bound())
        .min()
        .expect("non-empty");
    let n = l.dim();
    let q_minus = QuadraticForm::identity(n).scale(&(bound - Q::one()));
    for (i, q) in forms.iter().enumerate() {
        if q.sub(&q_minus).inertia().positive != n {
            return Err(PositivityError::PostVerification(i));
        }
    }
    let l_minus = plane_from_form(&h, l, &q_minus)?;
    for (i, t) in planes.iter().enumerate() {
        if relation(t, &l_minus, l)? != Relation::Succ {
            return Err(PositivityError::PostVerification(i));
        }
    }
    Ok(l_minus)
}

/// Reduced planes `([L]^W, [τ]^W, [ν]^W)`.
pub fn reduce_triple(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
    w: &Subspace,
) -> Result<[LagrangianPlane; 3], PositivityError> {
    let r = Reduction::new(w)?;
    Ok([r.reduce(l)?, r.reduce(tau)?, r.reduce(nu)?])
}

/// Whether `[L]^W` lies in the closed zone `C̄([τ]^W, [ν]^W)`, read as: the
/// reduced plane is transverse to `[ν]^W` and its graph form is positive
/// semidefinite.
pub fn reduction_preserves_zone_check(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
    w: &Subspace,
) -> Result<bool, PositivityError> {
    if !in_positive_zone(l, tau, nu)? {
        return Err(PositivityError::Precondition("L is not in C(tau, nu)"));
    }
    if !symplin::is_coisotropic(w) {
        return Err(SymplinError::NotCoisotropic.into());
    }
    let [rl, rt, rn] = reduce_triple(l, tau, nu, w)?;
    if !planes_transverse(&rt, &rn) {
        return Err(PositivityError::DegenerateReducedPolarization);
    }
    if !planes_transverse(&rl, &rn) {
        return Ok(false);
    }
    Ok(graph_form(&rl, &rt, &rn)?.is_positive_semidefinite())
}

/// The coisotropic `W = ν ⊕ span(T·v)` for a coordinate vector `v` on `τ`.
pub fn line_coisotropic(
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
    v: &[Q],
) -> Result<Subspace, PositivityError> {
    let dir = tau.basis().mul_vec(v);
    if dir.iter().all(|x| x.is_zero()) {
        return Err(PositivityError::Precondition("line direction is zero"));
    }
    let gens = nu.basis().hstack(&Matrix::column_vector(&dir));
    Ok(Subspace::span(tau.ambient(), &gens)?)
}

/// The relation `[L]^W ≻_{[ν]^W} [τ]^W` in the 2-dimensional reduction by
/// `W = ν ⊕ span(v)`, computed by actual symplectic reduction.
/// Non-transversality of `[L]^W` and `[ν]^W` yields `neither`.
pub fn line_reduction_relation(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
    v: &[Q],
) -> Result<Relation, PositivityError> {
    let w = line_coisotropic(tau, nu, v)?;
    let [rl, rt, rn] = reduce_triple(l, tau, nu, &w)?;
    if !planes_transverse(&rt, &rn) {
        return Err(PositivityError::DegenerateReducedPolarization);
    }
    if !planes_transverse(&rl, &rn) {
        return Ok(Relation::Neither);
    }
    relation(&rl, &rt, &rn)
}

/// Lines in `τ` that decide definiteness of `L^{(τ,ν)}`: a congruence
/// basis of the form (from LDLᵀ) followed by the coordinate axes.
pub fn line_family(q: &QuadraticForm) -> Vec<Vec<Q>> {
    let n = q.dim();
    let d = q.diagonalize();
    let mut out = d.basis.columns();
    for i in 0..n {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        out.push(e);
    }
    out
}

/// Whether the conormal of `ker(h) ⊂ ℝⁿ` is transverse to `L_Q = {p = dQ(q)}`
/// inside `T*ℝⁿ` with its standard form.
pub fn conormal_transversality(q: &QuadraticForm, h: &[Q]) -> Result<bool, PositivityError> {
    let n = q.dim();
    if h.len() != n {
        return Err(SymplinError::FormSize { expected: n, got: h.len() }.into());
    }
    if h.iter().all(|x| x.is_zero()) {
        return Err(PositivityError::ZeroCovector);
    }
    let space = SymplecticSpace::standard(n);
    let lq = LagrangianPlane::graph(&space, q.matrix())?;
    Ok(planes_transverse(&lq, &conormal_plane(&space, h)?))
}

/// `N*H = H × ann(H)` for `H = ker(h)`.
pub fn conormal_plane(space: &SymplecticSpace, h: &[Q]) -> Result<LagrangianPlane, PositivityError> {
    let n = space.dim_half();
    let row = Matrix::from_rows(vec![h.to_vec()]);
    let hyper = row.nullspace();
    let top = hyper.hstack(&Matrix::zeros(n, 1));
    let bottom = Matrix::zeros(n, hyper.cols()).hstack(&Matrix::column_vector(h));
    Ok(LagrangianPlane::new(space, top.vstack(&bottom))?)
}

/// A covector `h` whose hyperplane `ker(h)` contains the null vector `x`
/// of `Q` and whose conormal therefore meets `L_Q`.
pub fn null_vector_hyperplane(q: &QuadraticForm, x: &[Q]) -> Result<Vec<Q>, PositivityError> {
    if x.iter().all(|c| c.is_zero()) || !q.eval(x).is_zero() {
        return Err(PositivityError::Precondition("x is not a nonzero null vector"));
    }
    let qx = q.matrix().mul_vec(x);
    if qx.iter().any(|c| !c.is_zero()) {
        return Ok(qx);
    }
    // x lies in the kernel: any hyperplane through x works.
    let row = Matrix::from_rows(vec![x.to_vec()]);
    Ok(row.nullspace().column(0))
}

/// A rational null vector of `Q`, if one is visible from its congruence
/// diagonalization: a zero value, or two values of opposite sign whose
/// ratio is a rational square. Rational isotropic vectors need not exist
/// for indefinite forms in dimension ≤ 4, so `None` is not a proof.
pub fn rational_null_vector(q: &QuadraticForm) -> Option<Vec<Q>> {
    let d = q.diagonalize();
    let cols = d.basis.columns();
    if let Some(k) = d.values.iter().position(|v| v.is_zero()) {
        return Some(cols[k].clone());
    }
    for a in 0..d.values.len() {
        for b in a + 1..d.values.len() {
            let ratio = -(&d.values[b] / &d.values[a]);
            if let Some(r) = crate::rational::sqrt_exact(&ratio) {
                // values[a]·r² + values[b] = 0 for the vector r·v_a + v_b.
                let v = cols[a]
                    .iter()
                    .zip(&cols[b])
                    .map(|(x, y)| &r * x + y)
                    .collect();
                return Some(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn line(space: &SymplecticSpace, slope: i64) -> LagrangianPlane {
        LagrangianPlane::graph(space, &Matrix::from_i64(&[&[slope]])).unwrap()
    }

    #[test]
    fn basic_verdicts_in_dim_two() {
        let v = SymplecticSpace::standard(1);
        let tau = LagrangianPlane::q_plane(&v);
        let nu = LagrangianPlane::p_plane(&v);
        assert_eq!(relation(&line(&v, 1), &tau, &nu).unwrap(), Relation::Succ);
        assert_eq!(relation(&tau, &tau, &nu).unwrap(), Relation::Neither);
        assert!(compare(&nu, &tau, &nu).is_err());
    }

    #[test]
    fn indefinite_in_dim_four() {
        let v = SymplecticSpace::standard(2);
        let l = LagrangianPlane::graph(&v, &Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
        let r = relation(&l, &LagrangianPlane::q_plane(&v), &LagrangianPlane::p_plane(&v));
        assert_eq!(r.unwrap(), Relation::Neither);
    }

    #[test]
    fn three_lines_cycle() {
        // Slopes 0, 1, then the vertical: a cycle in one direction only.
        let v = SymplecticSpace::standard(1);
        let t = PlaneTuple::new(vec![
            LagrangianPlane::p_plane(&v),
            line(&v, 0),
            line(&v, 1),
        ])
        .unwrap();
        let s = cyclically_ordered(&t, Direction::Succ).unwrap();
        let p = cyclically_ordered(&t, Direction::Prec).unwrap();
        assert!(s ^ p);
    }

    #[test]
    fn repeated_plane_is_an_error() {
        let v = SymplecticSpace::standard(1);
        let t = PlaneTuple::new(vec![line(&v, 0), line(&v, 0), line(&v, 1)]).unwrap();
        assert!(matches!(
            cyclically_ordered(&t, Direction::Succ),
            Err(PositivityError::TupleNotTransverse(0, 1))
        ));
    }

    #[test]
    fn zone_edge_cases() {
        let v = SymplecticSpace::standard(2);
        let tau = LagrangianPlane::q_plane(&v);
        let nu = LagrangianPlane::p_plane(&v);
        assert!(!in_positive_zone(&nu, &tau, &nu).unwrap());
        assert!(!in_positive_zone(&tau, &tau, &nu).unwrap());
        let id = LagrangianPlane::graph(&v, &Matrix::identity(2)).unwrap();
        assert!(in_positive_zone(&id, &tau, &nu).unwrap());
    }

    #[test]
    fn common_negative_for_identity_graph() {
        let v = SymplecticSpace::standard(2);
        let l = LagrangianPlane::p_plane(&v);
        let t = LagrangianPlane::graph(&v, &Matrix::identity(2)).unwrap();
        let lm = find_common_negative(std::slice::from_ref(&t), &l).unwrap();
        assert_eq!(relation(&t, &lm, &l).unwrap(), Relation::Succ);
    }

    #[test]
    fn conormal_examples() {
        let pd = QuadraticForm::identity(2);
        assert!(conormal_transversality(&pd, &[int(1), int(3)]).unwrap());
        let hyp = QuadraticForm::new(Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
        assert!(!conormal_transversality(&hyp, &[int(1), int(-1)]).unwrap());
        assert!(!conormal_transversality(&QuadraticForm::zero(2), &[int(2), int(1)]).unwrap());
        assert!(conormal_transversality(&pd, &[int(0), int(0)]).is_err());
        let x = rational_null_vector(&hyp).unwrap();
        let h = null_vector_hyperplane(&hyp, &x).unwrap();
        assert!(!conormal_transversality(&hyp, &h).unwrap());
    }
}
