//! Exact symplectic linear algebra over the rationals.
//!
//! Coordinates on a standard space are `(q_1..q_n, p_1..p_n)` with
//! `ω(∂q_i, ∂p_i) = +1`, i.e. Gram matrix `[[0, I], [-I, 0]]`.
//!
//! The graph form of a Lagrangian `L ⋔ ν` over a polarization `(τ, ν)` is
//! `Q(x, y) = ω(x, A y)` where `A: τ → ν` is the linear map whose graph is
//! `L`. With `τ = span(∂q)`, `ν = span(∂p)` and `L = {p = S q}` this gives
//! `Q = S`, so `span(∂q + ∂p)` has the positive form `1`.

mod forms;
mod matrix;

pub use forms::{diagonalize, Diagonalization, Inertia, QuadraticForm};
pub(crate) use forms::{minors_negative, minors_positive};
pub use matrix::{dot, serde_matrix, Matrix};

use crate::rational::Q;
use num::{One, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymplinError {
    #[error("form is not antisymmetric")]
    NotAntisymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("form has odd size {0}")]
    OddDimension(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("expected {expected} rows, got {got}")]
    RowMismatch { expected: usize, got: usize },
    #[error("basis columns are linearly dependent")]
    DependentColumns,
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("subspace is not coisotropic")]
    NotCoisotropic,
    #[error("{0} are not transverse")]
    NotTransverse(&'static str),
    #[error("subspaces live in different symplectic spaces")]
    AmbientMismatch,
    #[error("quadratic form has size {got}, expected {expected}")]
    FormSize { expected: usize, got: usize },
}

struct SpaceInner {
    dim_half: usize,
    form: Matrix,
}

/// A finite-dimensional symplectic vector space `(ℚ^{2n}, ω)`.
///
/// Cheap to clone; clones share the Gram matrix.
#[derive(Clone)]
pub struct SymplecticSpace {
    inner: Arc<SpaceInner>,
}

impl PartialEq for SymplecticSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.form == other.inner.form
    }
}

impl Eq for SymplecticSpace {}

impl std::fmt::Debug for SymplecticSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymplecticSpace")
            .field("dim_half", &self.inner.dim_half)
            .field("form", &self.inner.form)
            .finish()
    }
}

impl SymplecticSpace {
    /// Standard form `[[0, I], [-I, 0]]` on `ℚ^{2n}`.
    pub fn standard(n: usize) -> Self {
        let mut form = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            form[(i, n + i)] = Q::one();
            form[(n + i, i)] = -Q::one();
        }
        SymplecticSpace { inner: Arc::new(SpaceInner { dim_half: n, form }) }
    }

    /// Any antisymmetric nondegenerate Gram matrix of even size, including `0×0`.
    pub fn with_form(form: Matrix) -> Result<Self, SymplinError> {
        if !form.is_antisymmetric() {
            return Err(SymplinError::NotAntisymmetric);
        }
        if form.rows() % 2 != 0 {
            return Err(SymplinError::OddDimension(form.rows()));
        }
        if form.det().is_zero() {
            return Err(SymplinError::Degenerate);
        }
        Ok(SymplecticSpace { inner: Arc::new(SpaceInner { dim_half: form.rows() / 2, form }) })
    }

    pub fn dim_half(&self) -> usize {
        self.inner.dim_half
    }

    pub fn dim(&self) -> usize {
        2 * self.inner.dim_half
    }

    pub fn form(&self) -> &Matrix {
        &self.inner.form
    }

    pub fn is_standard(&self) -> bool {
        self.inner.form == *SymplecticSpace::standard(self.inner.dim_half).form()
    }

    pub fn omega(&self, u: &[Q], v: &[Q]) -> Q {
        dot(u, &self.inner.form.mul_vec(v))
    }

    /// Gram matrix `Aᵀ ω B` of two families of column vectors.
    pub fn pairing(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.transpose().mul(&self.inner.form).mul(b)
    }

    /// Standard basis vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }
}

/// A linear subspace given by a basis of column vectors.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: SymplecticSpace,
    basis: Matrix,
}

impl PartialEq for Subspace {
    /// Span equality.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.same_span(other)
    }
}

impl Subspace {
    /// Requires `2n` rows and independent columns.
    pub fn new(ambient: &SymplecticSpace, basis: Matrix) -> Result<Self, SymplinError> {
        if basis.rows() != ambient.dim() {
            return Err(SymplinError::RowMismatch { expected: ambient.dim(), got: basis.rows() });
        }
        if basis.rank() != basis.cols() {
            return Err(SymplinError::DependentColumns);
        }
        Ok(Subspace { ambient: ambient.clone(), basis })
    }

    /// Span of arbitrary generators; dependent columns are dropped.
    pub fn span(ambient: &SymplecticSpace, generators: &Matrix) -> Result<Self, SymplinError> {
        if generators.rows() != ambient.dim() {
            return Err(SymplinError::RowMismatch {
                expected: ambient.dim(),
                got: generators.rows(),
            });
        }
        let idx = generators.independent_columns();
        Ok(Subspace { ambient: ambient.clone(), basis: generators.select_columns(&idx) })
    }

    pub fn span_of(ambient: &SymplecticSpace, vectors: &[Vec<Q>]) -> Result<Self, SymplinError> {
        Self::span(ambient, &Matrix::from_columns(ambient.dim(), vectors))
    }

    pub fn zero(ambient: &SymplecticSpace) -> Self {
        Subspace { ambient: ambient.clone(), basis: Matrix::zeros(ambient.dim(), 0) }
    }

    pub fn whole(ambient: &SymplecticSpace) -> Self {
        Subspace { ambient: ambient.clone(), basis: Matrix::identity(ambient.dim()) }
    }

    pub fn ambient(&self) -> &SymplecticSpace {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        let m = self.basis.hstack(&Matrix::column_vector(v));
        m.rank() == self.dim()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.basis.hstack(&other.basis).rank() == self.dim()
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.ambient, &self.basis.hstack(&other.basis))
            .expect("row counts agree")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let stacked = self.basis.hstack(&other.basis.neg());
        let kernel = stacked.nullspace();
        let coeffs = kernel.block(0, 0, self.dim(), kernel.cols());
        let gens = self.basis.mul(&coeffs);
        Subspace::span(&self.ambient, &gens).expect("row counts agree")
    }

    /// `ω` vanishes on the span.
    pub fn is_isotropic(&self) -> bool {
        self.ambient.pairing(&self.basis, &self.basis).is_zero()
    }

    pub fn is_lagrangian(&self) -> bool {
        self.dim() == self.ambient.dim_half() && self.is_isotropic()
    }

    pub fn into_lagrangian(self) -> Result<LagrangianPlane, SymplinError> {
        if self.is_lagrangian() {
            Ok(LagrangianPlane(self))
        } else {
            Err(SymplinError::NotLagrangian)
        }
    }
}

/// An `n`-dimensional isotropic subspace of a `2n`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianPlane(Subspace);

impl LagrangianPlane {
    pub fn new(ambient: &SymplecticSpace, basis: Matrix) -> Result<Self, SymplinError> {
        Subspace::new(ambient, basis)?.into_lagrangian()
    }

    /// The span of `∂q_1..∂q_n` in standard coordinates.
    pub fn q_plane(ambient: &SymplecticSpace) -> Self {
        let n = ambient.dim_half();
        let basis = Matrix::identity(n).vstack(&Matrix::zeros(n, n));
        LagrangianPlane(Subspace { ambient: ambient.clone(), basis })
    }

    /// The span of `∂p_1..∂p_n` in standard coordinates.
    pub fn p_plane(ambient: &SymplecticSpace) -> Self {
        let n = ambient.dim_half();
        let basis = Matrix::zeros(n, n).vstack(&Matrix::identity(n));
        LagrangianPlane(Subspace { ambient: ambient.clone(), basis })
    }

    /// `{p = S q}` in standard coordinates; `S` must be symmetric for this
    /// to be Lagrangian in the standard space.
    pub fn graph(ambient: &SymplecticSpace, s: &Matrix) -> Result<Self, SymplinError> {
        let n = ambient.dim_half();
        if s.rows() != n || s.cols() != n {
            return Err(SymplinError::FormSize { expected: n, got: s.rows() });
        }
        Self::new(ambient, Matrix::identity(n).vstack(s))
    }

    pub fn as_subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn into_subspace(self) -> Subspace {
        self.0
    }

    pub fn ambient(&self) -> &SymplecticSpace {
        &self.0.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.0.basis
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Image under a linear map of the ambient space.
    pub fn map(&self, a: &Matrix) -> Result<Self, SymplinError> {
        LagrangianPlane::new(self.ambient(), a.mul(self.basis()))
    }
}

/// `W^⊥ = {v : ω(v, w) = 0 ∀ w ∈ W}`.
pub fn symplectic_complement(s: &Subspace) -> Subspace {
    let rows = s.basis.transpose().mul(s.ambient.form());
    Subspace { ambient: s.ambient.clone(), basis: rows.nullspace() }
}

/// `W^⊥ ⊆ W`.
pub fn is_coisotropic(s: &Subspace) -> bool {
    s.contains(&symplectic_complement(s))
}

/// `L1 + L2 = V`. Subspaces of different spaces are never transverse.
pub fn transverse(a: &Subspace, b: &Subspace) -> bool {
    a.ambient.dim() == b.ambient.dim()
        && a.basis.hstack(&b.basis).rank() == a.ambient.dim()
}

pub fn planes_transverse(a: &LagrangianPlane, b: &LagrangianPlane) -> bool {
    transverse(a.as_subspace(), b.as_subspace())
}

/// Reduction by a fixed coisotropic `W`, with a fixed model of `W/W^⊥`.
///
/// The quotient is modelled by a complement `C` of `W^⊥` inside `W`; the
/// reduced form is `Cᵀ ω C` and a vector of `W` reduces to its
/// `C`-coordinates.
#[derive(Clone, Debug)]
pub struct Reduction {
    w: Subspace,
    w_perp: Subspace,
    frame: Matrix,
    reduced: SymplecticSpace,
}

impl Reduction {
    pub fn new(w: &Subspace) -> Result<Self, SymplinError> {
        let w_perp = symplectic_complement(w);
        if !w.contains(&w_perp) {
            return Err(SymplinError::NotCoisotropic);
        }
        let joint = w_perp.basis.hstack(&w.basis);
        let idx = joint.independent_columns();
        let k = w_perp.dim();
        debug_assert!(idx[..k].iter().copied().eq(0..k));
        let frame = joint.select_columns(&idx);
        let complement = frame.block(0, k, frame.rows(), frame.cols() - k);
        let reduced = SymplecticSpace::with_form(w.ambient.pairing(&complement, &complement))
            .expect("a complement of W^⊥ in W is symplectic");
        Ok(Reduction { w: w.clone(), w_perp, frame, reduced })
    }

    pub fn coisotropic(&self) -> &Subspace {
        &self.w
    }

    pub fn kernel(&self) -> &Subspace {
        &self.w_perp
    }

    pub fn reduced_space(&self) -> &SymplecticSpace {
        &self.reduced
    }

    /// Coordinates in `W/W^⊥` of vectors (columns) lying in `W`.
    pub fn project(&self, vectors: &Matrix) -> Matrix {
        let coeffs = self.frame.solve(vectors).expect("vectors lie in W");
        let k = self.w_perp.dim();
        coeffs.block(k, 0, coeffs.rows() - k, coeffs.cols())
    }

    /// `[S]^W = (S ∩ W) / W^⊥`.
    pub fn reduce_subspace(&self, s: &Subspace) -> Result<Subspace, SymplinError> {
        if s.ambient != self.w.ambient {
            return Err(SymplinError::AmbientMismatch);
        }
        let meet = s.intersection(&self.w);
        let coords = self.project(&meet.basis);
        Subspace::span(&self.reduced, &coords)
    }

    pub fn reduce(&self, l: &LagrangianPlane) -> Result<LagrangianPlane, SymplinError> {
        let r = self.reduce_subspace(l.as_subspace())?;
        debug_assert!(r.is_lagrangian());
        Ok(LagrangianPlane(r))
    }
}

/// `[L]^W` for a single plane. Degenerate intersections are absorbed by
/// the quotient.
pub fn reduce(l: &LagrangianPlane, w: &Subspace) -> Result<LagrangianPlane, SymplinError> {
    Reduction::new(w)?.reduce(l)
}

pub fn reduce_subspace(s: &Subspace, w: &Subspace) -> Result<Subspace, SymplinError> {
    Reduction::new(w)?.reduce_subspace(s)
}

fn check_polarization(tau: &LagrangianPlane, nu: &LagrangianPlane) -> Result<(), SymplinError> {
    if tau.ambient() != nu.ambient() {
        return Err(SymplinError::AmbientMismatch);
    }
    if !planes_transverse(tau, nu) {
        return Err(SymplinError::NotTransverse("tau and nu"));
    }
    Ok(())
}

/// The graph form `L^{(τ,ν)}` on `τ`, in the coordinates of `τ`'s basis.
pub fn graph_form(
    l: &LagrangianPlane,
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
) -> Result<QuadraticForm, SymplinError> {
    if tau.ambient() != nu.ambient() || l.ambient() != nu.ambient() {
        return Err(SymplinError::AmbientMismatch);
    }
    let n = l.dim();
    // Solve [T N]·[a; b] = B for the components of L's basis; [T N] is
    // invertible exactly when τ ⋔ ν.
    let tn = tau.basis().hstack(nu.basis());
    let ab = tn.solve_unique(l.basis()).ok_or(SymplinError::NotTransverse("tau and nu"))?;
    let a = ab.block(0, 0, n, n);
    let b = ab.block(n, 0, n, n);
    let a_inv = a.inverse().ok_or(SymplinError::NotTransverse("L and nu"))?;
    let pairing = tau.ambient().pairing(tau.basis(), nu.basis());
    let q = pairing.mul(&b.mul(&a_inv));
    debug_assert!(q.is_symmetric());
    QuadraticForm::new(q)
}

/// The Lagrangian transverse to `ν` whose graph form over `(τ, ν)` is `q`.
pub fn plane_from_form(
    tau: &LagrangianPlane,
    nu: &LagrangianPlane,
    q: &QuadraticForm,
) -> Result<LagrangianPlane, SymplinError> {
    check_polarization(tau, nu)?;
    let n = tau.dim();
    if q.dim() != n {
        return Err(SymplinError::FormSize { expected: n, got: q.dim() });
    }
    let pairing = tau.ambient().pairing(tau.basis(), nu.basis());
    let g = pairing.inverse().expect("τ ⋔ ν makes the pairing invertible").mul(q.matrix());
    let basis = tau.basis().add(&nu.basis().mul(&g));
    LagrangianPlane::new(tau.ambient(), basis)
}

/// A Lagrangian transverse to `l`, chosen deterministically.
pub fn lagrangian_complement(l: &LagrangianPlane) -> LagrangianPlane {
    let space = l.ambient();
    let n = space.dim_half();
    let lb = l.basis();
    // Greedy complement from standard basis vectors.
    let mut idx = Vec::new();
    let mut current = lb.clone();
    for i in 0..space.dim() {
        if idx.len() == n {
            break;
        }
        let cand = current.hstack(&Matrix::column_vector(&space.basis_vector(i)));
        if cand.rank() == cand.cols() {
            current = cand;
            idx.push(i);
        }
    }
    let c = Matrix::identity(space.dim()).select_columns(&idx);
    // Normalize ω(L, C) = I, then correct by B/2 with B = ω(C, C).
    let a = space.pairing(lb, &c);
    let c = c.mul(&a.inverse().expect("C is a complement of L"));
    let b = space.pairing(&c, &c);
    let h = c.add(&lb.mul(&b.scale(&crate::rational::frac(1, 2))));
    LagrangianPlane::new(space, h).expect("correction makes the complement isotropic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn std2() -> SymplecticSpace {
        SymplecticSpace::standard(2)
    }

    #[test]
    fn complement_of_whole_and_lagrangian() {
        let v = std2();
        assert_eq!(symplectic_complement(&Subspace::whole(&v)).dim(), 0);
        let q = LagrangianPlane::q_plane(&v);
        assert!(symplectic_complement(q.as_subspace()).same_span(q.as_subspace()));
    }

    #[test]
    fn coisotropic_examples() {
        let v = std2();
        let w = Subspace::span_of(&v, &[v.basis_vector(0), v.basis_vector(2), v.basis_vector(1)])
            .unwrap();
        assert!(is_coisotropic(&w));
        let line = Subspace::span_of(&v, &[v.basis_vector(0)]).unwrap();
        assert!(!is_coisotropic(&line));
    }

    #[test]
    fn reduction_of_q_plane_by_hyperplane() {
        let v = std2();
        // W = span(∂q1, ∂p1, ∂q2), L = span(∂q1, ∂q2).
        let w = Subspace::span_of(&v, &[v.basis_vector(0), v.basis_vector(2), v.basis_vector(1)])
            .unwrap();
        let l = LagrangianPlane::q_plane(&v);
        let red = Reduction::new(&w).unwrap();
        let rl = red.reduce(&l).unwrap();
        assert_eq!(rl.dim(), 1);
        let image = red.project(&Matrix::column_vector(&v.basis_vector(0)));
        let expected = Subspace::span(red.reduced_space(), &image).unwrap();
        assert!(rl.as_subspace().same_span(&expected));
    }

    #[test]
    fn graph_form_sign_convention() {
        let v = SymplecticSpace::standard(1);
        let tau = LagrangianPlane::q_plane(&v);
        let nu = LagrangianPlane::p_plane(&v);
        let l = LagrangianPlane::graph(&v, &Matrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(graph_form(&l, &tau, &nu).unwrap().matrix()[(0, 0)], int(3));
        assert!(graph_form(&tau, &tau, &nu).unwrap().is_zero());
        assert!(graph_form(&nu, &tau, &nu).is_err());
    }

    #[test]
    fn complement_is_transverse() {
        let v = std2();
        for s in [
            Matrix::from_i64(&[&[1, 2], &[2, -1]]),
            Matrix::from_i64(&[&[0, 0], &[0, 0]]),
        ] {
            let l = LagrangianPlane::graph(&v, &s).unwrap();
            assert!(planes_transverse(&l, &lagrangian_complement(&l)));
        }
        let p = LagrangianPlane::p_plane(&v);
        assert!(planes_transverse(&p, &lagrangian_complement(&p)));
    }
}
