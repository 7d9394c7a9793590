//! Linear normalization of a pair of forms along a stabilized model
//! `L × ℝ^d ⊂ ℝ^{2n_T} × ℝ^{2d}`.
//!
//! Coordinates are `q = (x_1..x_{n_T}, y_1..y_d)` and
//! `p = (p_1..p_{n_T}, η_1..η_d)`. The model directions are `B = (x, p)` and
//! `y`; `F = span(y)` and `E = span(B, y)`.

use super::LocalModelError;
use crate::rational::int;
use crate::symplin::{Matrix, SymplecticSpace, Subspace};

struct Layout {
    b: Vec<usize>,
    y: Vec<usize>,
    eta: Vec<usize>,
    zero_section: Vec<usize>,
}

impl Layout {
    fn new(n_t: usize, d: usize) -> Self {
        let m = n_t + d;
        let x: Vec<usize> = (0..n_t).collect();
        let p: Vec<usize> = (m..m + n_t).collect();
        let y: Vec<usize> = (n_t..m).collect();
        let eta: Vec<usize> = (m + n_t..2 * m).collect();
        let b = x.iter().chain(&p).copied().collect();
        let zero_section = (0..m).collect();
        Layout { b, y, eta, zero_section }
    }
}

fn sub(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    m.select_rows(rows).select_columns(cols)
}

/// Requires `span(x, y)` Lagrangian and `span(y)^⊥ = span(x, p, y)`.
fn check_model(omega: &Matrix, lay: &Layout, which: usize) -> Result<(), LocalModelError> {
    let space = SymplecticSpace::with_form(omega.clone())?;
    let dim = omega.rows();
    let id = Matrix::identity(dim);
    let zero_section = Subspace::new(&space, id.select_columns(&lay.zero_section))?;
    if !zero_section.is_lagrangian() {
        return Err(LocalModelError::Precondition(format!(
            "form {which}: the model zero section is not Lagrangian"
        )));
    }
    if !sub(omega, &lay.y, &lay.b).is_zero() || !sub(omega, &lay.y, &lay.y).is_zero() {
        return Err(LocalModelError::Precondition(format!(
            "form {which}: the stabilizing directions are not orthogonal to the model"
        )));
    }
    Ok(())
}

/// The element of `𝒮(ω₀, ω₁)` with vanishing free symmetric block.
pub fn normalize_stabilized_pair(
    omega0: &Matrix,
    omega1: &Matrix,
    n_t: usize,
    d: usize,
) -> Result<Matrix, LocalModelError> {
    normalize_stabilized_pair_with(omega0, omega1, n_t, d, &Matrix::zeros(d, d))
}

/// The element of `𝒮(ω₀, ω₁)` whose free block is `s`; `s` must be
/// symmetric. Ψ is the identity on `x, p, y` and sends `η` to a vector
/// matching the `ω₀`-pairings of `η` with `B`, `y` and `η`.
pub fn normalize_stabilized_pair_with(
    omega0: &Matrix,
    omega1: &Matrix,
    n_t: usize,
    d: usize,
    s: &Matrix,
) -> Result<Matrix, LocalModelError> {
    let dim = 2 * (n_t + d);
    for o in [omega0, omega1] {
        if o.rows() != dim || o.cols() != dim {
            return Err(LocalModelError::FlagShape(o.rows(), o.cols()));
        }
    }
    if s.rows() != d || s.cols() != d || !s.is_symmetric() {
        return Err(LocalModelError::Precondition("free block must be a symmetric d×d matrix".into()));
    }
    let lay = Layout::new(n_t, d);
    check_model(omega0, &lay, 0)?;
    check_model(omega1, &lay, 1)?;
    if d == 0 {
        return Ok(Matrix::identity(dim));
    }
    let o1_y_eta = sub(omega1, &lay.y, &lay.eta);
    let o0_y_eta = sub(omega0, &lay.y, &lay.eta);
    // ω₁(y, Ψη) = Ω1_yη W_η since Ω_yB = Ω_yy = 0.
    let w_eta = o1_y_eta.inverse().ok_or(LocalModelError::Precondition("ω₁ pairs y and η degenerately".into()))?.mul(&o0_y_eta);
    // ω₁(B, Ψη) = Ω1_BB W_B + Ω1_Bη W_η.
    let o1_bb = sub(omega1, &lay.b, &lay.b);
    let w_b = if lay.b.is_empty() {
        Matrix::zeros(0, d)
    } else {
        o1_bb
            .inverse()
            .expect("the reduced form on B is nondegenerate")
            .mul(&sub(omega0, &lay.b, &lay.eta).sub(&sub(omega1, &lay.b, &lay.eta).mul(&w_eta)))
    };
    // ω₁(Ψη, Ψη) = C' + W_yᵀK − KᵀW_y with K = Ω1_yη W_η.
    let k = o1_y_eta.mul(&w_eta);
    let mut w_partial = Matrix::zeros(dim, d);
    place(&mut w_partial, &lay.b, &w_b);
    place(&mut w_partial, &lay.eta, &w_eta);
    let c_prime = w_partial.transpose().mul(omega1).mul(&w_partial);
    let c = sub(omega0, &lay.eta, &lay.eta).sub(&c_prime);
    // Solve Nᵀ − N = C with N = KᵀW_y.
    let n_mat = c.scale(&crate::rational::frac(-1, 2)).add(s);
    let w_y = k.transpose().inverse().expect("K is invertible").mul(&n_mat);
    let mut psi = Matrix::identity(dim);
    let mut w = w_partial;
    place(&mut w, &lay.y, &w_y);
    for (col, &j) in lay.eta.iter().enumerate() {
        for i in 0..dim {
            psi[(i, j)] = w[(i, col)].clone();
        }
    }
    debug_assert!(pulled_back_agrees(omega0, omega1, &psi, n_t, d));
    Ok(psi)
}

fn place(target: &mut Matrix, rows: &[usize], block: &Matrix) {
    for (bi, &r) in rows.iter().enumerate() {
        for c in 0..block.cols() {
            target[(r, c)] = block[(bi, c)].clone();
        }
    }
}

/// `Ψ` is the identity on `(x, p, y)` and `Ψ*ω₁ = ω₀` on every pair
/// involving `y` or `η`.
pub fn pulled_back_agrees(omega0: &Matrix, omega1: &Matrix, psi: &Matrix, n_t: usize, d: usize) -> bool {
    let lay = Layout::new(n_t, d);
    let dim = omega0.rows();
    let id = Matrix::identity(dim);
    let fixed: Vec<usize> = lay.b.iter().chain(&lay.y).copied().collect();
    if psi.select_columns(&fixed) != id.select_columns(&fixed) {
        return false;
    }
    let pulled = psi.transpose().mul(omega1).mul(psi);
    let free: Vec<usize> = lay.y.iter().chain(&lay.eta).copied().collect();
    let all: Vec<usize> = (0..dim).collect();
    sub(&pulled, &free, &all) == sub(omega0, &free, &all)
}

/// `Ψ₁⁻¹Ψ₀ − I`, which for two elements of `𝒮` is supported on the
/// `(y, η)` block.
pub fn difference_block(psi0: &Matrix, psi1: &Matrix, n_t: usize, d: usize) -> Option<Matrix> {
    let lay = Layout::new(n_t, d);
    let delta = psi1.inverse()?.mul(psi0).sub(&Matrix::identity(psi0.rows()));
    let block = sub(&delta, &lay.y, &lay.eta);
    let mut rest = delta;
    for &r in &lay.y {
        for &c in &lay.eta {
            rest[(r, c)] = int(0);
        }
    }
    rest.is_zero().then_some(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    #[test]
    fn random_pairs_are_normalized() {
        let mut r = sample::rng(11);
        for (n_t, d) in [(1, 1), (2, 1), (1, 2), (0, 2)] {
            let o0 = sample::stabilized_form(&mut r, n_t, d, 2);
            let o1 = sample::stabilized_form(&mut r, n_t, d, 2);
            let psi = normalize_stabilized_pair(&o0, &o1, n_t, d).unwrap();
            assert!(pulled_back_agrees(&o0, &o1, &psi, n_t, d));
        }
    }

    #[test]
    fn equal_forms_give_identity() {
        let o = SymplecticSpace::standard(3).form().clone();
        assert_eq!(normalize_stabilized_pair(&o, &o, 1, 2).unwrap(), Matrix::identity(6));
        assert_eq!(normalize_stabilized_pair(&o, &o, 3, 0).unwrap(), Matrix::identity(6));
    }
}
