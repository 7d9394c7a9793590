//! Seeded random exact-rational instances for property runs, examples and
//! fixtures. Entries stay small so that bignum growth is mild.

use crate::rational::{int, Q};
use crate::symplin::{LagrangianPlane, Matrix, QuadraticForm, SymplecticSpace};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut impl Rng, bound: i64) -> Q {
    int(rng.gen_range(-bound..=bound))
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_int(rng, bound))
}

pub fn symmetric(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    let a = int_matrix(rng, n, n, bound);
    Matrix::from_fn(n, n, |i, j| if i <= j { a[(i, j)].clone() } else { a[(j, i)].clone() })
}

/// `AᵀA + I`, positive definite.
pub fn positive_definite(rng: &mut impl Rng, n: usize, bound: i64) -> QuadraticForm {
    let a = int_matrix(rng, n, n, bound);
    QuadraticForm::new(a.transpose().mul(&a).add(&Matrix::identity(n))).expect("symmetric")
}

pub fn negative_definite(rng: &mut impl Rng, n: usize, bound: i64) -> QuadraticForm {
    positive_definite(rng, n, bound).neg()
}

pub fn symmetric_form(rng: &mut impl Rng, n: usize, bound: i64) -> QuadraticForm {
    QuadraticForm::new(symmetric(rng, n, bound)).expect("symmetric")
}

/// Unit lower times unit upper triangular: integer entries, determinant 1.
pub fn unimodular(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Greater => small_int(rng, bound),
        std::cmp::Ordering::Less => int(0),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Less => small_int(rng, bound),
        std::cmp::Ordering::Greater => int(0),
    });
    lower.mul(&upper)
}

/// A random element of `Sp(2n, ℤ)` for the standard form: a product of
/// the shears `[[I,S],[0,I]]`, `[[I,0],[S,I]]` and a block `diag(A, A^{-T})`.
pub fn symplectic_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    let id = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    let s1 = symmetric(rng, n, bound);
    let s2 = symmetric(rng, n, bound);
    let upper = id.hstack(&s1).vstack(&zero.hstack(&id));
    let lower = id.hstack(&zero).vstack(&s2.hstack(&id));
    let a = unimodular(rng, n, 1);
    let a_inv_t = a.inverse().expect("unimodular").transpose();
    let block = a.hstack(&zero).vstack(&zero.hstack(&a_inv_t));
    upper.mul(&lower).mul(&block)
}

/// Image of a random graph `{p = Sq}` under a random symplectic matrix.
pub fn lagrangian(rng: &mut impl Rng, space: &SymplecticSpace, bound: i64) -> LagrangianPlane {
    let n = space.dim_half();
    let s = symmetric(rng, n, bound);
    let base = LagrangianPlane::graph(space, &s).expect("symmetric graph");
    if rng.gen_bool(0.5) {
        base
    } else {
        let g = symplectic_matrix(rng, n, 1);
        base.map(&g).expect("symplectic image")
    }
}

/// A Lagrangian transverse to `nu`; retries until transverse.
pub fn lagrangian_transverse_to(
    rng: &mut impl Rng,
    space: &SymplecticSpace,
    bound: i64,
    others: &[&LagrangianPlane],
) -> LagrangianPlane {
    loop {
        let l = lagrangian(rng, space, bound);
        if others.iter().all(|o| crate::symplin::planes_transverse(&l, o)) {
            return l;
        }
    }
}

/// A random form in the component of `Ω(F)` with sign vector `signs`:
/// antisymmetric with zeros where `a + b ≤ 2n` in the adapted basis and
/// anti-diagonal entries of the given signs.
pub fn flag_form(rng: &mut impl Rng, flag: &crate::localmodels::FlagData, signs: &[i8], bound: i64) -> Matrix {
    let n = flag.dim_half();
    assert_eq!(signs.len(), n, "one sign per flag step");
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            // 0-based: a + b + 2 ≤ 2n vanish, a + b + 1 = 2n is the anti-diagonal.
            let v = if a + b + 1 < 2 * n {
                continue;
            } else if a + b + 1 == 2 * n {
                int(signs[a] as i64 * rng.gen_range(1..=bound.max(1)))
            } else {
                small_int(rng, bound)
            };
            m[(a, b)] = v.clone();
            m[(b, a)] = -v;
        }
    }
    let u_inv = flag.basis().inverse().expect("adapted basis");
    u_inv.transpose().mul(&m).mul(&u_inv)
}

/// Random `±1` vector.
pub fn signs(rng: &mut impl Rng, n: usize) -> Vec<i8> {
    (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

/// Pullback of the standard form by a random map preserving `span(y)`,
/// `span(x, y)` and `span(x, p, y)` in coordinates
/// `(x_1..x_{n_T}, y_1..y_d, p_1..p_{n_T}, η_1..η_d)`, so that the stabilized
/// model stays Lagrangian with `span(y)^⊥ = span(x, p, y)`.
pub fn stabilized_form(rng: &mut impl Rng, n_t: usize, d: usize, bound: i64) -> Matrix {
    let m = n_t + d;
    let x: Vec<usize> = (0..n_t).collect();
    let y: Vec<usize> = (n_t..m).collect();
    let p: Vec<usize> = (m..m + n_t).collect();
    let eta: Vec<usize> = (m + n_t..2 * m).collect();
    let x_y: Vec<usize> = x.iter().chain(&y).copied().collect();
    let xpy: Vec<usize> = x.iter().chain(&p).chain(&y).copied().collect();
    loop {
        let mut g = Matrix::zeros(2 * m, 2 * m);
        let fill = |g: &mut Matrix, rng: &mut dyn rand::RngCore, rows: &[usize], cols: &[usize]| {
            for &r in rows {
                for &c in cols {
                    g[(r, c)] = int(rng.gen_range(-bound..=bound));
                }
            }
        };
        fill(&mut g, rng, &y, &y);
        fill(&mut g, rng, &x_y, &x);
        fill(&mut g, rng, &xpy, &p);
        let all: Vec<usize> = (0..2 * m).collect();
        fill(&mut g, rng, &all, &eta);
        if !g.det().is_zero() {
            let omega = SymplecticSpace::standard(m).form().clone();
            return g.transpose().mul(&omega).mul(&g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_matrices_preserve_the_form() {
        let mut r = rng(7);
        for n in 1..4 {
            let space = SymplecticSpace::standard(n);
            let g = symplectic_matrix(&mut r, n, 2);
            assert_eq!(g.transpose().mul(space.form()).mul(&g), *space.form());
        }
    }

    #[test]
    fn random_planes_are_lagrangian() {
        let mut r = rng(3);
        let space = SymplecticSpace::standard(3);
        for _ in 0..20 {
            assert!(lagrangian(&mut r, &space, 3).as_subspace().is_lagrangian());
        }
    }
}
