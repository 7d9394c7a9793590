use super::matrix::Matrix;
use super::SymplinError;
use crate::rational::Q;
use num::{One, Signed, Zero};

/// A symmetric bilinear form, stored by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: Matrix,
}

/// Counts of positive, negative and zero squares (Sylvester's law of inertia).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// A congruence `Bᵀ·Q·B = diag(values)` with `B` invertible.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub basis: Matrix,
    pub values: Vec<Q>,
}

pub(crate) fn minors_positive(minors: &[Q]) -> bool {
    minors.iter().all(|m| m.is_positive())
}

pub(crate) fn minors_negative(minors: &[Q]) -> bool {
    minors.iter().enumerate().all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() })
}

impl QuadraticForm {
    pub fn new(matrix: Matrix) -> Result<Self, SymplinError> {
        if !matrix.is_symmetric() {
            return Err(SymplinError::NotSymmetric);
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        QuadraticForm { matrix: Matrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        QuadraticForm { matrix: Matrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn eval(&self, v: &[Q]) -> Q {
        super::matrix::dot(v, &self.matrix.mul_vec(v))
    }

    pub fn add(&self, other: &QuadraticForm) -> QuadraticForm {
        QuadraticForm { matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &QuadraticForm) -> QuadraticForm {
        QuadraticForm { matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, c: &Q) -> QuadraticForm {
        QuadraticForm { matrix: self.matrix.scale(c) }
    }

    pub fn neg(&self) -> QuadraticForm {
        QuadraticForm { matrix: self.matrix.neg() }
    }

    /// Pullback `Bᵀ·Q·B` along a linear map.
    pub fn pullback(&self, b: &Matrix) -> QuadraticForm {
        QuadraticForm { matrix: b.transpose().mul(&self.matrix).mul(b) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Leading principal minors `det(Q[..k, ..k])` for k = 1..=dim.
    ///
    /// One pass of unpivoted Bareiss elimination: after step `k` the entry
    /// `(k, k)` is exactly the `k + 1` leading minor. A vanishing minor
    /// stalls the recurrence, so the remaining ones fall back to full
    /// determinants.
    pub fn leading_minors(&self) -> Vec<Q> {
        let n = self.dim();
        let mut m = self.matrix.clone();
        let mut out = Vec::with_capacity(n);
        let mut prev = Q::one();
        for k in 0..n {
            let piv = m[(k, k)].clone();
            out.push(piv.clone());
            if piv.is_zero() {
                out.extend((k + 2..=n).map(|j| self.matrix.block(0, 0, j, j).det()));
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&piv * &m[(i, j)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = piv;
        }
        out
    }

    /// Sylvester's criterion: every leading principal minor is positive.
    /// The empty form is positive definite.
    pub fn is_positive_definite(&self) -> bool {
        minors_positive(&self.leading_minors())
    }

    /// Sylvester's criterion on `-Q`: minors alternate in sign starting negative.
    pub fn is_negative_definite(&self) -> bool {
        minors_negative(&self.leading_minors())
    }

    /// Symmetric LDLᵀ with pivoting; see [`diagonalize`].
    pub fn diagonalize(&self) -> Diagonalization {
        diagonalize(&self.matrix)
    }

    pub fn inertia(&self) -> Inertia {
        let d = self.diagonalize();
        let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
        for v in &d.values {
            if v.is_positive() {
                out.positive += 1;
            } else if v.is_negative() {
                out.negative += 1;
            } else {
                out.zero += 1;
            }
        }
        out
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.inertia().negative == 0
    }

    pub fn is_negative_semidefinite(&self) -> bool {
        self.inertia().positive == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.inertia().zero == 0
    }

    /// Gershgorin lower bound on the spectrum: `min_i (q_ii − Σ_{j≠i} |q_ij|)`.
    /// Returns zero for the empty form.
    pub fn gershgorin_lower_bound(&self) -> Q {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let off: Q = (0..n)
                    .filter(|&j| j != i)
                    .fold(Q::zero(), |acc, j| acc + self.matrix[(i, j)].abs());
                &self.matrix[(i, i)] - off
            })
            .min()
            .unwrap_or_else(Q::zero)
    }
}

/// Congruence diagonalization by symmetric elimination.
///
/// A nonzero diagonal entry is used as a 1×1 pivot. When the remaining
/// diagonal vanishes but an off-diagonal entry `b = q(e_i, e_j)` does not,
/// `e_i` is replaced by `e_i + e_j`, whose value `2b` is a usable pivot.
/// This is the 2×2 pivot `[[0,b],[b,0]]` written as two 1×1 steps.
pub fn diagonalize(q: &Matrix) -> Diagonalization {
    assert!(q.is_symmetric(), "diagonalize needs a symmetric matrix");
    let n = q.rows();
    let mut a = q.clone();
    let mut basis = Matrix::identity(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut out_cols: Vec<Vec<Q>> = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[(i, i)].is_zero()) {
            let i = active.remove(pos);
            let d = a[(i, i)].clone();
            for &k in &active {
                if a[(k, i)].is_zero() {
                    continue;
                }
                let f = &a[(k, i)] / &d;
                eliminate(&mut a, &mut basis, &active, k, i, &f);
            }
            out_cols.push(basis.column(i));
            values.push(d);
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            for &k in &active {
                out_cols.push(basis.column(k));
                values.push(Q::zero());
            }
            break;
        };
        // Replace e_i by e_i + e_j so that the new diagonal entry is 2b ≠ 0.
        add_multiple(&mut a, &mut basis, i, j, &Q::one());
    }
    let basis = Matrix::from_columns(n, &out_cols);
    Diagonalization { basis, values }
}

/// Congruence step `e_k ← e_k − f·e_i` restricted to the active block.
fn eliminate(a: &mut Matrix, basis: &mut Matrix, active: &[usize], k: usize, i: usize, f: &Q) {
    let n = a.rows();
    for r in 0..n {
        let v = f * &basis[(r, i)];
        basis[(r, k)] -= v;
    }
    // Row/column update of the Gram matrix on active indices and i.
    for &c in active.iter().chain(std::iter::once(&i)) {
        let v = f * &a[(i, c)];
        a[(k, c)] -= v;
    }
    for &r in active.iter().chain(std::iter::once(&i)) {
        let v = f * &a[(r, i)];
        a[(r, k)] -= v;
    }
}

/// Congruence step `e_i ← e_i + f·e_j` on the full matrix.
fn add_multiple(a: &mut Matrix, basis: &mut Matrix, i: usize, j: usize, f: &Q) {
    let n = a.rows();
    for r in 0..n {
        let v = f * &basis[(r, j)];
        basis[(r, i)] += v;
    }
    for c in 0..n {
        let v = f * &a[(j, c)];
        a[(i, c)] += v;
    }
    for r in 0..n {
        let v = f * &a[(r, j)];
        a[(r, i)] += v;
    }
}
