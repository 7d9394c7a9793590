//! Full flags `V₀ ⊂ … ⊂ V₂ₙ` and the sign classification of `Ω(F)`.

use super::LocalModelError;
use crate::rational::{int, sign, Q};
use crate::symplin::{symplectic_complement, Matrix, SymplecticSpace, Subspace};

/// A full flag presented by an adapted basis: `V_i` is spanned by the first
/// `i` columns. Signs are read off in this basis, so two bases of the same
/// flag related by a non-unipotent change may disagree on signs.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagData {
    basis: Matrix,
}

/// Which defining condition of `Ω(F)` failed at `V_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagCondition {
    NotIsotropic,
    NotCoisotropic,
    ComplementMismatch,
}

impl std::fmt::Display for FlagCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlagCondition::NotIsotropic => "not isotropic",
            FlagCondition::NotCoisotropic => "not coisotropic",
            FlagCondition::ComplementMismatch => "symplectic complement is not the opposite flag member",
        })
    }
}

impl FlagData {
    /// Columns must form a basis of `ℚ^{2n}`.
    pub fn from_adapted_basis(basis: Matrix) -> Result<Self, LocalModelError> {
        if basis.rows() != basis.cols() || basis.rows() % 2 != 0 || basis.rows() == 0 {
            return Err(LocalModelError::FlagShape(basis.rows(), basis.cols()));
        }
        if basis.rank() != basis.cols() {
            return Err(LocalModelError::FlagShape(basis.rows(), basis.rank()));
        }
        Ok(FlagData { basis })
    }

    /// The flag of the extended `A`-model in coordinates `(x₀..x_{n-1}, p₀..p_{n-1})`:
    /// `u₁..uₙ = ∂x_{n-1}..∂x₀` then `u_{n+1}..u_{2n} = ∂p₀..∂p_{n-1}`, so that
    /// `V_i = span(∂x_{n-1}..∂x_{n-i})` for `i ≤ n` and
    /// `V_{2n-i} = span(∂x, ∂p₀..∂p_{n-i-1})`.
    pub fn canonical(n: usize) -> Self {
        let mut order: Vec<usize> = (0..n).rev().collect();
        order.extend(n..2 * n);
        FlagData { basis: Matrix::identity(2 * n).select_columns(&order) }
    }

    pub fn dim_half(&self) -> usize {
        self.basis.cols() / 2
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis of `V_i`.
    pub fn member(&self, i: usize) -> Matrix {
        self.basis.select_columns(&(0..i).collect::<Vec<_>>())
    }

    /// Gram matrix of `omega` in the adapted basis.
    pub fn adapted_gram(&self, omega: &Matrix) -> Matrix {
        self.basis.transpose().mul(omega).mul(&self.basis)
    }

    /// First index `j` at which `omega` violates a defining condition of `Ω(F)`.
    pub fn first_violation(
        &self,
        omega: &Matrix,
    ) -> Result<Option<(usize, FlagCondition)>, LocalModelError> {
        let space = self.space_for(omega)?;
        let n = self.dim_half();
        let members: Vec<Subspace> = (0..=2 * n)
            .map(|i| Subspace::new(&space, self.member(i)).expect("adapted basis is independent"))
            .collect();
        for j in 1..=2 * n {
            let v = &members[j];
            if j <= n && !v.is_isotropic() {
                return Ok(Some((j, FlagCondition::NotIsotropic)));
            }
            let perp = symplectic_complement(v);
            if j >= n && !v.contains(&perp) {
                return Ok(Some((j, FlagCondition::NotCoisotropic)));
            }
            if perp != members[2 * n - j] {
                return Ok(Some((j, FlagCondition::ComplementMismatch)));
            }
        }
        Ok(None)
    }

    fn space_for(&self, omega: &Matrix) -> Result<SymplecticSpace, LocalModelError> {
        if omega.rows() != self.basis.rows() || omega.cols() != self.basis.rows() {
            return Err(LocalModelError::FlagShape(omega.rows(), omega.cols()));
        }
        Ok(SymplecticSpace::with_form(omega.clone())?)
    }
}

/// Signs `s_a = sign ω(u_a, u_{2n+1-a})` for `a = 1..n`, i.e. the diagonal of
/// the triangular off-diagonal block in the adapted basis. All `+1` for the
/// standard form on the canonical flag.
pub fn omega_component(omega: &Matrix, flag: &FlagData) -> Result<Vec<i8>, LocalModelError> {
    if let Some((index, condition)) = flag.first_violation(omega)? {
        return Err(LocalModelError::FlagViolation { index, condition });
    }
    let m = flag.adapted_gram(omega);
    let n = flag.dim_half();
    Ok((0..n).map(|a| sign(&m[(a, 2 * n - 1 - a)])).collect())
}

pub fn same_orientation_structure(
    omega0: &Matrix,
    omega1: &Matrix,
    flag: &FlagData,
) -> Result<bool, LocalModelError> {
    Ok(omega_component(omega0, flag)? == omega_component(omega1, flag)?)
}

/// Checks `(1-t)ω₀ + tω₁ ∈ Ω(F)` exactly at `t = k/(samples-1)`.
/// Convexity of each component means `false` signals an implementation bug.
pub fn convex_interpolation_check(
    omega0: &Matrix,
    omega1: &Matrix,
    flag: &FlagData,
    samples: usize,
) -> Result<bool, LocalModelError> {
    let s0 = omega_component(omega0, flag)?;
    let s1 = omega_component(omega1, flag)?;
    if s0 != s1 {
        return Err(LocalModelError::ComponentMismatch { left: s0, right: s1 });
    }
    let steps = samples.max(2) - 1;
    for k in 0..=steps {
        let t = Q::new(k.into(), steps.into());
        let omega_t = omega0.scale(&(int(1) - &t)).add(&omega1.scale(&t));
        match omega_component(&omega_t, flag) {
            Ok(s) if s == s0 => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_flag_spans() {
        let f = FlagData::canonical(3);
        // V_1 = span(∂x_2), V_4 = span(∂x, ∂p_0).
        assert_eq!(f.member(1), Matrix::identity(6).select_columns(&[2]));
        let v4 = f.member(4);
        for c in [0, 1, 2, 3] {
            assert!(v4.columns().iter().any(|col| *col == Matrix::identity(6).column(c)));
        }
    }

    #[test]
    fn standard_form_signs() {
        for n in 1..4 {
            let omega = SymplecticSpace::standard(n).form().clone();
            assert_eq!(omega_component(&omega, &FlagData::canonical(n)).unwrap(), vec![1; n]);
        }
    }
}
