//! Constructive sampling of positive probes.
//!
//! Before the final symplectic change of coordinates: `T` is the `q`-plane,
//! `ν_j` the `p`-plane, `Z_{i_k} = ∂q_k`, and `ν_{i_k}` the graph of a form
//! `Ŝ_k` vanishing on `∂q_k`. On the coordinates `r ≤ m`, `r ≠ k`, `Ŝ_k` is
//! diagonal with entries `-k·c_r`; on the remaining coordinates it is
//! `S'_k = -(P_1 + … + P_k)` with `P_l` positive definite. Reducing by
//! `I(s)` keeps the coordinates `r < s` and `r > m`, where the reduced forms
//! satisfy `G_m < … < G_s < 0`, which makes every reduced tuple `≺`-ordered.

use super::BuildingProbe;
use crate::rational::{int, Q};
use crate::sample;
use crate::symplin::{LagrangianPlane, Matrix, SymplecticSpace};
use rand::Rng;
use std::collections::BTreeMap;

/// A probe in dimension `2n` of type `(1, …, m)` on block `m + 1`, positive
/// by construction. Requires `m ≤ n`.
pub fn positive_probe(rng: &mut impl Rng, n: usize, m: usize) -> BuildingProbe {
    assert!(m <= n, "type length exceeds the dimension");
    let space = SymplecticSpace::standard(n);
    let rest = n - m;
    let c: Vec<Q> = (0..m).map(|_| int(rng.gen_range(1..=3))).collect();
    let mut cumulative = Matrix::zeros(rest, rest);
    let mut verticals = BTreeMap::new();
    let mut liouville = BTreeMap::new();
    for k in 1..=m {
        cumulative = cumulative.add(sample::positive_definite(rng, rest, 2).matrix());
        let mut s_hat = Matrix::zeros(n, n);
        for r in 1..=m {
            if r != k {
                s_hat[(r - 1, r - 1)] = -(int(k as i64) * &c[r - 1]);
            }
        }
        for a in 0..rest {
            for b in 0..rest {
                s_hat[(m + a, m + b)] = -cumulative[(a, b)].clone();
            }
        }
        verticals.insert(k, LagrangianPlane::graph(&space, &s_hat).expect("symmetric"));
        liouville.insert(k, space.basis_vector(k - 1));
    }
    let j = m + 1;
    verticals.insert(j, LagrangianPlane::p_plane(&space));
    let probe = BuildingProbe {
        ambient: space.clone(),
        block_index: j,
        type_index: (1..=m).collect(),
        tangent: LagrangianPlane::q_plane(&space),
        verticals,
        liouville,
        eta: None,
    };
    let g = sample::symplectic_matrix(rng, n, 1);
    transform_probe(&probe, &g)
}

/// Image of every plane and vector under the symplectic matrix `g`.
pub fn transform_probe(p: &BuildingProbe, g: &Matrix) -> BuildingProbe {
    let map = |l: &LagrangianPlane| l.map(g).expect("symplectic image");
    BuildingProbe {
        ambient: p.ambient.clone(),
        block_index: p.block_index,
        type_index: p.type_index.clone(),
        tangent: map(&p.tangent),
        verticals: p.verticals.iter().map(|(i, l)| (*i, map(l))).collect(),
        liouville: p.liouville.iter().map(|(i, z)| (*i, g.mul_vec(z))).collect(),
        eta: p.eta.as_ref().map(map),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buildings::{find_positive_distribution, verify_distribution_positivity, verify_probe_positivity};
    use crate::rational::int;

    #[test]
    fn sampled_probes_are_positive_and_feasible() {
        let mut r = sample::rng(5);
        for (n, m) in [(2, 1), (3, 2), (4, 2), (2, 2), (3, 1)] {
            let mut p = positive_probe(&mut r, n, m);
            let report = verify_probe_positivity(&p).unwrap();
            assert!(report.verdict, "n={n} m={m}: {report:?}");
            let eta = find_positive_distribution(std::slice::from_ref(&p), &int(1)).unwrap();
            p.eta = Some(eta[0].clone());
            assert!(verify_distribution_positivity(&p).unwrap());
        }
    }
}
