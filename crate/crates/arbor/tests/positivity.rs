mod common;

use arbor::positivity::{
    compare, cyclic_order_violations, cyclically_ordered, find_common_negative, in_positive_zone, reduction_preserves_zone_check,
    relation, Direction, PlaneTuple, Relation,
};
use arbor::sample;
use arbor::symplin::{symplectic_complement, LagrangianPlane, Matrix, Subspace, SymplecticSpace};
use common::{ldl_negative_definite, ldl_positive_definite, nondegenerate, pd, Frame};
use proptest::prelude::*;

fn oracle_relation(s: &Matrix) -> Relation {
    if ldl_positive_definite(s) {
        Relation::Succ
    } else if ldl_negative_definite(s) {
        Relation::Prec
    } else {
        Relation::Neither
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Over a frame `(τ, ν)` the relation reads off the definiteness of the
    /// graph matrix, and a symplectic change of frame does not alter it.
    #[test]
    fn relation_matches_definiteness_and_is_symplectically_invariant(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = sample::rng(seed);
        let fr = Frame::random(&mut rng, n);
        let s = match seed % 3 {
            0 => pd(&mut rng, n),
            1 => pd(&mut rng, n).neg(),
            _ => sample::symmetric(&mut rng, n, 3),
        };
        let l = fr.plane(&s);
        prop_assert_eq!(relation(&l, &fr.tau, &fr.nu).unwrap(), oracle_relation(&s));
        let g = sample::symplectic_matrix(&mut rng, n, 1);
        let moved = relation(&l.map(&g).unwrap(), &fr.tau.map(&g).unwrap(), &fr.nu.map(&g).unwrap()).unwrap();
        prop_assert_eq!(moved, oracle_relation(&s));
    }

    #[test]
    fn witness_is_the_graph_matrix_in_frame_coordinates(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = sample::rng(seed);
        let fr = Frame::random(&mut rng, n);
        let s = sample::symmetric(&mut rng, n, 3);
        let v = compare(&fr.plane(&s), &fr.tau, &fr.nu).unwrap();
        let w = v.witness.unwrap();
        prop_assert_eq!(w.matrix(), &s);
    }

    #[test]
    fn increasing_graphs_are_cyclically_ordered(seed in any::<u64>(), n in 1usize..4, k in 2usize..5) {
        let mut rng = sample::rng(seed);
        let fr = Frame::random(&mut rng, n);
        let mut s = nondegenerate(&mut rng, n);
        let mut planes = Vec::new();
        for _ in 0..k {
            planes.push(fr.plane(&s));
            s = s.add(&pd(&mut rng, n));
        }
        planes.push(fr.nu.clone());
        let t = PlaneTuple::new(planes.clone()).unwrap();
        prop_assert!(cyclically_ordered(&t, Direction::Prec).unwrap());
        prop_assert!(!cyclically_ordered(&t, Direction::Succ).unwrap());
        planes.reverse();
        let r = PlaneTuple::new(planes).unwrap();
        prop_assert!(cyclically_ordered(&r, Direction::Succ).unwrap());
    }

    #[test]
    fn common_negative_lies_below_every_plane(seed in any::<u64>(), n in 1usize..4, k in 1usize..5) {
        let mut rng = sample::rng(seed);
        let fr = Frame::random(&mut rng, n);
        let planes: Vec<LagrangianPlane> = (0..k).map(|_| fr.plane(&sample::symmetric(&mut rng, n, 3))).collect();
        let minus = find_common_negative(&planes, &fr.nu).unwrap();
        for p in &planes {
            prop_assert!(in_positive_zone(p, &minus, &fr.nu).unwrap());
        }
    }

    /// Positivity survives reduction by the coisotropic `ν + span(τ·v)`.
    #[test]
    fn reduction_keeps_positive_planes_in_the_closed_zone(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = sample::rng(seed);
        let fr = Frame::random(&mut rng, n);
        let l = fr.plane(&pd(&mut rng, n));
        let v = sample::int_matrix(&mut rng, n, 1, 2);
        prop_assume!(!v.is_zero());
        let dir = fr.tau.basis().mul(&v);
        let w = Subspace::span(&fr.space, &fr.nu.basis().hstack(&dir)).unwrap();
        prop_assert!(reduction_preserves_zone_check(&l, &fr.tau, &fr.nu, &w).unwrap());
    }
}

#[test]
fn zone_excludes_planes_meeting_nu() {
    let space = SymplecticSpace::standard(2);
    let tau = LagrangianPlane::q_plane(&space);
    let nu = LagrangianPlane::p_plane(&space);
    assert!(!in_positive_zone(&nu, &tau, &nu).unwrap());
    // {p1 = q1, q2 = 0} meets ν along ∂p2.
    let partial = LagrangianPlane::new(&space, Matrix::from_i64(&[&[1, 0], &[0, 0], &[1, 0], &[0, 1]])).unwrap();
    assert!(!in_positive_zone(&partial, &tau, &nu).unwrap());
    assert!(in_positive_zone(&tau, &tau, &nu).is_ok());
}

#[test]
fn degenerate_tuples_are_reported_not_ordered() {
    let space = SymplecticSpace::standard(1);
    let tau = LagrangianPlane::q_plane(&space);
    let nu = LagrangianPlane::p_plane(&space);
    let t = PlaneTuple::new(vec![tau.clone(), tau, nu]).unwrap();
    assert_eq!(t.first_non_transverse_pair(), Some((0, 1)));
    assert!(cyclic_order_violations(&t, Direction::Prec).is_err());
}

#[test]
fn short_tuples_and_mixed_spaces_are_rejected() {
    let a = SymplecticSpace::standard(1);
    let b = SymplecticSpace::standard(2);
    assert!(PlaneTuple::new(vec![LagrangianPlane::q_plane(&a), LagrangianPlane::p_plane(&a)]).is_err());
    assert!(PlaneTuple::new(vec![LagrangianPlane::q_plane(&a), LagrangianPlane::p_plane(&a), LagrangianPlane::q_plane(&b)]).is_err());
}

#[test]
fn symplectic_complement_of_nu_is_nu() {
    let space = SymplecticSpace::standard(3);
    let nu = LagrangianPlane::p_plane(&space);
    assert!(symplectic_complement(nu.as_subspace()).same_span(nu.as_subspace()));
}
