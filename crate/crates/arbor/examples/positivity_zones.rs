//! Compare Lagrangian planes in `T*ℝ²`, test zone membership and cyclic
//! order, and build a common negative plane for a few graphs.

use arbor::positivity::{compare, cyclically_ordered, find_common_negative, in_positive_zone, Direction, PlaneTuple};
use arbor::symplin::{LagrangianPlane, Matrix, SymplecticSpace};

fn main() {
    let space = SymplecticSpace::standard(2);
    let tau = LagrangianPlane::q_plane(&space);
    let nu = LagrangianPlane::p_plane(&space);
    let graph = |rows: &[&[i64]]| LagrangianPlane::graph(&space, &Matrix::from_i64(rows)).unwrap();

    for (name, l) in [
        ("diag(2, 1)", graph(&[&[2, 0], &[0, 1]])),
        ("diag(-1, -3)", graph(&[&[-1, 0], &[0, -3]])),
        ("[[1, 2], [2, 1]]", graph(&[&[1, 2], &[2, 1]])),
    ] {
        let v = compare(&l, &tau, &nu).unwrap();
        println!("graph of {name:<18} relation {:?}, in C(tau, nu): {}", v.relation, in_positive_zone(&l, &tau, &nu).unwrap());
    }

    // Graphs of increasing forms stacked toward ν read as a ≺-ordered cycle.
    let planes = vec![tau.clone(), graph(&[&[1, 0], &[0, 1]]), graph(&[&[3, 1], &[1, 2]]), nu.clone()];
    let t = PlaneTuple::new(planes).unwrap();
    println!("cyclically prec-ordered: {}", cyclically_ordered(&t, Direction::Prec).unwrap());
    println!("cyclically succ-ordered: {}", cyclically_ordered(&t, Direction::Succ).unwrap());

    let others = vec![graph(&[&[1, 0], &[0, 1]]), graph(&[&[0, 1], &[1, 0]]), graph(&[&[-2, 0], &[0, 5]])];
    let minus = find_common_negative(&others, &nu).unwrap();
    for (i, o) in others.iter().enumerate() {
        let v = compare(o, &minus, &nu).unwrap();
        println!("plane {i} lies in C(L-, nu): {:?}", v.relation);
    }
}
