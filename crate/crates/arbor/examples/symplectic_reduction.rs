//! Coisotropic reduction of Lagrangian planes and definiteness of forms
//! by Sylvester minors and by congruence diagonalization.

use arbor::symplin::{graph_form, reduce, symplectic_complement, LagrangianPlane, Matrix, QuadraticForm, Subspace, SymplecticSpace};

fn show(m: &Matrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn main() {
    let space = SymplecticSpace::standard(2);
    // W = span(∂q1, ∂p1, ∂q2) has W^⊥ = span(∂q2).
    let w = Subspace::new(&space, Matrix::identity(4).select_columns(&[0, 2, 1])).unwrap();
    println!("dim W = {}, dim W^perp = {}", w.dim(), symplectic_complement(&w).dim());

    let l = LagrangianPlane::graph(&space, &Matrix::from_i64(&[&[2, 1], &[1, 3]])).unwrap();
    let tau = LagrangianPlane::q_plane(&space);
    let nu = LagrangianPlane::p_plane(&space);
    let rl = reduce(&l, &w).unwrap();
    let (rt, rn) = (reduce(&tau, &w).unwrap(), reduce(&nu, &w).unwrap());
    println!("reduced space has dimension {}", rl.ambient().dim());
    println!("form of L over (tau, nu):             {}", show(graph_form(&l, &tau, &nu).unwrap().matrix()));
    println!("form of [L] over ([tau], [nu]):       {}", show(graph_form(&rl, &rt, &rn).unwrap().matrix()));

    for rows in [&[&[2i64, 1][..], &[1, 2]][..], &[&[1, 2], &[2, 1]]] {
        let q = QuadraticForm::new(Matrix::from_i64(rows)).unwrap();
        println!(
            "{:?}: minors {:?}, positive definite {}, inertia {:?}",
            rows,
            q.leading_minors().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            q.is_positive_definite(),
            q.inertia()
        );
    }
}
