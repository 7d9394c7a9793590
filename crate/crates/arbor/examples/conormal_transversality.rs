//! Conormals of hyperplanes against the graph of a quadratic form: always
//! transverse for definite forms, and a null vector breaks transversality.

use arbor::positivity::{conormal_transversality, null_vector_hyperplane, rational_null_vector};
use arbor::rational::int;
use arbor::symplin::{Matrix, QuadraticForm};

fn main() {
    let definite = QuadraticForm::new(Matrix::from_i64(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]])).unwrap();
    let hyperplanes = [[1, 0, 0], [1, -1, 0], [3, 2, -5]];
    for h in hyperplanes {
        let h: Vec<_> = h.iter().map(|&x| int(x)).collect();
        println!("definite form, h = {:?}: transverse {}", h.iter().map(|x| x.to_string()).collect::<Vec<_>>(), conormal_transversality(&definite, &h).unwrap());
    }

    let indefinite = QuadraticForm::new(Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
    let x = rational_null_vector(&indefinite).expect("diag(1, -1) has a rational null vector");
    let h = null_vector_hyperplane(&indefinite, &x).unwrap();
    println!(
        "diag(1, -1): null vector {:?}, hyperplane {:?}, transverse {}",
        x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        h.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        conormal_transversality(&indefinite, &h).unwrap()
    );
}
