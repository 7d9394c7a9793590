//! Normalizing a pair of forms on a stabilized model and reading off the
//! one free block.

use arbor::localmodels::{difference_block, normalize_stabilized_pair, normalize_stabilized_pair_with, pulled_back_agrees};
use arbor::rational::int;
use arbor::sample;
use arbor::symplin::Matrix;

fn main() {
    let (n_t, d) = (1, 2);
    let mut rng = sample::rng(5);
    let w0 = sample::stabilized_form(&mut rng, n_t, d, 2);
    let w1 = sample::stabilized_form(&mut rng, n_t, d, 2);
    let psi0 = normalize_stabilized_pair(&w0, &w1, n_t, d).unwrap();
    println!("Psi pulls back omega0 to omega1: {}", pulled_back_agrees(&w0, &w1, &psi0, n_t, d));

    let s = Matrix::from_fn(d, d, |i, j| if i == j { int(1) } else { int(0) });
    let psi1 = normalize_stabilized_pair_with(&w0, &w1, n_t, d, &s).unwrap();
    println!("with free block S = I also pulls back: {}", pulled_back_agrees(&w0, &w1, &psi1, n_t, d));
    let block = difference_block(&psi0, &psi1, n_t, d).expect("two normalizations differ in one block");
    println!("difference block: {:?}", block.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
}
