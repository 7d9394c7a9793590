//! Components of the space of forms adapted to a flag, and convex paths
//! inside one component.

use arbor::localmodels::{convex_interpolation_check, omega_component, FlagData};
use arbor::sample;
use arbor::symplin::SymplecticSpace;

fn main() {
    let n = 2;
    let flag = FlagData::canonical(n);
    let standard = SymplecticSpace::standard(n).form().clone();
    println!("standard form signs: {:?}", omega_component(&standard, &flag).unwrap());

    let mut rng = sample::rng(11);
    let signs = vec![1, -1];
    let w0 = sample::flag_form(&mut rng, &flag, &signs, 3);
    let w1 = sample::flag_form(&mut rng, &flag, &signs, 3);
    println!("two random forms with signs {:?}: {:?} and {:?}", signs, omega_component(&w0, &flag).unwrap(), omega_component(&w1, &flag).unwrap());
    println!("segment stays in the component: {}", convex_interpolation_check(&w0, &w1, &flag, 33).unwrap());

    let w2 = sample::flag_form(&mut rng, &flag, &[1, 1], 3);
    match convex_interpolation_check(&w0, &w2, &flag, 33) {
        Ok(b) => println!("unexpected verdict {b}"),
        Err(e) => println!("different components are rejected: {e}"),
    }
}
