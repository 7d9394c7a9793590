//! Signed rooted trees up to five vertices with their orientation counts.

use arbor::trees::{enumerate, orientation_counts, SignedRootedTree};

fn main() {
    let trees = enumerate(5);
    println!("{} signed rooted trees with at most 5 vertices", trees.len());
    for t in trees.iter().filter(|t| t.vertex_count() <= 3) {
        let c = orientation_counts(t).unwrap();
        println!("{:<12} dim {}  torsor {:>2}  classes {}", t.canonical_form(), t.dimension(), c.torsor_size, c.iso_classes);
    }
    let a2 = SignedRootedTree::chain(&[]).unwrap();
    println!("A2 has {} orientation classes", orientation_counts(&a2).unwrap().iso_classes);
    let star = SignedRootedTree::star(3);
    println!("the 3-star rooted at its center has {} classes", orientation_counts(&star).unwrap().iso_classes);
}
