//! Strata of the ridge models and the tangent planes of their branches.

use arbor::localmodels::{ridge_stratify, ridge_tangent_planes, RidgeModel};
use arbor::rational::{frac, Q};
use num::Zero;

fn main() {
    let model = RidgeModel::new(2, 3).unwrap();
    // Coordinates (q0, q1, q2, p0, p1, p2): two ridge factors and a flat one.
    let points = [
        ("both ridges at the corner", vec![Q::zero(), Q::zero(), frac(1, 2), Q::zero(), Q::zero(), Q::zero()]),
        ("one ridge on its vertical branch", vec![Q::zero(), Q::zero(), Q::zero(), frac(1, 3), Q::zero(), Q::zero()]),
        ("smooth point", vec![frac(1, 2), frac(1, 2), Q::zero(), Q::zero(), Q::zero(), Q::zero()]),
    ];
    for (name, x) in points {
        let order = ridge_stratify(&model, &x).unwrap();
        let planes = ridge_tangent_planes(&model, &x).unwrap();
        println!("{name}: order {order}, {} tangent planes", planes.len());
    }
}
