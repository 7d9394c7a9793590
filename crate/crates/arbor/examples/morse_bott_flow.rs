//! The index-1 Morse-Bott model: Lyapunov margin, skeleton estimate and a
//! check that the Liouville form scales by `e^t` along the flow.

use arbor::flows::{distance_to_critical_set, liouville_scaling_ratio, lyapunov_check, skeleton_estimate, FactorIndex, Grid, MorseBottModel};

fn main() {
    let m = MorseBottModel::planar(FactorIndex::One, 0.2).unwrap();
    let report = lyapunov_check(&m, &Grid::square(1.0, 120, 1e-3)).unwrap();
    println!("Lyapunov margin {:.3e} over {} points ({} skipped)", report.margin, report.evaluated, report.skipped);

    let seeds = arbor::cli::mb_seeds(1, 6);
    let ends = skeleton_estimate(&m, &seeds, 15.0, 1e-3).unwrap();
    let worst = ends.iter().map(|x| distance_to_critical_set(x)).fold(0.0, f64::max);
    println!("{} seeds flow back to within {worst:.2e} of the skeleton", seeds.len());

    let ratio = liouville_scaling_ratio(&m, &[0.3, -0.4], &[0.2, 1.0], 1.0, 1e-3, 1e-5).unwrap();
    println!("lambda scaling over t = 1: {ratio:.6} (e = {:.6})", 1f64.exp());
}
