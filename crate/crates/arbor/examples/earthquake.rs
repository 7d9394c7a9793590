//! Earthquake sections: one-sided slopes at a fault, rank-one jumps
//! across line faults, and a transversality scan against a shear field.

use arbor::flows::{earthquake_section, fault_samples, tectonic_jump_check, transversality_scan, EarthquakeSpec, EtaField, Fault, Polynomial, ScanGrid, Theta, RANK_RATIO};

fn line(c: f64, a: &[f64]) -> Fault {
    Fault { phi: Polynomial::affine(c, a), theta: Theta::Constant(1.0), injected_jump: None }
}

fn main() {
    let one = EarthquakeSpec { schema_version: 1, dim: 1, faults: vec![line(0.0, &[1.0])] };
    let s = earthquake_section(&one, &[0.0], 1.5).unwrap();
    println!("slopes at the fault for t = 1.5: {:?} and {:?}", s.sides[0].minus, s.sides[0].plus);

    let plane = EarthquakeSpec { schema_version: 1, dim: 2, faults: vec![line(0.2, &[1.0, -2.0])] };
    let pts = fault_samples(&plane, 0, &[-1.0, -1.0], &[1.0, 1.0], 20);
    let (ok, samples) = tectonic_jump_check(&plane, 0, &pts, 1.0, RANK_RATIO).unwrap();
    println!("rank-one jumps at {} fault samples: {ok}; first singular values {:?}", samples.len(), samples[0].singular_values);

    let eta = EtaField::Shear { kappa: 1.0 };
    let grid = ScanGrid { lo: vec![-1.0], hi: vec![1.0], points: 201, tol: 1e-6 };
    let ridged = EarthquakeSpec { schema_version: 1, dim: 1, faults: vec![line(0.5, &[1.0]), line(-0.5, &[1.0])] };
    let flat = EarthquakeSpec { schema_version: 1, dim: 1, faults: vec![] };
    println!("tangency with two ridges: {:?}", transversality_scan(&ridged, &eta, 1.0, &grid).unwrap());
    println!("tangency with none: {:?}", transversality_scan(&flat, &eta, 1.0, &grid).unwrap());
}
