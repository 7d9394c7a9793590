//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on
//! any failure. Built with `harness = false`; run with
//! `cargo test -p arbor --test acceptance`.

mod common;

use arbor::buildings::{blend_distributions, find_positive_distribution, positive_probe, verify_distribution_positivity};
use arbor::flows::{
    earthquake_section, fault_samples, lyapunov_check, skeleton_estimate, distance_to_critical_set, tectonic_jump_check,
    trajectory, transversality_scan, EarthquakeSpec, EtaField, FactorIndex, Fault, Grid, MorseBottModel, Polynomial,
    ScanGrid, Theta, RANK_RATIO,
};
use arbor::localmodels::{convex_interpolation_check, omega_component, ridge_tangent_planes, FlagData, LocalModelError, RidgeModel};
use arbor::positivity::{
    classify, conormal_transversality, in_positive_zone, line_family, line_reduction_relation, null_vector_hyperplane,
    rational_null_vector, relation, Relation,
};
use arbor::rational::{frac, int, Q};
use arbor::sample;
use arbor::symplin::{graph_form, LagrangianPlane, Matrix, QuadraticForm, SymplecticSpace};
use arbor::trees::{enumerate, orientation_counts, SignedRootedTree};
use common::*;
use num::Zero;
use rand::Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

type Verdict = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `f` on seeds `0..count` in parallel; collects the failures.
fn sweep(count: u64, base: u64, f: impl Fn(&mut sample::SampleRng) -> Result<(), String> + Sync) -> Vec<String> {
    (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = sample::rng(base.wrapping_mul(1_000_003).wrapping_add(i));
            f(&mut rng).err().map(|e| format!("seed {i}: {e}"))
        })
        .collect()
}

fn summarize(failures: Vec<String>, ok: String) -> Verdict {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(format!("{} counterexamples, first: {}", failures.len(), failures[0]))
    }
}

fn perm_parity(p: [usize; 3]) -> bool {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// One instance of every axiom in the suite, in dimension `2n`.
fn axiom_instance(rng: &mut sample::SampleRng, n: usize) -> Result<(), String> {
    let fr = Frame::random(rng, n);
    let (tau, nu) = (&fr.tau, &fr.nu);
    let rel = |a: &LagrangianPlane, b: &LagrangianPlane, c: &LagrangianPlane| relation(a, b, c).map_err(|e| e.to_string());
    let zone = |a: &LagrangianPlane, b: &LagrangianPlane, c: &LagrangianPlane| in_positive_zone(a, b, c).map_err(|e| e.to_string());

    // Duality and exchange on a nondegenerate graph, so L ⋔ τ as well.
    let s = match rng.gen_range(0..3) {
        0 => pd(rng, n),
        1 => pd(rng, n).neg(),
        _ => nondegenerate(rng, n),
    };
    let l = fr.plane(&s);
    let r = rel(&l, tau, nu)?;
    let dual = rel(&l, nu, tau)?;
    check((r == Relation::Succ) == (dual == Relation::Prec) && (r == Relation::Prec) == (dual == Relation::Succ), || {
        format!("duality: {r:?} vs {dual:?}")
    })?;
    let exch = rel(tau, &l, nu)?;
    check((r == Relation::Succ) == (exch == Relation::Prec) && (r == Relation::Prec) == (exch == Relation::Succ), || {
        format!("exchange: {r:?} vs {exch:?}")
    })?;

    // Transitivity: constructive chain, plus an unconstrained pair.
    let sl = pd(rng, n);
    let sk = sl.add(&pd(rng, n));
    let (lp, kp) = (fr.plane(&sl), fr.plane(&sk));
    check(rel(&kp, &lp, nu)? == Relation::Succ && rel(&lp, tau, nu)? == Relation::Succ, || "chain hypotheses".into())?;
    check(rel(&kp, tau, nu)? == Relation::Succ, || "transitivity (constructed)".into())?;
    let (ka, la) = (fr.plane(&nondegenerate(rng, n)), fr.plane(&nondegenerate(rng, n)));
    if arbor::symplin::planes_transverse(&ka, &la)
        && rel(&ka, &la, nu)? == Relation::Succ
        && rel(&la, tau, nu)? == Relation::Succ
    {
        check(rel(&ka, tau, nu)? == Relation::Succ, || "transitivity (random)".into())?;
    }

    // Σ₃ sign rule on a pairwise transverse triple.
    let triple = [l.clone(), tau.clone(), nu.clone()];
    let base = rel(&triple[0], &triple[1], &triple[2])?;
    for p in PERMS {
        let got = rel(&triple[p[0]], &triple[p[1]], &triple[p[2]])?;
        let want = if perm_parity(p) { base.flip() } else { base };
        check(got == want, || format!("sign rule {p:?}: {got:?}, want {want:?}"))?;
    }

    // First reformulation, both alternatives of the hypothesis.
    let t1 = nondegenerate(rng, n);
    let l1m = t1.add(&pd(rng, n));
    let l2m = l1m.add(&pd(rng, n));
    let (tp, p1, p2) = (fr.plane(&t1), fr.plane(&l1m), fr.plane(&l2m));
    check(zone(&p2, &p1, nu)? && zone(&p1, &tp, nu)?, || "reform(i) hypotheses A".into())?;
    check(zone(&p2, &p1, &tp)?, || "reform(i) with L1 ∈ C(τ, ν)".into())?;
    let s1 = nondegenerate(rng, n);
    let s2 = s1.add(&pd(rng, n));
    let st = s2.add(&pd(rng, n));
    let (q1, q2, qt) = (fr.plane(&s1), fr.plane(&s2), fr.plane(&st));
    check(zone(&q2, &q1, nu)? && zone(&qt, &q2, nu)?, || "reform(i) hypotheses B".into())?;
    check(zone(&q2, &q1, &qt)?, || "reform(i) with τ ∈ C(L2, ν)".into())?;

    // Second reformulation with L4 = ν.
    let m1 = nondegenerate(rng, n);
    let m2 = m1.add(&pd(rng, n));
    let m3 = m2.add(&pd(rng, n));
    let (a1, a2, a3) = (fr.plane(&m1), fr.plane(&m2), fr.plane(&m3));
    check(zone(&a3, &a2, nu)? && zone(&a2, &a1, nu)?, || "reform(ii) hypotheses".into())?;
    check(zone(&a2, &a1, &a3)?, || "reform(ii): L2 ∈ C(L1, L3)".into())?;
    let inside = arbor::symplin::plane_from_form(&a2, &a3, &QuadraticForm::new(pd(rng, n)).unwrap()).unwrap();
    check(zone(&inside, &a2, &a3)?, || "reform(ii) sample".into())?;
    check(zone(&inside, &a1, nu)?, || "reform(ii): C(L2, L3) ⊂ C(L1, L4)".into())?;

    // Third reformulation.
    let (b1, b2) = (fr.plane(&nondegenerate(rng, n)), nu.clone());
    let lm = arbor::symplin::plane_from_form(&b1, &b2, &QuadraticForm::new(pd(rng, n)).unwrap()).unwrap();
    let lp = arbor::symplin::plane_from_form(&b2, &b1, &QuadraticForm::new(pd(rng, n)).unwrap()).unwrap();
    check(zone(&lm, &b1, &b2)? && zone(&lp, &b2, &b1)?, || "reform(iii) hypotheses".into())?;
    check(zone(&lm, &lp, &b2)?, || "reform(iii)".into())?;
    Ok(())
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=4 {
        failures.extend(sweep(1000, 100 + n as u64, |r| axiom_instance(r, n)).into_iter().map(|f| format!("2n={}: {f}", 2 * n)));
    }
    let elapsed = start.elapsed();
    if failures.is_empty() && elapsed > Duration::from_secs(60) {
        return Err(format!("4000 instances clean but took {:.1}s (target 60s)", elapsed.as_secs_f64()));
    }
    summarize(failures, format!("4000 instances (1000 per 2n in 2,4,6,8), 0 counterexamples, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Verdict {
    let failures = sweep(1000, 2, |r| {
        let n = r.gen_range(1..=6);
        let m = match r.gen_range(0..4) {
            0 => sample::symmetric(r, n, 4),
            1 => pd(r, n),
            // Semidefinite and singular when the factor is singular.
            2 => {
                let a = sample::int_matrix(r, n.saturating_sub(1).max(1), n, 2);
                a.transpose().mul(&a)
            }
            _ => pd(r, n).sub(&Matrix::identity(n).scale(&int(r.gen_range(1..=3)))),
        };
        let q = QuadraticForm::new(m.clone()).unwrap();
        let minors = q.is_positive_definite();
        let ldl = ldl_positive_definite(&m);
        let inertia = q.inertia();
        let lib_ldl = inertia.negative == 0 && inertia.zero == 0;
        check(minors == ldl && ldl == lib_ldl, || format!("dim {n}: minors {minors}, oracle {ldl}, pivoted {lib_ldl}"))?;
        let neg = q.is_negative_definite();
        check(neg == ldl_negative_definite(&m), || format!("dim {n}: negative definiteness disagrees"))
    });
    summarize(failures, "1000 matrices, dims 1..6, 0 disagreements between minors, unpivoted and pivoted LDL".into())
}

fn criterion_3() -> Verdict {
    let mut failures = Vec::new();
    for n in [2usize, 3] {
        failures.extend(sweep(200, 30 + n as u64, |r| {
            let fr = Frame::random(r, n);
            let s = match r.gen_range(0..3) {
                0 => pd(r, n),
                1 => sample::symmetric(r, n, 3),
                _ => pd(r, n).sub(&Matrix::identity(n).scale(&int(2))),
            };
            let l = fr.plane(&s);
            let q = graph_form(&l, &fr.tau, &fr.nu).map_err(|e| e.to_string())?;
            let full = classify(&q) == Relation::Succ;
            let mut all = true;
            for v in line_family(&q) {
                let rel = line_reduction_relation(&l, &fr.tau, &fr.nu, &v).map_err(|e| e.to_string())?;
                // Restriction oracle: the 2-dimensional reduction is the 1×1 form Q(v).
                let restricted = q.eval(&v);
                let want = match restricted.cmp(&Q::zero()) {
                    std::cmp::Ordering::Greater => Relation::Succ,
                    std::cmp::Ordering::Less => Relation::Prec,
                    std::cmp::Ordering::Equal => Relation::Neither,
                };
                check(rel == want, || format!("line {v:?}: reduced {rel:?}, restricted {want:?}"))?;
                all &= rel == Relation::Succ;
            }
            check(full == all, || format!("2n={}: definite {full}, all lines {all}", 2 * n))
        }));
    }
    summarize(failures, "400 instances (200 per 2n in 4,6), full definiteness equals all line reductions".into())
}

fn criterion_4() -> Verdict {
    let mut failures = Vec::new();
    let trees = enumerate(5);
    for t in &trees {
        let c = orientation_counts(t).map_err(|e| e.to_string())?;
        if c.torsor_size != 1u128 << t.edge_count() || c.iso_classes != 1u128 << t.root_edge_count() {
            failures.push(format!("{}: counts {} / {}", t.canonical_form(), c.torsor_size, c.iso_classes));
        }
        if t.vertex_count() <= 4 {
            let gluings = cech_gluings(t);
            let distinct: std::collections::BTreeSet<_> = gluings.iter().collect();
            if distinct.len() as u128 != c.torsor_size {
                failures.push(format!("{}: Čech enumeration gives {}", t.canonical_form(), distinct.len()));
            }
            if coorientation_choices(t) as u128 != c.iso_classes {
                failures.push(format!("{}: coorientation enumeration disagrees", t.canonical_form()));
            }
        }
    }
    // Enumeration itself against labelled Prüfer trees.
    for k in 1..=5 {
        let lib: std::collections::BTreeSet<String> = trees.iter().filter(|t| t.vertex_count() == k).map(canonical_of).collect();
        let brute = brute_force_classes(k);
        if lib != brute {
            failures.push(format!("{k} vertices: enumerate has {}, brute force {}", lib.len(), brute.len()));
        }
    }
    let a2 = orientation_counts(&SignedRootedTree::chain(&[]).unwrap()).map_err(|e| e.to_string())?;
    if a2.iso_classes != 2 {
        failures.push(format!("A2 has {} classes", a2.iso_classes));
    }
    summarize(failures, format!("{} trees with ≤ 5 vertices, Čech cross-check on ≤ 4, A2 has 2 classes", trees.len()))
}

fn criterion_5() -> Verdict {
    let mut failures = Vec::new();
    for n in 1..=3usize {
        failures.extend(sweep(200, 50 + n as u64, |r| {
            let basis = loop {
                let b = sample::int_matrix(r, 2 * n, 2 * n, 2);
                if !b.det().is_zero() {
                    break b;
                }
            };
            let flag = FlagData::from_adapted_basis(basis.clone()).map_err(|e| e.to_string())?;
            let signs = sample::signs(r, n);
            let w0 = sample::flag_form(r, &flag, &signs, 3);
            let w1 = sample::flag_form(r, &flag, &signs, 3);
            // Zero-pattern oracle in the adapted basis.
            let gram = basis.transpose().mul(&w0).mul(&basis);
            check(in_flag_component(&gram).as_deref() == Some(&signs[..]), || "zero-pattern oracle rejects sample".into())?;
            check(omega_component(&w0, &flag).map_err(|e| e.to_string())? == signs, || "component signs".into())?;
            check(convex_interpolation_check(&w0, &w1, &flag, 33).map_err(|e| e.to_string())?, || "interpolation left Ω(F)".into())?;
            let mut other = signs.clone();
            let flip = r.gen_range(0..n);
            other[flip] = -other[flip];
            let w2 = sample::flag_form(r, &flag, &other, 3);
            match convex_interpolation_check(&w0, &w2, &flag, 33) {
                Err(LocalModelError::ComponentMismatch { .. }) => Ok(()),
                other => Err(format!("opposite signs not rejected: {other:?}")),
            }
        }));
    }
    summarize(failures, "600 forms (200 per n in 1,2,3), convex paths stay in Ω(F), mismatched signs rejected".into())
}

fn criterion_6() -> Verdict {
    let mut failures = sweep(100, 6, |r| {
        let n = r.gen_range(2..=4);
        let q = sample::positive_definite(r, n, 3);
        for _ in 0..100 {
            let h = loop {
                let h: Vec<Q> = (0..n).map(|_| sample::small_int(r, 5)).collect();
                if h.iter().any(|x| !x.is_zero()) {
                    break h;
                }
            };
            check(conormal_transversality(&q, &h).map_err(|e| e.to_string())?, || format!("definite form, h = {h:?}"))?;
        }
        Ok(())
    });
    failures.extend(sweep(100, 7, |r| {
        let n = r.gen_range(2..=4);
        let (q, planted) = indefinite_with_null(r, n);
        let x = rational_null_vector(&q).unwrap_or(planted);
        check(q.eval(&x).is_zero(), || "null vector is not null".into())?;
        let h = null_vector_hyperplane(&q, &x).map_err(|e| e.to_string())?;
        check(!conormal_transversality(&q, &h).map_err(|e| e.to_string())?, || "indefinite form stayed transverse".into())?;
        // Witness oracle: (x, Qx) lies on the graph and on the conormal.
        let space = SymplecticSpace::standard(n);
        let qx = q.matrix().mul_vec(&x);
        let w: Vec<Q> = x.iter().chain(&qx).cloned().collect();
        let graph = LagrangianPlane::graph(&space, q.matrix()).unwrap();
        let conormal = arbor::positivity::conormal_plane(&space, &h).map_err(|e| e.to_string())?;
        check(
            graph.as_subspace().contains_vector(&w) && conormal.as_subspace().contains_vector(&w),
            || "witness not in the intersection".into(),
        )
    }));
    summarize(failures, "10000 definite cases transverse, 100 indefinite cases meet their null hyperplane".into())
}

fn criterion_7() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=4usize {
        for k in 0..=n {
            let model = RidgeModel::new(k, n).map_err(|e| e.to_string())?;
            // Every subset of ridge factors at the corner; the others on a smooth branch.
            for mask in 0u32..1 << k {
                let mut point = vec![Q::zero(); 2 * n];
                for j in 0..n {
                    let corner = j < k && mask >> j & 1 == 1;
                    if !corner {
                        if j < k && j % 2 == 1 {
                            point[n + j] = frac(1, 2);
                        } else {
                            point[j] = frac(1, 3);
                        }
                    }
                }
                let order = mask.count_ones();
                let planes = ridge_tangent_planes(&model, &point).map_err(|e| e.to_string())?;
                let distinct = planes
                    .iter()
                    .enumerate()
                    .all(|(i, a)| planes[i + 1..].iter().all(|b| !a.as_subspace().same_span(b.as_subspace())));
                let lagrangian = planes.iter().all(|p| p.as_subspace().is_lagrangian());
                if planes.len() != 1 << order || !distinct || !lagrangian {
                    failures.push(format!("(k={k}, n={n}) order {order}: {} planes", planes.len()));
                }
                checked += 1;
            }
        }
    }
    summarize(failures, format!("{checked} strata over all (k, n ≤ 4): exactly 2^j distinct Lagrangian planes"))
}

fn criterion_8() -> Verdict {
    let failures = sweep(100, 8, |r| {
        let n = r.gen_range(2..=4);
        let m = r.gen_range(1..=2);
        let probe = positive_probe(r, n, m);
        let one = find_positive_distribution(std::slice::from_ref(&probe), &int(1)).map_err(|e| e.to_string())?;
        let other = find_positive_distribution(std::slice::from_ref(&probe), &int(r.gen_range(2..=9))).map_err(|e| e.to_string())?;
        let verify = |eta: &LagrangianPlane| {
            let mut p = probe.clone();
            p.eta = Some(eta.clone());
            verify_distribution_positivity(&p).map_err(|e| e.to_string())
        };
        check(verify(&one[0])? && verify(&other[0])?, || format!("2n={} |I|={m}: solution fails", 2 * n))?;
        let mid = blend_distributions(&probe, &one[0], &other[0], &frac(1, 2)).map_err(|e| e.to_string())?;
        check(verify(&mid)?, || format!("2n={} |I|={m}: midpoint fails", 2 * n))
    });
    summarize(failures, "100 sampled probes (2n in 4..8, |I| ≤ 2): found, verified, midpoints verified".into())
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let m = MorseBottModel::planar(FactorIndex::One, 0.2).map_err(|e| e.to_string())?;
    let report = lyapunov_check(&m, &Grid::square(1.0, 200, 1e-3)).map_err(|e| e.to_string())?;
    if !(report.margin > 0.0) {
        return Err(format!("Lyapunov margin {} at {:?}", report.margin, report.argmin));
    }
    let seeds = arbor::cli::mb_seeds(1, 10);
    let ends = skeleton_estimate(&m, &seeds, 20.0, 1e-3).map_err(|e| e.to_string())?;
    let worst = ends.iter().map(|x| distance_to_critical_set(x)).fold(0.0, f64::max);
    if !(worst < 1e-4) {
        return Err(format!("skeleton estimate off by {worst:e}"));
    }
    // ψ = 0 for q ≥ 0, where the backward flow is ṗ = −p and q̇ = 0.
    let seed = [0.5, 0.8];
    let traj = trajectory(&m, &seed, 5.0, 1e-3, -1.0, 100).map_err(|e| e.to_string())?;
    let decay = traj.iter().map(|(t, x)| ((x[1] / seed[1]) - (-t).exp()).abs() / (-t).exp()).fold(0.0, f64::max);
    if !(decay < 1e-6) {
        return Err(format!("p-decay relative error {decay:e}"));
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "margin {:.3e} over {} points, skeleton within {:.1e}, decay error {:.1e}, {:.1}s",
        report.margin,
        report.evaluated,
        worst,
        decay,
        elapsed.as_secs_f64()
    );
    if elapsed > Duration::from_secs(30) {
        return Err(format!("{detail} exceeds the 30s target"));
    }
    Ok(detail)
}

fn line_fault(a: f64, b: f64, c: f64, theta: Theta) -> Fault {
    Fault { phi: Polynomial::affine(c, &[a, b]), theta, injected_jump: None }
}

fn criterion_10() -> Verdict {
    // One fault φ = q with θ ≡ 1: slopes 0 and 2t on either side.
    let single = EarthquakeSpec {
        schema_version: 1,
        dim: 1,
        faults: vec![Fault { phi: Polynomial::affine(0.0, &[1.0]), theta: Theta::Constant(1.0), injected_jump: None }],
    };
    for t in [0.25, 0.5, 1.0, 2.0] {
        let s = earthquake_section(&single, &[0.0], t).map_err(|e| e.to_string())?;
        let sides = s.sides.first().ok_or("no one-sided data at the fault")?;
        if sides.minus != vec![vec![0.0]] || sides.plus != vec![vec![2.0 * t]] || s.p != vec![0.0] {
            return Err(format!("t = {t}: slopes {:?} / {:?}", sides.minus, sides.plus));
        }
    }
    let bump = || Theta::Bump { center: vec![0.1, -0.2], inner: 0.5, outer: 4.0 };
    let configs = vec![
        vec![line_fault(1.0, 0.0, 0.0, Theta::Constant(1.0))],
        vec![line_fault(1.0, 2.0, 0.3, Theta::Constant(0.7))],
        vec![line_fault(-0.6, 0.8, -0.1, bump())],
        vec![line_fault(1.0, 1.0, 0.0, bump()), line_fault(1.0, -1.0, 0.5, Theta::Constant(2.0))],
    ];
    let mut worst: f64 = 0.0;
    for (ci, faults) in configs.into_iter().enumerate() {
        let e = EarthquakeSpec { schema_version: 1, dim: 2, faults };
        for j in 0..e.faults.len() {
            let pts = fault_samples(&e, j, &[-1.0, -1.0], &[1.0, 1.0], 50);
            if pts.len() != 50 {
                return Err(format!("config {ci} fault {j}: only {} samples", pts.len()));
            }
            let (ok, samples) = tectonic_jump_check(&e, j, &pts, 1.0, RANK_RATIO).map_err(|e| e.to_string())?;
            for s in &samples {
                worst = worst.max(s.singular_values[1] / s.singular_values[0]);
            }
            if !ok {
                return Err(format!("config {ci} fault {j}: jump not rank one"));
            }
        }
    }
    let fault = |c: f64| Fault { phi: Polynomial::affine(c, &[1.0]), theta: Theta::Constant(1.0), injected_jump: None };
    let ridged = EarthquakeSpec { schema_version: 1, dim: 1, faults: vec![fault(0.5), fault(-0.5)] };
    let flat = EarthquakeSpec { schema_version: 1, dim: 1, faults: vec![] };
    let eta = EtaField::Shear { kappa: 1.0 };
    let grid = ScanGrid { lo: vec![-1.0], hi: vec![1.0], points: 201, tol: 1e-6 };
    let with = transversality_scan(&ridged, &eta, 1.0, &grid).map_err(|e| e.to_string())?;
    let without = transversality_scan(&flat, &eta, 1.0, &grid).map_err(|e| e.to_string())?;
    if !with.is_empty() || without.is_empty() {
        return Err(format!("scan: two ridges empty = {}, no ridges empty = {}", with.is_empty(), without.is_empty()));
    }
    Ok(format!("slopes exact, 5 faults x 50 samples rank one (max σ2/σ1 {worst:.1e}), scan empty with ridges only"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn criterion_11() -> Verdict {
    let runs: Vec<Vec<String>> = vec![
        vec!["trees", "enumerate", "--max-vertices", "6"],
        vec!["trees", "orient", &fixture("tree_a4.json")],
        vec!["pos", "compare", "--L", &fixture("plane_l.json"), "--tau", &fixture("plane_tau.json"), "--nu", &fixture("plane_nu.json")],
        vec!["pos", "cycle", "--tuple", &fixture("tuple_cycle.json"), "--dir", "prec"],
        vec!["building", "verify", &fixture("building.json"), "--find-distribution"],
        vec!["front", "render", "--model", "a3", "--orientation", "2"],
        vec!["flow", "mb", "--index", "1", "--grid", "100x100", "--seeds", "6", "--horizon", "10"],
        vec!["quake", "run", "--spec", &fixture("quake_2d.json"), "--scan-eta", &fixture("eta_vertical_2d.json"), "--scan-points", "41"],
    ]
    .into_iter()
    .map(|v| std::iter::once("arbor").chain(v.iter().map(|s| s.as_ref())).map(String::from).collect::<Vec<_>>())
    .collect();
    let mut failures = Vec::new();
    for argv in &runs {
        let a = arbor::cli::run(argv.clone());
        let b = arbor::cli::run(argv.clone());
        if a.code == 2 {
            failures.push(format!("{}: malformed ({})", a.manifest.subcommand, a.diagnostics.trim()));
        } else if a.manifest.result_digest != b.manifest.result_digest || a.code != b.code {
            failures.push(format!("{}: digests differ", a.manifest.subcommand));
        }
    }
    summarize(failures, format!("{} subcommands, identical result digests across repeated runs", runs.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("positivity axiom suite", criterion_1),
        ("Sylvester dual oracle", criterion_2),
        ("line-reduction equivalence", criterion_3),
        ("orientation counts", criterion_4),
        ("flag-form components", criterion_5),
        ("conormal transversality", criterion_6),
        ("ridge counts", criterion_7),
        ("building feasibility round trip", criterion_8),
        ("flow lab", criterion_9),
        ("earthquake suite", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
