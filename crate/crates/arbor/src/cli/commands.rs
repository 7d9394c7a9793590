use super::{Cli, Command, Dir, Failure, Inputs, MbArgs, Produced, QuakeArgs};
use super::{BuildingCmd, FlowCmd, FrontCmd, PosCmd, QuakeCmd, TreesCmd};
use crate::buildings::{find_positive_distribution, verify_distribution_positivity, verify_probe_positivity, PositivityReport};
use crate::flows::{
    distance_to_critical_set, earthquake_section, fault_samples, lyapunov_check, skeleton_estimate, tectonic_jump_check,
    trajectory, EarthquakeSpec, EtaField, FactorIndex, Grid, JumpSample, MorseBottModel, ScanGrid, TangencyLocus,
    RANK_RATIO,
};
use crate::io::{parse_json, BuildingFile, MatrixJson, SpaceJson, SubspaceJson, TupleJson, SCHEMA_VERSION};
use crate::localmodels::{render_front, FrontModel, FrontOptions};
use crate::positivity::{compare, cyclic_order_violations, Direction, PlaneTuple, PositivityError};
use crate::rational::int;
use crate::trees::{enumerate, orientation_counts, SignedRootedTree, TreeJson};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write;

/// Largest tree size `trees enumerate` accepts; the count grows exponentially.
pub const MAX_ENUMERATE_VERTICES: usize = 10;

pub(super) fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<Produced, Failure> {
    match &cli.command {
        Command::Trees(TreesCmd::Enumerate { max_vertices, table }) => trees_enumerate(*max_vertices, *table),
        Command::Trees(TreesCmd::Orient { file }) => trees_orient(inputs, file),
        Command::Pos(PosCmd::Compare { space, l, tau, nu }) => pos_compare(inputs, space.as_deref(), l, tau, nu),
        Command::Pos(PosCmd::Cycle { tuple, dir }) => pos_cycle(inputs, tuple, *dir),
        Command::Building(BuildingCmd::Verify { file, find_distribution }) => building_verify(inputs, file, *find_distribution),
        Command::Front(FrontCmd::Render { model, orientation, samples, size }) => {
            front_render(model, *orientation, *samples, *size, cli.json)
        }
        Command::Flow(FlowCmd::Mb(args)) => flow_mb(args),
        Command::Quake(QuakeCmd::Run(args)) => quake_run(inputs, args),
    }
}

fn malformed<E: std::fmt::Display>(name: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::malformed(format!("{name}: {e}"))
}

#[derive(Serialize)]
struct TreeEntry {
    canonical: String,
    tree: TreeJson,
    vertices: usize,
    dimension: usize,
    torsor_size: String,
    iso_classes: String,
}

fn tree_entry(t: &SignedRootedTree) -> Result<TreeEntry, Failure> {
    let c = orientation_counts(t).map_err(malformed("tree"))?;
    Ok(TreeEntry {
        canonical: t.canonical_form(),
        tree: t.to_json(),
        vertices: t.vertex_count(),
        dimension: t.dimension(),
        torsor_size: c.torsor_size.to_string(),
        iso_classes: c.iso_classes.to_string(),
    })
}

fn trees_enumerate(max_vertices: usize, table: bool) -> Result<Produced, Failure> {
    if max_vertices == 0 || max_vertices > MAX_ENUMERATE_VERTICES {
        return Err(Failure::malformed(format!("--max-vertices must be in 1..={MAX_ENUMERATE_VERTICES}")));
    }
    let trees = enumerate(max_vertices);
    let entries = trees.iter().map(tree_entry).collect::<Result<Vec<_>, _>>()?;
    if table {
        let mut out = String::new();
        let _ = writeln!(out, "{:>3} {:>4} {:>8} {:>8}  canonical", "k", "dim", "torsor", "classes");
        for e in &entries {
            let _ = writeln!(out, "{:>3} {:>4} {:>8} {:>8}  {}", e.vertices, e.dimension, e.torsor_size, e.iso_classes, e.canonical);
        }
        let _ = writeln!(out, "total {}", entries.len());
        return Ok(Produced { code: super::EXIT_OK, result: out.into_bytes(), side_files: Vec::new() });
    }
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        max_vertices: usize,
        count: usize,
        trees: Vec<TreeEntry>,
    }
    let report = Report { schema_version: SCHEMA_VERSION, max_vertices, count: entries.len(), trees: entries };
    Ok(Produced::json(&report, true))
}

fn trees_orient(inputs: &mut Inputs, file: &str) -> Result<Produced, Failure> {
    let text = inputs.read("file", file)?;
    let json: TreeJson = parse_json(&text).map_err(malformed("file"))?;
    let tree = SignedRootedTree::from_json(&json).map_err(malformed("file"))?;
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        #[serde(flatten)]
        entry: TreeEntry,
        positive: bool,
    }
    let report = Report { schema_version: SCHEMA_VERSION, entry: tree_entry(&tree)?, positive: tree.is_positive() };
    Ok(Produced::json(&report, true))
}

fn pos_compare(inputs: &mut Inputs, space: Option<&str>, l: &str, tau: &str, nu: &str) -> Result<Produced, Failure> {
    let space = match space {
        Some(s) => {
            let text = inputs.read("space", s)?;
            let j: SpaceJson = parse_json(&text).map_err(malformed("space"))?;
            Some(j.to_space().map_err(malformed("space"))?)
        }
        None => None,
    };
    let mut plane = |name: &str, arg: &str| {
        let text = inputs.read(name, arg)?;
        let j: SubspaceJson = parse_json(&text).map_err(malformed(name))?;
        j.to_plane(space.as_ref()).map_err(malformed(name))
    };
    let (l, tau, nu) = (plane("L", l)?, plane("tau", tau)?, plane("nu", nu)?);
    if l.ambient() != tau.ambient() || l.ambient() != nu.ambient() {
        return Err(Failure::malformed("L, tau and nu live in different spaces"));
    }
    let verdict = compare(&l, &tau, &nu).map_err(malformed("compare"))?;
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        relation: crate::positivity::Relation,
        witness: Option<MatrixJson>,
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        relation: verdict.relation,
        witness: verdict.witness.map(|q| MatrixJson(q.matrix().clone())),
    };
    Ok(Produced::json(&report, true))
}

fn pos_cycle(inputs: &mut Inputs, tuple: &str, dir: Dir) -> Result<Produced, Failure> {
    let text = inputs.read("tuple", tuple)?;
    let j: TupleJson = parse_json(&text).map_err(malformed("tuple"))?;
    let planes = j.to_planes().map_err(malformed("tuple"))?;
    let t = PlaneTuple::new(planes).map_err(malformed("tuple"))?;
    let direction = match dir {
        Dir::Succ => Direction::Succ,
        Dir::Prec => Direction::Prec,
    };
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        direction: Direction,
        ordered: bool,
        non_transverse: Option<[usize; 2]>,
        violations: Vec<[usize; 3]>,
    }
    let (non_transverse, violations) = match cyclic_order_violations(&t, direction) {
        Ok(v) => (None, v),
        Err(PositivityError::TupleNotTransverse(a, b)) => (Some([a, b]), Vec::new()),
        Err(e) => return Err(malformed("tuple")(e)),
    };
    let ordered = non_transverse.is_none() && violations.is_empty();
    let report = Report { schema_version: SCHEMA_VERSION, direction, ordered, non_transverse, violations };
    Ok(Produced::json(&report, ordered))
}

#[derive(Serialize)]
struct ProbeResult {
    probe: usize,
    /// `None` when the probe has an empty type and nothing to check.
    positivity: Option<PositivityReport>,
    eta_positive: Option<bool>,
    found_eta: Option<MatrixJson>,
    found_eta_positive: Option<bool>,
}

fn building_verify(inputs: &mut Inputs, file: &str, find: bool) -> Result<Produced, Failure> {
    let text = inputs.read("file", file)?;
    let doc: BuildingFile = parse_json(&text).map_err(malformed("file"))?;
    let graph = doc.graph().map_err(malformed("file"))?;
    let probes = doc.probes().map_err(malformed("file"))?;
    let mut results = probes
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let positivity = if p.type_index.is_empty() {
                None
            } else {
                Some(verify_probe_positivity(p).map_err(|e| format!("probes[{k}]: {e}"))?)
            };
            let eta_positive = match &p.eta {
                Some(_) => Some(verify_distribution_positivity(p).map_err(|e| format!("probes[{k}].eta: {e}"))?),
                None => None,
            };
            Ok(ProbeResult { probe: k, positivity, eta_positive, found_eta: None, found_eta_positive: None })
        })
        .collect::<Result<Vec<_>, String>>()
        .map_err(Failure::malformed)?;
    let mut infeasible = None;
    if find {
        match find_positive_distribution(&probes, &int(1)) {
            Ok(etas) => {
                for ((r, p), eta) in results.iter_mut().zip(&probes).zip(etas) {
                    let mut with = p.clone();
                    with.eta = Some(eta.clone());
                    r.found_eta_positive = Some(verify_distribution_positivity(&with).map_err(malformed("distribution"))?);
                    r.found_eta = Some(MatrixJson(eta.basis().clone()));
                }
            }
            Err(crate::buildings::BuildingError::Infeasible { probe, constraint }) => {
                infeasible = Some(format!("probe {probe}: {constraint}"));
            }
            Err(e) => return Err(malformed("distribution")(e)),
        }
    }
    let ok = infeasible.is_none()
        && results.iter().all(|r| {
            r.positivity.as_ref().map_or(true, |p| p.verdict)
                && r.eta_positive.unwrap_or(true)
                && r.found_eta_positive.unwrap_or(true)
        });
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        ok: bool,
        blocks: usize,
        attachments: usize,
        probes: Vec<ProbeResult>,
        #[serde(skip_serializing_if = "Option::is_none")]
        infeasible: Option<String>,
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        ok,
        blocks: graph.as_ref().map_or(0, |g| g.blocks().len()),
        attachments: graph.as_ref().map_or(0, |g| g.attachments().len()),
        probes: results,
        infeasible,
    };
    Ok(Produced::json(&report, ok))
}

fn front_render(model: &str, orientation: u32, samples: usize, size: f64, json: bool) -> Result<Produced, Failure> {
    let model = FrontModel::parse(model).map_err(malformed("--model"))?;
    if samples < 2 || !(size > 0.0) {
        return Err(Failure::malformed("--samples must be at least 2 and --size positive"));
    }
    let opts = FrontOptions { samples, size };
    let scene = render_front(model, orientation, &opts).map_err(malformed("--orientation"))?;
    let text = if json { scene.to_json() + "\n" } else { scene.to_svg(&opts) };
    Ok(Produced { code: super::EXIT_OK, result: text.into_bytes(), side_files: Vec::new() })
}

fn parse_grid(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::malformed(format!("--grid: expected NQxNP, got {s:?}"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let nq: usize = a.trim().parse().map_err(|_| bad())?;
    let np: usize = b.trim().parse().map_err(|_| bad())?;
    if nq < 2 || np < 2 {
        return Err(bad());
    }
    Ok((nq, np))
}

/// Seeds on `[0, 1] × [-1, 1]` per factor, repeated across factors.
pub fn mb_seeds(factors: usize, per_side: usize) -> Vec<Vec<f64>> {
    let at = |i: usize, lo: f64, hi: f64| {
        if per_side == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * i as f64 / (per_side - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(per_side * per_side);
    for i in 0..per_side {
        for j in 0..per_side {
            let (q, p) = (at(i, 0.0, 1.0), at(j, -1.0, 1.0));
            out.push([vec![q; factors], vec![p; factors]].concat());
        }
    }
    out
}

fn flow_mb(a: &MbArgs) -> Result<Produced, Failure> {
    let factors = a.index.iter().map(|&k| FactorIndex::from_int(k)).collect::<Result<Vec<_>, _>>().map_err(malformed("--index"))?;
    let model = MorseBottModel::new(factors, a.eps).map_err(malformed("--eps"))?;
    let (nq, np) = parse_grid(&a.grid)?;
    if !(a.window > 0.0) || a.seeds == 0 {
        return Err(Failure::malformed("--window must be positive and --seeds nonzero"));
    }
    let grid = Grid { q_range: (-a.window, a.window), p_range: (-a.window, a.window), nq, np, band: a.band };
    let lyapunov = lyapunov_check(&model, &grid).map_err(malformed("grid"))?;
    let seeds = mb_seeds(model.dim_half(), a.seeds);
    let (skeleton, diverged) = match skeleton_estimate(&model, &seeds, a.horizon, a.step) {
        Ok(ends) => (Some(ends), None),
        Err(e @ crate::flows::FlowError::Diverged { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(malformed("flow")(e)),
    };
    let max_distance = skeleton.as_ref().map(|ends| ends.iter().map(|x| distance_to_critical_set(x)).fold(0.0, f64::max));
    // A few forward trajectories for plotting, thinned to about 200 points.
    let every = ((a.horizon / a.step) as usize / 200).max(1);
    let samples = [0, seeds.len() / 2, seeds.len() - 1]
        .iter()
        .map(|&k| trajectory(&model, &seeds[k], a.horizon.min(2.0), a.step, 1.0, every).ok())
        .collect::<Vec<_>>();
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        ok: bool,
        eps: f64,
        index: Vec<u8>,
        lyapunov: crate::flows::LyapunovReport,
        seeds: usize,
        skeleton_endpoints: Option<Vec<Vec<f64>>>,
        max_distance_to_critical_set: Option<f64>,
        diverged: Option<String>,
        trajectories: Vec<Option<Vec<(f64, Vec<f64>)>>>,
    }
    let ok = lyapunov.margin > 0.0 && lyapunov.violations.is_empty() && diverged.is_none();
    let report = Report {
        schema_version: SCHEMA_VERSION,
        ok,
        eps: a.eps,
        index: a.index.clone(),
        lyapunov,
        seeds: seeds.len(),
        skeleton_endpoints: skeleton,
        max_distance_to_critical_set: max_distance,
        diverged,
        trajectories: samples,
    };
    Ok(Produced::json(&report, ok))
}

#[derive(Serialize)]
struct FaultReport {
    fault: usize,
    ok: bool,
    samples: Vec<JumpSample>,
}

fn quake_run(inputs: &mut Inputs, a: &QuakeArgs) -> Result<Produced, Failure> {
    let text = inputs.read("spec", &a.spec)?;
    let spec: EarthquakeSpec = parse_json(&text).map_err(malformed("spec"))?;
    spec.validate().map_err(malformed("spec"))?;
    let n = spec.dim;
    let (lo, hi) = (vec![-1.0; n], vec![1.0; n]);
    let faults = (0..spec.faults.len())
        .into_par_iter()
        .map(|j| {
            let pts = fault_samples(&spec, j, &lo, &hi, a.samples);
            let (ok, samples) = tectonic_jump_check(&spec, j, &pts, a.t, RANK_RATIO).map_err(|e| format!("fault {j}: {e}"))?;
            Ok(FaultReport { fault: j, ok, samples })
        })
        .collect::<Result<Vec<_>, String>>()
        .map_err(Failure::malformed)?;
    let scan = match &a.scan_eta {
        Some(eta) => {
            let eta_text = inputs.read("scan_eta", eta)?;
            let field: EtaField = parse_json(&eta_text).map_err(malformed("scan_eta"))?;
            let grid = ScanGrid { lo: lo.clone(), hi: hi.clone(), points: a.scan_points, tol: 1e-9 };
            Some(crate::flows::transversality_scan(&spec, &field, a.t, &grid).map_err(malformed("scan_eta"))?)
        }
        None => None,
    };
    let mut side_files = Vec::new();
    if let Some(path) = &a.svg {
        side_files.push((path.clone(), quake_svg(&spec, a.t, scan.as_ref())?.into_bytes()));
    }
    let ok = faults.iter().all(|f| f.ok) && scan.as_ref().map_or(true, TangencyLocus::is_empty);
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        ok: bool,
        t: f64,
        faults: Vec<FaultReport>,
        tangency: Option<TangencyLocus>,
    }
    let report = Report { schema_version: SCHEMA_VERSION, ok, t: a.t, faults, tangency: scan };
    Ok(Produced::json(&report, ok))
}

/// Dimension 1: the graph of `p = tΦ'(q)`. Dimension 2: fault zero sets and
/// tangency points on the base square. Both on the window `[-1, 1]`.
fn quake_svg(spec: &EarthquakeSpec, t: f64, scan: Option<&TangencyLocus>) -> Result<String, Failure> {
    let size = 400.0;
    let px = |x: f64, y: f64, yscale: f64| (size / 2.0 * (1.0 + 0.9 * x), size / 2.0 * (1.0 - 0.9 * y / yscale));
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    match spec.dim {
        1 => {
            let pts: Vec<(f64, f64)> = (0..=400)
                .map(|i| {
                    let q = -1.0 + 2.0 * i as f64 / 400.0;
                    let p = earthquake_section(spec, &[q], t).map(|s| s.p[0]).unwrap_or(f64::NAN);
                    (q, p)
                })
                .collect();
            let ymax = pts.iter().map(|(_, p)| p.abs()).filter(|v| v.is_finite()).fold(1e-9, f64::max);
            let path: Vec<String> = pts
                .iter()
                .filter(|(_, p)| p.is_finite())
                .map(|&(q, p)| {
                    let (x, y) = px(q, p, ymax);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(out, r#"<polyline fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#, path.join(" "));
            for (j, _) in spec.faults.iter().enumerate() {
                for q in fault_samples(spec, j, &[-1.0], &[1.0], 16) {
                    let (x, _) = px(q[0], 0.0, 1.0);
                    let _ = writeln!(out, r#"<line x1="{x:.2}" y1="0" x2="{x:.2}" y2="{size}" stroke="red" stroke-dasharray="4,3"/>"#);
                }
            }
        }
        2 => {
            for (j, _) in spec.faults.iter().enumerate() {
                for q in fault_samples(spec, j, &[-1.0, -1.0], &[1.0, 1.0], 200) {
                    let (x, y) = px(q[0], q[1], 1.0);
                    let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="1" fill="red"/>"#);
                }
            }
        }
        d => return Err(Failure::malformed(format!("--svg supports dimensions 1 and 2, got {d}"))),
    }
    if let Some(scan) = scan {
        for v in &scan.vertices {
            let (x, y) = px(v[0], v.get(1).copied().unwrap_or(0.0), 1.0);
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="blue"/>"#);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
