//! Samples positive building probes, verifies them, finds a positive
//! distribution and prints a building file that `arbor building verify`
//! accepts.

use arbor::buildings::{find_positive_distribution, positive_probe, transform_probe, verify_probe_positivity, Block, BuildingGraph, Face, FaceKind};
use arbor::io::{BuildingFile, ProbeJson, SpaceJson, SCHEMA_VERSION};
use arbor::rational::int;
use arbor::sample;

fn main() {
    let mut rng = sample::rng(2024);
    let n = 3;
    let probes: Vec<_> = (1..=2).map(|m| positive_probe(&mut rng, n, m)).collect();
    for (i, p) in probes.iter().enumerate() {
        let r = verify_probe_positivity(p).unwrap();
        eprintln!("probe {i}: type {:?}, positive {}", p.type_index, r.verdict);
    }
    let etas = find_positive_distribution(&probes, &int(1)).unwrap();
    eprintln!("found {} positive distribution planes", etas.len());

    // A symplectic change of frame preserves positivity.
    let g = sample::symplectic_matrix(&mut rng, n, 1);
    eprintln!("moved probe stays positive: {}", verify_probe_positivity(&transform_probe(&probes[0], &g)).unwrap().verdict);

    let face = |id: &str| Face { id: id.into(), nucleus: format!("{id}-nucleus"), kind: FaceKind::Nucleus };
    let blocks = vec![
        Block { id: "B1".into(), base: "ball".into(), faces: vec![face("f1")] },
        Block { id: "B2".into(), base: "ball".into(), faces: vec![face("f2")] },
        Block { id: "B3".into(), base: "ball".into(), faces: vec![face("f3")] },
    ];
    let attachments = vec![
        arbor::buildings::Attachment { upper: "B2".into(), face: "f2".into(), lower: "B1".into() },
        arbor::buildings::Attachment { upper: "B3".into(), face: "f3".into(), lower: "B2".into() },
    ];
    BuildingGraph::from_parts(blocks.clone(), attachments.clone()).unwrap();
    let file = BuildingFile {
        schema_version: SCHEMA_VERSION,
        space: SpaceJson::from_space(&probes[0].ambient),
        blocks,
        attachments,
        probes: probes.iter().map(ProbeJson::from_probe).collect(),
    };
    println!("{}", serde_json::to_string_pretty(&file).unwrap());
}
