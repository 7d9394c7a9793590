//! Block graphs of a building: vertical gluing and nucleus conversion.

use arbor::buildings::{convert_nucleus, vertical_glue, Block, BuildingGraph, Conversion, Face, FaceKind};

fn block(id: &str, faces: &[&str]) -> Block {
    Block {
        id: id.into(),
        base: "disk".into(),
        faces: faces.iter().map(|f| Face { id: (*f).into(), nucleus: format!("N_{f}"), kind: FaceKind::Nucleus }).collect(),
    }
}

fn main() {
    let lower = BuildingGraph::single(block("A", &["a1", "a2"])).unwrap();
    let upper = BuildingGraph::single(block("B", &["b1"])).unwrap();
    let glued = vertical_glue(&lower, &upper, "B", "b1", "A").unwrap();
    println!("glued: {} blocks, {} attachments, pieces {:?}", glued.blocks().len(), glued.attachments().len(), glued.skeleton_pieces());
    println!("nucleus faces: {:?}", glued.faces().iter().map(|(b, f)| format!("{b}.{}", f.id)).collect::<Vec<_>>());

    let converted = convert_nucleus(&glued, "A", "a2", Conversion::ToHypersurface).unwrap();
    println!("after conversion: {:?}", converted.faces().iter().map(|(b, f)| format!("{b}.{}", f.id)).collect::<Vec<_>>());
    match convert_nucleus(&glued, "B", "b1", Conversion::ToHypersurface) {
        Ok(_) => println!("unexpected: attached face converted"),
        Err(e) => println!("attached faces stay nuclei: {e}"),
    }
}
