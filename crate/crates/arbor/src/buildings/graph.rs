//! Combinatorial bookkeeping for iterated vertical gluings of blocks.

use super::BuildingError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    /// A boundary face carrying a nucleus.
    Nucleus,
    /// The same datum converted into an interior Weinstein hypersurface.
    Hypersurface,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: String,
    pub nucleus: String,
    pub kind: FaceKind,
}

/// Faces are kept in a fixed total order refining the boundary partial order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub id: String,
    pub base: String,
    pub faces: Vec<Face>,
}

/// `upper`'s face `face` is glued onto `lower`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Attachment {
    pub upper: String,
    pub face: String,
    pub lower: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conversion {
    ToHypersurface,
    ToNucleus,
}

/// Blocks in gluing order, attachments, and one skeleton piece per block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingGraph {
    blocks: Vec<Block>,
    attachments: Vec<Attachment>,
    skeleton_pieces: BTreeSet<String>,
}

impl BuildingGraph {
    /// A one-level building. Face ids must be distinct.
    pub fn single(block: Block) -> Result<Self, BuildingError> {
        let g = BuildingGraph {
            skeleton_pieces: BTreeSet::from([block.id.clone()]),
            blocks: vec![block],
            attachments: Vec::new(),
        };
        g.validate()?;
        Ok(g)
    }

    /// Rebuilds from parts, checking every invariant.
    pub fn from_parts(blocks: Vec<Block>, attachments: Vec<Attachment>) -> Result<Self, BuildingError> {
        let skeleton_pieces = blocks.iter().map(|b| b.id.clone()).collect();
        let g = BuildingGraph { blocks, attachments, skeleton_pieces };
        g.validate()?;
        Ok(g)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    pub fn skeleton_pieces(&self) -> &BTreeSet<String> {
        &self.skeleton_pieces
    }

    /// Faces still carrying a nucleus, as `(block, face)`.
    pub fn faces(&self) -> Vec<(&str, &Face)> {
        self.blocks
            .iter()
            .flat_map(|b| b.faces.iter().filter(|f| f.kind == FaceKind::Nucleus).map(move |f| (b.id.as_str(), f)))
            .collect()
    }

    fn index_of(&self, id: &str) -> Result<usize, BuildingError> {
        self.blocks.iter().position(|b| b.id == id).ok_or_else(|| BuildingError::Graph(format!("no block {id:?}")))
    }

    /// Order of attachments, face uniqueness, unique ids, connectivity.
    pub fn validate(&self) -> Result<(), BuildingError> {
        let err = |m: String| Err(BuildingError::Graph(m));
        let mut ids = BTreeSet::new();
        for b in &self.blocks {
            if !ids.insert(b.id.as_str()) {
                return err(format!("duplicate block id {:?}", b.id));
            }
            let mut face_ids = BTreeSet::new();
            if b.faces.iter().any(|f| !face_ids.insert(f.id.as_str())) {
                return err(format!("duplicate face id in block {:?}", b.id));
            }
        }
        if self.blocks.is_empty() {
            return err("a building needs at least one block".into());
        }
        let mut used = BTreeSet::new();
        for a in &self.attachments {
            let (u, l) = (self.index_of(&a.upper)?, self.index_of(&a.lower)?);
            if u <= l {
                return err(format!("block {:?} must come after {:?}", a.upper, a.lower));
            }
            let face = self.blocks[u].faces.iter().find(|f| f.id == a.face);
            match face {
                None => return err(format!("block {:?} has no face {:?}", a.upper, a.face)),
                Some(f) if f.kind != FaceKind::Nucleus => {
                    return err(format!("face {:?} of {:?} is not a boundary face", a.face, a.upper))
                }
                _ => {}
            }
            if !used.insert((a.upper.as_str(), a.face.as_str())) {
                return err(format!("face {:?} of {:?} is used twice", a.face, a.upper));
            }
        }
        // Union-find over attachments.
        let mut parent: Vec<usize> = (0..self.blocks.len()).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.attachments {
            let (u, l) = (self.index_of(&a.upper)?, self.index_of(&a.lower)?);
            let (ru, rl) = (root(&mut parent, u), root(&mut parent, l));
            parent[ru] = rl;
        }
        let r0 = root(&mut parent, 0);
        if (1..self.blocks.len()).any(|i| root(&mut parent, i) != r0) {
            return err("building is not connected".into());
        }
        let expected: BTreeSet<String> = self.blocks.iter().map(|b| b.id.clone()).collect();
        if expected != self.skeleton_pieces {
            return err("skeleton pieces must be one per block".into());
        }
        Ok(())
    }

    /// Number of attachments glued into each block.
    pub fn attachment_degrees(&self) -> BTreeMap<&str, usize> {
        let mut out: BTreeMap<&str, usize> = self.blocks.iter().map(|b| (b.id.as_str(), 0)).collect();
        for a in &self.attachments {
            *out.get_mut(a.lower.as_str()).expect("validated") += 1;
        }
        out
    }
}

/// Stacks `upper` on top of `lower`: blocks of `upper` follow those of
/// `lower`, and `upper_block`'s face `face` is attached onto `lower_block`.
/// Skeleton pieces are the union of both inputs.
pub fn vertical_glue(
    lower: &BuildingGraph,
    upper: &BuildingGraph,
    upper_block: &str,
    face: &str,
    lower_block: &str,
) -> Result<BuildingGraph, BuildingError> {
    if let Some(dup) = upper.blocks.iter().find(|b| lower.skeleton_pieces.contains(&b.id)) {
        return Err(BuildingError::Graph(format!("block id {:?} occurs in both buildings", dup.id)));
    }
    lower.index_of(lower_block)?;
    upper.index_of(upper_block)?;
    let blocks = lower.blocks.iter().chain(&upper.blocks).cloned().collect();
    let mut attachments: Vec<Attachment> = lower.attachments.iter().chain(&upper.attachments).cloned().collect();
    attachments.push(Attachment { upper: upper_block.into(), face: face.into(), lower: lower_block.into() });
    let skeleton_pieces = lower.skeleton_pieces.union(&upper.skeleton_pieces).cloned().collect();
    let g = BuildingGraph { blocks, attachments, skeleton_pieces };
    g.validate()?;
    Ok(g)
}

/// Exchanges a boundary nucleus and an interior hypersurface on one face.
/// Attached faces cannot be converted.
pub fn convert_nucleus(
    g: &BuildingGraph,
    block: &str,
    face: &str,
    direction: Conversion,
) -> Result<BuildingGraph, BuildingError> {
    let bi = g.index_of(block)?;
    if g.attachments.iter().any(|a| a.upper == block && a.face == face) {
        return Err(BuildingError::Graph(format!("face {face:?} of {block:?} is attached")));
    }
    let mut out = g.clone();
    let f = out.blocks[bi]
        .faces
        .iter_mut()
        .find(|f| f.id == face)
        .ok_or_else(|| BuildingError::Graph(format!("block {block:?} has no face {face:?}")))?;
    let (from, to) = match direction {
        Conversion::ToHypersurface => (FaceKind::Nucleus, FaceKind::Hypersurface),
        Conversion::ToNucleus => (FaceKind::Hypersurface, FaceKind::Nucleus),
    };
    if f.kind != from {
        return Err(BuildingError::Graph(format!("face {face:?} of {block:?} is not a {from:?}")));
    }
    f.kind = to;
    Ok(out)
}
