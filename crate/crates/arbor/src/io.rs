//! Versioned JSON formats for spaces, planes, tuples and building files.
//! Rationals are `"p/q"` strings (JSON integers are also accepted).

use crate::buildings::{Attachment, Block, BuildingError, BuildingGraph, BuildingProbe};
use crate::rational::{serde_vec, Q};
use crate::symplin::{serde_matrix, LagrangianPlane, Matrix, SymplecticSpace, SymplinError};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// Malformed input, with the JSON path of the offending value when known.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl std::fmt::Display) -> Self {
        InputError { path: path.into(), message: message.to_string() }
    }
}

/// Deserializes, reporting the path of the first failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        InputError::new(if path.is_empty() { ".".to_string() } else { path }, e.into_inner())
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(#[serde(with = "serde_matrix")] pub Matrix);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub dim_half: usize,
    /// Gram matrix; the standard form when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<MatrixJson>,
}

impl SpaceJson {
    pub fn from_space(space: &SymplecticSpace) -> Self {
        SpaceJson {
            schema_version: SCHEMA_VERSION,
            dim_half: space.dim_half(),
            form: (!space.is_standard()).then(|| MatrixJson(space.form().clone())),
        }
    }

    pub fn to_space(&self) -> Result<SymplecticSpace, InputError> {
        match &self.form {
            None => Ok(SymplecticSpace::standard(self.dim_half)),
            Some(MatrixJson(m)) => {
                if m.rows() != 2 * self.dim_half {
                    return Err(InputError::new("form", format!("expected {} rows", 2 * self.dim_half)));
                }
                SymplecticSpace::with_form(m.clone()).map_err(|e| InputError::new("form", e))
            }
        }
    }
}

/// A subspace by a basis of column vectors, given as `2n` rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceJson>,
    pub basis: MatrixJson,
}

impl SubspaceJson {
    pub fn from_plane(l: &LagrangianPlane) -> Self {
        SubspaceJson { schema_version: SCHEMA_VERSION, space: None, basis: MatrixJson(l.basis().clone()) }
    }

    /// The plane in `space`, or in the embedded space when none is given.
    pub fn to_plane(&self, space: Option<&SymplecticSpace>) -> Result<LagrangianPlane, InputError> {
        let own = self.space.as_ref().map(SpaceJson::to_space).transpose()?;
        let space = match (space, own) {
            (Some(s), Some(o)) if *s != o => return Err(InputError::new("space", "disagrees with the given space")),
            (Some(s), _) => s.clone(),
            (None, Some(o)) => o,
            (None, None) => {
                let rows = self.basis.0.rows();
                if rows % 2 != 0 {
                    return Err(InputError::new("basis", "odd number of rows"));
                }
                SymplecticSpace::standard(rows / 2)
            }
        };
        plane_in(&space, &self.basis.0).map_err(|e| InputError::new("basis", e))
    }
}

fn plane_in(space: &SymplecticSpace, basis: &Matrix) -> Result<LagrangianPlane, SymplinError> {
    LagrangianPlane::new(space, basis.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceJson>,
    pub planes: Vec<MatrixJson>,
}

impl TupleJson {
    pub fn to_planes(&self) -> Result<Vec<LagrangianPlane>, InputError> {
        let space = match &self.space {
            Some(s) => s.to_space()?,
            None => {
                let rows = self.planes.first().map_or(0, |m| m.0.rows());
                if rows == 0 || rows % 2 != 0 {
                    return Err(InputError::new("planes", "cannot infer an even ambient dimension"));
                }
                SymplecticSpace::standard(rows / 2)
            }
        };
        self.planes
            .iter()
            .enumerate()
            .map(|(i, m)| plane_in(&space, &m.0).map_err(|e| InputError::new(format!("planes[{i}]"), e)))
            .collect()
    }
}

/// One probe; map keys are block indices as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeJson {
    pub block_index: usize,
    pub type_index: Vec<usize>,
    pub tangent: MatrixJson,
    pub verticals: BTreeMap<String, MatrixJson>,
    pub liouville: BTreeMap<String, RationalVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVec(#[serde(with = "serde_vec")] pub Vec<Q>);

impl ProbeJson {
    pub fn from_probe(p: &BuildingProbe) -> Self {
        ProbeJson {
            block_index: p.block_index,
            type_index: p.type_index.clone(),
            tangent: MatrixJson(p.tangent.basis().clone()),
            verticals: p.verticals.iter().map(|(i, l)| (i.to_string(), MatrixJson(l.basis().clone()))).collect(),
            liouville: p.liouville.iter().map(|(i, z)| (i.to_string(), RationalVec(z.clone()))).collect(),
            eta: p.eta.as_ref().map(|l| MatrixJson(l.basis().clone())),
        }
    }

    pub fn to_probe(&self, space: &SymplecticSpace, at: &str) -> Result<BuildingProbe, InputError> {
        let plane = |field: String, m: &MatrixJson| plane_in(space, &m.0).map_err(|e| InputError::new(format!("{at}.{field}"), e));
        let key = |field: &str, k: &str| {
            k.parse::<usize>().map_err(|_| InputError::new(format!("{at}.{field}.{k}"), "key must be a block index"))
        };
        let verticals = self
            .verticals
            .iter()
            .map(|(k, m)| Ok((key("verticals", k)?, plane(format!("verticals.{k}"), m)?)))
            .collect::<Result<_, InputError>>()?;
        let liouville = self
            .liouville
            .iter()
            .map(|(k, v)| Ok((key("liouville", k)?, v.0.clone())))
            .collect::<Result<_, InputError>>()?;
        let probe = BuildingProbe {
            ambient: space.clone(),
            block_index: self.block_index,
            type_index: self.type_index.clone(),
            tangent: plane("tangent".into(), &self.tangent)?,
            verticals,
            liouville,
            eta: self.eta.as_ref().map(|m| plane("eta".into(), m)).transpose()?,
        };
        probe.validate().map_err(|e: BuildingError| InputError::new(at, e))?;
        Ok(probe)
    }
}

/// A building file: optional block graph plus pointwise probes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub space: SpaceJson,
    #[serde(default)]
    pub blocks: Vec<Block>,
    #[serde(default)]
    pub attachments: Vec<Attachment>,
    pub probes: Vec<ProbeJson>,
}

impl BuildingFile {
    pub fn graph(&self) -> Result<Option<BuildingGraph>, InputError> {
        if self.blocks.is_empty() && self.attachments.is_empty() {
            return Ok(None);
        }
        BuildingGraph::from_parts(self.blocks.clone(), self.attachments.clone())
            .map(Some)
            .map_err(|e| InputError::new("blocks", e))
    }

    pub fn probes(&self) -> Result<Vec<BuildingProbe>, InputError> {
        let space = self.space.to_space()?;
        self.probes.iter().enumerate().map(|(i, p)| p.to_probe(&space, &format!("probes[{i}]"))).collect()
    }
}
