//! JSON graph files and the summary documents printed by the CLI.
//!
//! A graph file looks like
//!
//! ```json
//! {"vertices":[[0.0,0.0],[1.0,0.0]],"edges":[[0,1]],"metadata":{"generator":"primitive","name":"SINGLE_EDGE"}}
//! ```
//!
//! `vertices` are `[x, y]` pairs in matchstick units, `edges` are 0-based
//! index pairs and `metadata` is optional. Unknown fields are rejected.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discharge::{check_element_bounds, discharge, ChargeLedger, ElementBoundsReport};
use crate::faces::faces_of;
use crate::geom::{Point2, ToleranceConfig};
use crate::graph::{MatchstickCertificate, PlaneGraph};
use crate::verify::{Census, SIDE_CONVENTION_NOTE};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob: Option<f64>,
}

impl GraphMetadata {
    /// `k` when the file came from the hexagonal generator.
    pub fn hex_k(&self) -> Option<usize> {
        (self.generator.as_deref() == Some("hex")).then_some(self.k).flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<GraphMetadata>,
}

impl GraphFile {
    pub fn from_graph(g: &PlaneGraph, metadata: Option<GraphMetadata>) -> Self {
        GraphFile {
            vertices: g.vertices().iter().map(|p| [p.x, p.y]).collect(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            metadata,
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph, IoError> {
        let pts = self.vertices.iter().map(|&[x, y]| Point2::new(x, y)).collect();
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        PlaneGraph::build(pts, &pairs).map_err(|e| IoError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("graph file serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGraph {
    pub graph: PlaneGraph,
    pub metadata: Option<GraphMetadata>,
}

pub fn parse_graph(text: &str) -> Result<LoadedGraph, IoError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let file: GraphFile = serde_json::from_value(value).map_err(|e| IoError::Schema(e.to_string()))?;
    Ok(LoadedGraph {
        graph: file.to_graph()?,
        metadata: file.metadata,
    })
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<LoadedGraph, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<PlaneGraph, IoError> {
    read_graph_file(path).map(|l| l.graph)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, text).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_graph(g: &PlaneGraph, metadata: Option<GraphMetadata>, path: impl AsRef<Path>) -> Result<(), IoError> {
    write_text(path, &GraphFile::from_graph(g, metadata).to_json())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceSummary {
    pub index: usize,
    pub bounded: bool,
    pub sides: usize,
    pub area: f64,
    /// Vertex sequence of every boundary walk.
    pub walks: Vec<Vec<usize>>,
}

/// Structure of a graph: validation verdict, census and face list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub validation: MatchstickCertificate,
    pub census: Census,
    pub faces: Option<Vec<FaceSummary>>,
    pub notes: Vec<String>,
}

impl GraphSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

pub fn graph_summary(g: &PlaneGraph, tol: &ToleranceConfig) -> GraphSummary {
    let h = g.degree_histogram();
    let mut census = Census {
        n: h.n,
        e: h.e,
        c: g.connected_components(),
        degree_histogram: h.counts,
        b: None,
        f: None,
        f_k: None,
    };
    let validation = g.validate_matchstick(tol);
    let mut notes = vec![SIDE_CONVENTION_NOTE.to_string()];
    let mut faces = None;
    if validation.pass {
        match faces_of(g, tol) {
            Ok(fs) => {
                let c = fs.census();
                census.b = Some(c.b);
                census.f = Some(c.f);
                census.f_k = Some(c.f_k);
                faces = Some(
                    fs.faces()
                        .iter()
                        .enumerate()
                        .map(|(i, f)| FaceSummary {
                            index: i,
                            bounded: f.bounded,
                            sides: f.sides,
                            area: fs.face_area(i),
                            walks: f.walks.iter().map(|&w| fs.walks()[w].vertices()).collect(),
                        })
                        .collect(),
                );
            }
            Err(e) => notes.push(format!("face assembly failed: {e}")),
        }
    } else {
        notes.push("not a matchstick graph; faces not computed".to_string());
    }
    GraphSummary {
        validation,
        census,
        faces,
        notes,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DischargeSummary {
    pub ledger: ChargeLedger,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_bounds: Option<ElementBoundsReport>,
}

impl DischargeSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("not a matchstick graph ({0} violations)")]
    Invalid(usize),
    #[error(transparent)]
    Faces(#[from] crate::faces::FaceError),
    #[error(transparent)]
    Discharge(#[from] crate::discharge::DischargeError),
}

/// Runs the discharging on a validated graph.
pub fn discharge_summary(
    g: &PlaneGraph,
    tol: &ToleranceConfig,
    per_element: bool,
) -> Result<DischargeSummary, PipelineError> {
    let cert = g.validate_matchstick(tol);
    if !cert.pass {
        return Err(PipelineError::Invalid(cert.violations.len()));
    }
    let fs = faces_of(g, tol)?;
    let ledger = discharge(g, &fs)?;
    let element_bounds = per_element.then(|| check_element_bounds(&ledger, g, &fs, tol));
    Ok(DischargeSummary { ledger, element_bounds })
}
