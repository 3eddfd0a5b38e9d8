//! JSON persistence for maps, polygons, sequences, tree codes and
//! classification tables.
//!
//! Serialization is deterministic: keys appear in declaration order, integers
//! are unquoted, and `parse(serialize(d)) == d` for every document.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::ClassificationRow;
use crate::conemap::{ConeFanMap, MapError, PeriodOutcome};
use crate::enumerate::{CodecError, InsertionTree, PolygonCode, TreeNode};
use crate::geom::{LatticeVector, UnimodularMatrix};
use crate::polygon::{FundamentalPolygon, PolygonError, TraceSequence};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    UnsupportedVersion(u32),
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Tree payload: `null` or `{"label": [x, y], "left": TREE, "right": TREE}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTree {
    pub label: [i64; 2],
    pub left: Option<Box<JsonTree>>,
    pub right: Option<Box<JsonTree>>,
}

/// One classification table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonClassificationRow {
    pub a: i64,
    pub b: i64,
    pub verdict: String,
    pub period: Option<u32>,
    pub witness: Option<[i64; 2]>,
}

/// Every document kind the toolkit reads and writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Map {
        format_version: u32,
        rays: Vec<[i64; 2]>,
        matrices: Vec<[[i64; 2]; 2]>,
    },
    Polygon {
        format_version: u32,
        vertices: Vec<[i64; 2]>,
    },
    Sequence {
        format_version: u32,
        m: Vec<i64>,
    },
    Code {
        format_version: u32,
        upper: Option<Box<JsonTree>>,
        lower: Option<Box<JsonTree>>,
        shear: i64,
    },
    Classification {
        format_version: u32,
        max_period: u32,
        rows: Vec<JsonClassificationRow>,
    },
}

fn vec2(v: LatticeVector) -> [i64; 2] {
    [v.x, v.y]
}

fn unvec2(a: [i64; 2]) -> LatticeVector {
    LatticeVector::new(a[0], a[1])
}

fn tree_out(node: &Option<Box<TreeNode>>) -> Option<Box<JsonTree>> {
    node.as_ref().map(|n| {
        Box::new(JsonTree {
            label: vec2(n.label),
            left: tree_out(&n.left),
            right: tree_out(&n.right),
        })
    })
}

fn tree_in(node: &Option<Box<JsonTree>>) -> Option<Box<TreeNode>> {
    node.as_ref().map(|n| {
        Box::new(TreeNode {
            label: unvec2(n.label),
            left: tree_in(&n.left),
            right: tree_in(&n.right),
        })
    })
}

pub fn verdict_name(outcome: PeriodOutcome) -> &'static str {
    match outcome {
        PeriodOutcome::Periodic(_) => "period",
        PeriodOutcome::GrowthExceeded => "aperiodic-growth",
        PeriodOutcome::NoPeriodWithinBound => "no-period-within-bound",
    }
}

impl Document {
    pub fn from_map(map: &ConeFanMap) -> Document {
        Document::Map {
            format_version: FORMAT_VERSION,
            rays: map.rays().iter().copied().map(vec2).collect(),
            matrices: map.matrices().iter().map(|m| [[m.a, m.b], [m.c, m.d]]).collect(),
        }
    }

    pub fn from_polygon(p: &FundamentalPolygon) -> Document {
        Document::Polygon {
            format_version: FORMAT_VERSION,
            vertices: p.vertices().iter().copied().map(vec2).collect(),
        }
    }

    pub fn from_sequence(s: &TraceSequence) -> Document {
        Document::Sequence { format_version: FORMAT_VERSION, m: s.entries().to_vec() }
    }

    pub fn from_code(c: &PolygonCode) -> Document {
        Document::Code {
            format_version: FORMAT_VERSION,
            upper: tree_out(&c.upper.root),
            lower: tree_out(&c.lower.root),
            shear: c.shear,
        }
    }

    pub fn from_classification(rows: &[ClassificationRow], max_period: u32) -> Document {
        Document::Classification {
            format_version: FORMAT_VERSION,
            max_period,
            rows: rows
                .iter()
                .map(|r| JsonClassificationRow {
                    a: r.params.a,
                    b: r.params.b,
                    verdict: verdict_name(r.outcome).to_string(),
                    period: r.outcome.period(),
                    witness: r.witness.map(vec2),
                })
                .collect(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Map { .. } => "map",
            Document::Polygon { .. } => "polygon",
            Document::Sequence { .. } => "sequence",
            Document::Code { .. } => "code",
            Document::Classification { .. } => "classification",
        }
    }

    fn format_version(&self) -> u32 {
        match self {
            Document::Map { format_version, .. }
            | Document::Polygon { format_version, .. }
            | Document::Sequence { format_version, .. }
            | Document::Code { format_version, .. }
            | Document::Classification { format_version, .. } => *format_version,
        }
    }

    /// Domain conversion; validation errors surface with their indices.
    pub fn to_map(&self) -> Result<ConeFanMap, DocError> {
        match self {
            Document::Map { rays, matrices, .. } => {
                let rays = rays.iter().copied().map(unvec2).collect();
                let matrices = matrices
                    .iter()
                    .map(|m| UnimodularMatrix::new(m[0][0], m[0][1], m[1][0], m[1][1]))
                    .collect();
                Ok(ConeFanMap::new(rays, matrices)?)
            }
            other => Err(DocError::WrongKind { expected: "map", found: other.kind() }),
        }
    }

    pub fn to_polygon(&self) -> Result<FundamentalPolygon, DocError> {
        match self {
            Document::Polygon { vertices, .. } => {
                Ok(FundamentalPolygon::new(vertices.iter().copied().map(unvec2).collect())?)
            }
            other => Err(DocError::WrongKind { expected: "polygon", found: other.kind() }),
        }
    }

    pub fn to_sequence(&self) -> Result<TraceSequence, DocError> {
        match self {
            Document::Sequence { m, .. } => Ok(TraceSequence::new(m.clone())),
            other => Err(DocError::WrongKind { expected: "sequence", found: other.kind() }),
        }
    }

    pub fn to_code(&self) -> Result<PolygonCode, DocError> {
        match self {
            Document::Code { upper, lower, shear, .. } => Ok(PolygonCode {
                upper: InsertionTree { root: tree_in(upper) },
                lower: InsertionTree { root: tree_in(lower) },
                shear: *shear,
            }),
            other => Err(DocError::WrongKind { expected: "code", found: other.kind() }),
        }
    }
}

/// Compact UTF-8 JSON with keys in fixed order.
pub fn serialize(d: &Document) -> String {
    serde_json::to_string(d).expect("documents always serialize")
}

/// Parses and checks the format version. Syntax and schema violations report
/// the line and column.
pub fn parse(text: &str) -> Result<Document, DocError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| DocError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let v = doc.format_version();
    if v != FORMAT_VERSION {
        return Err(DocError::UnsupportedVersion(v));
    }
    Ok(doc)
}
