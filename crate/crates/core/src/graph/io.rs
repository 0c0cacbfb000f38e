//! The JSON graph file format.
//!
//! ```json
//! {
//!   "r": "2",
//!   "vertices": ["v"],
//!   "edges": [{"id": "e", "src": "v", "dst": "v", "half_weight": "2"}, ...],
//!   "involution": [["e", "ebar"]]
//! }
//! ```
//!
//! `delta` replaces `r` for graphs given by a bare loop value. All numbers
//! are exact rational strings.

use serde::{Deserialize, Serialize};

use super::{EdgeSpec, FairGraph, GraphParam};
use crate::error::{Error, Result};
use crate::scalar::{BaseParam, QScalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<QScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<QScalar>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub involution: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub half_weight: QScalar,
}

impl GraphFile {
    pub fn from_graph(g: &FairGraph) -> Self {
        let (r, delta) = match g.param() {
            GraphParam::Base(p) => (Some(p.r().clone()), None),
            GraphParam::Delta(d) => (None, Some(d.clone())),
        };
        GraphFile {
            r,
            delta,
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.clone(),
                    src: g.vertex_id(e.src).to_string(),
                    dst: g.vertex_id(e.dst).to_string(),
                    half_weight: e.half_weight.clone(),
                })
                .collect(),
            involution: g
                .involution_pairs()
                .into_iter()
                .map(|(a, b)| [g.edge(a).id.clone(), g.edge(b).id.clone()])
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<FairGraph> {
        let param = match (self.r, self.delta) {
            (Some(r), None) => GraphParam::Base(BaseParam::new(r)?),
            (None, Some(d)) => {
                if !d.is_positive() {
                    return Err(Error::Parse(format!("field `delta`: must be positive, got {d}")));
                }
                GraphParam::Delta(d)
            }
            (Some(_), Some(_)) => {
                return Err(Error::Parse("fields `r` and `delta` are mutually exclusive".into()))
            }
            (None, None) => return Err(Error::Parse("one of the fields `r` or `delta` is required".into())),
        };
        let edges = self
            .edges
            .into_iter()
            .map(|e| EdgeSpec {
                id: e.id,
                src: e.src,
                dst: e.dst,
                half_weight: e.half_weight,
            })
            .collect();
        let involution = self.involution.into_iter().map(|[a, b]| (a, b)).collect();
        FairGraph::new(param, self.vertices, edges, involution).map_err(|e| match e {
            Error::Graph(m) => Error::Parse(m),
            other => other,
        })
    }
}

/// Parses a graph file. Structural problems (duplicate ids, dangling
/// references, missing involution partners) are parse errors; fairness and
/// balance are left to [`FairGraph::validate`].
pub fn read_graph(bytes: &[u8]) -> Result<FairGraph> {
    let file: GraphFile = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.into_graph()
}

/// Canonical form: ids sorted, pretty-printed, trailing newline.
pub fn write_graph(g: &FairGraph) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&GraphFile::from_graph(g)).expect("graph file serializes");
    out.push(b'\n');
    out
}
