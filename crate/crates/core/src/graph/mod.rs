//! Fair and balanced δ-graphs.
//!
//! A finite oriented graph with an edge involution `e ↦ ē` swapping source
//! and target, and edge weights `W(e) = w(e)²` given by a stored positive
//! half-weight `w`. The graph is fair when the outgoing weights at every
//! vertex sum to δ and balanced when `W(e)W(ē) = 1`.

mod builders;
mod io;

pub use builders::{bouquet, cycle_family, from_dimension_function, UndirectedEdge};
pub use io::{read_graph, write_graph, GraphFile};

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{BaseParam, QScalar};

/// The loop parameter a graph is built over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphParam {
    /// Half-weight base `r`; δ = r² + r⁻².
    Base(BaseParam),
    /// A bare loop value, for graphs whose `q` need not be rational.
    Delta(QScalar),
}

impl GraphParam {
    pub fn delta(&self) -> QScalar {
        match self {
            GraphParam::Base(p) => p.delta(),
            GraphParam::Delta(d) => d.clone(),
        }
    }

    pub fn base(&self) -> Option<&BaseParam> {
        match self {
            GraphParam::Base(p) => Some(p),
            GraphParam::Delta(_) => None,
        }
    }
}

impl From<BaseParam> for GraphParam {
    fn from(p: BaseParam) -> Self {
        GraphParam::Base(p)
    }
}

/// Edge description used when building a graph from string ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub half_weight: QScalar,
}

impl EdgeSpec {
    pub fn new(id: &str, src: &str, dst: &str, half_weight: QScalar) -> Self {
        EdgeSpec {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
            half_weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub half_weight: QScalar,
}

impl Edge {
    /// `W(e) = w(e)²`.
    pub fn weight(&self) -> QScalar {
        &self.half_weight * &self.half_weight
    }
}

/// Vertices and edges are kept sorted by id, so indices follow the
/// lexicographic order of ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairGraph {
    param: GraphParam,
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    bar: Vec<usize>,
    out: Vec<Vec<usize>>,
}

/// One failed invariant, with the exact defect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonPositiveWeight {
        edge: String,
        half_weight: QScalar,
    },
    /// `ē` does not run from `t(e)` to `s(e)`.
    InvolutionSwap { edge: String, bar: String },
    /// `W(e)W(ē) ≠ 1`.
    Balance {
        edge: String,
        bar: String,
        product: QScalar,
    },
    /// `Σ_{s(e)=v} W(e) ≠ δ`; `defect = sum − δ`.
    Fairness {
        vertex: String,
        sum: QScalar,
        delta: QScalar,
        defect: QScalar,
    },
}

impl FairGraph {
    pub fn new(
        param: GraphParam,
        vertices: Vec<String>,
        edges: Vec<EdgeSpec>,
        involution: Vec<(String, String)>,
    ) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Graph(format!("duplicate vertex id {:?}", w[0])));
            }
        }
        let vertex_index: HashMap<String, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let mut specs = edges;
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        for w in specs.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Graph(format!("duplicate edge id {:?}", w[0].id)));
            }
        }
        let lookup = |v: &str, e: &str| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| Error::Graph(format!("edge {e:?} references unknown vertex {v:?}")))
        };
        let edges = specs
            .into_iter()
            .map(|s| {
                Ok(Edge {
                    src: lookup(&s.src, &s.id)?,
                    dst: lookup(&s.dst, &s.id)?,
                    id: s.id,
                    half_weight: s.half_weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let edge_index: HashMap<String, usize> =
            edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();

        let mut bar = vec![usize::MAX; edges.len()];
        for (a, b) in &involution {
            let ia = *edge_index
                .get(a)
                .ok_or_else(|| Error::Graph(format!("involution names unknown edge {a:?}")))?;
            let ib = *edge_index
                .get(b)
                .ok_or_else(|| Error::Graph(format!("involution names unknown edge {b:?}")))?;
            if bar[ia] != usize::MAX || bar[ib] != usize::MAX {
                let dup = if bar[ia] != usize::MAX { a } else { b };
                return Err(Error::Graph(format!("edge {dup:?} appears in more than one involution pair")));
            }
            bar[ia] = ib;
            bar[ib] = ia;
        }
        if let Some(i) = bar.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Graph(format!("edge {:?} has no involution partner", edges[i].id)));
        }

        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
        }
        Ok(FairGraph {
            param,
            vertices,
            vertex_index,
            edges,
            edge_index,
            bar,
            out,
        })
    }

    pub fn param(&self) -> &GraphParam {
        &self.param
    }

    pub fn delta(&self) -> QScalar {
        self.param.delta()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// The involution partner `ē`.
    pub fn bar(&self, e: usize) -> usize {
        self.bar[e]
    }

    /// Outgoing edges of `v`, sorted by edge id.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Unordered involution pairs, each listed once with the smaller id first.
    pub fn involution_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.edges.len())
            .filter(|&e| e <= self.bar[e])
            .map(|e| (e, self.bar[e]))
            .collect()
    }

    /// Checks positivity, the involution swap, balance and fairness exactly.
    /// An empty list means the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in &self.edges {
            if !e.half_weight.is_positive() {
                out.push(Violation::NonPositiveWeight {
                    edge: e.id.clone(),
                    half_weight: e.half_weight.clone(),
                });
            }
        }
        for (a, b) in self.involution_pairs() {
            let (ea, eb) = (&self.edges[a], &self.edges[b]);
            if ea.src != eb.dst || ea.dst != eb.src {
                out.push(Violation::InvolutionSwap {
                    edge: ea.id.clone(),
                    bar: eb.id.clone(),
                });
            }
            let product = ea.weight() * eb.weight();
            if !product.is_one() {
                out.push(Violation::Balance {
                    edge: ea.id.clone(),
                    bar: eb.id.clone(),
                    product,
                });
            }
        }
        let delta = self.delta();
        for (v, edges) in self.out.iter().enumerate() {
            let sum: QScalar = edges.iter().map(|&e| self.edges[e].weight()).sum();
            if sum != delta {
                out.push(Violation::Fairness {
                    vertex: self.vertices[v].clone(),
                    defect: &sum - &delta,
                    sum,
                    delta: delta.clone(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Vertices reachable from `v` in the underlying undirected graph.
    pub fn component(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &e in &self.out[u] {
                // Every edge's partner runs backwards, so outgoing edges
                // reach the whole undirected component.
                let t = self.edges[e].dst;
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Replaces one half-weight; used to build invalid graphs in tests and
    /// diagnostics.
    pub fn with_half_weight(&self, edge: &str, w: QScalar) -> Result<Self> {
        let i = self
            .edge_by_id(edge)
            .ok_or_else(|| Error::Graph(format!("unknown edge {edge:?}")))?;
        let mut g = self.clone();
        g.edges[i].half_weight = w;
        Ok(g)
    }
}
