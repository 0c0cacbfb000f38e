use std::collections::BTreeMap;

use super::{EdgeSpec, FairGraph, GraphParam};
use crate::error::{Error, Result};
use crate::scalar::{BaseParam, QScalar};

/// `n` vertices on a cycle; each adjacent pair is joined by an edge of
/// weight `q⁻¹` in the forward direction and `q` backwards.
pub fn cycle_family(n: usize, p: BaseParam) -> Result<FairGraph> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("cycle needs at least 2 vertices, got {n}")));
    }
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let r = p.r().clone();
    let rinv = r.recip();
    let mut edges = Vec::with_capacity(2 * n);
    let mut involution = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
        let (f, bk) = (format!("f{i}"), format!("b{i}"));
        edges.push(EdgeSpec::new(&f, a, b, rinv.clone()));
        edges.push(EdgeSpec::new(&bk, b, a, r.clone()));
        involution.push((f, bk));
    }
    FairGraph::new(GraphParam::Base(p), vertices, edges, involution)
}

/// One vertex with `k` pairs of self-loops.
///
/// For `k = 1` the pair has half-weights `r, r⁻¹` (or `1, 1` when only
/// `δ = 2` is given). For `k ≥ 2` all weights are 1, which forces `δ = 2k`.
pub fn bouquet(k: usize, param: GraphParam) -> Result<FairGraph> {
    if k == 0 {
        return Err(Error::InvalidParam("bouquet needs at least one loop pair".into()));
    }
    let delta = param.delta();
    let (edges, involution) = if k == 1 {
        let (w, wbar) = match &param {
            GraphParam::Base(p) => (p.r().clone(), p.r().recip()),
            GraphParam::Delta(d) if *d == 2 => (QScalar::one(), QScalar::one()),
            GraphParam::Delta(d) => {
                return Err(Error::InvalidParam(format!(
                    "bouquet(1) with a bare loop value needs δ = 2, got {d}"
                )))
            }
        };
        (
            vec![EdgeSpec::new("e", "v", "v", w), EdgeSpec::new("ebar", "v", "v", wbar)],
            vec![("e".to_string(), "ebar".to_string())],
        )
    } else {
        if delta != QScalar::from_int(2 * k as i64) {
            return Err(Error::InvalidParam(format!(
                "bouquet({k}) with unit weights needs δ = {}, got {delta}",
                2 * k
            )));
        }
        let mut edges = Vec::new();
        let mut involution = Vec::new();
        for i in 1..=k {
            let (e, ebar) = (format!("e{i}"), format!("e{i}bar"));
            edges.push(EdgeSpec::new(&e, "v", "v", QScalar::one()));
            edges.push(EdgeSpec::new(&ebar, "v", "v", QScalar::one()));
            involution.push((e, ebar));
        }
        (edges, involution)
    };
    FairGraph::new(param, vec!["v".into()], edges, involution)
}

/// An undirected edge of a graph carrying a dimension function.
#[derive(Clone, Debug)]
pub struct UndirectedEdge {
    pub id: String,
    pub a: String,
    pub b: String,
}

impl UndirectedEdge {
    pub fn new(id: &str, a: &str, b: &str) -> Self {
        UndirectedEdge {
            id: id.into(),
            a: a.into(),
            b: b.into(),
        }
    }
}

/// Orients a graph with dimension function `d` into a fair and balanced
/// graph with `W(e) = d(t(e))² / d(s(e))²`.
///
/// Each undirected edge `x` becomes `x+` (a → b) and `x-` (b → a). The
/// squared dimensions must be a δ-eigenvector of the adjacency operator;
/// that is exactly fairness of the output, and it is checked.
pub fn from_dimension_function(
    vertices: &[String],
    edges: &[UndirectedEdge],
    dims: &BTreeMap<String, QScalar>,
    delta: QScalar,
) -> Result<FairGraph> {
    for v in vertices {
        match dims.get(v) {
            Some(d) if d.is_positive() => {}
            Some(d) => return Err(Error::InvalidParam(format!("dimension of {v:?} must be positive, got {d}"))),
            None => return Err(Error::InvalidParam(format!("no dimension given for {v:?}"))),
        }
    }
    let dim = |v: &str| {
        dims.get(v)
            .cloned()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    };
    let mut specs = Vec::with_capacity(2 * edges.len());
    let mut involution = Vec::with_capacity(edges.len());
    for e in edges {
        let (da, db) = (dim(&e.a)?, dim(&e.b)?);
        let (fwd, bwd) = (format!("{}+", e.id), format!("{}-", e.id));
        specs.push(EdgeSpec::new(&fwd, &e.a, &e.b, &db / &da));
        specs.push(EdgeSpec::new(&bwd, &e.b, &e.a, &da / &db));
        involution.push((fwd, bwd));
    }
    let g = FairGraph::new(GraphParam::Delta(delta), vertices.to_vec(), specs, involution)?;
    let bad = g.validate();
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "squared dimensions are not a δ-eigenvector of the adjacency operator: {bad:?}"
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QScalar {
        QScalar::new(n, d)
    }

    fn unit_dims(vs: &[&str]) -> BTreeMap<String, QScalar> {
        vs.iter().map(|v| (v.to_string(), QScalar::one())).collect()
    }

    #[test]
    fn cycle_family_shape() {
        let g = cycle_family(3, BaseParam::from_int(2).unwrap()).unwrap();
        assert_eq!(g.vertices().len(), 3);
        assert_eq!(g.edges().len(), 6);
        for e in g.edges() {
            let w = e.weight();
            assert!(w == q(4, 1) || w == q(1, 4));
        }
        assert!(g.validate().is_empty());
        assert!(cycle_family(4, BaseParam::from_int(2).unwrap()).unwrap().validate().is_empty());
        let flat = cycle_family(2, BaseParam::from_int(1).unwrap()).unwrap();
        assert!(flat.edges().iter().all(|e| e.weight().is_one()));
        assert_eq!(flat.delta(), q(2, 1));
        assert!(flat.validate().is_empty());
        assert!(cycle_family(1, BaseParam::from_int(2).unwrap()).is_err());
    }

    #[test]
    fn bouquet_shapes() {
        let g = bouquet(1, BaseParam::from_int(2).unwrap().into()).unwrap();
        let ws: Vec<_> = g.edges().iter().map(|e| e.weight()).collect();
        assert_eq!(ws, vec![q(4, 1), q(1, 4)]);
        let g2 = bouquet(2, GraphParam::Delta(q(4, 1))).unwrap();
        assert_eq!(g2.edges().len(), 4);
        assert!(g2.edges().iter().all(|e| e.weight().is_one()));
        assert!(g2.validate().is_empty());
        assert!(bouquet(1, BaseParam::from_int(3).unwrap().into()).unwrap().validate().is_empty());
        assert!(bouquet(2, GraphParam::Delta(q(5, 1))).is_err());
        assert!(bouquet(2, BaseParam::from_int(2).unwrap().into()).is_err());
    }

    #[test]
    fn dimension_function_examples() {
        let g = from_dimension_function(
            &["v".into()],
            &[UndirectedEdge::new("a", "v", "v"), UndirectedEdge::new("b", "v", "v")],
            &unit_dims(&["v"]),
            q(4, 1),
        )
        .unwrap();
        assert_eq!(g.edges().len(), 4);
        assert!(g.edges().iter().all(|e| e.weight().is_one()));

        let g = from_dimension_function(
            &["u".into(), "w".into()],
            &[UndirectedEdge::new("a", "u", "w"), UndirectedEdge::new("b", "u", "w")],
            &unit_dims(&["u", "w"]),
            q(2, 1),
        )
        .unwrap();
        assert_eq!(g.edges().len(), 4);
        assert!(g.edges().iter().all(|e| e.weight().is_one()));
    }

    #[test]
    fn dimension_function_rejections() {
        // The A3 path needs d = (1, √2, 1), which is not rational.
        assert!("sqrt(2)".parse::<QScalar>().is_err());
        let path = [UndirectedEdge::new("a", "u", "v"), UndirectedEdge::new("b", "v", "w")];
        let vs: Vec<String> = ["u", "v", "w"].iter().map(|s| s.to_string()).collect();
        let res = from_dimension_function(&vs, &path, &unit_dims(&["u", "v", "w"]), q(2, 1));
        assert!(matches!(res, Err(Error::Precondition(_))));

        // Star with three leaves and unit dimensions: the centre sums to 3.
        let star: Vec<_> = (0..3).map(|i| UndirectedEdge::new(&format!("s{i}"), "c", &format!("l{i}"))).collect();
        let vs: Vec<String> = ["c", "l0", "l1", "l2"].iter().map(|s| s.to_string()).collect();
        let res = from_dimension_function(&vs, &star, &unit_dims(&["c", "l0", "l1", "l2"]), q(2, 1));
        assert!(res.is_err());
    }

    #[test]
    fn star_with_square_dimensions() {
        // K_{1,16} with d(centre) = 2, d(leaf) = 1 and δ = 4: the squared
        // dimensions (4, 1, …, 1) are a 4-eigenvector of the adjacency.
        let star: Vec<_> = (0..16).map(|i| UndirectedEdge::new(&format!("s{i:02}"), "c", &format!("l{i:02}"))).collect();
        let mut vs: Vec<String> = (0..16).map(|i| format!("l{i:02}")).collect();
        vs.push("c".into());
        let mut dims: BTreeMap<String, QScalar> = vs.iter().map(|v| (v.clone(), QScalar::one())).collect();
        dims.insert("c".into(), q(2, 1));
        let g = from_dimension_function(&vs, &star, &dims, q(4, 1)).unwrap();
        assert!(g.validate().is_empty());
        let c = g.vertex("c").unwrap();
        for &e in g.out_edges(c) {
            assert_eq!(g.edge(e).weight(), q(1, 4));
        }
    }
}
