//! Helpers shared by the integration tests: the example corpus, seeded
//! random inputs and small oracles that avoid the library's own routes.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sfi_core::gjs::GradedElement;
use sfi_core::graph::{read_graph, FairGraph};
use sfi_core::loops::{LoopAlgebra, LoopVector};
use sfi_core::tl::{PlanarPairing, TLMorphism};
use sfi_core::{BaseParam, QScalar};

pub fn q(n: i64, d: i64) -> QScalar {
    QScalar::new(n, d)
}

pub fn param(r: i64) -> BaseParam {
    BaseParam::from_int(r).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

pub fn example_path(name: &str) -> PathBuf {
    examples_dir().join(name)
}

/// Every corpus file that parses as a graph, by file name.
pub fn corpus_graphs() -> Vec<(String, FairGraph)> {
    let mut names: Vec<_> = std::fs::read_dir(examples_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .filter_map(|n| {
            let bytes = std::fs::read(example_path(&n)).unwrap();
            read_graph(&bytes).ok().map(|g| (n, g))
        })
        .collect()
}

pub fn valid_corpus_graphs() -> Vec<(String, FairGraph)> {
    corpus_graphs().into_iter().filter(|(_, g)| g.is_valid()).collect()
}

/// Every corpus file, for byte-level checks.
pub fn corpus_files() -> Vec<String> {
    let mut names: Vec<_> = std::fs::read_dir(examples_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
}

/// Closed walks of length `n` at `v`, from powers of the adjacency matrix.
pub fn closed_walks(g: &FairGraph, v: usize, n: usize) -> u128 {
    let nv = g.vertices().len();
    let mut row = vec![0u128; nv];
    row[v] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; nv];
        for e in g.edges() {
            next[e.dst] += row[e.src];
        }
        row = next;
    }
    row[v]
}

/// `[n] = (qⁿ − q⁻ⁿ)/(q − q⁻¹)`, or `n` at `q = 1`.
pub fn q_int_closed(n: u32, q: &QScalar) -> QScalar {
    if q.is_one() {
        return QScalar::from_int(n as i64);
    }
    let n = n as i32;
    (q.pow(n) - q.pow(-n)) / (q.clone() - q.recip())
}

pub fn catalan(n: u64) -> u64 {
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

pub fn random_coeff(rng: &mut ChaCha8Rng) -> QScalar {
    let n = rng.gen_range(-6i64..=6);
    let d = rng.gen_range(1i64..=4);
    q(n, d)
}

pub fn random_pairing(rng: &mut ChaCha8Rng, src: usize, dst: usize) -> PlanarPairing {
    PlanarPairing::enumerate(src, dst).choose(rng).unwrap().clone()
}

pub fn random_morphism(rng: &mut ChaCha8Rng, src: usize, dst: usize, terms: usize) -> TLMorphism {
    let mut f = TLMorphism::zero(src, dst);
    for _ in 0..terms {
        f.add_term(random_pairing(rng, src, dst), random_coeff(rng));
    }
    f
}

pub fn random_loop_vector(rng: &mut ChaCha8Rng, a: &LoopAlgebra<'_>, n: usize, terms: usize) -> LoopVector {
    let loops = a.enumerate(n);
    let mut x = LoopVector::zero(a.base(), n);
    if loops.is_empty() {
        return x;
    }
    for _ in 0..terms {
        let l = loops.choose(rng).unwrap();
        x.add_term(l.clone(), random_coeff(rng));
    }
    x
}

pub fn random_graded(rng: &mut ChaCha8Rng, max_degree: usize, terms: usize) -> GradedElement {
    let mut x = GradedElement::zero();
    for _ in 0..terms {
        let n = 2 * rng.gen_range(0..=max_degree / 2);
        let p = random_pairing(rng, n, 0);
        let t = GradedElement::from_morphism(TLMorphism::from_term(p, random_coeff(rng))).unwrap();
        x = x.add(&t);
    }
    x
}

/// The dimension-function corpus graphs, rebuilt from their dimensions.
pub fn dimension_function_graphs() -> Vec<(&'static str, FairGraph)> {
    use sfi_core::graph::{from_dimension_function, UndirectedEdge};
    use std::collections::BTreeMap;

    let build = |verts: Vec<String>, edges: Vec<UndirectedEdge>, dims: Vec<(&str, QScalar)>, delta: i64| {
        let dims: BTreeMap<String, QScalar> = dims.into_iter().map(|(v, d)| (v.to_string(), d)).collect();
        from_dimension_function(&verts, &edges, &dims, QScalar::from_int(delta)).unwrap()
    };

    let leaves: Vec<String> = (0..16).map(|i| format!("l{i:02}")).collect();
    let mut verts = vec!["c".to_string()];
    verts.extend(leaves.iter().cloned());
    let edges = (0..16).map(|i| UndirectedEdge::new(&format!("s{i:02}"), "c", &leaves[i])).collect();
    let mut dims = vec![("c", q(2, 1))];
    dims.extend(leaves.iter().map(|l| (l.as_str(), q(1, 1))));
    let star = build(verts, edges, dims, 4);

    let theta = build(
        vec!["u".into(), "w".into()],
        vec![UndirectedEdge::new("a", "u", "w"), UndirectedEdge::new("b", "u", "w")],
        vec![("u", q(1, 1)), ("w", q(1, 1))],
        2,
    );
    let rose = build(
        vec!["v".into()],
        vec![UndirectedEdge::new("a", "v", "v"), UndirectedEdge::new("b", "v", "v")],
        vec![("v", q(1, 1))],
        4,
    );
    vec![
        ("dimfn_star16.json", star),
        ("dimfn_theta.json", theta),
        ("dimfn_rose2.json", rose),
    ]
}
