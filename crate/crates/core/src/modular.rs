//! Inner products, the modular operator and the modular spectrum of `A_v`.
//!
//! In the loop basis the left inner product is orthonormal and the right
//! one is `⟨ℓ₁|ℓ₂⟩ = δ_{ℓ₁=ℓ₂} W(ℓ₁)⁻¹`, so `Δ` is diagonal with entries
//! `W(ℓ)`. The spectrum is the subgroup of `ℚ₊` generated by loop weights;
//! since `W(e)W(ē) = 1` a loop's weight only depends on its class in the
//! cycle space, and fundamental cycles of a spanning tree generate it.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::RationalSubgroup;
use crate::linalg::Matrix;
use crate::loops::{LoopAlgebra, LoopVector};
use crate::scalar::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Trivial,
    Cyclic,
    Dense,
}

/// A generator of the spectrum and where it came from: a loop written as
/// space-separated edge ids, or an eigenvalue label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub source: String,
    pub weight: QScalar,
}

/// The positive part of the modular spectrum, as a subgroup of `ℚ₊`.
/// The closure in `ℝ₊` is `{1}`, `λ^ℤ` or everything.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumDescriptor {
    pub kind: SpectrumKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<QScalar>,
    pub rank: usize,
    pub witness: Vec<Witness>,
    #[serde(skip)]
    subgroup: RationalSubgroup,
}

impl SpectrumDescriptor {
    pub fn from_witness(witness: Vec<Witness>) -> Result<Self> {
        let weights: Vec<QScalar> = witness.iter().map(|w| w.weight.clone()).collect();
        let subgroup = RationalSubgroup::generated_by(&weights)?;
        let (kind, lambda) = match subgroup.rank() {
            0 => (SpectrumKind::Trivial, None),
            1 => (SpectrumKind::Cyclic, subgroup.cyclic_generator()),
            _ => (SpectrumKind::Dense, None),
        };
        Ok(SpectrumDescriptor {
            kind,
            lambda,
            rank: subgroup.rank(),
            witness,
            subgroup,
        })
    }

    pub fn subgroup(&self) -> &RationalSubgroup {
        &self.subgroup
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == SpectrumKind::Trivial
    }

    /// Whether both descriptors generate the same subgroup of `ℚ₊`.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        self.subgroup.same_as(&other.subgroup)
    }

    pub fn is_contained_in(&self, other: &Self) -> Result<bool> {
        self.subgroup.is_subgroup_of(&other.subgroup)
    }
}

impl fmt::Display for SpectrumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, &self.lambda) {
            (SpectrumKind::Cyclic, Some(l)) => write!(f, "cyclic λ={l}"),
            (SpectrumKind::Trivial, _) => write!(f, "trivial"),
            _ => write!(f, "dense (rank {})", self.rank),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FactorType {
    #[serde(rename = "II_1")]
    II1,
    #[serde(rename = "III_lambda")]
    IIILambda { lambda: QScalar },
    #[serde(rename = "III_1")]
    III1,
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorType::II1 => write!(f, "II₁"),
            FactorType::IIILambda { lambda } => write!(f, "III_{{{lambda}}}"),
            FactorType::III1 => write!(f, "III₁"),
        }
    }
}

pub fn classify_type(s: &SpectrumDescriptor) -> FactorType {
    match (s.kind, &s.lambda) {
        (SpectrumKind::Trivial, _) => FactorType::II1,
        (SpectrumKind::Cyclic, Some(l)) => FactorType::IIILambda { lambda: l.clone() },
        (SpectrumKind::Cyclic, None) => unreachable!("cyclic descriptor always has λ"),
        (SpectrumKind::Dense, _) => FactorType::III1,
    }
}

fn check_degrees(x: &LoopVector, y: &LoopVector) -> Result<()> {
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch {
            left: x.degree(),
            right: y.degree(),
        });
    }
    Ok(())
}

/// Caps off the middle of a degree-`2n` vector with nested cups and reads
/// the coefficient of the empty loop.
fn close_middle(a: &LoopAlgebra<'_>, z: &LoopVector) -> Result<QScalar> {
    let mut cur = z.clone();
    while cur.degree() > 0 && !cur.is_zero() {
        cur = a.cup(cur.degree() / 2, &cur)?;
    }
    Ok(cur.coefficient(&[]))
}

/// `Σ x_ℓ y_ℓ W(ℓ)⁻¹`.
pub fn right_inner_closed(a: &LoopAlgebra<'_>, x: &LoopVector, y: &LoopVector) -> Result<QScalar> {
    check_degrees(x, y)?;
    let mut out = QScalar::zero();
    for (l, c) in x.terms() {
        let d = y.coefficient(l);
        if !d.is_zero() {
            out += c * d * a.loop_weight(l).recip();
        }
    }
    Ok(out)
}

/// Nested cups applied to `star(x)·y`.
pub fn right_inner_structural(a: &LoopAlgebra<'_>, x: &LoopVector, y: &LoopVector) -> Result<QScalar> {
    check_degrees(x, y)?;
    close_middle(a, &a.multiply(&a.star(x)?, y)?)
}

/// The right inner product, evaluated both ways; a disagreement is an
/// internal error.
pub fn right_inner(a: &LoopAlgebra<'_>, x: &LoopVector, y: &LoopVector) -> Result<QScalar> {
    let closed = right_inner_closed(a, x, y)?;
    let structural = right_inner_structural(a, x, y)?;
    if closed != structural {
        return Err(Error::Precondition(format!(
            "right inner product routes disagree: {closed} vs {structural}"
        )));
    }
    Ok(closed)
}

/// Nested cups applied to `x·star(y)`.
pub fn left_inner(a: &LoopAlgebra<'_>, x: &LoopVector, y: &LoopVector) -> Result<QScalar> {
    check_degrees(x, y)?;
    close_middle(a, &a.multiply(x, &a.star(y)?)?)
}

/// `Δ` on degree `n`: `diag(W(ℓ))` in the loop enumeration order.
pub fn modular_operator(a: &LoopAlgebra<'_>, n: usize) -> Matrix<QScalar> {
    let loops = a.enumerate(n);
    let mut m = Matrix::zeros(loops.len(), loops.len());
    for (i, l) in loops.iter().enumerate() {
        m.set(i, i, a.loop_weight(l));
    }
    m
}

pub fn apply_modular(a: &LoopAlgebra<'_>, x: &LoopVector) -> LoopVector {
    let mut out = LoopVector::zero(x.base(), x.degree());
    for (l, c) in x.terms() {
        out.add_term(l.to_vec(), c * a.loop_weight(l));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceBounds {
    pub n: usize,
    pub trace: QScalar,
    pub inverse_trace: QScalar,
    pub bound: QScalar,
    pub pass: bool,
}

/// `Tr Δ_n` and `Tr Δ_n⁻¹` against `δⁿ`.
pub fn trace_bounds(a: &LoopAlgebra<'_>, n: usize) -> TraceBounds {
    let mut trace = QScalar::zero();
    let mut inverse_trace = QScalar::zero();
    for l in a.enumerate(n).iter() {
        let w = a.loop_weight(l);
        inverse_trace += w.recip();
        trace += w;
    }
    let bound = a.delta().pow(n as i32);
    let pass = trace <= bound && inverse_trace <= bound;
    TraceBounds {
        n,
        trace,
        inverse_trace,
        bound,
        pass,
    }
}

/// Spectrum from the fundamental cycles of a BFS spanning tree of the
/// basepoint's component.
pub fn spectrum_exact(a: &LoopAlgebra<'_>) -> Result<SpectrumDescriptor> {
    let g = a.graph();
    let nv = g.vertices().len();
    let mut parent: Vec<Option<usize>> = vec![None; nv];
    let mut potential: Vec<Option<QScalar>> = vec![None; nv];
    let mut tree_edge = vec![false; g.edges().len()];
    potential[a.base()] = Some(QScalar::one());
    let mut queue = VecDeque::from([a.base()]);
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        let pv = potential[v].clone().expect("queued vertices have a potential");
        for &e in g.out_edges(v) {
            let t = g.edge(e).dst;
            if potential[t].is_none() {
                potential[t] = Some(&pv * g.edge(e).weight());
                parent[t] = Some(e);
                tree_edge[e] = true;
                tree_edge[g.bar(e)] = true;
                reached += 1;
                queue.push_back(t);
            }
        }
    }
    if reached < nv {
        log::warn!(
            "{} vertices lie outside the component of {:?} and are ignored",
            nv - reached,
            g.vertex_id(a.base())
        );
    }
    let path_from_base = |v: usize| {
        let mut p = Vec::new();
        let mut cur = v;
        while let Some(e) = parent[cur] {
            p.push(e);
            cur = g.edge(e).src;
        }
        p.reverse();
        p
    };
    let mut witness = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let eb = g.bar(e);
        if tree_edge[e] || eb < e || potential[edge.src].is_none() {
            continue;
        }
        let mut l = path_from_base(edge.src);
        l.push(e);
        l.extend(a.reverse(&path_from_base(edge.dst)));
        let (ps, pt) = (
            potential[edge.src].as_ref().expect("in component"),
            potential[edge.dst].as_ref().expect("in component"),
        );
        let weight = ps * edge.weight() / pt;
        debug_assert_eq!(weight, a.loop_weight(&l));
        witness.push(Witness {
            source: a.loop_ids(&l).join(" "),
            weight,
        });
    }
    SpectrumDescriptor::from_witness(witness)
}

/// Spectrum generated by the weights of all loops of length at most
/// `max_len`, by dynamic programming over (vertex, accumulated weight).
pub fn spectrum_bruteforce(a: &LoopAlgebra<'_>, max_len: usize) -> Result<SpectrumDescriptor> {
    if max_len == 0 {
        return Err(Error::InvalidParam("horizon must be at least 1".into()));
    }
    let g = a.graph();
    // One representative walk per state, the first one reached in edge order.
    let mut frontier: BTreeMap<(usize, QScalar), Vec<usize>> = BTreeMap::new();
    frontier.insert((a.base(), QScalar::one()), Vec::new());
    let mut found: BTreeMap<QScalar, Vec<usize>> = BTreeMap::new();
    for _ in 0..max_len {
        let mut next: BTreeMap<(usize, QScalar), Vec<usize>> = BTreeMap::new();
        for ((v, w), path) in &frontier {
            for &e in g.out_edges(*v) {
                let key = (g.edge(e).dst, w * g.edge(e).weight());
                next.entry(key).or_insert_with(|| {
                    let mut p = path.clone();
                    p.push(e);
                    p
                });
            }
        }
        for ((v, w), path) in &next {
            if *v == a.base() {
                found.entry(w.clone()).or_insert_with(|| path.clone());
            }
        }
        frontier = next;
    }
    let mut witness: Vec<Witness> = found
        .into_iter()
        .map(|(weight, l)| Witness {
            source: a.loop_ids(&l).join(" "),
            weight,
        })
        .collect();
    witness.sort_by(|x, y| {
        x.source
            .split(' ')
            .count()
            .cmp(&y.source.split(' ').count())
            .then_with(|| x.source.cmp(&y.source))
    });
    SpectrumDescriptor::from_witness(witness)
}

pub fn is_tracial(a: &LoopAlgebra<'_>) -> Result<bool> {
    Ok(spectrum_exact(a)?.is_trivial())
}

/// Whether `Δ_k` is the identity for every `k ≤ n`.
pub fn modular_is_identity(a: &LoopAlgebra<'_>, n: usize) -> bool {
    (0..=n).all(|k| modular_operator(a, k).is_identity())
}

/// Spectrum of a compact quantum group from the eigenvalues of `F*F`.
/// Returns the descriptor and whether the quantum group is of Kac type.
pub fn qg_spectrum(eigs: &[QScalar]) -> Result<(SpectrumDescriptor, bool)> {
    if eigs.is_empty() {
        return Err(Error::Precondition("no eigenvalues given".into()));
    }
    if let Some(bad) = eigs.iter().find(|x| !x.is_positive()) {
        return Err(Error::Precondition(format!("eigenvalues must be positive, got {bad}")));
    }
    let sum: QScalar = eigs.iter().cloned().sum();
    let inv_sum: QScalar = eigs.iter().map(QScalar::recip).sum();
    if sum != inv_sum {
        return Err(Error::Precondition(format!(
            "trace balance fails: Σλ = {sum} but Σλ⁻¹ = {inv_sum}"
        )));
    }
    let witness = eigs
        .iter()
        .enumerate()
        .map(|(i, w)| Witness {
            source: format!("eig[{i}]"),
            weight: w.clone(),
        })
        .collect();
    let s = SpectrumDescriptor::from_witness(witness)?;
    let kac = s.is_trivial();
    Ok((s, kac))
}
