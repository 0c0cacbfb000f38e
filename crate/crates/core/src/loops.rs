//! The loop algebra `A_v` of a fair and balanced graph at a basepoint.
//!
//! Degree `n` has a basis of length-`n` loops at `v`. The turn-backs act by
//!
//! ```text
//! cup(i)[e₁ … eₙ] = δ_{eᵢ = ē_{i+1}} W(eᵢ)^{1/2} [e₁ … e_{i−1} e_{i+2} … eₙ]
//! cap(i)[e₁ … eₙ] = Σ_{s(e) = t(eᵢ)} W(e)^{1/2} [e₁ … eᵢ e ē e_{i+1} … eₙ]
//! ```
//!
//! with `cup` indexed `1..n−1` and `cap` indexed `0..n`; `cap(0)` inserts at
//! the front, anchored at the basepoint. With these conventions
//! `cup(i+1)∘cap(i) = δ` and `cup(i)∘cap(i) = cup(i+2)∘cap(i) = id`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::FairGraph;
use crate::linalg::Matrix;
use crate::scalar::QScalar;
use crate::tl::{Endpoint, PlanarPairing, TLMorphism, TemperleyLieb};

/// A based loop as a sequence of edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop {
    pub base: usize,
    pub edges: Vec<usize>,
}

/// A rational combination of loops of one length at one basepoint.
#[derive(Clone, PartialEq, Eq)]
pub struct LoopVector {
    base: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, QScalar>,
}

impl LoopVector {
    pub fn zero(base: usize, degree: usize) -> Self {
        LoopVector {
            base,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(l: &Loop) -> Self {
        let mut v = Self::zero(l.base, l.edges.len());
        v.add_term(l.edges.clone(), QScalar::one());
        v
    }

    /// The empty loop at `base`, the unit of the algebra.
    pub fn unit(base: usize) -> Self {
        Self::basis(&Loop { base, edges: vec![] })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &QScalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, edges: &[usize]) -> QScalar {
        self.terms.get(edges).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, edges: Vec<usize>, c: QScalar) {
        debug_assert_eq!(edges.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(edges).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(self.base, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for LoopVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopVector(deg {}) {{", self.degree)?;
        for (k, v) in &self.terms {
            write!(f, " {v}*{k:?}")?;
        }
        write!(f, " }}")
    }
}

/// One step of a cup/cap word, in the indexing of [`LoopAlgebra::cup`] and
/// [`LoopAlgebra::cap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TurnBack {
    Cup(usize),
    Cap(usize),
}

/// Factors a pairing into turn-backs, listed in application order: all
/// cups first (innermost bottom arcs), then caps (outermost top arcs first).
pub fn turnback_word(p: &PlanarPairing) -> Vec<TurnBack> {
    let mut word = Vec::new();
    let mut bottom: Vec<usize> = (0..p.src()).collect();
    'cups: loop {
        for j in 0..bottom.len().saturating_sub(1) {
            if p.partner(Endpoint::Bottom(bottom[j])) == Endpoint::Bottom(bottom[j + 1]) {
                word.push(TurnBack::Cup(j + 1));
                bottom.drain(j..j + 2);
                continue 'cups;
            }
        }
        break;
    }
    let mut top: Vec<usize> = (0..p.dst()).collect();
    let mut removed = Vec::new();
    'caps: loop {
        for j in 0..top.len().saturating_sub(1) {
            if p.partner(Endpoint::Top(top[j])) == Endpoint::Top(top[j + 1]) {
                removed.push(j);
                top.drain(j..j + 2);
                continue 'caps;
            }
        }
        break;
    }
    debug_assert_eq!(bottom.len(), top.len());
    word.extend(removed.into_iter().rev().map(TurnBack::Cap));
    word
}

type LoopCache = Mutex<HashMap<usize, Arc<Vec<Vec<usize>>>>>;

/// `A_v` for a graph and basepoint.
pub struct LoopAlgebra<'g> {
    graph: &'g FairGraph,
    base: usize,
    cache: LoopCache,
}

impl<'g> LoopAlgebra<'g> {
    pub fn new(graph: &'g FairGraph, base: &str) -> Result<Self> {
        Ok(Self::at(graph, graph.vertex(base)?))
    }

    pub fn at(graph: &'g FairGraph, base: usize) -> Self {
        LoopAlgebra {
            graph,
            base,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &'g FairGraph {
        self.graph
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn delta(&self) -> QScalar {
        self.graph.delta()
    }

    /// All loops of length `n` at the basepoint, in lexicographic edge-id
    /// order.
    pub fn enumerate(&self, n: usize) -> Arc<Vec<Vec<usize>>> {
        if let Some(hit) = self.cache.lock().expect("loop cache poisoned").get(&n) {
            return Arc::clone(hit);
        }
        let g = self.graph;
        let nv = g.vertices().len();
        // can_return[k][v]: some walk of length k leads from v to the base.
        let mut can_return = vec![vec![false; nv]; n + 1];
        can_return[0][self.base] = true;
        for k in 1..=n {
            for v in 0..nv {
                can_return[k][v] = g.out_edges(v).iter().any(|&e| can_return[k - 1][g.edge(e).dst]);
            }
        }
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(n);
        fn dfs(
            g: &FairGraph,
            v: usize,
            rem: usize,
            can_return: &[Vec<bool>],
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if rem == 0 {
                out.push(path.clone());
                return;
            }
            for &e in g.out_edges(v) {
                let t = g.edge(e).dst;
                if can_return[rem - 1][t] {
                    path.push(e);
                    dfs(g, t, rem - 1, can_return, path, out);
                    path.pop();
                }
            }
        }
        if can_return[n][self.base] {
            dfs(g, self.base, n, &can_return, &mut path, &mut out);
        }
        let out = Arc::new(out);
        self.cache
            .lock()
            .expect("loop cache poisoned")
            .insert(n, Arc::clone(&out));
        out
    }

    pub fn enumerate_loops(&self, n: usize) -> Vec<Loop> {
        self.enumerate(n)
            .iter()
            .map(|edges| Loop {
                base: self.base,
                edges: edges.clone(),
            })
            .collect()
    }

    pub fn loop_count(&self, n: usize) -> usize {
        self.enumerate(n).len()
    }

    pub fn is_loop(&self, edges: &[usize]) -> bool {
        let g = self.graph;
        let mut v = self.base;
        for &e in edges {
            if e >= g.edges().len() || g.edge(e).src != v {
                return false;
            }
            v = g.edge(e).dst;
        }
        v == self.base
    }

    /// Builds a loop from edge ids.
    pub fn loop_from_ids(&self, ids: &[&str]) -> Result<Loop> {
        let edges = ids
            .iter()
            .map(|id| {
                self.graph
                    .edge_by_id(id)
                    .ok_or_else(|| Error::Graph(format!("unknown edge {id:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !self.is_loop(&edges) {
            return Err(Error::Graph(format!("{ids:?} is not a loop at the basepoint")));
        }
        Ok(Loop {
            base: self.base,
            edges,
        })
    }

    pub fn vector(&self, ids: &[&str]) -> Result<LoopVector> {
        Ok(LoopVector::basis(&self.loop_from_ids(ids)?))
    }

    pub fn loop_ids(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| self.graph.edge(e).id.clone()).collect()
    }

    /// `W(ℓ) = W(e₁)⋯W(eₙ)`.
    pub fn loop_weight(&self, edges: &[usize]) -> QScalar {
        edges.iter().map(|&e| self.graph.edge(e).weight()).product()
    }

    /// `W(ℓ)^{1/2}`, the product of stored half-weights.
    pub fn loop_half_weight(&self, edges: &[usize]) -> QScalar {
        edges.iter().map(|&e| self.graph.edge(e).half_weight.clone()).product()
    }

    /// `ℓ̄ = [ēₙ … ē₁]`.
    pub fn reverse(&self, edges: &[usize]) -> Vec<usize> {
        edges.iter().rev().map(|&e| self.graph.bar(e)).collect()
    }

    fn check_base(&self, x: &LoopVector) -> Result<()> {
        if x.base != self.base {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// Turn-back joining positions `i, i+1` (1-based), `1 ≤ i ≤ n−1`.
    pub fn cup(&self, i: usize, x: &LoopVector) -> Result<LoopVector> {
        self.check_base(x)?;
        let n = x.degree;
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                what: format!("cup on degree {n}"),
            });
        }
        let g = self.graph;
        let mut out = LoopVector::zero(self.base, n - 2);
        for (l, c) in &x.terms {
            let (a, b) = (l[i - 1], l[i]);
            if g.bar(a) != b {
                continue;
            }
            let mut shorter = Vec::with_capacity(n - 2);
            shorter.extend_from_slice(&l[..i - 1]);
            shorter.extend_from_slice(&l[i + 1..]);
            out.add_term(shorter, c * &g.edge(a).half_weight);
        }
        Ok(out)
    }

    /// Inserts `e ē` after position `i`, summed over edges leaving the
    /// vertex reached after `i` steps, `0 ≤ i ≤ n`.
    pub fn cap(&self, i: usize, x: &LoopVector) -> Result<LoopVector> {
        self.check_base(x)?;
        let n = x.degree;
        if i > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                what: format!("cap on degree {n}"),
            });
        }
        let g = self.graph;
        let mut out = LoopVector::zero(self.base, n + 2);
        for (l, c) in &x.terms {
            let at = if i == 0 { self.base } else { g.edge(l[i - 1]).dst };
            for &e in g.out_edges(at) {
                let mut longer = Vec::with_capacity(n + 2);
                longer.extend_from_slice(&l[..i]);
                longer.push(e);
                longer.push(g.bar(e));
                longer.extend_from_slice(&l[i..]);
                out.add_term(longer, c * &g.edge(e).half_weight);
            }
        }
        Ok(out)
    }

    fn apply_word(&self, word: &[TurnBack], x: &LoopVector) -> Result<LoopVector> {
        let mut cur = x.clone();
        for step in word {
            cur = match *step {
                TurnBack::Cup(i) => self.cup(i, &cur)?,
                TurnBack::Cap(i) => self.cap(i, &cur)?,
            };
            if cur.is_zero() {
                break;
            }
        }
        Ok(cur)
    }

    /// The action of a Temperley-Lieb morphism `n → m` on degree `n`.
    pub fn tl_act(&self, f: &TLMorphism, x: &LoopVector) -> Result<LoopVector> {
        self.check_base(x)?;
        if f.src() != x.degree {
            return Err(Error::DegreeMismatch {
                left: f.src(),
                right: x.degree,
            });
        }
        let mut out = LoopVector::zero(self.base, f.dst());
        for (p, c) in f.terms() {
            let y = self.apply_word(&turnback_word(p), x)?;
            for (k, v) in y.terms {
                out.add_term(k, v * c);
            }
        }
        Ok(out)
    }

    /// Matrix of `f: n → m` in the loop bases; column `j` is the image of
    /// the `j`-th loop of length `n`.
    pub fn operator_matrix(&self, f: &TLMorphism) -> Result<Matrix<QScalar>> {
        let cols = self.enumerate(f.src());
        let rows = self.enumerate(f.dst());
        let row_index: HashMap<&[usize], usize> =
            rows.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();
        let images = cols
            .par_iter()
            .map(|l| {
                let x = LoopVector::basis(&Loop {
                    base: self.base,
                    edges: l.clone(),
                });
                self.tl_act(f, &x)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (j, y) in images.into_iter().enumerate() {
            for (k, v) in y.terms {
                m.set(row_index[k.as_slice()], j, v);
            }
        }
        Ok(m)
    }

    /// Concatenation product.
    pub fn multiply(&self, x: &LoopVector, y: &LoopVector) -> Result<LoopVector> {
        if x.base != y.base {
            return Err(Error::BaseMismatch);
        }
        self.check_base(x)?;
        let mut out = LoopVector::zero(self.base, x.degree + y.degree);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                out.add_term(ab, c * d);
            }
        }
        Ok(out)
    }

    /// `ℓ ↦ W(ℓ̄)^{1/2} ℓ̄`; coefficients are real, so conjugation is trivial.
    pub fn star(&self, x: &LoopVector) -> Result<LoopVector> {
        self.check_base(x)?;
        let mut out = LoopVector::zero(self.base, x.degree);
        for (l, c) in &x.terms {
            let rev = self.reverse(l);
            let w = self.loop_half_weight(&rev);
            out.add_term(rev, c * w);
        }
        Ok(out)
    }

    /// `dim A(f⁽ᵏ⁾)`: the rank of the Jones-Wenzl projector acting on degree `k`.
    pub fn isotypic_dim(&self, k: usize) -> Result<usize> {
        if k == 0 {
            // Connected: only the empty loop has length 0.
            return Ok(self.loop_count(0));
        }
        let tl = TemperleyLieb::new(self.delta());
        let jw = tl.jones_wenzl(k)?;
        Ok(self.operator_matrix(&jw)?.rank())
    }
}

/// Temperley-Lieb branching multiplicity of `f⁽ᵏ⁾` in `ρ^{⊗n}`.
pub fn branching_multiplicity(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; n + 2];
    row[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; n + 2];
        for (j, &m) in row.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if j + 1 < next.len() {
                next[j + 1] += m;
            }
            if j > 0 {
                next[j - 1] += m;
            }
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}
