//! The Temperley-Lieb-Jones category at loop value δ.
//!
//! Morphisms are [`TLMorphism`]s; composition, traces and Jones-Wenzl
//! projectors need δ and live on [`TemperleyLieb`].

mod morphism;
mod pairing;

pub use morphism::TLMorphism;
pub use pairing::{Endpoint, PlanarPairing};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::{quantum_int_from_delta, BaseParam, QScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemperleyLieb {
    delta: QScalar,
}

type JwCache = Mutex<HashMap<(usize, QScalar), Arc<TLMorphism>>>;

fn jw_cache() -> &'static JwCache {
    static CACHE: OnceLock<JwCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl TemperleyLieb {
    pub fn new(delta: QScalar) -> Self {
        TemperleyLieb { delta }
    }

    pub fn from_param(p: &BaseParam) -> Self {
        Self::new(p.delta())
    }

    pub fn delta(&self) -> &QScalar {
        &self.delta
    }

    /// `f ∘ g`: `g` is drawn below `f`. Each closed loop contributes δ.
    pub fn compose(&self, f: &TLMorphism, g: &TLMorphism) -> Result<TLMorphism> {
        if f.src() != g.dst() {
            return Err(Error::ArityMismatch {
                expected: f.src(),
                found: g.dst(),
            });
        }
        let mut out = TLMorphism::zero(g.src(), f.dst());
        for (p, a) in f.terms() {
            for (q, b) in g.terms() {
                let (r, loops) = p.compose(q)?;
                let c = a * b * self.delta.pow(loops as i32);
                out.add_term(r, c);
            }
        }
        Ok(out)
    }

    /// Composes a chain left to right as written: `compose_all([f, g, h]) = f∘g∘h`.
    pub fn compose_all(&self, chain: &[&TLMorphism]) -> Result<TLMorphism> {
        let (last, rest) = chain
            .split_last()
            .ok_or_else(|| Error::Precondition("empty composition chain".into()))?;
        let mut acc = (*last).clone();
        for f in rest.iter().rev() {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }

    /// Markov trace, evaluated by counting closure loops on each diagram.
    pub fn markov_trace(&self, f: &TLMorphism) -> Result<QScalar> {
        if f.src() != f.dst() {
            return Err(Error::NonSquare {
                src: f.src(),
                dst: f.dst(),
            });
        }
        let mut tr = QScalar::zero();
        for (p, c) in f.terms() {
            tr += c * self.delta.pow(p.closure_loops()? as i32);
        }
        Ok(tr)
    }

    /// Trace via the diagram `∪ⁿ ∘ (f ⊗ id) ∘ ∩ⁿ`, strands closed on the right.
    pub fn right_trace(&self, f: &TLMorphism) -> Result<QScalar> {
        let n = self.square_arity(f)?;
        let id = TLMorphism::identity(n);
        self.closed_scalar(&f.tensor(&id), n)
    }

    /// Trace via `∪ⁿ ∘ (id ⊗ f) ∘ ∩ⁿ`, strands closed on the left.
    pub fn left_trace(&self, f: &TLMorphism) -> Result<QScalar> {
        let n = self.square_arity(f)?;
        let id = TLMorphism::identity(n);
        self.closed_scalar(&id.tensor(f), n)
    }

    fn square_arity(&self, f: &TLMorphism) -> Result<usize> {
        if f.src() != f.dst() {
            return Err(Error::NonSquare {
                src: f.src(),
                dst: f.dst(),
            });
        }
        Ok(f.src())
    }

    fn closed_scalar(&self, body: &TLMorphism, n: usize) -> Result<QScalar> {
        let cups = TLMorphism::from_pairing(PlanarPairing::nested_cups(n));
        let caps = TLMorphism::from_pairing(PlanarPairing::nested_caps(n));
        let closed = self.compose_all(&[&cups, body, &caps])?;
        Ok(closed.coefficient(&PlanarPairing::identity(0)))
    }

    /// The generator `e_i ∈ End(ρ^{⊗n})`, `1 ≤ i ≤ n − 1`.
    pub fn generator(&self, i: usize, n: usize) -> Result<TLMorphism> {
        Ok(TLMorphism::from_pairing(PlanarPairing::generator(i, n)?))
    }

    /// The quantum integer `[n]` at this δ.
    pub fn quantum_int(&self, n: u32) -> QScalar {
        quantum_int_from_delta(n, &self.delta)
    }

    /// The Jones-Wenzl projector `f⁽ⁿ⁾`, by Wenzl's recursion
    /// `f⁽ⁿ⁺¹⁾ = f⁽ⁿ⁾⊗1 − ([n]/[n+1]) (f⁽ⁿ⁾⊗1) e_n (f⁽ⁿ⁾⊗1)`.
    ///
    /// Results are memoized per `(n, δ)` in a process-wide cache.
    pub fn jones_wenzl(&self, n: usize) -> Result<Arc<TLMorphism>> {
        if n == 0 {
            return Ok(Arc::new(TLMorphism::identity(0)));
        }
        let key = (n, self.delta.clone());
        if let Some(hit) = jw_cache().lock().expect("jw cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let value = if n == 1 {
            TLMorphism::identity(1)
        } else {
            let k = n - 1;
            let prev = self.jones_wenzl(k)?;
            let qk = self.quantum_int(k as u32);
            let qk1 = self.quantum_int(k as u32 + 1);
            if qk1.is_zero() {
                return Err(Error::VanishingQuantumInt(k as u32 + 1));
            }
            let lifted = prev.tensor(&TLMorphism::identity(1));
            let e = self.generator(k, n)?;
            let sandwich = self.compose_all(&[&lifted, &e, &lifted])?;
            lifted.sub(&sandwich.scale(&(qk / qk1)))?
        };
        let value = Arc::new(value);
        jw_cache()
            .lock()
            .expect("jw cache poisoned")
            .insert(key, Arc::clone(&value));
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tl(r: i64) -> TemperleyLieb {
        TemperleyLieb::from_param(&BaseParam::from_int(r).unwrap())
    }

    fn q(n: i64, d: i64) -> QScalar {
        QScalar::new(n, d)
    }

    #[test]
    fn compose_examples() {
        let t = tl(2);
        let id2 = TLMorphism::identity(2);
        let cup = TLMorphism::cup();
        assert_eq!(t.compose(&cup, &id2).unwrap(), cup);
        let loop_ = t.compose(&cup, &TLMorphism::cap()).unwrap();
        assert_eq!(loop_, TLMorphism::scalar(q(17, 4)));
        let e1 = t.generator(1, 2).unwrap();
        assert_eq!(t.compose(&e1, &e1).unwrap(), e1.scale(&q(17, 4)));
        assert!(t.compose(&cup, &TLMorphism::identity(3)).is_err());
    }

    #[test]
    fn tensor_examples() {
        let id1 = TLMorphism::identity(1);
        assert_eq!(id1.tensor(&id1), TLMorphism::identity(2));
        let two_cups = TLMorphism::cup().tensor(&TLMorphism::cup());
        assert_eq!((two_cups.src(), two_cups.dst()), (4, 0));
        let t = tl(2);
        assert_eq!(t.generator(1, 2).unwrap().tensor(&id1), t.generator(1, 3).unwrap());
    }

    #[test]
    fn star_examples() {
        let t = tl(2);
        assert_eq!(TLMorphism::identity(3).star(), TLMorphism::identity(3));
        assert_eq!(TLMorphism::cup().star(), TLMorphism::cap());
        for i in 1..4 {
            let e = t.generator(i, 4).unwrap();
            assert_eq!(e.star(), e);
        }
    }

    #[test]
    fn trace_examples() {
        let t = tl(2);
        for n in 0..5 {
            assert_eq!(t.markov_trace(&TLMorphism::identity(n)).unwrap(), t.delta().pow(n as i32));
        }
        assert_eq!(t.markov_trace(&t.generator(1, 2).unwrap()).unwrap(), q(17, 4));
        assert!(t.markov_trace(&TLMorphism::cup()).is_err());
    }

    #[test]
    fn jones_wenzl_small_cases() {
        let t = tl(2);
        assert_eq!(*t.jones_wenzl(1).unwrap(), TLMorphism::identity(1));
        let expected = TLMorphism::identity(2)
            .sub(&t.generator(1, 2).unwrap().scale(&t.delta().recip()))
            .unwrap();
        assert_eq!(*t.jones_wenzl(2).unwrap(), expected);
        assert_eq!(t.markov_trace(&t.jones_wenzl(2).unwrap()).unwrap(), q(273, 16));
        assert_eq!(t.markov_trace(&t.jones_wenzl(3).unwrap()).unwrap(), q(4369, 64));
    }

    #[test]
    fn generator_relations() {
        let t = tl(2);
        let e = |i| t.generator(i, 3).unwrap();
        assert_eq!(t.compose_all(&[&e(1), &e(2), &e(1)]).unwrap(), e(1));
        let f = |i| t.generator(i, 4).unwrap();
        assert_eq!(t.compose(&f(1), &f(3)).unwrap(), t.compose(&f(3), &f(1)).unwrap());
        assert!(t.generator(0, 3).is_err());
        assert!(t.generator(3, 3).is_err());
    }

    #[test]
    fn integer_delta_without_base() {
        // δ = 4 has irrational q; the projector is still rational in δ.
        let t = TemperleyLieb::new(QScalar::from_int(4));
        let jw = t.jones_wenzl(3).unwrap();
        assert_eq!(t.markov_trace(&jw).unwrap(), t.quantum_int(4));
        assert_eq!(t.quantum_int(4), QScalar::from_int(56));
    }
}
