use std::collections::BTreeMap;
use std::fmt;

use super::pairing::PlanarPairing;
use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// A rational linear combination of planar pairings `src → dst`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of morphisms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TLMorphism {
    src: usize,
    dst: usize,
    terms: BTreeMap<PlanarPairing, QScalar>,
}

impl TLMorphism {
    pub fn zero(src: usize, dst: usize) -> Self {
        TLMorphism {
            src,
            dst,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_pairing(p: PlanarPairing) -> Self {
        Self::from_term(p, QScalar::one())
    }

    pub fn from_term(p: PlanarPairing, c: QScalar) -> Self {
        let mut m = Self::zero(p.src(), p.dst());
        m.add_term(p, c);
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairing(PlanarPairing::identity(n))
    }

    pub fn cup() -> Self {
        Self::from_pairing(PlanarPairing::cup())
    }

    pub fn cap() -> Self {
        Self::from_pairing(PlanarPairing::cap())
    }

    /// The scalar `c · id_0`.
    pub fn scalar(c: QScalar) -> Self {
        Self::from_term(PlanarPairing::identity(0), c)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarPairing, &QScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PlanarPairing) -> QScalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, p: PlanarPairing, c: QScalar) {
        assert!(
            p.src() == self.src && p.dst() == self.dst,
            "pairing {}->{} added to morphism {}->{}",
            p.src(),
            p.dst(),
            self.src,
            self.dst
        );
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.src, self.dst);
        }
        TLMorphism {
            src: self.src,
            dst: self.dst,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.src + other.src, self.dst + other.dst);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.tensor(q), a * b);
            }
        }
        out
    }

    /// Vertical reflection. Coefficients are real, so they are unchanged.
    pub fn star(&self) -> Self {
        TLMorphism {
            src: self.dst,
            dst: self.src,
            terms: self.terms.iter().map(|(p, c)| (p.reflect(), c.clone())).collect(),
        }
    }

    /// Left-right mirror image of every diagram.
    pub fn mirror(&self) -> Self {
        TLMorphism {
            src: self.src,
            dst: self.dst,
            terms: self.terms.iter().map(|(p, c)| (p.mirror(), c.clone())).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.src != other.src {
            return Err(Error::ArityMismatch {
                expected: self.src,
                found: other.src,
            });
        }
        if self.dst != other.dst {
            return Err(Error::ArityMismatch {
                expected: self.dst,
                found: other.dst,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for TLMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}->{}]", self.src, self.dst)?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            write!(f, "{sep}{c}*{}", p.to_paren_string())?;
        }
        Ok(())
    }
}
