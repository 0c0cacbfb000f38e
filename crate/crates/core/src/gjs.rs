//! The graded algebra `Gr = ⊕ₙ TL(n, 0)` with the Bacher-Walker product.
//!
//! A degree-`n` element is a combination of diagrams with `n` strands
//! hanging down and no top boundary. `x ⋆ y` sums over `j` the diagrams
//! obtained by placing `x` left of `y` and joining the innermost `j` strands
//! of each with nested caps.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PsdReport};
use crate::scalar::QScalar;
use crate::tl::{PlanarPairing, TLMorphism, TemperleyLieb};

/// Largest degree the Gram matrix is assembled for unless raised explicitly.
pub const DEFAULT_GRAM_CAP: usize = 6;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct GradedElement {
    terms: BTreeMap<usize, TLMorphism>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty diagram in degree 0.
    pub fn unit() -> Self {
        Self::from_morphism(TLMorphism::identity(0)).expect("identity(0) has no top boundary")
    }

    pub fn from_morphism(f: TLMorphism) -> Result<Self> {
        if f.dst() != 0 {
            return Err(Error::ArityMismatch {
                expected: 0,
                found: f.dst(),
            });
        }
        let mut out = Self::zero();
        if !f.is_zero() {
            out.terms.insert(f.src(), f);
        }
        Ok(out)
    }

    pub fn from_pairing(p: PlanarPairing) -> Result<Self> {
        Self::from_morphism(TLMorphism::from_pairing(p))
    }

    /// The single arc in degree 2.
    pub fn cup2() -> Self {
        Self::from_pairing(PlanarPairing::cup()).expect("cup has no top boundary")
    }

    pub fn component(&self, n: usize) -> Option<&TLMorphism> {
        self.terms.get(&n)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &TLMorphism)> {
        self.terms.iter().map(|(n, f)| (*n, f))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_component(&mut self, f: TLMorphism) {
        let n = f.src();
        let merged = match self.terms.remove(&n) {
            Some(g) => g.add(&f).expect("same degree"),
            None => f,
        };
        if !merged.is_zero() {
            self.terms.insert(n, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for f in other.terms.values() {
            out.add_component(f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        for f in self.terms.values() {
            out.add_component(f.scale(c));
        }
        out
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `Gr` over Temperley-Lieb at a fixed δ.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    tl: TemperleyLieb,
}

/// Gram matrix of the trace form on the pairing basis.
#[derive(Clone, Debug)]
pub struct Gram {
    pub basis: Vec<PlanarPairing>,
    pub matrix: Matrix<QScalar>,
}

impl Gram {
    pub fn psd(&self) -> PsdReport {
        self.matrix.psd_check()
    }

    pub fn leading_minors(&self) -> Vec<QScalar> {
        self.matrix.leading_principal_minors()
    }
}

impl GradedAlgebra {
    pub fn new(delta: QScalar) -> Self {
        GradedAlgebra {
            tl: TemperleyLieb::new(delta),
        }
    }

    pub fn delta(&self) -> &QScalar {
        self.tl.delta()
    }

    fn join(&self, x: &TLMorphism, y: &TLMorphism) -> Result<Vec<TLMorphism>> {
        let (m, n) = (x.src(), y.src());
        let xy = x.tensor(y);
        (0..=m.min(n))
            .map(|j| {
                let glue = TLMorphism::identity(m - j)
                    .tensor(&TLMorphism::from_pairing(PlanarPairing::nested_caps(j)))
                    .tensor(&TLMorphism::identity(n - j));
                self.tl.compose(&xy, &glue)
            })
            .collect()
    }

    pub fn bw_product(&self, x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
        let mut out = GradedElement::zero();
        for f in x.terms.values() {
            for g in y.terms.values() {
                for h in self.join(f, g)? {
                    out.add_component(h);
                }
            }
        }
        Ok(out)
    }

    /// The degree-0 coefficient.
    pub fn gr_trace(&self, x: &GradedElement) -> QScalar {
        x.component(0)
            .map(|f| f.coefficient(&PlanarPairing::identity(0)))
            .unwrap_or_default()
    }

    /// Left-right reflection of each diagram; coefficients are real.
    pub fn gr_star(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for f in x.terms.values() {
            out.add_component(f.mirror());
        }
        out
    }

    /// `⟨x, y⟩ = tr(y* ⋆ x)`.
    pub fn inner(&self, x: &GradedElement, y: &GradedElement) -> Result<QScalar> {
        Ok(self.gr_trace(&self.bw_product(&self.gr_star(y), x)?))
    }

    /// Pairing basis of all degrees `≤ max_degree`, degree by degree.
    pub fn basis(max_degree: usize) -> Vec<PlanarPairing> {
        (0..=max_degree)
            .step_by(2)
            .flat_map(|n| PlanarPairing::enumerate(n, 0))
            .collect()
    }

    pub fn gram_matrix(&self, max_degree: usize) -> Result<Gram> {
        self.gram_matrix_capped(max_degree, DEFAULT_GRAM_CAP)
    }

    pub fn gram_matrix_capped(&self, max_degree: usize, cap: usize) -> Result<Gram> {
        if max_degree > cap {
            return Err(Error::CapExceeded {
                what: "Gram degree",
                requested: max_degree,
                cap,
            });
        }
        let basis = Self::basis(max_degree);
        let elems = basis
            .iter()
            .map(|p| GradedElement::from_pairing(p.clone()))
            .collect::<Result<Vec<_>>>()?;
        let k = elems.len();
        let mut matrix = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                matrix.set(i, j, self.inner(&elems[j], &elems[i])?);
            }
        }
        Ok(Gram { basis, matrix })
    }
}
