//! Twisted group algebras `ℂ_μ[Λ]` of finite groups with a 2-cocycle `μ`.
//!
//! `u_g u_h = μ(g,h) u_{gh}`; the star is forced to be
//! `u_g* = j(g) u_{g⁻¹}` with `j(g) = conj(μ(g⁻¹,g))`. Cocycle values are
//! roots of unity written as rational angles, `μ = exp(2πi·angle)`, and all
//! coefficients live in cyclotomic fields.

mod cyclotomic;

pub use cyclotomic::Cyclotomic;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::scalar::QScalar;

/// A finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Group("empty group".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Group(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Group(format!("row {i} contains {x}, outside 0..{n}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(Error::Group(format!("associativity fails at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::Group(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    /// `ℤ/n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// `G × H`, with `(a, b)` stored at index `a·|H| + b`.
    pub fn product(g: &Self, h: &Self) -> Self {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A table `Λ × Λ → U(1)` of candidate cocycle values, stored as angles in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    angles: Vec<Vec<QScalar>>,
}

fn reduce_angle(a: &QScalar) -> QScalar {
    let whole = QScalar::from_big(num_integer::Integer::div_floor(a.numer(), a.denom()), 1.into());
    a - whole
}

impl Cocycle2 {
    pub fn new(g: &FiniteGroup, angles: Vec<Vec<QScalar>>) -> Result<Self> {
        let n = g.order();
        if angles.len() != n || angles.iter().any(|row| row.len() != n) {
            return Err(Error::Group(format!("cocycle table must be {n}×{n}")));
        }
        Ok(Cocycle2 {
            angles: angles
                .iter()
                .map(|row| row.iter().map(reduce_angle).collect())
                .collect(),
        })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let n = g.order();
        Cocycle2 {
            angles: vec![vec![QScalar::zero(); n]; n],
        }
    }

    pub fn angle(&self, g: usize, h: usize) -> &QScalar {
        &self.angles[g][h]
    }

    pub fn angles(&self) -> &[Vec<QScalar>] {
        &self.angles
    }

    pub fn value(&self, g: usize, h: usize) -> Cyclotomic {
        Cyclotomic::from_angle(&self.angles[g][h])
    }

    pub fn with_angle(&self, g: usize, h: usize, a: QScalar) -> Self {
        let mut out = self.clone();
        out.angles[g][h] = reduce_angle(&a);
        out
    }
}

/// `ℤ/2 × ℤ/2` with `μ((a,b),(c,d)) = (−1)^{bc}`; element `(a,b)` has index `2a + b`.
pub fn pauli() -> (FiniteGroup, Cocycle2) {
    let z2 = FiniteGroup::cyclic(2).expect("ℤ/2");
    let g = FiniteGroup::product(&z2, &z2);
    let angles = (0..4)
        .map(|x| {
            (0..4)
                .map(|y| {
                    let (b, c) = (x % 2, y / 2);
                    QScalar::new((b * c) as i64, 2)
                })
                .collect()
        })
        .collect();
    let mu = Cocycle2::new(&g, angles).expect("4×4 table");
    (g, mu)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub normalization_failures: Vec<(usize, usize)>,
    pub cocycle_failures: Vec<(usize, usize, usize)>,
}

impl CocycleReport {
    pub fn is_valid(&self) -> bool {
        self.normalization_failures.is_empty() && self.cocycle_failures.is_empty()
    }
}

/// Checks normalization and `μ(g,h)μ(gh,k) = μ(h,k)μ(g,hk)` on angles mod 1.
pub fn validate_cocycle(g: &FiniteGroup, mu: &Cocycle2) -> CocycleReport {
    let n = g.order();
    let e = g.identity();
    let mut report = CocycleReport::default();
    for x in 0..n {
        if !mu.angle(e, x).is_zero() {
            report.normalization_failures.push((e, x));
        }
        if x != e && !mu.angle(x, e).is_zero() {
            report.normalization_failures.push((x, e));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = mu.angle(a, b) + mu.angle(g.mul(a, b), c);
                let rhs = mu.angle(b, c) + mu.angle(a, g.mul(b, c));
                if !reduce_angle(&(lhs - rhs)).is_zero() {
                    report.cocycle_failures.push((a, b, c));
                }
            }
        }
    }
    report
}

/// A finite combination of the `u_g`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TwistedElement {
    coeffs: BTreeMap<usize, Cyclotomic>,
}

impl TwistedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: usize) -> Self {
        let mut x = Self::zero();
        x.add_term(g, Cyclotomic::one());
        x
    }

    pub fn add_term(&mut self, g: usize, c: Cyclotomic) {
        let v = match self.coeffs.remove(&g) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(g, v);
        }
    }

    pub fn coefficient(&self, g: usize) -> Cyclotomic {
        self.coeffs.get(&g).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (g, x) in self.terms() {
            out.add_term(g, x.mul(c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    pub hermitian: bool,
    pub positive_definite: bool,
    /// LDL* pivots, printed exactly.
    pub pivots: Vec<String>,
}

/// `ℂ_μ[Λ]` with its star structure.
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    group: FiniteGroup,
    mu: Cocycle2,
    j: Vec<Cyclotomic>,
}

impl TwistedGroupAlgebra {
    /// Builds the algebra with the forced `j(g) = conj(μ(g⁻¹,g))`.
    pub fn new(group: FiniteGroup, mu: Cocycle2) -> Result<Self> {
        let report = validate_cocycle(&group, &mu);
        if !report.is_valid() {
            return Err(Error::Group(format!(
                "invalid cocycle: {} normalization and {} cocycle failures",
                report.normalization_failures.len(),
                report.cocycle_failures.len()
            )));
        }
        let j = star_from_mu(&group, &mu);
        Ok(TwistedGroupAlgebra { group, mu, j })
    }

    /// Builds the algebra with an arbitrary `j`, skipping cocycle validation.
    pub fn with_j(group: FiniteGroup, mu: Cocycle2, j: Vec<Cyclotomic>) -> Result<Self> {
        if j.len() != group.order() {
            return Err(Error::Group(format!("j needs {} values, got {}", group.order(), j.len())));
        }
        Ok(TwistedGroupAlgebra { group, mu, j })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.mu
    }

    pub fn j(&self) -> &[Cyclotomic] {
        &self.j
    }

    pub fn multiply(&self, x: &TwistedElement, y: &TwistedElement) -> TwistedElement {
        let mut out = TwistedElement::zero();
        for (g, a) in x.terms() {
            for (h, b) in y.terms() {
                let c = a.mul(b).mul(&self.mu.value(g, h));
                out.add_term(self.group.mul(g, h), c);
            }
        }
        out
    }

    /// `(Σ x_g u_g)* = Σ conj(x_g) j(g) u_{g⁻¹}`.
    pub fn star(&self, x: &TwistedElement) -> TwistedElement {
        let mut out = TwistedElement::zero();
        for (g, a) in x.terms() {
            out.add_term(self.group.inv(g), a.conj().mul(&self.j[g]));
        }
        out
    }

    /// The canonical state: the coefficient of `u_e`.
    pub fn tau(&self, x: &TwistedElement) -> Cyclotomic {
        x.coefficient(self.group.identity())
    }

    /// Pairs `(g, h)` where `j(gh)·conj(μ(g,h)) ≠ j(g) j(h) μ(h⁻¹,g⁻¹)`.
    pub fn mu_j_failures(&self) -> Vec<(usize, usize)> {
        let g = &self.group;
        let n = g.order();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let lhs = self.j[g.mul(a, b)].mul(&self.mu.value(a, b).conj());
                let rhs = self.j[a].mul(&self.j[b]).mul(&self.mu.value(g.inv(b), g.inv(a)));
                if lhs != rhs {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Basis triples where `(u_a u_b) u_c ≠ u_a (u_b u_c)`.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.group.order();
        let u = TwistedElement::basis;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.multiply(&u(a), &u(b));
                for c in 0..n {
                    let left = self.multiply(&ab, &u(c));
                    let right = self.multiply(&u(a), &self.multiply(&u(b), &u(c)));
                    if left != right {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.group.order();
        let u = TwistedElement::basis;
        (0..n).all(|a| (0..n).all(|b| self.multiply(&u(a), &u(b)) == self.multiply(&u(b), &u(a))))
    }

    /// `G(g,h) = τ(u_h* u_g)`.
    pub fn gram_matrix(&self) -> Matrix<Cyclotomic> {
        let n = self.group.order();
        let u = TwistedElement::basis;
        let mut m = Matrix::zeros(n, n);
        for g in 0..n {
            for h in 0..n {
                m.set(g, h, self.tau(&self.multiply(&self.star(&u(h)), &u(g))));
            }
        }
        m
    }

    /// Hermitian positive definiteness of the Gram matrix by LDL*.
    ///
    /// Pivots that are rational are compared exactly. An irrational real
    /// pivot is signed by its floating-point value; a pivot within 1e-9 of
    /// zero counts as a failure.
    pub fn positivity_check(&self) -> PositivityReport {
        let mut a = self.gram_matrix();
        let n = a.rows();
        let hermitian = (0..n).all(|i| (0..n).all(|k| *a.get(i, k) == a.get(k, i).conj()));
        let mut pivots = Vec::with_capacity(n);
        let mut positive_definite = hermitian;
        for k in 0..n {
            let d = a.get(k, k).clone();
            pivots.push(d.to_string());
            let positive = d.is_real()
                && match d.as_rational() {
                    Some(r) => r.is_positive(),
                    None => d.to_complex().0 > 1e-9,
                };
            if !positive {
                positive_definite = false;
                break;
            }
            let dinv = d.inv();
            for i in k + 1..n {
                let f = a.get(i, k).mul(&dinv);
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(k, j)));
                    a.set(i, j, v);
                }
            }
        }
        PositivityReport {
            hermitian,
            positive_definite,
            pivots,
        }
    }

    /// Dimension of the center, as the nullspace of `x ↦ ([x, u_h])_h`.
    pub fn center_dimension(&self) -> usize {
        let g = &self.group;
        let n = g.order();
        let mut m: Matrix<Cyclotomic> = Matrix::zeros(n * n, n);
        for h in 0..n {
            for x in 0..n {
                // x u_h contributes μ(x,h) at xh; u_h x contributes μ(h,x) at hx.
                let (r1, r2) = (h * n + g.mul(x, h), h * n + g.mul(h, x));
                let v1 = m.get(r1, x).add(&self.mu.value(x, h));
                m.set(r1, x, v1);
                let v2 = m.get(r2, x).sub(&self.mu.value(h, x));
                m.set(r2, x, v2);
            }
        }
        m.nullity()
    }
}

/// `j(g) = conj(μ(g⁻¹, g))`.
pub fn star_from_mu(g: &FiniteGroup, mu: &Cocycle2) -> Vec<Cyclotomic> {
    (0..g.order()).map(|x| mu.value(g.inv(x), x).conj()).collect()
}

/// `{"group": [[...]], "mu": [["k/m", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub group: Vec<Vec<usize>>,
    pub mu: Vec<Vec<QScalar>>,
}

pub fn read_cocycle(bytes: &[u8]) -> Result<(FiniteGroup, Cocycle2)> {
    let file: CocycleFile = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let group = FiniteGroup::from_table(file.group).map_err(|e| Error::Parse(e.to_string()))?;
    let mu = Cocycle2::new(&group, file.mu).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((group, mu))
}

pub fn write_cocycle(g: &FiniteGroup, mu: &Cocycle2) -> Vec<u8> {
    let file = CocycleFile {
        group: g.table().to_vec(),
        mu: mu.angles().to_vec(),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("cocycle file serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QScalar {
        QScalar::new(n, d)
    }

    #[test]
    fn group_validation() {
        assert_eq!(FiniteGroup::cyclic(3).unwrap().inv(1), 2);
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
        let k = FiniteGroup::product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap());
        assert_eq!(k.order(), 4);
        assert!((0..4).all(|g| k.inv(g) == g));
    }

    #[test]
    fn cocycle_validation_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert!(validate_cocycle(&z2, &Cocycle2::trivial(&z2)).is_valid());
        let (g, mu) = pauli();
        assert!(validate_cocycle(&g, &mu).is_valid());
        let bad = mu.with_angle(0, 1, q(1, 2));
        let report = validate_cocycle(&g, &bad);
        assert_eq!(report.normalization_failures, vec![(0, 1)]);
    }

    #[test]
    fn pauli_noncommutativity_and_star() {
        let (g, mu) = pauli();
        let a = TwistedGroupAlgebra::new(g, mu).unwrap();
        let u = TwistedElement::basis;
        let minus = Cyclotomic::from_int(-1);
        assert_eq!(a.multiply(&u(1), &u(2)), u(3).scale(&minus));
        assert_eq!(a.multiply(&u(2), &u(1)), u(3));
        assert_eq!(a.j()[3], minus);
        assert!(a.mu_j_failures().is_empty());
        for x in 0..4 {
            assert_eq!(a.star(&a.star(&u(x))), u(x));
        }
        assert!(a.associativity_failures().is_empty());
        assert!(!a.is_commutative());
        assert_eq!(a.center_dimension(), 1);
        let p = a.positivity_check();
        assert!(p.hermitian && p.positive_definite);
        assert_eq!(a.gram_matrix(), Matrix::identity(4));
    }

    #[test]
    fn trivial_cocycle_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let a = TwistedGroupAlgebra::new(z2.clone(), Cocycle2::trivial(&z2)).unwrap();
        assert!(a.is_commutative());
        assert_eq!(a.center_dimension(), 2);
        assert!(a.j().iter().all(|x| *x == Cyclotomic::one()));
        assert!(a.positivity_check().positive_definite);
        let k = FiniteGroup::product(&z2, &z2);
        let a = TwistedGroupAlgebra::new(k.clone(), Cocycle2::trivial(&k)).unwrap();
        assert_eq!(a.center_dimension(), 4);
    }

    #[test]
    fn flipped_j_breaks_positivity() {
        let (g, mu) = pauli();
        let mut j = star_from_mu(&g, &mu);
        j[3] = j[3].neg();
        let a = TwistedGroupAlgebra::with_j(g, mu, j).unwrap();
        assert!(!a.positivity_check().positive_definite);
        assert!(!a.mu_j_failures().is_empty());
    }

    #[test]
    fn cyclic_cocycle_with_cube_roots() {
        // On ℤ/3, μ(a,b) = ζ₃^{ab} is a bicharacter, hence a cocycle.
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let angles = (0..3)
            .map(|a| (0..3).map(|b| q((a * b) as i64, 3)).collect())
            .collect();
        let mu = Cocycle2::new(&z3, angles).unwrap();
        assert!(validate_cocycle(&z3, &mu).is_valid());
        let a = TwistedGroupAlgebra::new(z3, mu).unwrap();
        assert!(a.mu_j_failures().is_empty());
        assert!(a.associativity_failures().is_empty());
        assert!(a.is_commutative());
        assert_eq!(a.center_dimension(), 3);
        assert!(a.positivity_check().positive_definite);
    }

    #[test]
    fn cocycle_file_round_trip() {
        let (g, mu) = pauli();
        let bytes = write_cocycle(&g, &mu);
        let (g2, mu2) = read_cocycle(&bytes).unwrap();
        assert_eq!((g2, mu2), (g, mu));
        let bad = br#"{"group": [[0,1],[1,0]], "mu": [["0","0"],["0","0.5"]]}"#;
        assert!(matches!(read_cocycle(bad), Err(Error::Parse(_))));
        let extra = br#"{"group": [[0]], "mu": [["0"]], "j": []}"#;
        assert!(matches!(read_cocycle(extra), Err(Error::Parse(_))));
    }
}
