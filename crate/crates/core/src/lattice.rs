//! Finitely generated subgroups of the positive rationals.
//!
//! Numerators and denominators are split into a pairwise coprime basis
//! `b₁ … b_k` (no factoring into primes needed), so each generator becomes
//! an integer exponent vector and the subgroup becomes a lattice in `ℤᵏ`.
//! Pairwise coprimality makes `ℤᵏ → ℚ₊` injective, so rank and membership
//! are read off the Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// A subgroup `⟨g₁, …, g_m⟩ ⊆ ℚ₊`, stored in Hermite normal form.
#[derive(Clone, Debug)]
pub struct RationalSubgroup {
    basis: Vec<BigInt>,
    rows: Vec<Vec<BigInt>>,
}

impl RationalSubgroup {
    pub fn trivial() -> Self {
        RationalSubgroup {
            basis: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn generated_by(elems: &[QScalar]) -> Result<Self> {
        let basis = coprime_basis(elems)?;
        let vectors = elems
            .iter()
            .map(|x| exponent_vector(&basis, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalSubgroup {
            rows: hermite_normal_form(vectors, basis.len()),
            basis,
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// A free basis of the subgroup, one element per lattice row.
    pub fn generators(&self) -> Vec<QScalar> {
        self.rows.iter().map(|row| self.evaluate(row)).collect()
    }

    /// For a rank-one subgroup `λ^ℤ`, the generator `λ < 1`.
    pub fn cyclic_generator(&self) -> Option<QScalar> {
        if self.rank() != 1 {
            return None;
        }
        let g = self.evaluate(&self.rows[0]);
        Some(if g > QScalar::one() { g.recip() } else { g })
    }

    fn evaluate(&self, row: &[BigInt]) -> QScalar {
        let mut out = QScalar::one();
        for (b, e) in self.basis.iter().zip(row) {
            let e = i32::try_from(e).expect("exponent fits in i32");
            out *= &QScalar::from_big(b.clone(), BigInt::one()).pow(e);
        }
        out
    }

    pub fn contains(&self, x: &QScalar) -> Result<bool> {
        let gens = self.generators();
        let mut all = gens.clone();
        all.push(x.clone());
        let basis = coprime_basis(&all)?;
        let rows = hermite_normal_form(
            gens.iter()
                .map(|g| exponent_vector(&basis, g))
                .collect::<Result<Vec<_>>>()?,
            basis.len(),
        );
        Ok(in_lattice(&rows, exponent_vector(&basis, x)?))
    }

    pub fn is_subgroup_of(&self, other: &Self) -> Result<bool> {
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && other.is_subgroup_of(self)?)
    }
}

fn coprime_basis(elems: &[QScalar]) -> Result<Vec<BigInt>> {
    let mut basis: Vec<BigInt> = Vec::new();
    for x in elems {
        if !x.is_positive() {
            return Err(Error::Precondition(format!(
                "subgroup generators must be positive, got {x}"
            )));
        }
        for n in [x.numer().clone(), x.denom().clone()] {
            insert_coprime(&mut basis, n);
        }
    }
    basis.sort();
    Ok(basis)
}

fn insert_coprime(basis: &mut Vec<BigInt>, n: BigInt) {
    let mut work = vec![n];
    'next: while let Some(y) = work.pop() {
        if y.is_one() {
            continue;
        }
        for i in 0..basis.len() {
            if basis[i] == y {
                continue 'next;
            }
            let g = y.gcd(&basis[i]);
            if !g.is_one() {
                let b = basis.swap_remove(i);
                work.push(&b / &g);
                work.push(&y / &g);
                work.push(g);
                continue 'next;
            }
        }
        basis.push(y);
    }
}

fn exponent_vector(basis: &[BigInt], x: &QScalar) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero(); basis.len()];
    for (sign, n) in [(1i64, x.numer()), (-1i64, x.denom())] {
        let mut rest = n.clone();
        for (slot, b) in out.iter_mut().zip(basis) {
            while (&rest % b).is_zero() {
                rest /= b;
                *slot += sign;
            }
        }
        if !rest.is_one() {
            return Err(Error::Precondition(format!("{x} does not factor over the coprime basis")));
        }
    }
    Ok(out)
}

/// Row-style Hermite normal form; zero rows dropped.
fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|e| !e.is_zero()));
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        // Euclid on column c among the remaining rows.
        while let Some(best) = (pivot_row..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
        {
            rows.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].div_floor(&rows[pivot_row][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (a, b) in tail[0].iter_mut().zip(&head[pivot_row]) {
                    *a -= &f * b;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][c].is_zero() {
            continue;
        }
        if rows[pivot_row][c].is_negative() {
            for e in rows[pivot_row].iter_mut() {
                *e = -&*e;
            }
        }
        for i in 0..pivot_row {
            let f = rows[i][c].div_floor(&rows[pivot_row][c]);
            if f.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(pivot_row);
            for (a, b) in head[i].iter_mut().zip(&tail[0]) {
                *a -= &f * b;
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

fn in_lattice(hnf: &[Vec<BigInt>], mut v: Vec<BigInt>) -> bool {
    for row in hnf {
        let c = row.iter().position(|e| !e.is_zero()).expect("hnf rows are nonzero");
        if v[..c].iter().any(|e| !e.is_zero()) {
            return false;
        }
        let (f, rem) = v[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for (a, b) in v.iter_mut().zip(row) {
            *a -= &f * b;
        }
    }
    v.iter().all(|e| e.is_zero())
}
