//! Dense exact linear algebra: rank, nullity, determinants and an exact
//! positive-semidefiniteness test by pivoted symmetric elimination.

use crate::scalar::QScalar;

/// The field operations needed by Gaussian elimination.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == F::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Sparsest pivot row: limits fill-in and coefficient growth.
            let Some(p) = (r..self.rows)
                .filter(|&i| !self.get(i, c).is_zero())
                .min_by_key(|&i| self.row(i)[c..].iter().filter(|x| !x.is_zero()).count())
            else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            let support: Vec<usize> = (c..self.cols).filter(|&j| !self.get(r, j).is_zero()).collect();
            for i in r + 1..self.rows {
                let f = self.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for &j in &support {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, c * m.cols + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv();
            for i in c + 1..m.rows {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn leading_principal_minors(&self) -> Vec<F> {
        (1..=self.rows.min(self.cols))
            .map(|k| {
                let sub = Matrix::from_rows(
                    (0..k).map(|i| self.row(i)[..k].to_vec()).collect(),
                );
                sub.determinant()
            })
            .collect()
    }
}

/// Outcome of the exact symmetric positivity test.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdReport {
    pub psd: bool,
    pub rank: usize,
    /// Pivots of the LDLᵀ factorization in elimination order.
    pub pivots: Vec<QScalar>,
}

impl Matrix<QScalar> {
    /// Exact LDLᵀ with diagonal pivoting.
    ///
    /// A PSD matrix has a zero row wherever its diagonal vanishes, and its
    /// Schur complement at a positive pivot is again PSD.
    pub fn psd_check(&self) -> PsdReport {
        assert!(self.is_symmetric(), "psd_check requires a symmetric matrix");
        let mut m = self.clone();
        let mut active: Vec<usize> = (0..m.rows).collect();
        let mut pivots = Vec::new();
        loop {
            if let Some(&i) = active.iter().find(|&&i| m.get(i, i).is_negative()) {
                pivots.push(m.get(i, i).clone());
                return PsdReport {
                    psd: false,
                    rank: pivots.len(),
                    pivots,
                };
            }
            let Some(pos) = active.iter().position(|&i| m.get(i, i).is_positive()) else {
                let all_zero = active
                    .iter()
                    .all(|&i| active.iter().all(|&j| m.get(i, j).is_zero()));
                return PsdReport {
                    psd: all_zero,
                    rank: pivots.len(),
                    pivots,
                };
            };
            let p = active.remove(pos);
            let piv = m.get(p, p).clone();
            let inv = piv.recip();
            for &i in &active {
                let f = m.get(i, p) * &inv;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = m.get(i, j) - &f * m.get(p, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(piv);
        }
    }
}
