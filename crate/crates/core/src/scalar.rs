//! Exact rational scalars and the half-weight base parameter.
//!
//! Everything downstream works over `QScalar`. The global parameter is a
//! positive rational `r` with `q = r²` and `δ = r² + r⁻²`, so every square
//! root of a power of `q` that the loop algebra needs stays rational.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always stored as a reduced fraction with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QScalar(BigRational);

impl QScalar {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        QScalar(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(n: i64) -> Self {
        QScalar(BigRational::from_integer(n.into()))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        QScalar(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        QScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        QScalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        QScalar(self.0.recip())
    }

    pub fn checked_recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    pub fn abs(&self) -> Self {
        QScalar(self.0.abs())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            return self.recip().pow(-exp);
        }
        let mut acc = QScalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root when the value is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(QScalar::from_big(n, d))
        } else {
            None
        }
    }

    /// Lossy conversion, only for display of magnitudes.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for QScalar {
    fn from(r: BigRational) -> Self {
        QScalar(r)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl fmt::Display for QScalar {
    // "p" when integral, "p/q" otherwise
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| bad())?;
        let denom: BigInt = d.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(QScalar::from_big(numer, denom))
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                QScalar(&self.0 $op &rhs.0)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                QScalar(self.0 $op rhs.0)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                QScalar(self.0 $op &rhs.0)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                QScalar(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
forward_binop!(Div, div, /);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for QScalar {
    fn add_assign(&mut self, rhs: QScalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar(-self.0)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar(-&self.0)
    }
}

impl Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a QScalar> for QScalar {
    fn sum<I: Iterator<Item = &'a QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl Product for QScalar {
    fn product<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::one(), |a, b| a * b)
    }
}

impl<'a> Product<&'a QScalar> for QScalar {
    fn product<I: Iterator<Item = &'a QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::one(), |a, b| a * b)
    }
}

/// Whether the loop value sits at the critical point δ = 2 (r = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Critical,
    Generic,
}

/// The half-weight base `r > 0`, with `q = r²` and `δ = r² + r⁻²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseParam {
    r: QScalar,
}

impl BaseParam {
    pub fn new(r: QScalar) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidParam(format!("r must be positive, got {r}")));
        }
        Ok(BaseParam { r })
    }

    pub fn from_int(r: i64) -> Result<Self> {
        Self::new(QScalar::from_int(r))
    }

    pub fn r(&self) -> &QScalar {
        &self.r
    }

    pub fn q(&self) -> QScalar {
        &self.r * &self.r
    }

    pub fn delta(&self) -> QScalar {
        let q = self.q();
        let qinv = q.recip();
        q + qinv
    }

    /// `q^{k/2} = r^k`, the exact square root of any integer power of q.
    pub fn sqrt_q_pow(&self, k: i32) -> QScalar {
        self.r.pow(k)
    }

    pub fn regime(&self) -> Regime {
        if self.r.is_one() {
            Regime::Critical
        } else {
            Regime::Generic
        }
    }
}

/// The quantum integer `[n] = (qⁿ − q⁻ⁿ)/(q − q⁻¹)`, with the limit `[n] = n`
/// at `q = 1`.
pub fn quantum_int(n: u32, p: &BaseParam) -> QScalar {
    let q = p.q();
    if q.is_one() {
        return QScalar::from_int(n as i64);
    }
    let n = n as i32;
    (q.pow(n) - q.pow(-n)) / (&q - q.recip())
}

/// Quantum integers computed from δ alone by `[n+1] = δ[n] − [n−1]`.
///
/// Works for any δ, including integer loop values whose `q` is irrational.
pub fn quantum_int_from_delta(n: u32, delta: &QScalar) -> QScalar {
    let mut prev = QScalar::zero();
    let mut cur = QScalar::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = delta * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn delta_power(n: u32, p: &BaseParam) -> QScalar {
    p.delta().pow(n as i32)
}

/// Parses a comma separated list of rationals, e.g. `"2,1/2"`.
pub fn parse_list(s: &str) -> Result<Vec<QScalar>> {
    s.split(',')
        .map(|t| {
            if t.trim().is_empty() {
                return Err(Error::Parse(format!("empty entry in list {s:?}")));
            }
            t.parse()
        })
        .collect()
}

impl PartialOrd<i64> for QScalar {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&QScalar::from_int(*other)))
    }
}

impl PartialEq<i64> for QScalar {
    fn eq(&self, other: &i64) -> bool {
        *self == QScalar::from_int(*other)
    }
}
