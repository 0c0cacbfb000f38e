//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)`.
//!
//! An element is a polynomial in `ζ = exp(2πi/N)` of degree below `φ(N)`,
//! reduced modulo the cyclotomic polynomial `Φ_N`. Elements of different
//! orders are combined by lifting both into `ℚ(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::linalg::Field;
use crate::scalar::QScalar;

type Poly = Vec<QScalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(QScalar::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[QScalar], b: &[QScalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[QScalar], b: &[QScalar]) -> Poly {
    let mut out = vec![QScalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder by a nonzero polynomial.
fn poly_divrem(a: &[QScalar], b: &[QScalar]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let lead = b.last().expect("division by the zero polynomial").recip();
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![QScalar::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") * &lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &(&c * y);
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

type PolyCache = Mutex<HashMap<u32, Arc<Poly>>>;

/// `Φ_n`, with integer coefficients, memoized.
fn cyclotomic_poly(n: u32) -> Arc<Poly> {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    // xⁿ − 1 = Π_{d | n} Φ_d.
    let mut p = vec![QScalar::zero(); n as usize + 1];
    p[0] = QScalar::from_int(-1);
    p[n as usize] = QScalar::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = poly_divrem(&p, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    let p = Arc::new(p);
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, Arc::clone(&p));
    p
}

/// An element of `ℚ(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Poly,
}

impl Cyclotomic {
    fn reduce(order: u32, p: Poly) -> Self {
        let (_, r) = poly_divrem(&p, &cyclotomic_poly(order));
        Cyclotomic { order, coeffs: r }
    }

    pub fn rational(c: QScalar) -> Self {
        Self::reduce(1, vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(QScalar::from_int(n))
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(k: i64, m: u32) -> Self {
        assert!(m > 0, "root of unity of order 0");
        let e = k.rem_euclid(m as i64) as usize;
        let mut p = vec![QScalar::zero(); e + 1];
        p[e] = QScalar::one();
        Self::reduce(m, p)
    }

    /// `exp(2πi·angle)` for a rational angle.
    pub fn from_angle(angle: &QScalar) -> Self {
        let m = u32::try_from(angle.denom()).expect("angle denominator fits in u32");
        let k = angle.numer() % num_bigint::BigInt::from(m);
        let k = i64::try_from(&k).expect("reduced numerator fits in i64");
        Self::root_of_unity(k, m)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The same number inside `ℚ(ζ_L)` for a multiple `L` of the order.
    pub fn lift(&self, l: u32) -> Self {
        assert!(l.is_multiple_of(self.order), "cannot lift order {} to {l}", self.order);
        if l == self.order {
            return self.clone();
        }
        let step = (l / self.order) as usize;
        let mut p = vec![QScalar::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Self::reduce(l, p)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut p = vec![QScalar::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[(n - i) % n] += c.clone();
        }
        Self::reduce(self.order, trim(p))
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<QScalar> {
        match self.coeffs.len() {
            0 => Some(QScalar::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let t = std::f64::consts::TAU * i as f64 / n;
            let c = c.to_f64();
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Self::rational(QScalar::zero())
    }

    fn one() -> Self {
        Self::rational(QScalar::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let neg: Poly = b.coeffs.iter().map(|c| -c).collect();
        Cyclotomic {
            order: a.order,
            coeffs: poly_sub(&a.coeffs, &neg),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Cyclotomic {
            order: a.order,
            coeffs: poly_sub(&a.coeffs, &b.coeffs),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::reduce(a.order, poly_mul(&a.coeffs, &b.coeffs))
    }

    /// Inverse modulo `Φ_N` by the extended Euclidean algorithm.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let phi = cyclotomic_poly(self.order);
        let (mut r0, mut r1) = (phi.to_vec(), self.coeffs.clone());
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![QScalar::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since Φ_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        Self::reduce(self.order, s0.iter().map(|x| x * &c).collect())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_rational() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("ζ{}", self.order),
                _ => format!("ζ{}^{i}", self.order),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{mag}*{z}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
