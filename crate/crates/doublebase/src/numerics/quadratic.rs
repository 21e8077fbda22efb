//! Exact arithmetic in a real quadratic field ℚ(√d).

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use super::NumError;

/// A quadratic irrational `a + b√d` with rational `a`, nonzero rational `b`,
/// and squarefree integer `d ≥ 2`. The representation is unique, so structural
/// equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Quad {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Normalization result: a would-be quadratic may collapse to a rational.
pub enum QuadValue {
    Rational(BigRational),
    Quad(Quad),
}

/// Writes `d = s²·d'` with `d'` squarefree; returns `(s, d')`.
/// Trial division suffices for the radicands that arise here.
fn extract_square_part(mut d: u64) -> Result<(u64, u64), NumError> {
    const LIMIT: u64 = 1_000_000_000_000;
    if d > LIMIT {
        return Err(NumError::RadicandTooLarge(d));
    }
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    Ok((s, d))
}

impl Quad {
    /// Builds `a + b√d`, reducing the radicand to squarefree form and
    /// collapsing to a rational when the irrational part vanishes.
    pub fn normalize(a: BigRational, b: BigRational, d: u64) -> Result<QuadValue, NumError> {
        if b.is_zero() || d == 0 {
            return Ok(QuadValue::Rational(a));
        }
        let (s, d) = extract_square_part(d)?;
        let b = b * BigRational::from(BigInt::from(s));
        if d == 1 {
            return Ok(QuadValue::Rational(a + b));
        }
        Ok(QuadValue::Quad(Quad { a, b, d }))
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Quad {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Quad { a: half.clone(), b: half, d: 5 }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn neg(&self) -> Quad {
        Quad { a: -&self.a, b: -&self.b, d: self.d }
    }

    /// Sum with a rational (stays irrational).
    pub fn add_rational(&self, r: &BigRational) -> Quad {
        Quad { a: &self.a + r, b: self.b.clone(), d: self.d }
    }

    /// Product with a rational; zero collapses to rational 0.
    pub fn mul_rational(&self, r: &BigRational) -> QuadValue {
        if r.is_zero() {
            QuadValue::Rational(BigRational::zero())
        } else {
            QuadValue::Quad(Quad { a: &self.a * r, b: &self.b * r, d: self.d })
        }
    }

    /// Sum of two elements of the same field; requires equal `d`.
    pub fn add(&self, other: &Quad) -> QuadValue {
        debug_assert_eq!(self.d, other.d);
        let b = &self.b + &other.b;
        if b.is_zero() {
            QuadValue::Rational(&self.a + &other.a)
        } else {
            QuadValue::Quad(Quad { a: &self.a + &other.a, b, d: self.d })
        }
    }

    /// Product of two elements of the same field; requires equal `d`.
    pub fn mul(&self, other: &Quad) -> QuadValue {
        debug_assert_eq!(self.d, other.d);
        let d = BigRational::from(BigInt::from(self.d));
        let a = &self.a * &other.a + &self.b * &other.b * d;
        let b = &self.a * &other.b + &self.b * &other.a;
        if b.is_zero() {
            QuadValue::Rational(a)
        } else {
            QuadValue::Quad(Quad { a, b, d: self.d })
        }
    }

    /// Multiplicative inverse (never zero, since the value is irrational).
    pub fn inverse(&self) -> Quad {
        let d = BigRational::from(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        Quad { a: &self.a / &norm, b: -&self.b / &norm, d: self.d }
    }

    /// Exact sign; never zero because `b ≠ 0` makes the value irrational.
    pub fn sign(&self) -> Ordering {
        let (sa, sb) = (self.a.is_positive(), self.b.is_positive());
        if !self.a.is_negative() && sb {
            return Ordering::Greater;
        }
        if !self.a.is_positive() && !sb {
            return Ordering::Less;
        }
        // Signs of a and b differ; compare |a|² with |b|²·d.
        let d = BigRational::from(BigInt::from(self.d));
        let cmp = (&self.a * &self.a).cmp(&(&self.b * &self.b * d));
        if sa {
            // a > 0 > b√d: positive iff a² > b²d.
            cmp
        } else {
            cmp.reverse()
        }
    }

    /// Rational enclosure of width at most `2^{-level}`.
    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        let (slo, shi) = sqrt_enclosure(self.d, level + 1 + self.b.numer().bits() as u32);
        let (t1, t2) = (&self.a + &self.b * slo, &self.a + &self.b * shi);
        if t1 <= t2 {
            (t1, t2)
        } else {
            (t2, t1)
        }
    }
}

/// Rational enclosure `lo ≤ √d ≤ hi` with `hi − lo = 2^{-level}`.
pub fn sqrt_enclosure(d: u64, level: u32) -> (BigRational, BigRational) {
    let scaled = BigInt::from(d) << (2 * level);
    let root = scaled.sqrt();
    let denom = BigInt::one() << level;
    (
        BigRational::new(root.clone(), denom.clone()),
        BigRational::new(root + BigInt::one(), denom),
    )
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}
