//! Exact and adaptively refinable real scalars with sign-decidable
//! comparisons: the arithmetic substrate for every digit decision.
//!
//! Four tiers, from cheapest to most general: exact rationals, quadratic
//! irrationals `a + b√d`, algebraic numbers given by a squarefree modulus
//! with an isolating interval, and refinable rational enclosures. Arithmetic
//! stays in the exact tiers whenever the operands share a field; anything
//! mixed degrades to an enclosure, whose comparisons may come back
//! [`Cmp::Undecidable`] instead of silently guessing.

pub mod algebraic;
pub mod interval;
pub mod poly;
pub mod poly2;
pub mod quadratic;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub use algebraic::{AlgElem, AlgebraicField};
pub use interval::{IntervalScalar, DEFAULT_MAX_REFINEMENTS};
pub use poly::{IntPoly, RatPoly, SturmChain};
pub use poly2::BiPoly;
pub use quadratic::{Quad, QuadValue};

/// Outcome of comparing two real numbers whose equality may be
/// semidecidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cmp {
    Less,
    Equal,
    Greater,
    Undecidable,
}

impl Cmp {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Cmp::Less,
            Ordering::Equal => Cmp::Equal,
            Ordering::Greater => Cmp::Greater,
        }
    }

    /// The ordering, when one was decided.
    pub fn decided(self) -> Option<Ordering> {
        match self {
            Cmp::Less => Some(Ordering::Less),
            Cmp::Equal => Some(Ordering::Equal),
            Cmp::Greater => Some(Ordering::Greater),
            Cmp::Undecidable => None,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Cmp::Less => Cmp::Greater,
            Cmp::Greater => Cmp::Less,
            other => other,
        }
    }
}

/// Errors from scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("comparison undecidable within the refinement budget")]
    Undecidable,
    #[error("radicand {0} too large to reduce to squarefree form")]
    RadicandTooLarge(u64),
    #[error("interval does not isolate exactly one root")]
    BadIsolatingInterval,
    #[error("cannot parse scalar literal {0:?}")]
    BadScalarLiteral(String),
}

/// A real number in exact or enclosure form.
#[derive(Clone)]
pub enum ExactScalar {
    Rational(BigRational),
    Quadratic(Quad),
    Algebraic(AlgElem),
    Interval(IntervalScalar),
}

use ExactScalar::{Algebraic, Interval, Quadratic, Rational};

impl ExactScalar {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Rational(r)
    }

    /// `a + b√d`, collapsing to a rational when the surd vanishes.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Self, NumError> {
        Ok(match Quad::normalize(a, b, d)? {
            QuadValue::Rational(r) => Rational(r),
            QuadValue::Quad(q) => Quadratic(q),
        })
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        Quadratic(Quad::phi())
    }

    /// Wraps an algebraic element, collapsing to a rational when its
    /// reduced representative is constant.
    pub fn algebraic(e: AlgElem) -> Self {
        match e.as_rational() {
            Some(r) => Rational(r),
            None => Algebraic(e),
        }
    }

    pub fn interval(i: IntervalScalar) -> Self {
        Interval(i)
    }

    /// Parses `p/q`, a plain integer, a decimal like `1.25`, or `phi`.
    pub fn parse(text: &str) -> Result<Self, NumError> {
        let t = text.trim();
        let err = || NumError::BadScalarLiteral(text.to_string());
        if t == "phi" {
            return Ok(Self::phi());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(NumError::DivisionByZero);
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((w, f)) = t.split_once('.') {
            let digits = format!("{}{}", w, f);
            let n = BigInt::from_str(&digits).map_err(|_| err())?;
            if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let d = BigInt::from(10u32).pow(f.len() as u32);
            return Ok(Rational(BigRational::new(n, d)));
        }
        BigInt::from_str(t)
            .map(|n| Rational(BigRational::from(n)))
            .map_err(|_| err())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Rational(r) => Some(r.clone()),
            _ => None,
        }
    }

    /// Rational enclosure; exact tiers meet width `2^{-level}`, an interval
    /// tier returns its best available enclosure under its own budget.
    pub fn enclosure(&self, level: u32) -> (BigRational, BigRational) {
        match self {
            Rational(r) => (r.clone(), r.clone()),
            Quadratic(q) => q.enclosure(level),
            Algebraic(e) => e.enclosure(level),
            Interval(i) => i.refine_to(level).unwrap_or_else(|best| best),
        }
    }

    /// Approximate value for display and prefilters; exact code never
    /// branches on this.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64);
        let mid = (lo + hi) / BigRational::from(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// A refinable-enclosure view of this number.
    pub fn to_interval(&self) -> IntervalScalar {
        match self {
            Interval(i) => i.clone(),
            Rational(r) => IntervalScalar::point(r.clone()),
            other => {
                let v = other.clone();
                IntervalScalar::new(Box::new(move |level| v.enclosure(level)), DEFAULT_MAX_REFINEMENTS)
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational(r) => Rational(-r),
            Quadratic(q) => Quadratic(q.neg()),
            Algebraic(e) => Algebraic(e.neg()),
            Interval(i) => Interval(IntervalScalar::sub(&IntervalScalar::point(BigRational::zero()), i)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Rational(r), Quadratic(q)) | (Quadratic(q), Rational(r)) => {
                Quadratic(q.add_rational(r))
            }
            (Quadratic(a), Quadratic(b)) if a.d() == b.d() => match a.add(b) {
                QuadValue::Rational(r) => Rational(r),
                QuadValue::Quad(q) => Quadratic(q),
            },
            (Rational(r), Algebraic(e)) | (Algebraic(e), Rational(r)) => {
                Self::algebraic(e.add_rational(r))
            }
            (Algebraic(a), Algebraic(b)) if a.same_field(b) => Self::algebraic(a.add(b)),
            _ => Interval(IntervalScalar::add(&self.to_interval(), &other.to_interval())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Rational(r), Quadratic(q)) | (Quadratic(q), Rational(r)) => match q.mul_rational(r) {
                QuadValue::Rational(r) => Rational(r),
                QuadValue::Quad(q) => Quadratic(q),
            },
            (Quadratic(a), Quadratic(b)) if a.d() == b.d() => match a.mul(b) {
                QuadValue::Rational(r) => Rational(r),
                QuadValue::Quad(q) => Quadratic(q),
            },
            (Rational(r), Algebraic(e)) | (Algebraic(e), Rational(r)) => {
                Self::algebraic(e.mul_rational(r))
            }
            (Algebraic(a), Algebraic(b)) if a.same_field(b) => Self::algebraic(a.mul(b)),
            _ => Interval(IntervalScalar::mul(&self.to_interval(), &other.to_interval())),
        }
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self, NumError> {
        match self {
            Rational(r) => {
                if r.is_zero() {
                    Err(NumError::DivisionByZero)
                } else {
                    Ok(Rational(r.recip()))
                }
            }
            Quadratic(q) => Ok(Quadratic(q.inverse())),
            Algebraic(e) => Ok(Self::algebraic(e.inverse()?)),
            Interval(i) => match i.separate_from_zero() {
                Some(Ordering::Equal) => Err(NumError::DivisionByZero),
                Some(_) => Ok(Interval(IntervalScalar::recip(i))),
                None => Err(NumError::Undecidable),
            },
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumError> {
        if let (Rational(a), Rational(b)) = (self, other) {
            return if b.is_zero() {
                Err(NumError::DivisionByZero)
            } else {
                Ok(Rational(a / b))
            };
        }
        Ok(self.mul(&other.inverse()?))
    }

    /// Sign relative to zero.
    pub fn sign(&self) -> Cmp {
        match self {
            Rational(r) => Cmp::from_ordering(r.cmp(&BigRational::zero())),
            Quadratic(q) => Cmp::from_ordering(q.sign()),
            Algebraic(e) => Cmp::from_ordering(e.sign()),
            Interval(i) => match i.separate_from_zero() {
                Some(o) => Cmp::from_ordering(o),
                None => Cmp::Undecidable,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Cmp::Equal
    }
}

/// Compares two scalars, refining enclosures as needed. Exact same-field
/// operands always decide; enclosure comparisons return
/// [`Cmp::Undecidable`] when the refinement budget runs out without
/// separation (equality of distinct enclosure cells is never certified).
pub fn compare(a: &ExactScalar, b: &ExactScalar) -> Cmp {
    if let (Interval(x), Interval(y)) = (a, b) {
        if x.same_cell(y) {
            return Cmp::Equal;
        }
    }
    a.sub(b).sign()
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational(r) => write!(f, "{}", r),
            Quadratic(q) => write!(f, "{}", q),
            Algebraic(e) => write!(f, "{:?}", e),
            Interval(i) => write!(f, "{:?}", i),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational(r) => write!(f, "{}", r),
            _ => write!(f, "{:.12}", self.to_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d)
    }

    #[test]
    fn rational_arithmetic_and_compare() {
        let a = rat(1, 3).add(&rat(1, 6));
        assert_eq!(compare(&a, &rat(1, 2)), Cmp::Equal);
        assert_eq!(compare(&rat(1, 2), &rat(1, 2)), Cmp::Equal);
        assert_eq!(compare(&rat(2, 3), &rat(3, 4)), Cmp::Less);
        assert_eq!(rat(3, 4).mul(&rat(4, 3)).sign(), Cmp::Greater);
        assert!(matches!(rat(1, 2).div(&rat(0, 1)), Err(NumError::DivisionByZero)));
        assert_eq!(rat(1, 2).sub(&rat(1, 2)).sign(), Cmp::Equal);
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = ExactScalar::phi();
        // φ × φ = φ + 1
        let lhs = phi.mul(&phi);
        let rhs = phi.add(&ExactScalar::one());
        assert_eq!(compare(&lhs, &rhs), Cmp::Equal);
        // φ > 809/500
        assert_eq!(compare(&phi, &rat(809, 500)), Cmp::Greater);
        // 1/φ = φ − 1
        let inv = phi.inverse().unwrap();
        assert_eq!(compare(&inv, &phi.sub(&ExactScalar::one())), Cmp::Equal);
    }

    #[test]
    fn mixed_quadratic_fields_degrade_but_decide() {
        let sqrt2 = ExactScalar::quadratic(
            BigRational::zero(),
            BigRational::one(),
            2,
        )
        .unwrap();
        let sqrt3 = ExactScalar::quadratic(
            BigRational::zero(),
            BigRational::one(),
            3,
        )
        .unwrap();
        // √2 + √3 ≈ 3.146 > π-ish rational 22/7
        let sum = sqrt2.add(&sqrt3);
        assert!(matches!(sum, Interval(_)));
        assert_eq!(compare(&sum, &rat(22, 7)), Cmp::Greater);
        assert_eq!(compare(&sqrt2, &sqrt3), Cmp::Less);
        // √2·√3 = √6 ≈ 2.449: between 2 and 3.
        let prod = sqrt2.mul(&sqrt3);
        assert_eq!(compare(&prod, &rat(2, 1)), Cmp::Greater);
        assert_eq!(compare(&prod, &rat(5, 2)), Cmp::Less);
    }

    #[test]
    fn interval_equality_stays_undecidable() {
        let sqrt2a = ExactScalar::quadratic(BigRational::zero(), BigRational::one(), 2)
            .unwrap()
            .to_interval();
        let sqrt2b = ExactScalar::quadratic(BigRational::zero(), BigRational::one(), 2)
            .unwrap()
            .to_interval();
        let (a, b) = (ExactScalar::interval(sqrt2a.clone()), ExactScalar::interval(sqrt2b));
        assert_eq!(compare(&a, &b), Cmp::Undecidable);
        // Same cell compares equal without refinement.
        let c = ExactScalar::interval(sqrt2a);
        assert_eq!(compare(&a, &c), Cmp::Equal);
    }

    #[test]
    fn quadratic_collapse() {
        // (1 + √9) is rational.
        let v = ExactScalar::quadratic(BigRational::one(), BigRational::one(), 9).unwrap();
        assert_eq!(v.as_rational(), Some(BigRational::from(BigInt::from(4))));
        // φ − φ = 0 collapses.
        let phi = ExactScalar::phi();
        assert_eq!(phi.sub(&phi).as_rational(), Some(BigRational::zero()));
    }

    #[test]
    fn parsing() {
        assert_eq!(compare(&ExactScalar::parse("3/2").unwrap(), &rat(3, 2)), Cmp::Equal);
        assert_eq!(compare(&ExactScalar::parse("1.25").unwrap(), &rat(5, 4)), Cmp::Equal);
        assert_eq!(compare(&ExactScalar::parse("2").unwrap(), &rat(2, 1)), Cmp::Equal);
        assert_eq!(
            compare(&ExactScalar::parse("phi").unwrap(), &ExactScalar::phi()),
            Cmp::Equal
        );
        assert_eq!(compare(&ExactScalar::parse("-1/2").unwrap(), &rat(-1, 2)), Cmp::Equal);
        assert!(ExactScalar::parse("abc").is_err());
        assert!(ExactScalar::parse("1/0").is_err());
        assert!(ExactScalar::parse("1.2.3").is_err());
    }

    #[test]
    fn algebraic_tier_round_trip() {
        let field = AlgebraicField::new(
            &IntPoly::from_i64(&[-1, -1, 1]),
            BigRational::one(),
            BigRational::from(BigInt::from(2)),
        )
        .unwrap();
        let theta = ExactScalar::algebraic(field.theta());
        let one = ExactScalar::one();
        // θ² − θ − 1 = 0
        let expr = theta.mul(&theta).sub(&theta).sub(&one);
        assert_eq!(expr.sign(), Cmp::Equal);
        // Collapse to rational through the constructor.
        assert!(matches!(expr, Rational(_) | Algebraic(_)));
        let doubled = theta.add(&theta);
        assert_eq!(compare(&doubled, &rat(16, 5)), Cmp::Greater); // 2φ ≈ 3.236
        assert_eq!(compare(&doubled, &rat(13, 4)), Cmp::Less);
    }

    #[test]
    fn enclosures_bracket() {
        for s in [rat(3, 7), ExactScalar::phi(), rat(-2, 5)] {
            let f = s.to_f64();
            let (lo, hi) = s.enclosure(40);
            assert!(lo.to_f64().unwrap() <= f + 1e-9);
            assert!(hi.to_f64().unwrap() >= f - 1e-9);
        }
    }
}
