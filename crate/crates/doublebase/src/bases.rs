//! The double-base `Q = (q0, q1)`, its admissible region, derived constants,
//! and exact evaluation of the projection `π_Q`.

use num::{BigInt, BigRational, One};

use crate::numerics::{compare, Cmp, ExactScalar, NumError};
use crate::words::{DigitPrefix, PeriodicSeq};

/// Where a base pair sits relative to the admissible region
/// `{q0 + q1 ≥ q0·q1}` and its boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// On the boundary `q0 + q1 = q0·q1` (conjugate-exponent pairs).
    OnC,
    /// Strict interior `q0 + q1 > q0·q1`.
    InteriorA,
    /// Outside the region: some points of the interval have no expansion.
    OutsideA,
}

/// Errors from base construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaseError {
    #[error("base {which} must be provably greater than 1")]
    NotGreaterThanOne { which: &'static str },
    #[error("base comparison undecidable within the refinement budget")]
    Undecidable,
    #[error(transparent)]
    Num(#[from] NumError),
}

/// The two derived constants of a base pair together with the right endpoint
/// of the expandable interval `[0, 1/(q1−1)]`.
///
/// `r_q = q0/q1` and `ell_q = q1/(q0(q1−1)) − 1` are the points whose
/// quasi-greedy and quasi-lazy expansions give the boundary profiles; on the
/// boundary curve `ell_q = 0` and `r_q = j_max`.
#[derive(Debug, Clone)]
pub struct BaseConstants {
    pub r_q: ExactScalar,
    pub ell_q: ExactScalar,
    pub j_max: ExactScalar,
}

/// A validated base pair with cached region and constants.
#[derive(Debug, Clone)]
pub struct DoubleBase {
    q0: ExactScalar,
    q1: ExactScalar,
    region: Region,
    constants: BaseConstants,
    /// `1/q1 = π(10^∞)`: greedy/quasi-greedy digit threshold.
    threshold_high: ExactScalar,
    /// `1/(q0(q1−1)) = π(01^∞)`: lazy/quasi-lazy digit threshold.
    threshold_low: ExactScalar,
}

impl DoubleBase {
    /// Validates `q0, q1 > 1` and caches the region trichotomy and derived
    /// constants. Pairs outside the admissible region construct fine; the
    /// expansion algorithms reject them at the point of use.
    pub fn new(q0: ExactScalar, q1: ExactScalar) -> Result<Self, BaseError> {
        let one = ExactScalar::one();
        for (q, which) in [(&q0, "q0"), (&q1, "q1")] {
            match compare(q, &one) {
                Cmp::Greater => {}
                Cmp::Undecidable => return Err(BaseError::Undecidable),
                _ => return Err(BaseError::NotGreaterThanOne { which }),
            }
        }
        let region = match compare(&q0.add(&q1), &q0.mul(&q1)) {
            Cmp::Greater => Region::InteriorA,
            Cmp::Equal => Region::OnC,
            Cmp::Less => Region::OutsideA,
            Cmp::Undecidable => return Err(BaseError::Undecidable),
        };
        let q1m1 = q1.sub(&one);
        let j_max = one.div(&q1m1)?;
        let r_q = q0.div(&q1)?;
        let threshold_high = one.div(&q1)?;
        let threshold_low = one.div(&q0.mul(&q1m1))?;
        let ell_q = q1.div(&q0.mul(&q1m1))?.sub(&one);
        Ok(DoubleBase {
            q0,
            q1,
            region,
            constants: BaseConstants { r_q, ell_q, j_max },
            threshold_high,
            threshold_low,
        })
    }

    /// Convenience constructor from small rationals.
    pub fn from_rationals(n0: i64, d0: i64, n1: i64, d1: i64) -> Result<Self, BaseError> {
        Self::new(ExactScalar::rational(n0, d0), ExactScalar::rational(n1, d1))
    }

    pub fn q0(&self) -> &ExactScalar {
        &self.q0
    }

    pub fn q1(&self) -> &ExactScalar {
        &self.q1
    }

    /// The base factor selected by a digit.
    pub fn factor(&self, digit: u8) -> &ExactScalar {
        if digit == 0 {
            &self.q0
        } else {
            &self.q1
        }
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn in_a(&self) -> bool {
        matches!(self.region, Region::OnC | Region::InteriorA)
    }

    pub fn on_c(&self) -> bool {
        self.region == Region::OnC
    }

    pub fn constants(&self) -> &BaseConstants {
        &self.constants
    }

    /// `1/q1`, the value of `10^∞`; greedy takes digit 1 at or above it.
    pub fn threshold_high(&self) -> &ExactScalar {
        &self.threshold_high
    }

    /// `1/(q0(q1−1))`, the value of `01^∞`; lazy takes digit 0 at or below it.
    pub fn threshold_low(&self) -> &ExactScalar {
        &self.threshold_low
    }

    /// Walks a finite word, returning `(sum, inv)` with
    /// `π(w·t) = sum + inv·π(t)`: the partial sum of the word's digits and
    /// the reciprocal of the product of its base factors.
    fn walk_word(&self, word: &[u8]) -> Result<(ExactScalar, ExactScalar), NumError> {
        let mut sum = ExactScalar::zero();
        let mut inv = ExactScalar::one();
        for &d in word {
            inv = inv.div(self.factor(d))?;
            if d == 1 {
                sum = sum.add(&inv);
            }
        }
        Ok((sum, inv))
    }

    /// Exact value of an eventually periodic sequence: finite preperiod sum
    /// plus a geometric tail, never a truncation.
    pub fn pi_eval(&self, s: &PeriodicSeq) -> Result<ExactScalar, NumError> {
        let (pre_sum, pre_inv) = self.walk_word(s.pre())?;
        let (per_sum, per_inv) = self.walk_word(s.per())?;
        let tail = per_sum.div(&ExactScalar::one().sub(&per_inv))?;
        Ok(pre_sum.add(&pre_inv.mul(&tail)))
    }

    /// Interval guaranteed to contain `π` of every infinite extension of a
    /// digit prefix: `[sum, sum + inv·j_max]`.
    pub fn pi_bounds(&self, p: &DigitPrefix) -> Result<(ExactScalar, ExactScalar), NumError> {
        let (sum, inv) = self.walk_word(p.digits())?;
        let hi = sum.add(&inv.mul(&self.constants.j_max));
        Ok((sum, hi))
    }

    /// Whether `x` lies in the expandable interval `[0, j_max]`.
    pub fn contains(&self, x: &ExactScalar) -> Result<bool, NumError> {
        let lo = match compare(x, &ExactScalar::zero()) {
            Cmp::Undecidable => return Err(NumError::Undecidable),
            c => c != Cmp::Less,
        };
        let hi = match compare(x, &self.constants.j_max) {
            Cmp::Undecidable => return Err(NumError::Undecidable),
            c => c != Cmp::Greater,
        };
        Ok(lo && hi)
    }
}

/// Uniform rational sample from region A with `q1 ∈ (1, 2]`: draws `q1`
/// first, then `q0 ∈ (1, q1/(q1−1)]`, both on a grid of the given
/// resolution. Used by randomized tests; deterministic in its inputs.
pub fn rational_base_in_a(u: u32, v: u32, resolution: u32) -> DoubleBase {
    let res = BigInt::from(resolution.max(2));
    let one = BigRational::one();
    // q1 = 1 + (u mod res + 1)/res ∈ (1, 2]
    let step = |t: u32| {
        BigRational::new(BigInt::from(t % resolution.max(2)) + BigInt::one(), res.clone())
    };
    let q1 = &one + step(u);
    // Upper limit for q0 keeping (q0−1)(q1−1) ≤ 1.
    let limit = &q1 / (&q1 - &one);
    let frac = step(v); // ∈ (0, 1]
    let q0 = &one + (&limit - &one) * frac;
    let q0 = if q0 <= one {
        // Unreachable for valid inputs; keep the sample well-formed anyway.
        &one + BigRational::new(BigInt::one(), res.clone())
    } else {
        q0
    };
    DoubleBase::new(
        ExactScalar::from_rational(q0),
        ExactScalar::from_rational(q1),
    )
    .expect("sampled base is inside the admissible region")
}
