//! Adaptively refinable rational enclosures of real numbers.

use num::{BigInt, BigRational, Signed, Zero};
use std::sync::{Arc, Mutex};

/// Default number of refinement levels before a comparison gives up
/// (roughly 77 decimal digits of separation).
pub const DEFAULT_MAX_REFINEMENTS: u32 = 256;

/// Produces an enclosure of the underlying value at a requested level; the
/// contract is nesting across levels in spirit (the cell intersects results)
/// and width tending to zero as the level grows, with level `k` of a leaf
/// producer no wider than its level-0 width times `2^{-k}`.
pub type RefineFn = Box<dyn Fn(u32) -> (BigRational, BigRational) + Send + Sync>;

struct CellState {
    level: u32,
    lo: BigRational,
    hi: BigRational,
}

struct IntervalCell {
    state: Mutex<CellState>,
    refine: RefineFn,
    max_refinements: u32,
}

/// A real number known only through a shrinkable rational enclosure.
/// Clones share the underlying cell, so refinement through one handle is
/// visible to all; two handles are considered identical (comparable as
/// `Equal`) only when they share a cell.
#[derive(Clone)]
pub struct IntervalScalar {
    cell: Arc<IntervalCell>,
}

impl IntervalScalar {
    /// Wraps a refinement producer. The level-0 enclosure is computed
    /// immediately; `refine(k)` must enclose the value for every `k`.
    pub fn new(refine: RefineFn, max_refinements: u32) -> Self {
        let (lo, hi) = refine(0);
        debug_assert!(lo <= hi);
        IntervalScalar {
            cell: Arc::new(IntervalCell {
                state: Mutex::new(CellState { level: 0, lo, hi }),
                refine,
                max_refinements,
            }),
        }
    }

    /// A degenerate (point) interval.
    pub fn point(value: BigRational) -> Self {
        let v = value.clone();
        Self::new(Box::new(move |_| (v.clone(), v.clone())), DEFAULT_MAX_REFINEMENTS)
    }

    pub fn max_refinements(&self) -> u32 {
        self.cell.max_refinements
    }

    /// Whether both handles view the same cell.
    pub fn same_cell(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.cell, &other.cell)
    }

    /// Current enclosure without further refinement.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let s = self.cell.state.lock().unwrap();
        (s.lo.clone(), s.hi.clone())
    }

    /// Refines to at least `level` (clamped to the refinement budget) and
    /// returns the enclosure. Returns `Err` with the best enclosure when the
    /// budget clamps the request.
    pub fn refine_to(&self, level: u32) -> Result<(BigRational, BigRational), (BigRational, BigRational)> {
        let clamped = level.min(self.cell.max_refinements);
        let mut s = self.cell.state.lock().unwrap();
        if clamped > s.level {
            let (lo, hi) = (self.cell.refine)(clamped);
            debug_assert!(lo <= hi);
            // Intersect with the current state so enclosures are nested even
            // if the producer is only width-monotone.
            if lo > s.lo {
                s.lo = lo;
            }
            if hi < s.hi {
                s.hi = hi;
            }
            debug_assert!(s.lo <= s.hi);
            s.level = clamped;
        }
        let out = (s.lo.clone(), s.hi.clone());
        if clamped < level {
            Err(out)
        } else {
            Ok(out)
        }
    }

    pub fn width(&self) -> BigRational {
        let (lo, hi) = self.enclosure();
        hi - lo
    }

    /// Composite interval from a binary operation on two operands. The
    /// closure receives the operand enclosures and returns the result
    /// enclosure; refinement pushes both operands deeper until the output
    /// width meets the level target (or the operands are exhausted).
    fn combine(
        a: &IntervalScalar,
        b: &IntervalScalar,
        op: impl Fn(&BigRational, &BigRational, &BigRational, &BigRational) -> (BigRational, BigRational)
            + Send
            + Sync
            + 'static,
    ) -> IntervalScalar {
        let (a, b) = (a.clone(), b.clone());
        let max = a.max_refinements().max(b.max_refinements());
        let initial_width = Mutex::new(None::<BigRational>);
        let refine = Box::new(move |level: u32| {
            let mut m = level;
            loop {
                let (alo, ahi) = a.refine_to(m).unwrap_or_else(|best| best);
                let (blo, bhi) = b.refine_to(m).unwrap_or_else(|best| best);
                let (lo, hi) = op(&alo, &ahi, &blo, &bhi);
                debug_assert!(lo <= hi);
                let width = &hi - &lo;
                let mut w0 = initial_width.lock().unwrap();
                let target = match &*w0 {
                    None => {
                        *w0 = Some(width.clone());
                        return (lo, hi);
                    }
                    Some(w0) => w0 * BigRational::new(BigInt::from(1), BigInt::from(1) << level.min(1024)),
                };
                if width <= target || m >= level + 64 {
                    return (lo, hi);
                }
                m += 1;
            }
        });
        IntervalScalar::new(refine, max)
    }

    pub fn add(a: &IntervalScalar, b: &IntervalScalar) -> IntervalScalar {
        Self::combine(a, b, |alo, ahi, blo, bhi| (alo + blo, ahi + bhi))
    }

    pub fn sub(a: &IntervalScalar, b: &IntervalScalar) -> IntervalScalar {
        Self::combine(a, b, |alo, ahi, blo, bhi| (alo - bhi, ahi - blo))
    }

    pub fn mul(a: &IntervalScalar, b: &IntervalScalar) -> IntervalScalar {
        Self::combine(a, b, |alo, ahi, blo, bhi| {
            let products = [alo * blo, alo * bhi, ahi * blo, ahi * bhi];
            let mut lo = products[0].clone();
            let mut hi = products[0].clone();
            for p in &products[1..] {
                if *p < lo {
                    lo = p.clone();
                }
                if *p > hi {
                    hi = p.clone();
                }
            }
            (lo, hi)
        })
    }

    /// Reciprocal; the caller must first separate the operand from zero
    /// (panics if the enclosure still straddles zero when queried).
    pub fn recip(a: &IntervalScalar) -> IntervalScalar {
        let a = a.clone();
        let max = a.max_refinements();
        let refine = Box::new(move |level: u32| {
            let (lo, hi) = a.refine_to(level).unwrap_or_else(|best| best);
            assert!(
                lo.is_positive() || hi.is_negative(),
                "reciprocal of an interval straddling zero"
            );
            let one = BigRational::from(BigInt::from(1));
            (&one / &hi, &one / &lo)
        });
        IntervalScalar::new(refine, max)
    }

    /// Separates the value from zero: refines until the enclosure excludes 0
    /// (returning the sign), collapses to the point 0 (returning `Equal`), or
    /// exhausts the budget (`None`).
    pub fn separate_from_zero(&self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        let zero = BigRational::zero();
        for level in 0..=self.cell.max_refinements {
            let (lo, hi) = match self.refine_to(level) {
                Ok(e) => e,
                Err(e) => e,
            };
            if lo > zero {
                return Some(Ordering::Greater);
            }
            if hi < zero {
                return Some(Ordering::Less);
            }
            if lo == zero && hi == zero {
                return Some(Ordering::Equal);
            }
        }
        None
    }
}

impl std::fmt::Debug for IntervalScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (lo, hi) = self.enclosure();
        write!(f, "[{}, {}]", lo, hi)
    }
}
