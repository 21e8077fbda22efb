//! Independent brute-force enumeration of all expansions of a point by
//! digit-feasibility branching; the ground-truth cross-check for counts and
//! memberships.
//!
//! A digit `d` is feasible at remainder `s` exactly when the next remainder
//! `q_d·s − d` stays inside the expansion interval, so the feasible-digit
//! graph over remainders carries every expansion of the starting point as
//! an infinite path. Depth-first search with exact remainder comparison
//! along the current path certifies a periodic expansion whenever a
//! remainder recurs; when the certifying cycle passes through a remainder
//! with both digits feasible, detours around the cycle produce pairwise
//! distinct expansions, which certifies countably many. Depth exhaustion
//! only ever yields a lower bound, never an upgraded count.

use crate::bases::DoubleBase;
use crate::numerics::{compare, Cmp, ExactScalar, NumError};
use crate::points::CountResult;
use crate::words::{DigitPrefix, PeriodicSeq};

/// One node of the search: the remainder left after consuming the digits
/// of `path`.
#[derive(Debug, Clone)]
pub struct BranchNode {
    pub state: ExactScalar,
    pub path: DigitPrefix,
}

/// Everything the search established within its budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// Certified periodic expansions, lexicographically sorted.
    pub certified_expansions: Vec<PeriodicSeq>,
    /// Subtrees abandoned on the depth or leaf budget.
    pub open_branches: usize,
    /// Some certified cycle passes through a two-feasible-digit remainder.
    pub branching_cycle_found: bool,
    /// The depth bound the search ran with.
    pub depth_cap: usize,
}

/// Errors for the enumeration preconditions. The oracle is exact-only:
/// interval-backed scalars are rejected rather than risking an uncertified
/// cycle match.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration requires exact scalars for the point and both bases")]
    InexactScalar,
    #[error("base pair lies outside the admissible region")]
    OutsideRegionA,
    #[error("point lies outside the expansion interval")]
    PointOutsideInterval,
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Enumerates the expansions of `x` depth-first over feasible digits.
pub fn enumerate_expansions(
    q: &DoubleBase,
    x: &ExactScalar,
    depth_cap: usize,
    max_leaves: usize,
) -> Result<Census, OracleError> {
    if !q.in_a() {
        return Err(OracleError::OutsideRegionA);
    }
    if [x, q.q0(), q.q1()].iter().any(|s| matches!(s, ExactScalar::Interval(_))) {
        return Err(OracleError::InexactScalar);
    }
    if !q.contains(x)? {
        return Err(OracleError::PointOutsideInterval);
    }
    let mut explorer = Explorer {
        q,
        depth_cap,
        max_leaves,
        trail: Vec::new(),
        census: Census {
            certified_expansions: Vec::new(),
            open_branches: 0,
            branching_cycle_found: false,
            depth_cap,
        },
    };
    explorer.visit(BranchNode {
        state: x.clone(),
        path: DigitPrefix::new(Vec::new()).expect("empty prefix"),
    });
    let mut census = explorer.census;
    census.certified_expansions.sort();
    Ok(census)
}

/// Reads a count off a census: a certified branching cycle means countably
/// many; a fully closed search means the exact certificate count; anything
/// else is only a lower bound at the search depth.
pub fn count_oracle(census: &Census) -> CountResult {
    if census.branching_cycle_found {
        CountResult::CountablyInfinite
    } else if census.open_branches == 0 {
        CountResult::Exact(census.certified_expansions.len())
    } else {
        CountResult::AtLeastAtDepth {
            k: census.certified_expansions.len(),
            depth: census.depth_cap,
        }
    }
}

struct Explorer<'a> {
    q: &'a DoubleBase,
    depth_cap: usize,
    max_leaves: usize,
    /// Remainders along the current path with an approximate key and
    /// whether both digits were feasible there.
    trail: Vec<(f64, ExactScalar, bool)>,
    census: Census,
}

impl Explorer<'_> {
    fn cmp(&self, a: &ExactScalar, b: &ExactScalar) -> std::cmp::Ordering {
        compare(a, b)
            .decided()
            .expect("exact scalars compare decisively; inputs were screened")
    }

    /// Digit feasibility: `0` keeps the remainder in the interval iff
    /// `0 ≤ s ≤ 1/(q0(q1−1))`; `1` iff `1/q1 ≤ s ≤ jmax`.
    fn feasible(&self, s: &ExactScalar) -> (bool, bool) {
        use std::cmp::Ordering;
        let d0 = self.cmp(s, &ExactScalar::zero()) != Ordering::Less
            && self.cmp(s, self.q.threshold_low()) != Ordering::Greater;
        let d1 = self.cmp(s, self.q.threshold_high()) != Ordering::Less
            && self.cmp(s, &self.q.constants().j_max) != Ordering::Greater;
        (d0, d1)
    }

    fn visit(&mut self, node: BranchNode) {
        if self.census.certified_expansions.len() >= self.max_leaves {
            self.census.open_branches += 1;
            return;
        }
        let approx = node.state.to_f64();
        let revisit = self.trail.iter().position(|(a, t, _)| {
            (a - approx).abs() <= 1e-9 * (1.0 + approx.abs())
                && compare(t, &node.state) == Cmp::Equal
        });
        if let Some(start) = revisit {
            if self.trail[start..].iter().any(|&(_, _, branching)| branching) {
                self.census.branching_cycle_found = true;
            }
            let digits = node.path.digits();
            let seq = PeriodicSeq::new(digits[..start].to_vec(), digits[start..].to_vec())
                .expect("search digits are binary");
            debug_assert!(
                self.q
                    .pi_eval(&seq)
                    .is_ok_and(|v| compare(&v, &self.trail[0].1) == Cmp::Equal),
                "certificate must evaluate back to the starting point"
            );
            self.census.certified_expansions.push(seq);
            return;
        }
        if node.path.depth() >= self.depth_cap {
            self.census.open_branches += 1;
            return;
        }
        let (d0, d1) = self.feasible(&node.state);
        debug_assert!(d0 || d1, "every remainder in the interval has a feasible digit");
        self.trail.push((approx, node.state.clone(), d0 && d1));
        for d in [0u8, 1u8] {
            if (d == 0 && !d0) || (d == 1 && !d1) {
                continue;
            }
            let next = self
                .q
                .factor(d)
                .mul(&node.state)
                .sub(&ExactScalar::from_int(i64::from(d)));
            let mut digits = node.path.digits().to_vec();
            digits.push(d);
            self.visit(BranchNode {
                state: next,
                path: DigitPrefix::new(digits).expect("binary digits"),
            });
        }
        self.trail.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansions::{expansion_stream, ExpansionKind, ExpansionResult};

    fn seq(text: &str) -> PeriodicSeq {
        PeriodicSeq::parse_literal(text).unwrap()
    }

    fn binary() -> DoubleBase {
        DoubleBase::from_rationals(2, 1, 2, 1).unwrap()
    }

    fn golden() -> DoubleBase {
        let phi = ExactScalar::phi();
        DoubleBase::new(phi.clone(), phi).unwrap()
    }

    #[test]
    fn binary_half_has_exactly_two() {
        let q = binary();
        let census = enumerate_expansions(&q, &ExactScalar::rational(1, 2), 64, 64).unwrap();
        assert_eq!(census.certified_expansions, vec![seq("0(1)"), seq("1")]);
        assert_eq!(census.open_branches, 0);
        assert!(!census.branching_cycle_found);
        assert_eq!(count_oracle(&census), CountResult::Exact(2));
    }

    #[test]
    fn binary_third_is_unique() {
        let q = binary();
        let census = enumerate_expansions(&q, &ExactScalar::rational(1, 3), 64, 64).unwrap();
        assert_eq!(census.certified_expansions, vec![seq("(01)")]);
        assert_eq!(count_oracle(&census), CountResult::Exact(1));
    }

    #[test]
    fn golden_one_branches_through_a_cycle() {
        let q = golden();
        let census = enumerate_expansions(&q, &ExactScalar::one(), 64, 64).unwrap();
        assert!(census.branching_cycle_found);
        assert_eq!(count_oracle(&census), CountResult::CountablyInfinite);
        assert_eq!(
            census.certified_expansions,
            vec![seq("0(1)"), seq("(10)"), seq("11")]
        );
        assert_eq!(census.open_branches, 0);
    }

    #[test]
    fn extremal_streams_bound_the_census() {
        let q = DoubleBase::from_rationals(2, 1, 3, 2).unwrap();
        let x = ExactScalar::rational(2, 3);
        let census = enumerate_expansions(&q, &x, 64, 64).unwrap();
        assert!(census.branching_cycle_found);
        assert_eq!(count_oracle(&census), CountResult::CountablyInfinite);

        let b = match expansion_stream(&q, &x, ExpansionKind::Greedy, 64).unwrap() {
            ExpansionResult::Periodic { seq, .. } => seq,
            other => panic!("greedy stream did not certify: {:?}", other),
        };
        let l = match expansion_stream(&q, &x, ExpansionKind::Lazy, 64).unwrap() {
            ExpansionResult::Periodic { seq, .. } => seq,
            other => panic!("lazy stream did not certify: {:?}", other),
        };
        let first = census.certified_expansions.first().unwrap();
        let last = census.certified_expansions.last().unwrap();
        assert_eq!(*first, l, "the smallest certificate is the lazy expansion");
        assert_eq!(*last, b, "the largest certificate is the greedy expansion");
    }

    #[test]
    fn depth_exhaustion_reports_open_branches() {
        // Non-periodic remainder orbit: denominators grow without bound.
        let q = DoubleBase::from_rationals(3, 2, 3, 1).unwrap();
        let census = enumerate_expansions(&q, &ExactScalar::rational(1, 5), 12, 64).unwrap();
        assert!(census.open_branches > 0);
        assert!(!census.branching_cycle_found);
        let k = census.certified_expansions.len();
        assert_eq!(count_oracle(&census), CountResult::AtLeastAtDepth { k, depth: 12 });
    }

    #[test]
    fn two_feasible_zone_matches_thresholds() {
        // Interior base: the zone is a nondegenerate interval; boundary
        // base: a single point.
        let interior = golden();
        assert_eq!(
            compare(interior.threshold_high(), interior.threshold_low()),
            Cmp::Less
        );
        let boundary = binary();
        assert_eq!(
            compare(boundary.threshold_high(), boundary.threshold_low()),
            Cmp::Equal
        );
    }

    #[test]
    fn domain_errors() {
        let q = DoubleBase::from_rationals(3, 1, 3, 1).unwrap();
        assert_eq!(
            enumerate_expansions(&q, &ExactScalar::rational(1, 4), 16, 16),
            Err(OracleError::OutsideRegionA)
        );
        let q = binary();
        assert_eq!(
            enumerate_expansions(&q, &ExactScalar::from_int(2), 16, 16),
            Err(OracleError::PointOutsideInterval)
        );
    }
}
