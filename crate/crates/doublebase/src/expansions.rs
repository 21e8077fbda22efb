//! The four canonical digit algorithms as streams over a renormalized
//! state, with cycle detection producing periodic certificates.
//!
//! After `N` digits the state is `s_N = q_{i_N}·s_{N−1} − i_N` with
//! `s_0 = x`; it equals the value whose expansion is the remaining tail, so
//! each digit choice is a single comparison against one of two thresholds:
//! `1/q1` (the value of `10^∞`) for the greedy pair, `1/(q0(q1−1))` (the
//! value of `01^∞`) for the lazy pair. Ties split the four kinds: greedy
//! takes 1 at the threshold where quasi-greedy takes 0, and dually.

use crate::bases::DoubleBase;
use crate::numerics::{compare, Cmp, ExactScalar, NumError};
use crate::words::{DigitPrefix, PeriodicSeq, SeqClass};

/// Which of the four canonical expansions to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    Greedy,
    QuasiGreedy,
    Lazy,
    QuasiLazy,
}

/// Why a stream stopped without certifying a period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixReason {
    DepthCap,
    UndecidableComparison,
}

/// Outcome of running an expansion stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionResult {
    /// A certified eventually periodic expansion: the state after
    /// `cycle_start` digits recurred after `cycle_len` more.
    Periodic {
        seq: PeriodicSeq,
        cycle_start: usize,
        cycle_len: usize,
    },
    /// Digits up to a stopping point, with no periodicity claim.
    PrefixOnly { p: DigitPrefix, reason: PrefixReason },
}

impl ExpansionResult {
    /// The certified sequence, when there is one.
    pub fn periodic(&self) -> Option<&PeriodicSeq> {
        match self {
            ExpansionResult::Periodic { seq, .. } => Some(seq),
            ExpansionResult::PrefixOnly { .. } => None,
        }
    }

    /// First `n` digits of the result (shorter if only a shorter prefix is
    /// known).
    pub fn prefix(&self, n: usize) -> DigitPrefix {
        match self {
            ExpansionResult::Periodic { seq, .. } => seq.prefix(n),
            ExpansionResult::PrefixOnly { p, .. } => {
                DigitPrefix::new(p.digits()[..n.min(p.depth())].to_vec()).unwrap()
            }
        }
    }
}

/// Digit `k` of the result, when it lies in the known part.
pub(crate) fn digit_of(r: &ExpansionResult, k: usize) -> Option<u8> {
    match r {
        ExpansionResult::Periodic { seq, .. } => Some(seq.digit(k)),
        ExpansionResult::PrefixOnly { p, .. } => p.digits().get(k).copied(),
    }
}

/// Number of known digits, or `None` for a fully certified sequence.
pub(crate) fn known_depth(r: &ExpansionResult) -> Option<usize> {
    match r {
        ExpansionResult::Periodic { .. } => None,
        ExpansionResult::PrefixOnly { p, .. } => Some(p.depth()),
    }
}

/// Lexicographic comparison of two shifted digit streams. Exact when both
/// are certified periodic; otherwise decided only if a differing digit lies
/// within the known parts.
pub(crate) fn cmp_shifted(
    a: &ExpansionResult,
    i: usize,
    b: &ExpansionResult,
    j: usize,
) -> Option<std::cmp::Ordering> {
    if let (ExpansionResult::Periodic { seq: sa, .. }, ExpansionResult::Periodic { seq: sb, .. }) =
        (a, b)
    {
        return Some(sa.shift(i).cmp(&sb.shift(j)));
    }
    let mut k = 0;
    loop {
        match (digit_of(a, i + k), digit_of(b, j + k)) {
            (Some(x), Some(y)) if x == y => k += 1,
            (Some(x), Some(y)) => return Some(x.cmp(&y)),
            _ => return None,
        }
    }
}

/// Errors for domain violations; indecision and depth exhaustion are data
/// (`PrefixOnly`), not errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpansionError {
    #[error("base pair lies outside the admissible region")]
    OutsideRegionA,
    #[error("point lies outside the expandable interval")]
    PointOutsideInterval,
    #[error("boundary profile not certified periodic at this depth")]
    ProfileNotPeriodic { reason: PrefixReason },
    #[error(transparent)]
    Num(#[from] NumError),
}

fn decide_digit(kind: ExpansionKind, q: &DoubleBase, s: &ExactScalar) -> Option<u8> {
    let d = match kind {
        ExpansionKind::Greedy => match compare(s, q.threshold_high()) {
            Cmp::Undecidable => return None,
            Cmp::Less => 0,
            _ => 1,
        },
        ExpansionKind::QuasiGreedy => match compare(s, q.threshold_high()) {
            Cmp::Undecidable => return None,
            Cmp::Greater => 1,
            _ => 0,
        },
        ExpansionKind::Lazy => match compare(s, q.threshold_low()) {
            Cmp::Undecidable => return None,
            Cmp::Greater => 1,
            _ => 0,
        },
        ExpansionKind::QuasiLazy => match compare(s, q.threshold_low()) {
            Cmp::Undecidable => return None,
            Cmp::Less => 0,
            _ => 1,
        },
    };
    Some(d)
}

/// Computes the expansion of `x` in base `Q` by the chosen algorithm, up to
/// `depth_cap` digits, certifying a period when an exact state recurs.
///
/// Endpoint conventions take precedence over the threshold recurrence:
/// the quasi-greedy expansion of 0 is `1^∞` and the quasi-lazy expansion of
/// the right endpoint is `0^∞`.
pub fn expansion_stream(
    q: &DoubleBase,
    x: &ExactScalar,
    kind: ExpansionKind,
    depth_cap: usize,
) -> Result<ExpansionResult, ExpansionError> {
    if !q.in_a() {
        return Err(ExpansionError::OutsideRegionA);
    }
    let at_zero = match compare(x, &ExactScalar::zero()) {
        Cmp::Less => return Err(ExpansionError::PointOutsideInterval),
        Cmp::Equal => true,
        Cmp::Greater => false,
        Cmp::Undecidable => return Err(NumError::Undecidable.into()),
    };
    let at_top = match compare(x, &q.constants().j_max) {
        Cmp::Greater => return Err(ExpansionError::PointOutsideInterval),
        Cmp::Equal => true,
        Cmp::Less => false,
        Cmp::Undecidable => return Err(NumError::Undecidable.into()),
    };
    if kind == ExpansionKind::QuasiGreedy && at_zero {
        return Ok(ExpansionResult::Periodic {
            seq: PeriodicSeq::ones(),
            cycle_start: 0,
            cycle_len: 1,
        });
    }
    if kind == ExpansionKind::QuasiLazy && at_top {
        return Ok(ExpansionResult::Periodic {
            seq: PeriodicSeq::zero(),
            cycle_start: 0,
            cycle_len: 1,
        });
    }

    let exact = !matches!(x, ExactScalar::Interval(_))
        && !matches!(q.q0(), ExactScalar::Interval(_))
        && !matches!(q.q1(), ExactScalar::Interval(_));
    let mut digits: Vec<u8> = Vec::new();
    let mut seen: Vec<(f64, ExactScalar)> = Vec::new();
    let mut s = x.clone();
    for _ in 0..depth_cap {
        if exact {
            let approx = s.to_f64();
            let hit = seen.iter().position(|(a, t)| {
                (a - approx).abs() <= 1e-9 * (1.0 + approx.abs()) && compare(t, &s) == Cmp::Equal
            });
            if let Some(start) = hit {
                let seq = PeriodicSeq::new(digits[..start].to_vec(), digits[start..].to_vec())
                    .expect("stream digits are binary");
                verify_round_trip(q, &seq, x);
                return Ok(ExpansionResult::Periodic {
                    seq,
                    cycle_start: start,
                    cycle_len: digits.len() - start,
                });
            }
            seen.push((approx, s.clone()));
        }
        let d = match decide_digit(kind, q, &s) {
            Some(d) => d,
            None => {
                return Ok(ExpansionResult::PrefixOnly {
                    p: DigitPrefix::new(digits).unwrap(),
                    reason: PrefixReason::UndecidableComparison,
                })
            }
        };
        digits.push(d);
        s = q
            .factor(d)
            .mul(&s)
            .sub(&ExactScalar::from_int(i64::from(d)));
    }
    Ok(ExpansionResult::PrefixOnly {
        p: DigitPrefix::new(digits).unwrap(),
        reason: PrefixReason::DepthCap,
    })
}

/// A certified periodic expansion must evaluate back to its point.
fn verify_round_trip(q: &DoubleBase, seq: &PeriodicSeq, x: &ExactScalar) {
    if let Ok(v) = q.pi_eval(seq) {
        match compare(&v, x) {
            Cmp::Equal | Cmp::Undecidable => {}
            other => panic!(
                "periodic certificate fails round trip: π({}) {:?} input point",
                seq, other
            ),
        }
    }
}

/// Rewrites a greedy sequence into the quasi-greedy one for the same point:
/// an infinite greedy sequence is already quasi-greedy; one with a last 1,
/// `b_1⋯b_{k−1}1 0^∞`, becomes `b_1⋯b_{k−1}0·α`; and the expansion of 0
/// becomes `1^∞` by convention. Pure word surgery once `α` is known.
pub fn quasi_greedy_from_parts(b: &PeriodicSeq, alpha: &PeriodicSeq) -> PeriodicSeq {
    match b.classify() {
        SeqClass::Zero => PeriodicSeq::ones(),
        SeqClass::Finite => {
            // Canonical finite form: per = [0], pre ends with the last 1.
            let mut word = b.pre().to_vec();
            let last = word.pop();
            debug_assert_eq!(last, Some(1));
            word.push(0);
            PeriodicSeq::word_then(&word, alpha).expect("binary digits")
        }
        _ => b.clone(),
    }
}

/// Mirror of [`quasi_greedy_from_parts`]: a co-infinite lazy sequence is
/// already quasi-lazy; one with a last 0, `l_1⋯l_{k−1}0 1^∞`, becomes
/// `l_1⋯l_{k−1}1·μ`; the expansion of the right endpoint becomes `0^∞`.
pub fn quasi_lazy_from_parts(l: &PeriodicSeq, mu: &PeriodicSeq) -> PeriodicSeq {
    match l.classify() {
        SeqClass::Ones => PeriodicSeq::zero(),
        SeqClass::CoFinite => {
            let mut word = l.pre().to_vec();
            let last = word.pop();
            debug_assert_eq!(last, Some(0));
            word.push(1);
            PeriodicSeq::word_then(&word, mu).expect("binary digits")
        }
        _ => l.clone(),
    }
}

/// Quasi-greedy rewrite of a greedy sequence, deriving `α` from the base by
/// streaming the quasi-greedy expansion of `q0/q1`. Fails when that profile
/// is only known as a prefix and the rewrite would need it.
pub fn to_quasi_greedy(
    q: &DoubleBase,
    b: &PeriodicSeq,
    depth_cap: usize,
) -> Result<PeriodicSeq, ExpansionError> {
    match b.classify() {
        SeqClass::Zero | SeqClass::Finite => {
            let alpha = alpha_profile(q, depth_cap)?;
            Ok(quasi_greedy_from_parts(b, &alpha))
        }
        _ => Ok(b.clone()),
    }
}

/// Quasi-lazy rewrite of a lazy sequence; mirror of [`to_quasi_greedy`].
pub fn to_quasi_lazy(
    q: &DoubleBase,
    l: &PeriodicSeq,
    depth_cap: usize,
) -> Result<PeriodicSeq, ExpansionError> {
    match l.classify() {
        SeqClass::Ones | SeqClass::CoFinite => {
            let mu = mu_profile(q, depth_cap)?;
            Ok(quasi_lazy_from_parts(l, &mu))
        }
        _ => Ok(l.clone()),
    }
}

/// `α(Q)`: quasi-greedy expansion of `q0/q1`, required periodic.
pub fn alpha_profile(q: &DoubleBase, depth_cap: usize) -> Result<PeriodicSeq, ExpansionError> {
    match expansion_stream(q, &q.constants().r_q, ExpansionKind::QuasiGreedy, depth_cap)? {
        ExpansionResult::Periodic { seq, .. } => Ok(seq),
        ExpansionResult::PrefixOnly { reason, .. } => {
            Err(ExpansionError::ProfileNotPeriodic { reason })
        }
    }
}

/// `μ(Q)`: quasi-lazy expansion of `q1/(q0(q1−1)) − 1`, required periodic.
pub fn mu_profile(q: &DoubleBase, depth_cap: usize) -> Result<PeriodicSeq, ExpansionError> {
    match expansion_stream(q, &q.constants().ell_q, ExpansionKind::QuasiLazy, depth_cap)? {
        ExpansionResult::Periodic { seq, .. } => Ok(seq),
        ExpansionResult::PrefixOnly { reason, .. } => {
            Err(ExpansionError::ProfileNotPeriodic { reason })
        }
    }
}
