//! Per-point classification and structure: membership in the uniqueness
//! hierarchy, theorem-driven expansion counts, the expansions lying between
//! the extremal ones, the gaps of the complement of the doubly-infinite
//! set, and successor points inside a component.
//!
//! The driving facts: a point's quasi-lazy and quasi-greedy expansions `m`
//! and `a` decide membership in the doubly-infinite set `V` by finitely
//! many shifted comparisons against the base profile `(μ, α)`; the greedy
//! and lazy expansions `b` and `l` decide uniqueness (`b = l`) and the
//! finite-side/co-finite-side sets `A` (greedy expansion ends in `0^∞`) and
//! `B` (lazy expansion ends in `1^∞`); and every count statement dispatches
//! on the case label of the base together with those memberships.

use std::cmp::Ordering;

use crate::base_classify::{base_membership, classify_case, profile, CaseLabel, Verdict};
use crate::bases::DoubleBase;
use crate::expansions::{
    alpha_profile, cmp_shifted, digit_of, expansion_stream, known_depth, mu_profile,
    ExpansionError, ExpansionKind, ExpansionResult,
};
use crate::numerics::{compare, Cmp, ExactScalar, NumError};
use crate::words::{PeriodicSeq, SeqClass};

/// Profile depth used when an operation has to derive `μ`/`α` itself.
pub(crate) const DEFAULT_PROFILE_DEPTH: usize = 512;

/// A verdict-qualified boolean. `holds` is meaningful only when the verdict
/// is decided (`Proven` or `RefutedWitness`); under `UndecidedAtDepth` it is
/// the optimistic guess from the inspected digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub verdict: Verdict,
}

impl Flag {
    fn proven(holds: bool) -> Flag {
        Flag { holds, verdict: Verdict::Proven }
    }

    fn refuted(witness: usize) -> Flag {
        Flag { holds: false, verdict: Verdict::RefutedWitness(witness) }
    }

    fn undecided(depth: usize, guess: bool) -> Flag {
        Flag { holds: guess, verdict: Verdict::UndecidedAtDepth(depth) }
    }

    /// Whether the verdict is anything other than undecided.
    pub fn decided(&self) -> bool {
        !matches!(self.verdict, Verdict::UndecidedAtDepth(_))
    }

    /// True with a decided verdict.
    pub fn proven_true(&self) -> bool {
        self.holds && self.decided()
    }

    /// False with a decided verdict.
    pub fn proven_false(&self) -> bool {
        !self.holds && self.decided()
    }

    fn and(self, other: Flag) -> Flag {
        if self.proven_false() {
            return self;
        }
        if other.proven_false() {
            return other;
        }
        match (self.decided(), other.decided()) {
            (true, true) => Flag::proven(true),
            (false, _) => Flag { holds: self.holds && other.holds, verdict: self.verdict },
            (_, false) => Flag { holds: self.holds && other.holds, verdict: other.verdict },
        }
    }
}

/// How many expansions a point has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountResult {
    Exact(usize),
    CountablyInfinite,
    /// Lower bound `k` established from data inspected down to `depth`.
    AtLeastAtDepth { k: usize, depth: usize },
}

/// Full per-point record: the four canonical expansions and the membership
/// flags, plus the count knowledge derivable without a case label.
#[derive(Debug, Clone)]
pub struct PointClass {
    pub x: ExactScalar,
    pub b: ExpansionResult,
    pub a: ExpansionResult,
    pub m: ExpansionResult,
    pub l: ExpansionResult,
    pub in_u: Flag,
    pub in_v: Flag,
    pub in_a: Flag,
    pub in_b: Flag,
    pub count: CountResult,
}

/// Errors for the theorem-driven operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointError {
    #[error("point has a unique expansion; its count is trivially 1")]
    UniquePoint,
    #[error("point lies outside the doubly-infinite set; counting is delegated to the oracle")]
    OutsideV,
    #[error("label XII leaves no doubly-infinite non-unique points to count")]
    EmptyRegime,
    #[error("operation requires fully certified expansions and proven memberships")]
    NotDecided,
    #[error("point is not in the required membership set")]
    NotInSet,
    #[error("sequence is not the greedy expansion of its value")]
    NotGreedy,
    #[error("operation requires case label {expected}, got {got}")]
    WrongLabel { expected: CaseLabel, got: CaseLabel },
    #[error("base must lie in V∖C")]
    NotInVMinusC,
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Computes the four expansions of `x` and the membership flags.
pub fn classify_point(
    q: &DoubleBase,
    x: &ExactScalar,
    depth_cap: usize,
) -> Result<PointClass, ExpansionError> {
    let b = expansion_stream(q, x, ExpansionKind::Greedy, depth_cap)?;
    let a = expansion_stream(q, x, ExpansionKind::QuasiGreedy, depth_cap)?;
    let m = expansion_stream(q, x, ExpansionKind::QuasiLazy, depth_cap)?;
    let l = expansion_stream(q, x, ExpansionKind::Lazy, depth_cap)?;

    let in_u = uniqueness_flag(&b, &l, depth_cap);
    let in_v = if q.on_c() {
        Flag::proven(true)
    } else {
        let p = profile(q, depth_cap)?;
        v_flag(&m, &a, &p.mu, &p.alpha, depth_cap)
    };
    let in_a = in_v.and(tail_class_flag(&b, SeqClass::Finite, depth_cap));
    let in_b = in_v.and(tail_class_flag(&l, SeqClass::CoFinite, depth_cap));

    let count = if in_u.proven_true() {
        CountResult::Exact(1)
    } else {
        let mut distinct: Vec<&PeriodicSeq> = Vec::new();
        for r in [&b, &a, &m, &l] {
            if let Some(s) = r.periodic() {
                if !distinct.contains(&s) {
                    distinct.push(s);
                }
            }
        }
        CountResult::AtLeastAtDepth { k: distinct.len().max(1), depth: depth_cap }
    };

    Ok(PointClass { x: x.clone(), b, a, m, l, in_u, in_v, in_a, in_b, count })
}

fn uniqueness_flag(b: &ExpansionResult, l: &ExpansionResult, depth_cap: usize) -> Flag {
    if let (Some(sb), Some(sl)) = (b.periodic(), l.periodic()) {
        return match sb.first_difference(sl) {
            None => Flag::proven(true),
            Some(k) => Flag::refuted(k),
        };
    }
    let mut k = 0;
    loop {
        match (digit_of(b, k), digit_of(l, k)) {
            (Some(x), Some(y)) if x == y => k += 1,
            (Some(_), Some(_)) => return Flag::refuted(k),
            _ => return Flag::undecided(k.min(depth_cap), true),
        }
    }
}

/// One side of the doubly-infinite membership test: at every index `j ≥ 1`
/// whose preceding digit equals `digit`, the shifted tail must not compare
/// as `bad` against `other`.
fn scan_side(
    stream: &ExpansionResult,
    digit: u8,
    other: &ExpansionResult,
    bad: Ordering,
) -> (Option<usize>, bool) {
    let range_end = match stream {
        ExpansionResult::Periodic { seq, .. } => seq.tail_classes(),
        ExpansionResult::PrefixOnly { p, .. } => p.depth(),
    };
    let mut undecided = known_depth(stream).is_some() || known_depth(other).is_some();
    for j in 1..=range_end {
        if digit_of(stream, j - 1) != Some(digit) {
            continue;
        }
        match cmp_shifted(stream, j, other, 0) {
            Some(o) if o == bad => return (Some(j), undecided),
            Some(_) => {}
            None => undecided = true,
        }
    }
    (None, undecided)
}

fn v_flag(
    m: &ExpansionResult,
    a: &ExpansionResult,
    mu: &ExpansionResult,
    alpha: &ExpansionResult,
    depth_cap: usize,
) -> Flag {
    let (viol_m, undec_m) = scan_side(m, 0, alpha, Ordering::Greater);
    let (viol_a, undec_a) = scan_side(a, 1, mu, Ordering::Less);
    match (viol_m, viol_a) {
        (Some(i), Some(j)) => Flag::refuted(i.min(j)),
        (Some(i), None) => Flag::refuted(i),
        (None, Some(j)) => Flag::refuted(j),
        (None, None) if undec_m || undec_a => Flag::undecided(depth_cap, true),
        (None, None) => Flag::proven(true),
    }
}

fn tail_class_flag(r: &ExpansionResult, wanted: SeqClass, depth_cap: usize) -> Flag {
    match r.periodic() {
        Some(s) => Flag::proven(s.classify() == wanted),
        None => Flag::undecided(depth_cap, false),
    }
}

/// The number of expansions of a doubly-infinite non-unique point, read off
/// the case label and the point's memberships.
pub fn count_expansions(
    q: &DoubleBase,
    label: CaseLabel,
    pc: &PointClass,
) -> Result<CountResult, PointError> {
    if !(pc.in_u.decided() && pc.in_v.decided() && pc.in_a.decided() && pc.in_b.decided()) {
        return Err(PointError::NotDecided);
    }
    if pc.in_u.holds {
        return Err(PointError::UniquePoint);
    }
    if !pc.in_v.holds {
        return Err(PointError::OutsideV);
    }
    use CaseLabel::*;
    Ok(match label {
        C | I => CountResult::Exact(2),
        II => {
            if pc.in_a.holds {
                CountResult::Exact(3)
            } else {
                assert!(pc.in_b.holds, "under label II every point of V∖U lies in B");
                CountResult::Exact(2)
            }
        }
        III => {
            if pc.in_b.holds {
                CountResult::Exact(3)
            } else {
                assert!(pc.in_a.holds, "under label III every point of V∖U lies in A");
                CountResult::Exact(2)
            }
        }
        IV => {
            if pc.in_a.holds {
                CountResult::CountablyInfinite
            } else {
                assert!(pc.in_b.holds);
                CountResult::Exact(2)
            }
        }
        V => {
            if pc.in_b.holds {
                CountResult::CountablyInfinite
            } else {
                assert!(pc.in_a.holds);
                CountResult::Exact(2)
            }
        }
        VI | VII | VIII | IX => CountResult::CountablyInfinite,
        X => {
            assert!(pc.in_a.holds, "under label X the co-finite side is empty");
            let alpha = alpha_profile(q, DEFAULT_PROFILE_DEPTH)?;
            if alpha.is_purely_periodic() {
                CountResult::CountablyInfinite
            } else {
                CountResult::Exact(2)
            }
        }
        XI => {
            assert!(pc.in_b.holds, "under label XI the finite side is empty");
            let mu = mu_profile(q, DEFAULT_PROFILE_DEPTH)?;
            if mu.is_purely_periodic() {
                CountResult::CountablyInfinite
            } else {
                CountResult::Exact(2)
            }
        }
        XII => return Err(PointError::EmptyRegime),
    })
}

/// The expansions strictly between the extremal pair on the side the point
/// belongs to: between `a(x)` and `b(x)` for a finite-side point, between
/// `l(x)` and `m(x)` for a co-finite-side point. Nonempty only when the
/// relevant profile is purely periodic; the `N`-th element repeats the
/// flipped profile period `N` times. Verified against `x` by evaluation.
pub fn between_expansions(
    q: &DoubleBase,
    pc: &PointClass,
    count: usize,
) -> Result<Vec<PeriodicSeq>, PointError> {
    if pc.in_a.proven_true() {
        let b = pc.b.periodic().ok_or(PointError::NotDecided)?;
        assert_eq!(b.classify(), SeqClass::Finite);
        let alpha = alpha_profile(q, DEFAULT_PROFILE_DEPTH)?;
        if alpha.classify() == SeqClass::Ones || !alpha.is_purely_periodic() {
            return Ok(Vec::new());
        }
        let period = alpha.per();
        let k = period.len();
        assert!(k >= 2 && period[k - 1] == 0, "a purely periodic α below 1^∞ ends its period in 0");
        let w = &b.pre()[..b.pre().len() - 1];
        let mut block = vec![0u8];
        block.extend_from_slice(&period[..k - 1]);
        let mut out = Vec::with_capacity(count);
        let mut word = w.to_vec();
        for _ in 1..=count {
            word.extend_from_slice(&block);
            let mut digits = word.clone();
            digits.push(1);
            let c = PeriodicSeq::word_then_zeros(digits).expect("binary digits");
            verify_value(q, &c, &pc.x);
            if let Some(a) = pc.a.periodic() {
                assert!(*a < c);
            }
            assert!(c < *b);
            if let Some(prev) = out.last() {
                assert!(c < *prev, "the between-expansions decrease toward a(x)");
            }
            out.push(c);
        }
        Ok(out)
    } else if pc.in_b.proven_true() {
        let l = pc.l.periodic().ok_or(PointError::NotDecided)?;
        assert_eq!(l.classify(), SeqClass::CoFinite);
        let mu = mu_profile(q, DEFAULT_PROFILE_DEPTH)?;
        if mu.classify() == SeqClass::Zero || !mu.is_purely_periodic() {
            return Ok(Vec::new());
        }
        let period = mu.per();
        let k = period.len();
        assert!(k >= 2 && period[k - 1] == 1, "a purely periodic μ above 0^∞ ends its period in 1");
        let w = &l.pre()[..l.pre().len() - 1];
        let mut block = vec![1u8];
        block.extend_from_slice(&period[..k - 1]);
        let mut out = Vec::with_capacity(count);
        let mut word = w.to_vec();
        for _ in 1..=count {
            word.extend_from_slice(&block);
            let mut digits = word.clone();
            digits.push(0);
            let d = PeriodicSeq::word_then_ones(digits).expect("binary digits");
            verify_value(q, &d, &pc.x);
            if let Some(m) = pc.m.periodic() {
                assert!(d < *m);
            }
            assert!(*l < d);
            if let Some(prev) = out.last() {
                assert!(d > *prev, "the between-expansions increase toward m(x)");
            }
            out.push(d);
        }
        Ok(out)
    } else if pc.in_a.decided() && pc.in_b.decided() {
        Err(PointError::NotInSet)
    } else {
        Err(PointError::NotDecided)
    }
}

fn verify_value(q: &DoubleBase, seq: &PeriodicSeq, x: &ExactScalar) {
    let v = q.pi_eval(seq).expect("evaluation of a certified sequence");
    assert_eq!(compare(&v, x), Cmp::Equal, "constructed expansion must evaluate to the point");
}

/// One connected component of the complement of the doubly-infinite set:
/// the open interval between a finite-side point and its co-finite partner.
#[derive(Debug, Clone)]
pub struct GapInterval {
    pub x_l: ExactScalar,
    pub x_r: ExactScalar,
    pub b_l: PeriodicSeq,
    pub l_r: PeriodicSeq,
}

/// From the greedy expansion `w 1 0^∞` of a left endpoint, derives the gap
/// `(x_L, x_R)` whose right endpoint has lazy expansion `w 0 1^∞`, and
/// verifies the two quasi-expansions that the endpoint structure predicts.
pub fn gap_partner(
    q: &DoubleBase,
    b_l: &PeriodicSeq,
    depth_cap: usize,
) -> Result<GapInterval, PointError> {
    if b_l.classify() != SeqClass::Finite {
        return Err(PointError::NotGreedy);
    }
    let x_l = q.pi_eval(b_l)?;
    match expansion_stream(q, &x_l, ExpansionKind::Greedy, depth_cap)? {
        ExpansionResult::Periodic { seq, .. } if seq == *b_l => {}
        _ => return Err(PointError::NotGreedy),
    }
    let pc_l = classify_point(q, &x_l, depth_cap)?;
    if !pc_l.in_a.proven_true() {
        return Err(PointError::NotInSet);
    }

    let mut word = b_l.pre().to_vec();
    *word.last_mut().expect("finite expansions have a last 1") = 0;
    let l_r = PeriodicSeq::word_then_ones(word.clone()).expect("binary digits");
    let x_r = q.pi_eval(&l_r)?;
    assert_eq!(compare(&x_l, &x_r), Cmp::Less);

    let alpha = alpha_profile(q, depth_cap)?;
    let mu = mu_profile(q, depth_cap)?;
    let expected_a = PeriodicSeq::word_then(&word, &alpha).expect("binary digits");
    assert_eq!(pc_l.a.periodic(), Some(&expected_a), "a(x_L) must be w 0 α");
    let expected_m = PeriodicSeq::word_then(b_l.pre(), &mu).expect("binary digits");
    match expansion_stream(q, &x_r, ExpansionKind::QuasiLazy, depth_cap)? {
        ExpansionResult::Periodic { seq, .. } => {
            assert_eq!(seq, expected_m, "m(x_R) must be w 1 μ")
        }
        other => panic!("m(x_R) did not certify: {:?}", other),
    }
    match expansion_stream(q, &x_r, ExpansionKind::Lazy, depth_cap)? {
        ExpansionResult::Periodic { seq, .. } => assert_eq!(seq, l_r, "l(x_R) must be w 0 1^∞"),
        other => panic!("l(x_R) did not certify: {:?}", other),
    }

    Ok(GapInterval { x_l, x_r, b_l: b_l.clone(), l_r })
}

/// Enumerates the gaps indexed by greedy words of length at most
/// `max_word_len`, sorted by left endpoint and verified pairwise disjoint.
pub fn gaps_enumerate(
    q: &DoubleBase,
    max_word_len: usize,
    depth_cap: usize,
) -> Result<Vec<GapInterval>, PointError> {
    let p = profile(q, depth_cap)?;
    let (label, verdict) = classify_case(&p);
    if verdict != Verdict::Proven || !base_membership(label).in_v || label == CaseLabel::C {
        return Err(PointError::NotInVMinusC);
    }
    let alpha = p.alpha.periodic().expect("proven labels carry periodic profiles");

    let mut gaps: Vec<GapInterval> = Vec::new();
    for len in 1..=max_word_len {
        // Words of the given length ending in digit 1, in binary order.
        for pattern in 0..(1u64 << (len - 1)) {
            let mut word = Vec::with_capacity(len);
            for bit in (0..len - 1).rev() {
                word.push(((pattern >> bit) & 1) as u8);
            }
            word.push(1);
            let s = PeriodicSeq::word_then_zeros(word).expect("binary digits");
            let admissible = (1..=s.tail_classes())
                .all(|j| s.digit(j - 1) != 0 || s.shift(j) < *alpha);
            if !admissible {
                continue;
            }
            let x = q.pi_eval(&s)?;
            let pc = classify_point(q, &x, depth_cap)?;
            if !pc.in_a.proven_true() {
                continue;
            }
            gaps.push(gap_partner(q, &s, depth_cap)?);
        }
    }

    gaps.sort_by(|g, h| match compare(&g.x_l, &h.x_l) {
        Cmp::Less => Ordering::Less,
        Cmp::Greater => Ordering::Greater,
        other => panic!("exact gap endpoints must compare decisively, got {:?}", other),
    });
    for w in gaps.windows(2) {
        assert_ne!(
            compare(&w[0].x_r, &w[1].x_l),
            Cmp::Greater,
            "gaps must be pairwise disjoint"
        );
    }
    Ok(gaps)
}

/// The next point of the component ladder: from a point with finite greedy
/// expansion `b_1⋯b_n 0^∞`, the successor is the point whose quasi-greedy
/// expansion is `b_1⋯b_n μ`. Defined for bases of label IX.
pub fn next_in_component(
    q: &DoubleBase,
    pc: &PointClass,
    depth_cap: usize,
) -> Result<PointClass, PointError> {
    let p = profile(q, depth_cap)?;
    let (label, verdict) = classify_case(&p);
    if label != CaseLabel::IX || verdict != Verdict::Proven {
        return Err(PointError::WrongLabel { expected: CaseLabel::IX, got: label });
    }
    if !(pc.in_v.proven_true() && pc.in_u.proven_false()) {
        return Err(PointError::NotInSet);
    }
    let b = pc.b.periodic().ok_or(PointError::NotDecided)?;
    if b.classify() != SeqClass::Finite {
        return Err(PointError::NotInSet);
    }
    let mu = p.mu.periodic().expect("proven labels carry periodic profiles");
    let a_next = PeriodicSeq::word_then(b.pre(), mu).expect("binary digits");
    let x_next = q.pi_eval(&a_next)?;
    assert_eq!(compare(&x_next, &pc.x), Cmp::Greater, "the ladder strictly increases");
    let pc_next = classify_point(q, &x_next, depth_cap)?;
    assert!(pc_next.in_v.proven_true() && pc_next.in_u.proven_false());
    if let Some(a) = pc_next.a.periodic() {
        assert_eq!(*a, a_next, "quasi-greedy expansion of the successor");
    }
    Ok(pc_next)
}
