//! Classification of a base pair by the combinatorics of its boundary
//! profiles.
//!
//! The pair `(μ, α)` of quasi-lazy and quasi-greedy expansions of the two
//! interval landmarks `ℓ_Q` and `r_Q` controls everything about the
//! uniqueness sets of the base: which points have unique expansions, how
//! many expansions the doubly-infinite points have, and the topology of the
//! set of uniqueness. The classifier sorts `(μ, α)` into one of twelve
//! regimes (plus the boundary curve as its own label) by comparing finitely
//! many shifted tails:
//!
//! * labels `I`–`IX` cover the pairs where every shift of `μ` stays weakly
//!   below `α` and every shift of `α` stays weakly above `μ`; the label is
//!   decided by which of the four weak inequalities attain equality,
//! * labels `X`–`XII` cover the pairs where a shift strictly escapes on one
//!   or both sides.
//!
//! For eventually periodic profiles the shifts range over finitely many
//! tail classes, so every quantifier is a finite check and the verdict is
//! `Proven`. Prefix-only profiles yield either a concrete escape witness or
//! an honest `UndecidedAtDepth`.

use crate::bases::DoubleBase;
use crate::expansions::{
    cmp_shifted, digit_of, expansion_stream, known_depth, ExpansionError, ExpansionKind,
    ExpansionResult,
};
use crate::words::{PeriodicSeq, SeqClass};

/// The two boundary expansions of a base: `mu` is the quasi-lazy expansion
/// of `ℓ_Q`, `alpha` the quasi-greedy expansion of `r_Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseProfile {
    pub mu: ExpansionResult,
    pub alpha: ExpansionResult,
}

impl BaseProfile {
    /// Wraps two certified sequences as a profile.
    pub fn from_seqs(mu: PeriodicSeq, alpha: PeriodicSeq) -> Self {
        let wrap = |s: PeriodicSeq| {
            let cycle_start = s.pre().len();
            let cycle_len = s.per().len();
            ExpansionResult::Periodic { seq: s, cycle_start, cycle_len }
        };
        BaseProfile { mu: wrap(mu), alpha: wrap(alpha) }
    }

    /// Both certified sequences, when the profile is fully known.
    pub fn seqs(&self) -> Option<(&PeriodicSeq, &PeriodicSeq)> {
        Some((self.mu.periodic()?, self.alpha.periodic()?))
    }
}

/// The thirteen classification outcomes: the boundary curve `C` plus the
/// twelve regimes of an interior pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    C,
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::C => "C",
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
            CaseLabel::V => "V",
            CaseLabel::VI => "VI",
            CaseLabel::VII => "VII",
            CaseLabel::VIII => "VIII",
            CaseLabel::IX => "IX",
            CaseLabel::X => "X",
            CaseLabel::XI => "XI",
            CaseLabel::XII => "XII",
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How firmly a label is known. `Proven` requires both profiles to be
/// certified periodic; a strict escape found inside a prefix refutes
/// membership in the nice regimes with a concrete shift index; anything
/// else is undecided at the inspected depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    RefutedWitness(usize),
    UndecidedAtDepth(usize),
}

/// Errors from the auxiliary-profile derivation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("auxiliary profile requires certified periodic profiles")]
    NotPeriodic,
    #[error("auxiliary profile is defined only for labels X and XI, not {0}")]
    WrongLabel(CaseLabel),
}

/// Computes the profile `(μ(Q), α(Q))` by streaming the two boundary
/// expansions up to `depth_cap` digits each.
pub fn profile(q: &DoubleBase, depth_cap: usize) -> Result<BaseProfile, ExpansionError> {
    let mu = expansion_stream(q, &q.constants().ell_q, ExpansionKind::QuasiLazy, depth_cap)?;
    let alpha = expansion_stream(q, &q.constants().r_q, ExpansionKind::QuasiGreedy, depth_cap)?;
    validate_profile(q, &mu, &alpha);
    Ok(BaseProfile { mu, alpha })
}

/// Structural facts about a genuine profile; violations are internal bugs.
fn validate_profile(q: &DoubleBase, mu: &ExpansionResult, alpha: &ExpansionResult) {
    if q.on_c() {
        if let (Some(m), Some(a)) = (mu.periodic(), alpha.periodic()) {
            assert_eq!(m.classify(), SeqClass::Zero, "boundary-curve profile must be (0^∞, 1^∞)");
            assert_eq!(a.classify(), SeqClass::Ones, "boundary-curve profile must be (0^∞, 1^∞)");
        }
        return;
    }
    if let Some(d) = digit_of(mu, 0) {
        assert_eq!(d, 0, "μ must start with 0 off the boundary curve");
    }
    if let Some(d) = digit_of(alpha, 0) {
        assert_eq!(d, 1, "α must start with 1 off the boundary curve");
    }
    if let (Some(m), Some(a)) = (mu.periodic(), alpha.periodic()) {
        assert!(*m < *a, "μ ≺ α must hold off the boundary curve");
        assert!(PeriodicSeq::zero() < *m && *a < PeriodicSeq::ones());
        for i in 1..=m.tail_classes() {
            assert!(m.shift(i) >= *m, "every shifted tail of μ must stay weakly above μ");
        }
        for j in 1..=a.tail_classes() {
            assert!(a.shift(j) <= *a, "every shifted tail of α must stay weakly below α");
        }
    }
}

/// Assigns the case label.
///
/// Certified periodic profiles always come back `Proven`. Otherwise a
/// strict escape visible inside the known digits routes into `X`/`XI`/`XII`
/// with a `RefutedWitness` shift index (the label picks the escape sides
/// seen so far), and with no escape visible the call returns the all-strict
/// provisional label `I` tagged `UndecidedAtDepth`.
pub fn classify_case(p: &BaseProfile) -> (CaseLabel, Verdict) {
    if let Some((mu, alpha)) = p.seqs() {
        if mu.classify() == SeqClass::Zero && alpha.classify() == SeqClass::Ones {
            return (CaseLabel::C, Verdict::Proven);
        }
        return (classify_periodic(mu, alpha), Verdict::Proven);
    }
    classify_prefix(p)
}

fn classify_periodic(mu: &PeriodicSeq, alpha: &PeriodicSeq) -> CaseLabel {
    let tc_m = mu.tail_classes();
    let tc_a = alpha.tail_classes();
    let escape_up = (0..tc_m).find(|&i| mu.shift(i) > *alpha);
    let escape_down = (0..tc_a).find(|&j| *mu > alpha.shift(j));
    match (escape_up, escape_down) {
        (Some(i), Some(j)) => {
            debug_assert!(i >= 1 && mu.digit(i - 1) == 0);
            debug_assert!(j >= 1 && alpha.digit(j - 1) == 1);
            CaseLabel::XII
        }
        (Some(i), None) => {
            // The digit before the minimal escaping tail is forced, and the
            // other side must then be strict everywhere.
            debug_assert!(i >= 1 && mu.digit(i - 1) == 0);
            debug_assert!((0..tc_a).all(|j| *mu < alpha.shift(j)));
            CaseLabel::X
        }
        (None, Some(j)) => {
            debug_assert!(j >= 1 && alpha.digit(j - 1) == 1);
            debug_assert!((0..tc_m).all(|i| mu.shift(i) < *alpha));
            CaseLabel::XI
        }
        (None, None) => {
            let e_self_mu = (1..=tc_m).any(|i| mu.shift(i) == *mu);
            let e_cross_up = (0..tc_m).any(|i| mu.shift(i) == *alpha);
            let e_cross_down = (0..tc_a).any(|j| alpha.shift(j) == *mu);
            let e_self_alpha = (1..=tc_a).any(|j| alpha.shift(j) == *alpha);
            match (e_self_mu, e_cross_up, e_cross_down, e_self_alpha) {
                (false, false, false, false) => CaseLabel::I,
                (false, false, true, false) => CaseLabel::II,
                (false, true, false, false) => CaseLabel::III,
                (false, false, false, true) => CaseLabel::IV,
                (true, false, false, false) => CaseLabel::V,
                (false, true, false, true) => CaseLabel::VI,
                (true, false, true, false) => CaseLabel::VII,
                (true, false, false, true) => CaseLabel::VIII,
                (true, true, true, true) => CaseLabel::IX,
                other => unreachable!(
                    "equality pattern {:?} is not realizable by a profile pair",
                    other
                ),
            }
        }
    }
}

fn classify_prefix(p: &BaseProfile) -> (CaseLabel, Verdict) {
    let range = |r: &ExpansionResult| match (r, known_depth(r)) {
        (ExpansionResult::Periodic { seq, .. }, _) => seq.tail_classes(),
        (_, Some(n)) => n,
        _ => unreachable!(),
    };
    let escape_up =
        (0..range(&p.mu)).find(|&i| cmp_shifted(&p.mu, i, &p.alpha, 0) == Some(std::cmp::Ordering::Greater));
    let escape_down =
        (0..range(&p.alpha)).find(|&j| cmp_shifted(&p.mu, 0, &p.alpha, j) == Some(std::cmp::Ordering::Greater));
    let depth = known_depth(&p.mu)
        .into_iter()
        .chain(known_depth(&p.alpha))
        .min()
        .unwrap_or(0);
    match (escape_up, escape_down) {
        (Some(i), Some(_)) => (CaseLabel::XII, Verdict::RefutedWitness(i)),
        (Some(i), None) => (CaseLabel::X, Verdict::RefutedWitness(i)),
        (None, Some(j)) => (CaseLabel::XI, Verdict::RefutedWitness(j)),
        (None, None) => (CaseLabel::I, Verdict::UndecidedAtDepth(depth)),
    }
}

/// Membership of the base in the three nested base sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipFlags {
    pub in_u: bool,
    pub in_closure_u: bool,
    pub in_v: bool,
}

/// Which of the nested base sets the label lands in: the univoque labels
/// are `C` and `I`, the closure adds `II`–`VIII`, and `IX` is the only
/// label in `V` beyond the closure.
pub fn base_membership(label: CaseLabel) -> MembershipFlags {
    use CaseLabel::*;
    let in_u = matches!(label, C | I);
    let in_closure_u = in_u || matches!(label, II | III | IV | V | VI | VII | VIII);
    let in_v = in_closure_u || label == IX;
    MembershipFlags { in_u, in_closure_u, in_v }
}

/// Auxiliary profile for the two one-sided escape labels: the periodic word
/// obtained from the minimal escaping prefix with its last digit flipped,
/// plus the subcase flag deciding whether the uniqueness set is closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxProfile {
    /// `α′` for label XI, `μ′` for label X.
    pub seq: PeriodicSeq,
    /// Minimal shift index whose tail escapes.
    pub witness: usize,
    /// True for the subcase `U = closure(U) ⊊ V` with discrete complement;
    /// false for `U ⊊ closure(U) = V`.
    pub u_closed: bool,
}

/// Derives `α′` (label XI) or `μ′` (label X) and decides the closure
/// subcase. The escaping prefix always ends in the flippable digit, and the
/// flipped word sits strictly between the original profiles.
pub fn aux_profile(p: &BaseProfile, label: CaseLabel) -> Result<AuxProfile, ClassifyError> {
    let (mu, alpha) = p.seqs().ok_or(ClassifyError::NotPeriodic)?;
    match label {
        CaseLabel::XI => {
            let tc_a = alpha.tail_classes();
            let n = (1..=tc_a)
                .find(|&j| alpha.shift(j) < *mu)
                .expect("label XI requires an escaping tail of α");
            assert_eq!(alpha.digit(n - 1), 1, "minimal escaping prefix of α must end in 1");
            let mut word: Vec<u8> = (0..n).map(|k| alpha.digit(k)).collect();
            word[n - 1] = 0;
            let aux = PeriodicSeq::new(Vec::new(), word).expect("binary digits");
            assert!(aux < *alpha);
            for i in 0..aux.tail_classes() {
                let t = aux.shift(i);
                assert!(*mu <= t && t <= aux, "shifted tails of α′ must sit in [μ, α′]");
            }
            let strict = (0..mu.tail_classes()).all(|i| mu.shift(i) < aux)
                && (0..aux.tail_classes()).all(|j| *mu < aux.shift(j));
            Ok(AuxProfile { seq: aux, witness: n, u_closed: !strict })
        }
        CaseLabel::X => {
            let tc_m = mu.tail_classes();
            let n = (1..=tc_m)
                .find(|&i| mu.shift(i) > *alpha)
                .expect("label X requires an escaping tail of μ");
            assert_eq!(mu.digit(n - 1), 0, "minimal escaping prefix of μ must end in 0");
            let mut word: Vec<u8> = (0..n).map(|k| mu.digit(k)).collect();
            word[n - 1] = 1;
            let aux = PeriodicSeq::new(Vec::new(), word).expect("binary digits");
            assert!(*mu < aux);
            for i in 0..aux.tail_classes() {
                let t = aux.shift(i);
                assert!(aux <= t && t <= *alpha, "shifted tails of μ′ must sit in [μ′, α]");
            }
            let strict = (0..aux.tail_classes()).all(|i| aux.shift(i) < *alpha)
                && (0..alpha.tail_classes()).all(|j| aux < alpha.shift(j));
            Ok(AuxProfile { seq: aux, witness: n, u_closed: !strict })
        }
        other => Err(ClassifyError::WrongLabel(other)),
    }
}

/// One row of the per-label topology table: how the three nested point sets
/// relate, how the finite-like and co-finite-like sets relate, and the
/// expansion counts on those sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table2Row {
    pub inclusions: &'static str,
    pub ab_relation: &'static str,
    pub count_a: &'static str,
    pub count_b: &'static str,
}

/// The topology row for a label. For `X`/`XI` the `u_closed` flag from
/// [`aux_profile`] resolves the two-way inclusion alternative; all other
/// labels ignore it.
pub fn topology_summary(label: CaseLabel, u_closed: Option<bool>) -> Table2Row {
    use CaseLabel::*;
    const OR_FORM: &str = "U = closure(U) ⊊ V or U ⊊ closure(U) ⊊ V";
    let resolved = |u_closed: Option<bool>, alt: &'static str| match u_closed {
        Some(true) => "U = closure(U) ⊊ V",
        Some(false) => "U ⊊ closure(U) = V",
        None => alt,
    };
    match label {
        C => Table2Row { inclusions: "U ⊊ closure(U) = V", ab_relation: "A = B", count_a: "2", count_b: "2" },
        I => Table2Row { inclusions: "U ⊊ closure(U) = V", ab_relation: "A ∩ B = ∅", count_a: "2", count_b: "2" },
        II => Table2Row { inclusions: OR_FORM, ab_relation: "A ⊊ B", count_a: "3", count_b: "2 or 3" },
        III => Table2Row { inclusions: OR_FORM, ab_relation: "B ⊊ A", count_a: "2 or 3", count_b: "3" },
        IV => Table2Row { inclusions: "U ⊊ closure(U) = V", ab_relation: "A ∩ B = ∅", count_a: "ℵ₀", count_b: "2" },
        V => Table2Row { inclusions: "U ⊊ closure(U) = V", ab_relation: "A ∩ B = ∅", count_a: "2", count_b: "ℵ₀" },
        VI => Table2Row { inclusions: OR_FORM, ab_relation: "B ⊊ A", count_a: "ℵ₀", count_b: "ℵ₀" },
        VII => Table2Row { inclusions: OR_FORM, ab_relation: "A ⊊ B", count_a: "ℵ₀", count_b: "ℵ₀" },
        VIII => Table2Row { inclusions: "U ⊊ closure(U) = V", ab_relation: "A ∩ B = ∅", count_a: "ℵ₀", count_b: "ℵ₀" },
        IX => Table2Row { inclusions: "U = closure(U) ⊊ V", ab_relation: "A = B", count_a: "ℵ₀", count_b: "ℵ₀" },
        X => Table2Row {
            inclusions: resolved(u_closed, "U = closure(U) ⊊ V or U ⊊ closure(U) = V"),
            ab_relation: "B = ∅ ⊊ A",
            count_a: "ℵ₀ or 2",
            count_b: "0",
        },
        XI => Table2Row {
            inclusions: resolved(u_closed, "U = closure(U) ⊊ V or U ⊊ closure(U) = V"),
            ab_relation: "A = ∅ ⊊ B",
            count_a: "0",
            count_b: "2 or ℵ₀",
        },
        XII => Table2Row { inclusions: "U = closure(U) = V", ab_relation: "A = B = ∅", count_a: "—", count_b: "—" },
    }
}
