//! Binary expansions over a pair of real bases.
//!
//! A pair `Q = (q0, q1)` with both entries greater than 1 expands a real
//! number `x` as `x = Σ_k i_k / (q_{i_1} ⋯ q_{i_k})` with digits
//! `i_k ∈ {0, 1}`: each digit chooses which base divides the next term. When
//! `q0 + q1 ≥ q0·q1` every point of the interval `[0, 1/(q1 − 1)]` has such
//! an expansion, and this crate works exclusively in that (unbounded) region.
//!
//! The crate computes the four canonical expansions of a point (greedy,
//! quasi-greedy, lazy, quasi-lazy) as exact digit streams, classifies a base
//! pair into one of twelve regimes by the combinatorics of its boundary
//! profiles `(μ, α)`, decides membership of a point in the sets of unique /
//! doubly-infinite / finite-like / co-finite-like expansions, counts or
//! enumerates all expansions of a point, and reconstructs base pairs from a
//! prescribed profile pair.
//!
//! All arithmetic is exact (rational, quadratic, or algebraic-number), and
//! every answer that depends on a comparison carries an honest verdict: a
//! result is either proven, refuted by a concrete witness index, or reported
//! as undecided at an explicit depth. No answer silently relies on floating
//! point.

pub mod base_classify;
pub mod bases;
pub mod catalog;
pub mod expansions;
pub mod inverse;
pub mod numerics;
pub mod oracle;
pub mod points;
pub mod words;

pub use base_classify::{AuxProfile, BaseProfile, CaseLabel, MembershipFlags, Table2Row, Verdict};
pub use bases::{BaseConstants, BaseError, DoubleBase, Region};
pub use expansions::{ExpansionError, ExpansionKind, ExpansionResult, PrefixReason};
pub use inverse::{ProfileSpec, SolveError, SolveOutcome, SolvedBase};
pub use numerics::{compare, Cmp, ExactScalar, NumError};
pub use oracle::{BranchNode, Census, OracleError};
pub use points::{CountResult, Flag, GapInterval, PointClass, PointError};
pub use words::{DigitPrefix, PeriodicSeq, SeqClass};
