//! Eventually periodic 0-1 sequences with total lexicographic order, shift,
//! reflection, and the finiteness predicates the expansion theory is written in.

use std::cmp::Ordering;
use std::fmt;

/// Error raised by sequence construction or parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("digit out of range: {0} (only 0 and 1 are allowed)")]
    BadDigit(u8),
    #[error("period must be non-empty")]
    EmptyPeriod,
    #[error("cannot parse sequence literal {0:?}: expected bits [ '(' bits ')' ]")]
    BadLiteral(String),
}

/// Coarse shape of an eventually periodic 0-1 sequence.
///
/// `Finite` means the sequence has a last 1 (ends `10^∞`); `CoFinite` means it
/// has a last 0 (ends `01^∞`). The two constant sequences are their own
/// categories so that endpoint conventions never masquerade as generic shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqClass {
    Zero,
    Ones,
    Finite,
    CoFinite,
    DoublyInfinite,
}

/// An eventually periodic sequence over `{0,1}`, stored in canonical form:
/// the period word is primitive and the preperiod is as short as possible
/// (no trailing preperiod digit can be absorbed into a rotation of the
/// period). Canonical form makes structural equality coincide with equality
/// of the represented infinite sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSeq {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl PeriodicSeq {
    /// Builds the sequence `pre · per^∞` and canonicalizes it.
    pub fn new(pre: impl Into<Vec<u8>>, per: impl Into<Vec<u8>>) -> Result<Self, WordError> {
        let pre = pre.into();
        let per = per.into();
        if per.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        if let Some(&d) = pre.iter().chain(per.iter()).find(|&&d| d > 1) {
            return Err(WordError::BadDigit(d));
        }
        let mut s = PeriodicSeq { pre, per };
        s.canonicalize();
        Ok(s)
    }

    /// The constant sequence `0^∞`.
    pub fn zero() -> Self {
        PeriodicSeq { pre: vec![], per: vec![0] }
    }

    /// The constant sequence `1^∞`.
    pub fn ones() -> Self {
        PeriodicSeq { pre: vec![], per: vec![1] }
    }

    /// The sequence `word · 0^∞`.
    pub fn word_then_zeros(word: impl Into<Vec<u8>>) -> Result<Self, WordError> {
        Self::new(word, vec![0])
    }

    /// The sequence `word · 1^∞`.
    pub fn word_then_ones(word: impl Into<Vec<u8>>) -> Result<Self, WordError> {
        Self::new(word, vec![1])
    }

    /// The sequence `word · tail`.
    pub fn word_then(word: &[u8], tail: &PeriodicSeq) -> Result<Self, WordError> {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&tail.pre);
        Self::new(pre, tail.per.clone())
    }

    /// Parses the literal grammar `bits [ '(' bits ')' ]`; a missing period
    /// group means the tail `0^∞`, so `110` is `1100^∞` and `0(01)` is
    /// `0·(01)^∞`. The leading bits may be empty when a group is present.
    pub fn parse_literal(text: &str) -> Result<Self, WordError> {
        let bad = || WordError::BadLiteral(text.to_string());
        let bytes = text.as_bytes();
        let to_digits = |s: &[u8]| -> Result<Vec<u8>, WordError> {
            s.iter()
                .map(|&c| match c {
                    b'0' => Ok(0),
                    b'1' => Ok(1),
                    _ => Err(bad()),
                })
                .collect()
        };
        match bytes.iter().position(|&c| c == b'(') {
            None => {
                if bytes.is_empty() {
                    return Err(bad());
                }
                Self::new(to_digits(bytes)?, vec![0])
            }
            Some(open) => {
                if *bytes.last().unwrap() != b')' || open + 2 > bytes.len() {
                    return Err(bad());
                }
                let per = &bytes[open + 1..bytes.len() - 1];
                if per.is_empty() || per.iter().any(|&c| c == b'(' || c == b')') {
                    return Err(bad());
                }
                Self::new(to_digits(&bytes[..open])?, to_digits(per)?)
            }
        }
    }

    /// Formats in the literal grammar; inverse of [`Self::parse_literal`] on
    /// canonical forms. `w·0^∞` prints without a group, everything else as
    /// `pre(per)`.
    pub fn format_literal(&self) -> String {
        let word = |w: &[u8]| w.iter().map(|&d| (b'0' + d) as char).collect::<String>();
        if self.per == [0] {
            if self.pre.is_empty() {
                "(0)".to_string()
            } else {
                word(&self.pre)
            }
        } else {
            format!("{}({})", word(&self.pre), word(&self.per))
        }
    }

    fn canonicalize(&mut self) {
        // Primitive period: shortest prefix of `per` whose repetition is `per`.
        let n = self.per.len();
        for d in 1..=n {
            if n % d == 0 && (d..n).all(|i| self.per[i] == self.per[i - d]) {
                self.per.truncate(d);
                break;
            }
        }
        // Absorb preperiod digits that merely repeat the period's last digit
        // under rotation, minimizing the preperiod length.
        while let Some(&last) = self.pre.last() {
            if last == *self.per.last().unwrap() {
                self.pre.pop();
                self.per.rotate_right(1);
            } else {
                break;
            }
        }
    }

    /// Preperiod word of the canonical form.
    pub fn pre(&self) -> &[u8] {
        &self.pre
    }

    /// Primitive period word of the canonical form.
    pub fn per(&self) -> &[u8] {
        &self.per
    }

    /// Digit at 0-based index `i` (the paper's `x_{i+1}`).
    pub fn digit(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    /// First `n` digits as a prefix.
    pub fn prefix(&self, n: usize) -> DigitPrefix {
        DigitPrefix::new((0..n).map(|i| self.digit(i)).collect::<Vec<_>>()).unwrap()
    }

    /// Number of indices after which shifts must repeat: every tail
    /// `σ^n(self)` with `n ≥ pre.len() + per.len()` equals one with smaller
    /// `n`, so universally quantified shift conditions reduce to
    /// `n < tail_classes()`.
    pub fn tail_classes(&self) -> usize {
        self.pre.len() + self.per.len()
    }

    /// Whether the canonical preperiod is empty.
    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// `σ^n`: drops the first `n` digits.
    pub fn shift(&self, n: usize) -> Self {
        if n <= self.pre.len() {
            let mut s = PeriodicSeq { pre: self.pre[n..].to_vec(), per: self.per.clone() };
            s.canonicalize();
            s
        } else {
            let k = (n - self.pre.len()) % self.per.len();
            let mut per = self.per.clone();
            per.rotate_left(k);
            let mut s = PeriodicSeq { pre: vec![], per };
            s.canonicalize();
            s
        }
    }

    /// Flips every digit `0 ↔ 1`.
    pub fn reflect(&self) -> Self {
        let flip = |w: &[u8]| w.iter().map(|&d| 1 - d).collect::<Vec<_>>();
        let mut s = PeriodicSeq { pre: flip(&self.pre), per: flip(&self.per) };
        s.canonicalize();
        s
    }

    /// Coarse shape; see [`SeqClass`].
    pub fn classify(&self) -> SeqClass {
        match (self.pre.as_slice(), self.per.as_slice()) {
            ([], [0]) => SeqClass::Zero,
            ([], [1]) => SeqClass::Ones,
            (_, [0]) => SeqClass::Finite,
            (_, [1]) => SeqClass::CoFinite,
            _ => SeqClass::DoublyInfinite,
        }
    }

    /// Lexicographic comparison. Digits are compared up to
    /// `|pre_s| + |pre_t| + lcm(|per_s|, |per_t|)`; agreement on that whole
    /// range forces the two sequences to be equal.
    pub fn compare_lex(&self, other: &Self) -> Ordering {
        let lcm = {
            let (a, b) = (self.per.len(), other.per.len());
            let gcd = |mut x: usize, mut y: usize| {
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                x
            };
            a / gcd(a, b) * b
        };
        let bound = self.pre.len() + other.pre.len() + lcm;
        for i in 0..bound {
            match self.digit(i).cmp(&other.digit(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Index of the first differing digit, or `None` for equal sequences.
    /// Bounded by the same range as [`Self::compare_lex`].
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let lcm = {
            let (a, b) = (self.per.len(), other.per.len());
            let gcd = |mut x: usize, mut y: usize| {
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                x
            };
            a / gcd(a, b) * b
        };
        let bound = self.pre.len() + other.pre.len() + lcm;
        (0..bound).find(|&i| self.digit(i) != other.digit(i))
    }
}

impl Ord for PeriodicSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare_lex(other)
    }
}

impl PartialOrd for PeriodicSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_literal())
    }
}

impl fmt::Debug for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicSeq({})", self.format_literal())
    }
}

/// A finite truncation of a digit stream that did not certify a period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitPrefix {
    digits: Vec<u8>,
}

impl DigitPrefix {
    pub fn new(digits: impl Into<Vec<u8>>) -> Result<Self, WordError> {
        let digits = digits.into();
        if let Some(&d) = digits.iter().find(|&&d| d > 1) {
            return Err(WordError::BadDigit(d));
        }
        Ok(DigitPrefix { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }
}

impl fmt::Display for DigitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", d)?;
        }
        write!(f, "…")
    }
}
