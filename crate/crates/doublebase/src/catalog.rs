//! A worked catalog of profile pairs with known classifications.
//!
//! Each entry records an eventually periodic pair `(μ, α)` together with
//! the case its solved base lands in. The `Sweep` group covers all twelve
//! cases exactly once; `Alternate` entries vary the digit patterns within
//! cases; `Tower` entries come from period families of growing length.
//! Entries are data: solving and certification happen through
//! [`solve_base`], so each catalog base is reconstructed, not stored.

use num::{BigInt, BigRational, One};

use crate::base_classify::CaseLabel;
use crate::inverse::{solve_base, ProfileSpec, SolveOutcome, SolvedBase};
use crate::words::PeriodicSeq;

/// Which sampling family an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// One entry per case, covering I through XII.
    Sweep,
    /// Further pairs inside already covered cases.
    Alternate,
    /// Members of period families indexed by block length.
    Tower,
}

/// One catalog row: sequences as parseable literals plus the expected case.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: Group,
    pub mu: &'static str,
    pub alpha: &'static str,
    pub label: CaseLabel,
}

impl CatalogEntry {
    pub fn spec(&self) -> ProfileSpec {
        ProfileSpec::new(
            PeriodicSeq::parse_literal(self.mu).expect("catalog literals parse"),
            PeriodicSeq::parse_literal(self.alpha).expect("catalog literals parse"),
        )
    }

    /// Solves the entry's base; catalog pairs all have exactly one
    /// certified solution, so anything else is a hard failure.
    pub fn solve_unique(&self) -> SolvedBase {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
        match solve_base(&self.spec(), &tol) {
            Ok(SolveOutcome::Unique(s)) => s,
            other => panic!("catalog entry {} must solve uniquely, got {:?}", self.name, other),
        }
    }
}

/// The full catalog, sweep first, in case order within each group.
pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "sweep-i", group: Group::Sweep, mu: "0(01)", alpha: "1(110)", label: CaseLabel::I },
    CatalogEntry { name: "sweep-ii", group: Group::Sweep, mu: "0(01)", alpha: "110(01)", label: CaseLabel::II },
    CatalogEntry { name: "sweep-iii", group: Group::Sweep, mu: "001(110)", alpha: "1(110)", label: CaseLabel::III },
    CatalogEntry { name: "sweep-iv", group: Group::Sweep, mu: "0(01)", alpha: "(110)", label: CaseLabel::IV },
    CatalogEntry { name: "sweep-v", group: Group::Sweep, mu: "(01)", alpha: "1(110)", label: CaseLabel::V },
    CatalogEntry { name: "sweep-vi", group: Group::Sweep, mu: "0(01)", alpha: "(10)", label: CaseLabel::VI },
    CatalogEntry { name: "sweep-vii", group: Group::Sweep, mu: "(01)", alpha: "11(01)", label: CaseLabel::VII },
    CatalogEntry { name: "sweep-viii", group: Group::Sweep, mu: "(01)", alpha: "(110)", label: CaseLabel::VIII },
    CatalogEntry { name: "sweep-ix", group: Group::Sweep, mu: "(00011)", alpha: "(11000)", label: CaseLabel::IX },
    CatalogEntry { name: "sweep-x", group: Group::Sweep, mu: "00(110)", alpha: "(10)", label: CaseLabel::X },
    CatalogEntry { name: "sweep-xi", group: Group::Sweep, mu: "0(01)", alpha: "11(001)", label: CaseLabel::XI },
    CatalogEntry { name: "sweep-xii", group: Group::Sweep, mu: "00(110)", alpha: "11(001)", label: CaseLabel::XII },
    CatalogEntry { name: "alt-i", group: Group::Alternate, mu: "0(001)", alpha: "1(1110)", label: CaseLabel::I },
    CatalogEntry { name: "alt-ii", group: Group::Alternate, mu: "0(01)", alpha: "1110(01)", label: CaseLabel::II },
    CatalogEntry { name: "alt-iv", group: Group::Alternate, mu: "0(001)", alpha: "(1110)", label: CaseLabel::IV },
    CatalogEntry { name: "alt-vii", group: Group::Alternate, mu: "(001)", alpha: "111(001)", label: CaseLabel::VII },
    CatalogEntry { name: "alt-viii", group: Group::Alternate, mu: "(001)", alpha: "(1110)", label: CaseLabel::VIII },
    CatalogEntry { name: "alt-xi-closed", group: Group::Alternate, mu: "(01)", alpha: "11(001)", label: CaseLabel::XI },
    CatalogEntry { name: "alt-xi-open", group: Group::Alternate, mu: "(01)", alpha: "111(001)", label: CaseLabel::XI },
    CatalogEntry { name: "tower-vi-1", group: Group::Tower, mu: "00(10)", alpha: "(10)", label: CaseLabel::VI },
    CatalogEntry { name: "tower-vi-2", group: Group::Tower, mu: "00(110)", alpha: "(110)", label: CaseLabel::VI },
    CatalogEntry { name: "tower-ix-1", group: Group::Tower, mu: "(01)", alpha: "(10)", label: CaseLabel::IX },
    CatalogEntry { name: "tower-ix-2", group: Group::Tower, mu: "(011)", alpha: "(110)", label: CaseLabel::IX },
    CatalogEntry { name: "tower-ix-3", group: Group::Tower, mu: "(0111)", alpha: "(1110)", label: CaseLabel::IX },
    CatalogEntry { name: "tower-x", group: Group::Tower, mu: "00(11110)", alpha: "111(01)", label: CaseLabel::X },
];

/// The golden-ratio entry `q0 = q1 = φ`, the shortest tower member.
pub fn golden() -> &'static CatalogEntry {
    ENTRIES
        .iter()
        .find(|e| e.name == "tower-ix-1")
        .expect("catalog contains the golden entry")
}

/// The twelve-case sweep in label order.
pub fn sweep() -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(|e| e.group == Group::Sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::check_admissible;
    use crate::base_classify::Verdict;

    #[test]
    fn catalog_is_well_formed() {
        let mut names = std::collections::BTreeSet::new();
        for e in ENTRIES {
            assert!(names.insert(e.name), "duplicate name {}", e.name);
            assert_eq!(check_admissible(&e.spec()), Verdict::Proven, "{}", e.name);
        }
        let sweep_labels: Vec<_> = sweep().map(|e| e.label).collect();
        assert_eq!(sweep_labels.len(), 12);
        let mut dedup = sweep_labels.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 12, "sweep covers each case once");
        assert_eq!(ENTRIES.len(), 25);
        assert_eq!(golden().alpha, "(10)");
    }
}
