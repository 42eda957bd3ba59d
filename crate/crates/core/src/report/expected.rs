//! Expected verdicts for unipotent classes, loaded from ordered match rules.

use serde::{Deserialize, Serialize};

use super::ReportError;
use crate::criteria::VerdictTag;
use crate::matgrp::Partition;

const RULES: &str = include_str!("../../data/expected_tables.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expectation {
    #[serde(rename = "D")]
    TypeD,
    #[serde(rename = "F")]
    TypeF,
    #[serde(rename = "cthulhu")]
    Cthulhu,
    /// No D pair; F undecided.
    #[serde(rename = "open_f")]
    OpenF,
}

impl std::fmt::Display for Expectation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Expectation::TypeD => "D",
            Expectation::TypeF => "F",
            Expectation::Cthulhu => "cthulhu",
            Expectation::OpenF => "open_f",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    n: Option<usize>,
    n_min: Option<usize>,
    q_parity: Option<Parity>,
    q_square: Option<bool>,
    q_min: Option<u32>,
    q_in: Option<Vec<u32>>,
    largest: Option<usize>,
    largest_min: Option<usize>,
    prefix: Option<Vec<usize>>,
    parts: Option<Vec<usize>>,
    pub expect: Expectation,
    pub remark: String,
}

#[derive(Deserialize)]
struct RuleFile {
    version: u32,
    rule: Vec<Rule>,
}

fn is_square(q: u32) -> bool {
    let r = (q as f64).sqrt().round() as u32;
    r * r == q
}

impl Rule {
    fn matches(&self, n: usize, q: u32, lambda: &Partition) -> bool {
        let parts = lambda.parts();
        self.n.is_none_or(|v| v == n)
            && self.n_min.is_none_or(|v| n >= v)
            && self.q_parity.is_none_or(|p| (p == Parity::Even) == q.is_multiple_of(2))
            && self.q_square.is_none_or(|s| s == is_square(q))
            && self.q_min.is_none_or(|v| q >= v)
            && self.q_in.as_ref().is_none_or(|v| v.contains(&q))
            && self.largest.is_none_or(|v| lambda.largest() == v)
            && self.largest_min.is_none_or(|v| lambda.largest() >= v)
            && self.prefix.as_ref().is_none_or(|p| parts.starts_with(p))
            && self.parts.as_ref().is_none_or(|p| parts == p.as_slice())
    }
}

#[derive(Clone, Debug)]
pub struct ExpectedTable {
    rules: Vec<Rule>,
}

impl ExpectedTable {
    pub fn embedded() -> Result<Self, ReportError> {
        Self::parse(RULES)
    }

    pub fn parse(src: &str) -> Result<Self, ReportError> {
        let f: RuleFile = toml::from_str(src).map_err(|e| ReportError::Rules(e.to_string()))?;
        if f.version != 1 {
            return Err(ReportError::Rules(format!("unsupported rule version {}", f.version)));
        }
        Ok(ExpectedTable { rules: f.rule })
    }

    /// First matching rule, if any.
    pub fn lookup(&self, n: usize, q: u32, lambda: &Partition) -> Option<&Rule> {
        if lambda.is_trivial() {
            return None;
        }
        self.rules.iter().find(|r| r.matches(n, q, lambda))
    }
}

/// Whether a computed verdict is consistent with an expectation. A D pair
/// also counts for an F expectation, since F is only claimed when no D pair
/// is known. `Unknown` is accepted at open rows, and at non-collapsing rows
/// when the D scan was exhaustive and only the F scan ran out of budget.
pub fn agrees(expect: Expectation, tag: VerdictTag, no_d_exhaustive: bool) -> bool {
    use VerdictTag::*;
    match expect {
        Expectation::TypeD => tag == TypeD,
        Expectation::TypeF => matches!(tag, TypeF | TypeD),
        Expectation::Cthulhu => tag == CthulhuEvidence || (tag == Unknown && no_d_exhaustive),
        Expectation::OpenF => matches!(tag, Unknown | CthulhuEvidence) && no_d_exhaustive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_grid_expectations() {
        let t = ExpectedTable::embedded().unwrap();
        let e = |n, q, v: &[usize]| t.lookup(n, q, &p(v)).map(|r| r.expect);
        use Expectation::*;
        for q in [2, 3, 4, 5, 7, 8, 27] {
            assert_eq!(e(2, q, &[2]), Some(Cthulhu), "q = {q}");
        }
        assert_eq!(e(2, 9, &[2]), None);
        assert_eq!(e(2, 25, &[2]), Some(TypeD));
        assert_eq!(e(2, 49, &[2]), Some(TypeD));
        assert_eq!(e(3, 2, &[3]), Some(Cthulhu));
        assert_eq!(e(3, 4, &[3]), Some(TypeD));
        assert_eq!(e(3, 8, &[3]), Some(TypeF));
        assert_eq!(e(3, 3, &[3]), Some(TypeD));
        assert_eq!(e(3, 4, &[2, 1]), Some(Cthulhu));
        assert_eq!(e(3, 5, &[2, 1]), Some(TypeD));
        assert_eq!(e(4, 2, &[2, 1, 1]), Some(Cthulhu));
        assert_eq!(e(4, 4, &[2, 1, 1]), Some(OpenF));
        assert_eq!(e(4, 8, &[2, 1, 1]), Some(OpenF));
        assert_eq!(e(5, 2, &[2, 1, 1, 1]), Some(TypeF));
        assert_eq!(e(5, 2, &[3, 2]), Some(TypeF));
        assert_eq!(e(6, 4, &[3, 3]), Some(TypeD));
        assert_eq!(e(5, 4, &[5]), Some(TypeF));
        for q in [2, 3, 4, 5] {
            for v in [&[4][..], &[3, 1], &[2, 2]] {
                assert_eq!(e(4, q, v), Some(TypeD), "q = {q}, {v:?}");
            }
        }
        assert_eq!(e(3, 2, &[1, 1, 1]), None);
    }

    #[test]
    fn agreement_semantics() {
        use Expectation as E;
        use VerdictTag as V;
        assert!(agrees(E::TypeF, V::TypeD, false));
        assert!(!agrees(E::TypeD, V::TypeF, false));
        assert!(agrees(E::OpenF, V::Unknown, true));
        assert!(!agrees(E::OpenF, V::Unknown, false));
        assert!(!agrees(E::OpenF, V::TypeF, true));
        assert!(!agrees(E::Cthulhu, V::TypeD, false));
    }
}
