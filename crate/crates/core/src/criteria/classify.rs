use serde::{Deserialize, Serialize};

use super::{
    cthulhu_two_generated, find_type_d, find_type_f, CthulhuEvidence, DSearch, FSearch, Order, Outcome, SearchMode,
    TypeDWitness, TypeFWitness,
};
use crate::matgrp::orbit::DEFAULT_ORBIT_CAP;
use crate::rack::{MemoRack, Rack};

/// Carriers up to this size cache left translations during the F scan and
/// the pair classification.
pub const MEMO_LIMIT: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictTag {
    TypeD,
    TypeF,
    CthulhuEvidence,
    Unknown,
}

impl std::fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictTag::TypeD => "TypeD",
            VerdictTag::TypeF => "TypeF",
            VerdictTag::CthulhuEvidence => "CthulhuEvidence",
            VerdictTag::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    TypeD(TypeDWitness),
    TypeF(TypeFWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub witness: Option<Witness>,
    pub mode: SearchMode,
    pub budget_spent: u64,
    pub seed: u64,
    pub class_size: usize,
    pub d_search: DSearch,
    pub f_search: Option<FSearch>,
    pub cthulhu: Option<CthulhuEvidence>,
}

impl Verdict {
    /// No D pair exists: the D scan ran to completion without a witness.
    pub fn no_d_exhaustive(&self) -> bool {
        self.d_search.outcome == Outcome::Exhausted
    }
    pub fn no_f_exhaustive(&self) -> bool {
        matches!(&self.f_search, Some(f) if f.outcome == Outcome::Exhausted)
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// D scans examine every candidate up to this many.
    pub d_exhaustive_limit: usize,
    /// Candidates examined by a budgeted D scan.
    pub d_budget: u64,
    /// Separation tests allowed to the F scan.
    pub f_budget: u64,
    pub seed: u64,
    pub orbit_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            d_exhaustive_limit: 100_000,
            d_budget: 100_000,
            f_budget: 10_000_000,
            seed: 0,
            orbit_cap: DEFAULT_ORBIT_CAP,
        }
    }
}

/// D first, then F, then two-generated evidence.
pub fn classify<R: Rack + ?Sized>(x: &R, bases: &[usize], opts: &ClassifyOptions) -> Verdict {
    let candidates = bases.len() * x.len();
    let order = if candidates <= opts.d_exhaustive_limit {
        Order::Exhaustive
    } else {
        Order::Budgeted {
            seed: opts.seed,
            budget: opts.d_budget,
        }
    };
    let d = find_type_d(x, bases, order, opts.orbit_cap);
    let mut v = Verdict {
        tag: VerdictTag::Unknown,
        witness: None,
        mode: d.mode,
        budget_spent: d.budget_spent,
        seed: d.seed,
        class_size: x.len(),
        d_search: d.clone(),
        f_search: None,
        cthulhu: None,
    };
    if let Some(w) = d.witness {
        v.tag = VerdictTag::TypeD;
        v.witness = Some(Witness::TypeD(w));
        return v;
    }
    let memo = (x.len() <= MEMO_LIMIT).then(|| MemoRack::new(x));
    let f = match &memo {
        Some(m) => find_type_f(m, bases, opts.f_budget, opts.orbit_cap),
        None => find_type_f(x, bases, opts.f_budget, opts.orbit_cap),
    };
    v.budget_spent += f.budget_spent;
    v.f_search = Some(f.clone());
    if let Some(w) = f.witness {
        v.tag = VerdictTag::TypeF;
        v.witness = Some(Witness::TypeF(w));
        v.mode = f.mode;
        return v;
    }
    let mut ev = match &memo {
        Some(m) => cthulhu_two_generated(m, bases, opts.orbit_cap),
        None => cthulhu_two_generated(x, bases, opts.orbit_cap),
    };
    ev.no_d_exhaustive = Some(d.outcome == Outcome::Exhausted);
    ev.no_f_exhaustive = Some(f.outcome == Outcome::Exhausted);
    let settled = d.outcome == Outcome::Exhausted && f.outcome == Outcome::Exhausted && ev.passed();
    v.tag = if settled { VerdictTag::CthulhuEvidence } else { VerdictTag::Unknown };
    v.mode = if settled { SearchMode::Exhaustive } else { SearchMode::Budgeted };
    v.cthulhu = Some(ev);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::component_bases;
    use crate::rack::affine_rack;

    #[test]
    fn affine_verdicts_round_trip() {
        let d6 = affine_rack(6).unwrap();
        let v = classify(&d6, &component_bases(&d6), &ClassifyOptions::default());
        assert_eq!(v.tag, VerdictTag::TypeD);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
        let d5 = affine_rack(5).unwrap();
        let v = classify(&d5, &component_bases(&d5), &ClassifyOptions::default());
        assert_eq!(v.tag, VerdictTag::CthulhuEvidence);
        assert!(v.no_d_exhaustive() && v.no_f_exhaustive());
        assert_eq!(v.mode, SearchMode::Exhaustive);
    }
}
