use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lcg_permutation, CriteriaError, Order, Outcome, SearchMode};
use crate::group::Group;
use crate::matgrp::orbit::{separated_conjugation_orbits, Separation};
use crate::rack::{separated_under, Rack};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDWitness {
    pub r: String,
    pub s: String,
    pub r_index: usize,
    pub s_index: usize,
    pub orbit_r: usize,
    pub orbit_s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DPairCheck {
    pub commute: bool,
    /// `(rs)² ≠ (sr)²`, equivalently `r ▷ (s ▷ (r ▷ s)) ≠ s`.
    pub d_inequality: bool,
    /// Sizes of the two `⟨r, s⟩`-orbits when they are disjoint.
    pub orbits: Option<(usize, usize)>,
    /// The orbit computation hit its cap.
    pub cap_hit: bool,
}

impl DPairCheck {
    pub fn is_witness(&self) -> bool {
        self.d_inequality && self.orbits.is_some()
    }
}

fn finish(commute: bool, d: bool, sep: Option<Separation>) -> DPairCheck {
    let (orbits, cap_hit) = match sep {
        None => (None, false),
        Some(Ok(v)) => (Some((v[0], v[1])), false),
        Some(Err(None)) => (None, true),
        Some(Err(Some(_))) => (None, false),
    };
    DPairCheck {
        commute,
        d_inequality: d,
        orbits,
        cap_hit,
    }
}

/// Group form: `(rs)² ≠ (sr)²` and the orbits of `r`, `s` under conjugation
/// by `r`, `s` are disjoint.
pub fn check_type_d_group<G: Group>(g: &G, r: &G::Elem, s: &G::Elem, cap: usize) -> DPairCheck {
    let rs = g.mul(r, s);
    let sr = g.mul(s, r);
    let commute = rs == sr;
    let d = g.mul(&rs, &rs) != g.mul(&sr, &sr);
    let sep = d.then(|| separated_conjugation_orbits(g, &[r.clone(), s.clone()], &[r.clone(), s.clone()], cap));
    finish(commute, d, sep)
}

/// Rack form: `r ▷ (s ▷ (r ▷ s)) ≠ s` and `r`, `s` lie in different
/// components of the subrack they generate.
pub fn check_type_d_rack<R: Rack + ?Sized>(x: &R, r: usize, s: usize, cap: usize) -> Result<DPairCheck, CriteriaError> {
    if r >= x.len() || s >= x.len() {
        return Err(CriteriaError::MixedRacks);
    }
    let commute = x.commute(r, s);
    let d = !commute && x.d_inequality(r, s);
    let sep = d.then(|| separated_under(x, &[r, s], &[r, s], cap));
    Ok(finish(commute, d, sep))
}

/// Re-parses a witness and checks it from scratch.
pub fn reverify_d_group<G: Group>(g: &G, w: &TypeDWitness, cap: usize) -> bool {
    let (Ok(r), Ok(s)) = (g.parse(&w.r), g.parse(&w.s)) else {
        return false;
    };
    let c = check_type_d_group(g, &r, &s, cap);
    c.is_witness() && c.orbits == Some((w.orbit_r, w.orbit_s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSearch {
    pub witness: Option<TypeDWitness>,
    pub outcome: Outcome,
    pub mode: SearchMode,
    pub seed: u64,
    /// Candidates examined, up to and including the witness.
    pub budget_spent: u64,
}

/// Scans `(r, s)` with `r` among `bases` and `s` over the carrier, and
/// returns the first witness in scan order. For a class rack one base point
/// suffices, since conjugating a witness pair gives a witness pair.
pub fn find_type_d<R: Rack + ?Sized>(x: &R, bases: &[usize], order: Order, cap: usize) -> DSearch {
    let n = x.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let limit = match order {
        Order::Exhaustive => u64::MAX,
        Order::Budgeted { budget, .. } => budget,
    };
    match order {
        Order::Exhaustive => {
            for &r in bases {
                pairs.extend((0..n).filter(|&s| s != r).map(|s| (r, s)));
            }
        }
        Order::Budgeted { seed, .. } => {
            let total = bases.len() * n;
            for k in lcg_permutation(total, seed) {
                if pairs.len() as u64 >= limit {
                    break;
                }
                let (r, s) = (bases[k / n], k % n);
                if r != s {
                    pairs.push((r, s));
                }
            }
        }
    }
    let cap_hit = AtomicBool::new(false);
    let found = pairs.par_iter().position_first(|&(r, s)| {
        let c = check_type_d_rack(x, r, s, cap).expect("indices in range");
        if c.cap_hit {
            cap_hit.store(true, AtomicOrdering::Relaxed);
        }
        c.is_witness()
    });
    let (witness, outcome, spent) = match found {
        Some(pos) => {
            let (r, s) = pairs[pos];
            let c = check_type_d_rack(x, r, s, cap).expect("indices in range");
            let (orbit_r, orbit_s) = c.orbits.expect("witness has orbits");
            let w = TypeDWitness {
                r: x.label(r),
                s: x.label(s),
                r_index: r,
                s_index: s,
                orbit_r,
                orbit_s,
            };
            (Some(w), Outcome::Found, pos as u64 + 1)
        }
        None if cap_hit.load(AtomicOrdering::Relaxed) => (None, Outcome::CapExceeded, pairs.len() as u64),
        None => match order {
            Order::Exhaustive => (None, Outcome::Exhausted, pairs.len() as u64),
            Order::Budgeted { .. } => (None, Outcome::BudgetSpent, pairs.len() as u64),
        },
    };
    DSearch {
        witness,
        outcome,
        mode: order.mode(),
        seed: order.seed(),
        budget_spent: spent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::component_bases;
    use crate::perm::{Perm, PermGroup};
    use crate::rack::{affine_rack, doubled_rack, ClassRack};

    #[test]
    fn affine_examples() {
        for (n, expect) in [(3, false), (4, false), (5, false), (6, true), (7, false), (8, true), (10, true)] {
            let d = affine_rack(n).unwrap();
            let res = find_type_d(&d, &component_bases(&d), Order::Exhaustive, 1000);
            assert_eq!(res.witness.is_some(), expect, "D_{n}");
            if !expect {
                assert_eq!(res.outcome, Outcome::Exhausted);
            }
        }
    }

    #[test]
    fn doubling_creates_a_pair_across_copies() {
        // D_6 has r ▷ (s ▷ (r ▷ s)) ≠ s for r = 0, s = 1
        let d6 = affine_rack(6).unwrap();
        assert!(d6.d_inequality(0, 1));
        let dd = doubled_rack(&d6);
        let c = check_type_d_rack(&dd, 0, 6 + 1, 100).unwrap();
        assert!(c.is_witness());
    }

    #[test]
    fn commuting_pair_is_not_a_witness() {
        let s4 = PermGroup::symmetric(4);
        let a = Perm::from_cycles(4, &[&[1, 2]]);
        let b = Perm::from_cycles(4, &[&[3, 4]]);
        let c = check_type_d_group(&s4, &a, &b, 100);
        assert!(c.commute && !c.is_witness());
        let class = ClassRack::new(s4, &a, 100).unwrap();
        let res = find_type_d(&class, &[class.base()], Order::Exhaustive, 100);
        assert_eq!(res.outcome, Outcome::Exhausted);
    }
}
