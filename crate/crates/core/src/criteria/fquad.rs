use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{CriteriaError, Outcome, SearchMode};
use crate::group::Group;
use crate::matgrp::orbit::{separated_conjugation_orbits, Separation};
use crate::rack::{separated_under, Rack};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeFWitness {
    pub elements: [String; 4],
    pub indices: [usize; 4],
    pub orbits: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FQuadCheck {
    pub pairwise_noncommuting: bool,
    /// Orbit sizes under `⟨r_1, …, r_4⟩` when pairwise disjoint.
    pub orbits: Option<[usize; 4]>,
    pub cap_hit: bool,
}

impl FQuadCheck {
    pub fn is_witness(&self) -> bool {
        self.pairwise_noncommuting && self.orbits.is_some()
    }
}

fn distinct<T: PartialEq>(v: &[T]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}

fn from_sep(noncomm: bool, sep: Option<Separation>) -> FQuadCheck {
    let (orbits, cap_hit) = match sep {
        Some(Ok(v)) => (Some([v[0], v[1], v[2], v[3]]), false),
        Some(Err(None)) => (None, true),
        _ => (None, false),
    };
    FQuadCheck {
        pairwise_noncommuting: noncomm,
        orbits,
        cap_hit,
    }
}

pub fn check_type_f_group<G: Group>(g: &G, rs: &[G::Elem; 4], cap: usize) -> Result<FQuadCheck, CriteriaError> {
    if !distinct(rs) {
        return Err(CriteriaError::Duplicate);
    }
    let noncomm = (0..4).all(|i| (i + 1..4).all(|j| !g.commute(&rs[i], &rs[j])));
    let sep = noncomm.then(|| separated_conjugation_orbits(g, rs, rs, cap));
    Ok(from_sep(noncomm, sep))
}

pub fn check_type_f_rack<R: Rack + ?Sized>(x: &R, rs: [usize; 4], cap: usize) -> Result<FQuadCheck, CriteriaError> {
    if rs.iter().any(|&r| r >= x.len()) {
        return Err(CriteriaError::MixedRacks);
    }
    if !distinct(&rs) {
        return Err(CriteriaError::Duplicate);
    }
    let noncomm = (0..4).all(|i| (i + 1..4).all(|j| !x.commute(rs[i], rs[j])));
    let sep = noncomm.then(|| separated_under(x, &rs, &rs, cap));
    Ok(from_sep(noncomm, sep))
}

pub fn reverify_f_group<G: Group>(g: &G, w: &TypeFWitness, cap: usize) -> bool {
    let parsed: Result<Vec<G::Elem>, String> = w.elements.iter().map(|s| g.parse(s)).collect();
    let Ok(v) = parsed else {
        return false;
    };
    let arr = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()];
    matches!(check_type_f_group(g, &arr, cap), Ok(c) if c.is_witness() && c.orbits == Some(w.orbits))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSearch {
    pub witness: Option<TypeFWitness>,
    pub outcome: Outcome,
    /// `exhaustive` once the pruned scan ran to completion.
    pub mode: SearchMode,
    /// Orbit-separation tests performed.
    pub budget_spent: u64,
}

struct Scan<'a, R: Rack + ?Sized> {
    x: &'a R,
    cap: usize,
    budget: u64,
    spent: u64,
    cap_hit: bool,
    pairs: FxHashMap<(u32, u32), bool>,
}

impl<R: Rack + ?Sized> Scan<'_, R> {
    /// Separation of `set` under its own `φ`s; `None` once resources ran out.
    fn separated(&mut self, set: &[usize]) -> Option<Option<Vec<usize>>> {
        if self.spent >= self.budget {
            return None;
        }
        self.spent += 1;
        match separated_under(self.x, set, set, self.cap) {
            Ok(v) => Some(Some(v)),
            Err(Some(_)) => Some(None),
            Err(None) => {
                self.cap_hit = true;
                None
            }
        }
    }

    fn pair_ok(&mut self, a: usize, b: usize) -> Option<bool> {
        if self.x.commute(a, b) {
            return Some(false);
        }
        let key = (a.min(b) as u32, a.max(b) as u32);
        if let Some(&v) = self.pairs.get(&key) {
            return Some(v);
        }
        let v = self.separated(&[a, b])?.is_some();
        self.pairs.insert(key, v);
        Some(v)
    }
}

/// Pruned scan with `r_1` among `bases` and `r_2 < r_3 < r_4`: every new
/// element must fail to commute with, and be orbit-separated from, each
/// earlier one, and each partial set must stay separated. Completing within
/// `budget` separation tests makes a negative exhaustive.
pub fn find_type_f<R: Rack + ?Sized>(x: &R, bases: &[usize], budget: u64, cap: usize) -> FSearch {
    let mut sc = Scan {
        x,
        cap,
        budget,
        spent: 0,
        cap_hit: false,
        pairs: FxHashMap::default(),
    };
    let out = |sc: &Scan<R>, outcome, witness| FSearch {
        witness,
        outcome,
        mode: if outcome == Outcome::BudgetSpent || outcome == Outcome::CapExceeded {
            SearchMode::Budgeted
        } else {
            SearchMode::Exhaustive
        },
        budget_spent: sc.spent,
    };
    macro_rules! step {
        ($e:expr) => {
            match $e {
                Some(v) => v,
                None => {
                    let o = if sc.cap_hit { Outcome::CapExceeded } else { Outcome::BudgetSpent };
                    return out(&sc, o, None);
                }
            }
        };
    }
    for &r1 in bases {
        let mut c1 = Vec::new();
        for s in 0..x.len() {
            if s != r1 && step!(sc.pair_ok(r1, s)) {
                c1.push(s);
            }
        }
        for (i2, &r2) in c1.iter().enumerate() {
            let mut c2 = Vec::new();
            for &r3 in &c1[i2 + 1..] {
                if step!(sc.pair_ok(r2, r3)) && step!(sc.separated(&[r1, r2, r3])).is_some() {
                    c2.push(r3);
                }
            }
            for (i3, &r3) in c2.iter().enumerate() {
                for &r4 in &c2[i3 + 1..] {
                    if !step!(sc.pair_ok(r3, r4)) {
                        continue;
                    }
                    if let Some(orb) = step!(sc.separated(&[r1, r2, r3, r4])) {
                        let idx = [r1, r2, r3, r4];
                        let w = TypeFWitness {
                            elements: idx.map(|i| x.label(i)),
                            indices: idx,
                            orbits: [orb[0], orb[1], orb[2], orb[3]],
                        };
                        return out(&sc, Outcome::Found, Some(w));
                    }
                }
            }
        }
    }
    out(&sc, Outcome::Exhausted, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, PermGroup};
    use crate::rack::{affine_rack, ClassRack};

    #[test]
    fn duplicates_and_commuting() {
        let s4 = PermGroup::symmetric(4);
        let t = |a, b| Perm::from_cycles(4, &[&[a, b]]);
        assert_eq!(
            check_type_f_group(&s4, &[t(1, 2), t(1, 2), t(1, 3), t(1, 4)], 100),
            Err(CriteriaError::Duplicate)
        );
        let c = check_type_f_group(&s4, &[t(1, 2), t(3, 4), t(1, 3), t(1, 4)], 100).unwrap();
        assert!(!c.is_witness());
    }

    #[test]
    fn small_racks_have_no_quadruple() {
        let s4 = PermGroup::symmetric(4);
        let tr = ClassRack::new(s4, &Perm::from_cycles(4, &[&[1, 2]]), 100).unwrap();
        let res = find_type_f(&tr, &[tr.base()], 1_000_000, 1000);
        assert_eq!(res.outcome, Outcome::Exhausted);
        let d7 = affine_rack(7).unwrap();
        assert_eq!(find_type_f(&d7, &[0], 1_000_000, 1000).outcome, Outcome::Exhausted);
        let d8 = affine_rack(8).unwrap();
        assert_eq!(find_type_f(&d8, &[0, 1], 1, 1000).outcome, Outcome::BudgetSpent);
    }
}
