//! Finite racks on the index set `0..len`, with group-backed and tabulated
//! realisations.

mod class;
mod memo;
mod strip;
mod table;

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::matgrp::orbit::Separation;

pub use class::{project_unipotent_class, ClassRack, Projection, TABLE_LIMIT};
pub use memo::MemoRack;
pub use strip::{random_strip_member, strip_members, strip_stability, StripReport};
pub use table::{affine_rack, doubled_rack, product_rack, trivial_rack, RackTable, TableError, TableRack};

/// `op(i, j)` is the index of `x_i ▷ x_j`; `op_inv(i, j)` that of `φ_i⁻¹(x_j)`.
pub trait Rack: Sync {
    fn len(&self) -> usize;
    fn op(&self, i: usize, j: usize) -> usize;
    fn op_inv(&self, i: usize, j: usize) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn label(&self, i: usize) -> String {
        i.to_string()
    }
    fn commute(&self, i: usize, j: usize) -> bool {
        self.op(i, j) == j
    }
    /// `r ▷ (s ▷ (r ▷ s)) ≠ s`.
    fn d_inequality(&self, r: usize, s: usize) -> bool {
        self.op(r, self.op(s, self.op(r, s))) != s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum RackViolation {
    /// `x ▷ y = x ▷ z` with `y ≠ z`.
    NotBijective { x: usize, y: usize, z: usize },
    /// `x ▷ (y ▷ z) ≠ (x ▷ y) ▷ (x ▷ z)`.
    SelfDistributivity { x: usize, y: usize, z: usize },
    /// `x ▷ x ≠ x`.
    Idempotence { x: usize },
    /// Exactly one of `x ▷ y = y`, `y ▷ x = x` holds.
    CrossedSet { x: usize, y: usize },
    /// `op_inv` does not undo `op`.
    Inverse { x: usize, y: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

/// Carriers up to this size are checked on every triple by default.
pub const EXHAUSTIVE_VERIFY_LIMIT: usize = 1000;

impl VerifyMode {
    pub fn auto(len: usize, seed: u64) -> VerifyMode {
        if len <= EXHAUSTIVE_VERIFY_LIMIT {
            VerifyMode::Exhaustive
        } else {
            VerifyMode::Sampled { triples: 100_000, seed }
        }
    }
}

fn check_pairs<R: Rack + ?Sized>(x: &R, a: usize) -> Result<(), RackViolation> {
    let n = x.len();
    if x.op(a, a) != a {
        return Err(RackViolation::Idempotence { x: a });
    }
    let mut seen = vec![usize::MAX; n];
    for b in 0..n {
        let c = x.op(a, b);
        if seen[c] != usize::MAX {
            return Err(RackViolation::NotBijective { x: a, y: seen[c], z: b });
        }
        seen[c] = b;
        if x.op_inv(a, c) != b {
            return Err(RackViolation::Inverse { x: a, y: b });
        }
        if (c == b) != (x.op(b, a) == a) {
            return Err(RackViolation::CrossedSet { x: a, y: b });
        }
    }
    Ok(())
}

fn check_triple<R: Rack + ?Sized>(x: &R, a: usize, b: usize, c: usize) -> Result<(), RackViolation> {
    if x.op(a, x.op(b, c)) != x.op(x.op(a, b), x.op(a, c)) {
        return Err(RackViolation::SelfDistributivity { x: a, y: b, z: c });
    }
    Ok(())
}

/// Rack and crossed-set axioms. The first violation in index order is
/// returned in exhaustive mode.
pub fn rack_verify<R: Rack>(x: &R, mode: VerifyMode) -> Result<(), RackViolation> {
    let n = x.len();
    match mode {
        VerifyMode::Exhaustive => {
            let bad = (0..n).into_par_iter().find_first(|&a| {
                check_pairs(x, a).is_err()
                    || (0..n).any(|b| (0..n).any(|c| check_triple(x, a, b, c).is_err()))
            });
            match bad {
                None => Ok(()),
                Some(a) => {
                    check_pairs(x, a)?;
                    for b in 0..n {
                        for c in 0..n {
                            check_triple(x, a, b, c)?;
                        }
                    }
                    unreachable!("violation located above")
                }
            }
        }
        VerifyMode::Sampled { triples, seed } => {
            if n == 0 {
                return Ok(());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..triples.div_ceil(n.max(1)).min(n) {
                check_pairs(x, rng.gen_range(0..n))?;
            }
            for _ in 0..triples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                check_triple(x, a, b, c)?;
            }
            Ok(())
        }
    }
}

/// Smallest subset containing `seeds` closed under `▷` and `▷⁻¹`, sorted.
///
/// This set is the orbit of the seeds under the permutations `φ_s`, since
/// `φ_{x ▷ y} = φ_x φ_y φ_x⁻¹`.
pub fn subrack_closure<R: Rack + ?Sized>(x: &R, seeds: &[usize]) -> Vec<usize> {
    let mut seeds: Vec<usize> = seeds.to_vec();
    seeds.sort_unstable();
    seeds.dedup();
    let mut seen = rustc_hash::FxHashSet::default();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in &seeds {
        seen.insert(s);
        queue.push_back(s);
    }
    while let Some(y) = queue.pop_front() {
        for &s in &seeds {
            for z in [x.op(s, y), x.op_inv(s, y)] {
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Whether `members` is closed under `▷` and `▷⁻¹`.
pub fn is_subrack<R: Rack + ?Sized>(x: &R, members: &[usize]) -> bool {
    let set: rustc_hash::FxHashSet<usize> = members.iter().copied().collect();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| set.contains(&x.op(a, b)) && set.contains(&x.op_inv(a, b))))
}

pub fn is_abelian<R: Rack + ?Sized>(x: &R, members: &[usize]) -> bool {
    members.iter().all(|&a| members.iter().all(|&b| x.op(a, b) == b))
}

/// Orbits of `Inn` of the subrack `members` (which must be closed), each
/// sorted, listed by smallest element.
pub fn indecomposable_components<R: Rack + ?Sized>(x: &R, members: &[usize]) -> Vec<Vec<usize>> {
    let mut comp: rustc_hash::FxHashMap<usize, usize> = rustc_hash::FxHashMap::default();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if comp.contains_key(&start) {
            continue;
        }
        let id = out.len();
        comp.insert(start, id);
        let mut block = vec![start];
        let mut head = 0;
        while head < block.len() {
            let y = block[head];
            head += 1;
            for &s in &sorted {
                for z in [x.op(s, y), x.op_inv(s, y)] {
                    if let std::collections::hash_map::Entry::Vacant(e) = comp.entry(z) {
                        e.insert(id);
                        block.push(z);
                    }
                }
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

pub fn is_indecomposable<R: Rack + ?Sized>(x: &R, members: &[usize]) -> bool {
    indecomposable_components(x, members).len() <= 1
}

pub fn all_indices<R: Rack + ?Sized>(x: &R) -> Vec<usize> {
    (0..x.len()).collect()
}

/// Orbits of `starts` under `φ_g` for `g ∈ gens` (finite, so inverses are
/// implied). See [`crate::matgrp::orbit::separated_orbits`].
pub fn separated_under<R: Rack + ?Sized>(
    x: &R,
    starts: &[usize],
    gens: &[usize],
    cap: usize,
) -> Separation {
    crate::matgrp::orbit::separated_orbits(starts, gens.len(), |k, &y| x.op(gens[k], y), cap)
}

/// Rack isomorphism `a → b` by backtracking, as an index map.
pub fn find_isomorphism<A: Rack, B: Rack>(a: &A, b: &B) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    fn extend<A: Rack, B: Rack>(a: &A, b: &B, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = map.len();
        if k == a.len() {
            return true;
        }
        for t in 0..b.len() {
            if used[t] {
                continue;
            }
            map.push(t);
            let ok = (0..=k).all(|i| {
                let ok_ik = a.op(i, k) > k || map[a.op(i, k)] == b.op(map[i], t);
                let ok_ki = a.op(k, i) > k || map[a.op(k, i)] == b.op(t, map[i]);
                ok_ik && ok_ki
            });
            if ok {
                used[t] = true;
                if extend(a, b, map, used) {
                    return true;
                }
                used[t] = false;
            }
            map.pop();
        }
        false
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !extend(a, b, &mut map, &mut used) {
        return None;
    }
    let full = (0..n).all(|i| (0..n).all(|j| map[a.op(i, j)] == b.op(map[i], map[j])));
    full.then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, PermGroup};

    fn transpositions(n: usize) -> ClassRack<PermGroup> {
        let g = PermGroup::symmetric(n);
        ClassRack::new(g, &Perm::from_cycles(n, &[&[1, 2]]), 1000).unwrap()
    }

    #[test]
    fn affine_racks_verify() {
        for n in 3..9 {
            assert_eq!(rack_verify(&affine_rack(n).unwrap(), VerifyMode::Exhaustive), Ok(()));
        }
        assert!(affine_rack(2).is_err());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut t = affine_rack(5).unwrap().table().clone();
        t.table[1][2] = (t.table[1][2] + 1) % 5;
        let bad = TableRack::from_table_unchecked(t);
        assert!(rack_verify(&bad, VerifyMode::Exhaustive).is_err());
        let mut t = affine_rack(5).unwrap().table().clone();
        t.table[0][0] = 1;
        t.table[0][2] = 0;
        let bad = TableRack::from_table_unchecked(t);
        assert!(rack_verify(&bad, VerifyMode::Exhaustive).is_err());
    }

    #[test]
    fn d3_is_the_transposition_rack() {
        let tr = transpositions(3);
        assert_eq!(tr.len(), 3);
        assert!(find_isomorphism(&affine_rack(3).unwrap(), &tr).is_some());
        assert!(find_isomorphism(&affine_rack(4).unwrap(), &transpositions(4)).is_none());
    }

    #[test]
    fn cube_rack_components() {
        let s4 = PermGroup::symmetric(4);
        let cube = ClassRack::new(s4, &Perm::from_cycles(4, &[&[1, 2, 3]]), 1000).unwrap();
        assert_eq!(cube.len(), 8);
        let comps = indecomposable_components(&cube, &all_indices(&cube));
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 4]);
        for c in &comps {
            assert!(is_subrack(&cube, c));
        }
        assert!(is_indecomposable(&transpositions(4), &all_indices(&transpositions(4))));
    }

    #[test]
    fn abelian_tests() {
        let d4 = PermGroup::dihedral(4);
        let s = Perm::from_cycles(4, &[&[2, 4]]);
        let class = ClassRack::new(d4, &s, 100).unwrap();
        assert_eq!(class.len(), 2);
        assert!(is_abelian(&class, &all_indices(&class)));
        let tr = transpositions(3);
        assert!(!is_abelian(&tr, &all_indices(&tr)));
        assert!(is_abelian(&tr, &[1]));
        let ab = table::trivial_rack(4);
        assert_eq!(indecomposable_components(&ab, &all_indices(&ab)).len(), 4);
    }

    #[test]
    fn closure_examples() {
        let tr = transpositions(4);
        assert_eq!(subrack_closure(&tr, &[2]), vec![2]);
        let a = tr.index_of(&Perm::from_cycles(4, &[&[1, 2]])).unwrap();
        let b = tr.index_of(&Perm::from_cycles(4, &[&[3, 4]])).unwrap();
        let c = tr.index_of(&Perm::from_cycles(4, &[&[1, 3]])).unwrap();
        let mut ab = vec![a, b];
        ab.sort();
        assert_eq!(subrack_closure(&tr, &[a, b]), ab);
        assert_eq!(subrack_closure(&tr, &[a, c]).len(), 3);
        assert_eq!(subrack_closure(&tr, &[a, c, b]).len(), 6);
    }

    #[test]
    fn doubled_and_product() {
        let d5 = affine_rack(5).unwrap();
        let d2 = doubled_rack(&d5);
        assert_eq!(d2.len(), 10);
        assert_eq!(rack_verify(&d2, VerifyMode::Exhaustive), Ok(()));
        let p = product_rack(&d5, &affine_rack(3).unwrap());
        assert_eq!(p.len(), 15);
        assert_eq!(rack_verify(&p, VerifyMode::Exhaustive), Ok(()));
    }
}
