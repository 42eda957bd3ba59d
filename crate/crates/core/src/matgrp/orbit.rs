//! Breadth-first orbit and subgroup computations for any [`Group`].

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use super::GroupError;
use crate::group::Group;

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
pub const DEFAULT_CENTRALIZER_CAP: usize = 10_000;

/// Conjugacy class of `x` in BFS order (`x` first).
pub fn conjugacy_orbit<G: Group>(g: &G, x: &G::Elem, cap: usize) -> Result<Vec<G::Elem>, GroupError> {
    let ngens = g.generators().len();
    let mut seen: FxHashSet<G::Elem> = FxHashSet::default();
    seen.insert(x.clone());
    let mut out = vec![x.clone()];
    let mut head = 0;
    while head < out.len() {
        let y = out[head].clone();
        head += 1;
        for k in 0..ngens {
            let z = g.conj_gen(k, &y);
            if !seen.contains(&z) {
                if out.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(z.clone());
                out.push(z);
            }
        }
    }
    Ok(out)
}

/// Orbit together with a transversal: `transversal[i] ▷ x = orbit[i]`.
pub struct Transversal<E> {
    pub orbit: Vec<E>,
    pub transversal: Vec<E>,
    pub index: FxHashMap<E, usize>,
}

pub fn orbit_with_transversal<G: Group>(
    g: &G,
    x: &G::Elem,
    cap: usize,
) -> Result<Transversal<G::Elem>, GroupError> {
    let gens = g.generators();
    let mut index: FxHashMap<G::Elem, usize> = FxHashMap::default();
    index.insert(x.clone(), 0);
    let mut orbit = vec![x.clone()];
    let mut transversal = vec![g.identity()];
    let mut head = 0;
    while head < orbit.len() {
        let y = orbit[head].clone();
        let t = transversal[head].clone();
        head += 1;
        for (k, s) in gens.iter().enumerate() {
            let z = g.conj_gen(k, &y);
            if !index.contains_key(&z) {
                if orbit.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                index.insert(z.clone(), orbit.len());
                orbit.push(z);
                transversal.push(g.mul(s, &t));
            }
        }
    }
    Ok(Transversal {
        orbit,
        transversal,
        index,
    })
}

/// Growing subgroup given by generators, kept closed after every insertion.
pub struct Closure<G: Group> {
    gens: Vec<G::Elem>,
    set: FxHashSet<G::Elem>,
    elems: Vec<G::Elem>,
    cap: usize,
}

impl<G: Group> Closure<G> {
    pub fn trivial(g: &G, cap: usize) -> Self {
        let id = g.identity();
        let mut set = FxHashSet::default();
        set.insert(id.clone());
        Closure {
            gens: Vec::new(),
            set,
            elems: vec![id],
            cap,
        }
    }

    pub fn contains(&self, x: &G::Elem) -> bool {
        self.set.contains(x)
    }

    /// Adds a generator and re-closes. Right multiplication by generators
    /// suffices because every element has finite order.
    pub fn add(&mut self, g: &G, h: G::Elem) -> Result<(), GroupError> {
        if self.set.contains(&h) {
            return Ok(());
        }
        self.gens.push(h);
        let mut queue: VecDeque<G::Elem> = self.elems.iter().cloned().collect();
        while let Some(e) = queue.pop_front() {
            for s in &self.gens {
                let z = g.mul(&e, s);
                if !self.set.contains(&z) {
                    if self.elems.len() >= self.cap {
                        return Err(GroupError::CapExceeded { cap: self.cap });
                    }
                    self.set.insert(z.clone());
                    self.elems.push(z.clone());
                    queue.push_back(z);
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elems
    }

    pub fn into_elements(self) -> Vec<G::Elem> {
        self.elems
    }
}

/// `⟨gens⟩`, by BFS under right multiplication by the generators and their
/// inverses. Elements are returned sorted.
pub fn subgroup_closure<G: Group>(g: &G, gens: &[G::Elem], cap: usize) -> Result<Vec<G::Elem>, GroupError> {
    let mut all: Vec<G::Elem> = gens.to_vec();
    all.extend(gens.iter().map(|x| g.inv(x)));
    let mut seen: FxHashSet<G::Elem> = FxHashSet::default();
    let id = g.identity();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let e = out[head].clone();
        head += 1;
        for s in &all {
            let z = g.mul(&e, s);
            if !seen.contains(&z) {
                if out.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(z.clone());
                out.push(z);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Elements of `C_G(x)` from Schreier generators of the conjugation action,
/// returned sorted.
pub fn centralizer_elements<G: Group>(
    g: &G,
    x: &G::Elem,
    orbit_cap: usize,
    centralizer_cap: usize,
) -> Result<Vec<G::Elem>, GroupError> {
    let tr = orbit_with_transversal(g, x, orbit_cap)?;
    centralizer_from_transversal(g, &tr, centralizer_cap)
}

pub fn centralizer_from_transversal<G: Group>(
    g: &G,
    tr: &Transversal<G::Elem>,
    cap: usize,
) -> Result<Vec<G::Elem>, GroupError> {
    let mut c = Closure::trivial(g, cap);
    let inv_t: Vec<G::Elem> = tr.transversal.iter().map(|t| g.inv(t)).collect();
    for (i, y) in tr.orbit.iter().enumerate() {
        for (k, s) in g.generators().iter().enumerate() {
            let z = g.conj_gen(k, y);
            let j = tr.index[&z];
            let h = g.mul(&inv_t[j], &g.mul(s, &tr.transversal[i]));
            c.add(g, h)?;
        }
    }
    let mut out = c.into_elements();
    out.sort();
    Ok(out)
}

/// Orbit sizes when pairwise disjoint; otherwise the first meeting pair of
/// starts, or `None` when the cap fired.
pub type Separation = Result<Vec<usize>, Option<(usize, usize)>>;

/// Orbits of `starts` under conjugation by `conjugators` (and, implicitly,
/// their inverses: orbits of finite groups are closed under both).
///
/// Returns `Ok(sizes)` when the orbits are pairwise disjoint and
/// `Err(Some((a, b)))` for the first pair of starts found in one orbit;
/// `Err(None)` signals that the cap fired.
pub fn separated_conjugation_orbits<G: Group>(
    g: &G,
    starts: &[G::Elem],
    conjugators: &[G::Elem],
    cap: usize,
) -> Separation {
    let invs: Vec<G::Elem> = conjugators.iter().map(|c| g.inv(c)).collect();
    separated_orbits(
        starts,
        conjugators.len(),
        |k, y| g.mul(&g.mul(&conjugators[k], y), &invs[k]),
        cap,
    )
}

/// Generic multi-source BFS under `step(k, y)`, `k < nsteps`, tagging each
/// visited point with the start it came from; stops as soon as two tags meet.
pub fn separated_orbits<T, F>(
    starts: &[T],
    nsteps: usize,
    step: F,
    cap: usize,
) -> Separation
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(usize, &T) -> T,
{
    let mut owner: FxHashMap<T, usize> = FxHashMap::default();
    let mut frontiers: Vec<Vec<T>> = Vec::with_capacity(starts.len());
    let mut sizes = vec![1usize; starts.len()];
    for (i, s) in starts.iter().enumerate() {
        if let Some(&j) = owner.get(s) {
            return Err(Some((j, i)));
        }
        owner.insert(s.clone(), i);
        frontiers.push(vec![s.clone()]);
    }
    // Expand the smallest live frontier first: a closed orbit ends its
    // search early, and two equal orbits tend to meet quickly.
    loop {
        let Some(i) = (0..starts.len())
            .filter(|&i| !frontiers[i].is_empty())
            .min_by_key(|&i| frontiers[i].len())
        else {
            return Ok(sizes);
        };
        let frontier = std::mem::take(&mut frontiers[i]);
        let mut next = Vec::new();
        for y in &frontier {
            for k in 0..nsteps {
                let z = step(k, y);
                match owner.get(&z) {
                    Some(&j) if j == i => {}
                    Some(&j) => return Err(Some((j.min(i), j.max(i)))),
                    None => {
                        if owner.len() >= cap {
                            return Err(None);
                        }
                        owner.insert(z.clone(), i);
                        sizes[i] += 1;
                        next.push(z);
                    }
                }
            }
        }
        frontiers[i] = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::matgrp::{Family, GroupCtx, Matrix};
    use crate::perm::{Perm, PermGroup};
    use num_bigint::BigUint;

    #[test]
    fn class_sizes_and_orbit_stabilizer() {
        let f7 = make_field(7, 1).unwrap();
        let sl = GroupCtx::new(Family::SL, 2, &f7).unwrap();
        let r1 = Matrix::from_ints(&f7, &[&[1, 1], &[0, 1]]);
        let o = conjugacy_orbit(&sl, &r1, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(o.len(), 24);
        let c = centralizer_elements(&sl, &r1, DEFAULT_ORBIT_CAP, DEFAULT_CENTRALIZER_CAP).unwrap();
        assert_eq!(c.len(), 14);
        assert_eq!(BigUint::from(o.len() * c.len()), sl.group_order());
        // centralizer is ± unitriangular
        assert!(c.iter().all(|m| m.get(1, 0) == 0 && m.get(0, 0) == m.get(1, 1)));

        let f2 = make_field(2, 1).unwrap();
        let sl3 = GroupCtx::new(Family::SL, 3, &f2).unwrap();
        let t = Matrix::from_ints(&f2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(conjugacy_orbit(&sl3, &t, DEFAULT_ORBIT_CAP).unwrap().len(), 21);
        assert_eq!(conjugacy_orbit(&sl3, &sl3.identity(), 10).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_reported_distinctly() {
        let f7 = make_field(7, 1).unwrap();
        let sl = GroupCtx::new(Family::SL, 2, &f7).unwrap();
        let r1 = Matrix::from_ints(&f7, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            conjugacy_orbit(&sl, &r1, 10).unwrap_err(),
            GroupError::CapExceeded { cap: 10 }
        );
        assert!(matches!(
            subgroup_closure(&sl, sl.generators(), 100),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn closures() {
        let f4 = make_field(2, 2).unwrap();
        let sl = GroupCtx::new(Family::SL, 2, &f4).unwrap();
        let r1 = Matrix::from_ints(&f4, &[&[1, 1], &[0, 1]]);
        assert_eq!(subgroup_closure(&sl, &[r1], 100).unwrap().len(), 2);
        assert_eq!(subgroup_closure(&sl, &[sl.identity()], 100).unwrap().len(), 1);
        assert_eq!(subgroup_closure(&sl, sl.generators(), 100).unwrap().len(), 60);
        let s4 = PermGroup::symmetric(4);
        assert_eq!(subgroup_closure(&s4, s4.generators(), 100).unwrap().len(), 24);
        let a4 = PermGroup::alternating(4);
        assert_eq!(subgroup_closure(&a4, a4.generators(), 100).unwrap().len(), 12);
    }

    #[test]
    fn transversal_conjugates_base_point() {
        let s4 = PermGroup::symmetric(4);
        let x = Perm::from_cycles(4, &[&[1, 2]]);
        let tr = orbit_with_transversal(&s4, &x, 100).unwrap();
        assert_eq!(tr.orbit.len(), 6);
        for (y, t) in tr.orbit.iter().zip(&tr.transversal) {
            assert_eq!(&s4.conj(t, &x), y);
        }
        let c = centralizer_from_transversal(&s4, &tr, 100).unwrap();
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn orbit_separation() {
        let d4 = PermGroup::dihedral(4);
        let s = Perm::from_cycles(4, &[&[2, 4]]);
        let sr = Perm::from_cycles(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(
            separated_conjugation_orbits(&d4, &[s.clone(), sr.clone()], &[s.clone(), sr.clone()], 100),
            Ok(vec![2, 2])
        );
        let s3 = PermGroup::symmetric(3);
        let a = Perm::from_cycles(3, &[&[1, 2]]);
        let b = Perm::from_cycles(3, &[&[1, 3]]);
        assert_eq!(
            separated_conjugation_orbits(&s3, &[a.clone(), b.clone()], &[a, b], 100),
            Err(Some((0, 1)))
        );
    }
}
