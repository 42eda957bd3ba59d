use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{Rack, TableRack};
use crate::group::Group;
use crate::matgrp::orbit::conjugacy_orbit;
use crate::matgrp::unipotent::is_unipotent;
use crate::matgrp::{Family, GroupCtx, GroupError, Matrix};

/// Largest class that may be tabulated.
pub const TABLE_LIMIT: usize = 4096;

/// A conjugacy class, elements sorted by their canonical encoding; `▷` is
/// conjugation in the ambient group.
pub struct ClassRack<G: Group> {
    group: G,
    elems: Vec<G::Elem>,
    invs: Vec<G::Elem>,
    index: FxHashMap<G::Elem, u32>,
    base: usize,
    table: OnceLock<TableRack>,
}

impl<G: Group> ClassRack<G>
where
    G::Elem: Ord + Send + Sync,
{
    pub fn new(group: G, x: &G::Elem, cap: usize) -> Result<Self, GroupError> {
        let x = group.mul(&group.identity(), x);
        let orbit = conjugacy_orbit(&group, &x, cap)?;
        Ok(Self::from_elements(group, orbit, &x))
    }

    /// `elems` must be a conjugacy class containing `base`.
    pub fn from_elements(group: G, mut elems: Vec<G::Elem>, base: &G::Elem) -> Self {
        elems.par_sort_unstable();
        elems.dedup();
        let invs = elems.par_iter().map(|e| group.inv(e)).collect();
        let index: FxHashMap<G::Elem, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let base = index[base] as usize;
        ClassRack {
            group,
            elems,
            invs,
            index,
            base,
            table: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &G {
        &self.group
    }
    pub fn elements(&self) -> &[G::Elem] {
        &self.elems
    }
    pub fn elem(&self, i: usize) -> &G::Elem {
        &self.elems[i]
    }
    pub fn index_of(&self, e: &G::Elem) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }
    /// Index of the element the class was built from.
    pub fn base(&self) -> usize {
        self.base
    }

    /// Materialises the operation table when the class is small enough;
    /// later operations read from it.
    pub fn tabulate(&self) -> Option<&TableRack> {
        if self.elems.len() > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let n = self.elems.len();
            let rows: Vec<Vec<usize>> = (0..n)
                .into_par_iter()
                .map(|i| (0..n).map(|j| self.op_direct(i, j)).collect())
                .collect();
            TableRack::from_table(super::RackTable { size: n, table: rows }).expect("conjugation rows are bijective")
        }))
    }

    fn op_direct(&self, i: usize, j: usize) -> usize {
        let g = &self.group;
        let z = g.mul(&g.mul(&self.elems[i], &self.elems[j]), &self.invs[i]);
        self.index[&z] as usize
    }
}

impl<G: Group> Rack for ClassRack<G>
where
    G::Elem: Ord + Send + Sync,
{
    fn len(&self) -> usize {
        self.elems.len()
    }
    fn op(&self, i: usize, j: usize) -> usize {
        match self.table.get() {
            Some(t) => t.op(i, j),
            None => self.op_direct(i, j),
        }
    }
    fn op_inv(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t.op_inv(i, j);
        }
        let g = &self.group;
        let z = g.mul(&g.mul(&self.invs[i], &self.elems[j]), &self.elems[i]);
        self.index[&z] as usize
    }
    fn label(&self, i: usize) -> String {
        self.group.render(&self.elems[i])
    }
    fn commute(&self, i: usize, j: usize) -> bool {
        match self.table.get() {
            Some(t) => t.op(i, j) == j,
            None => self.group.commute(&self.elems[i], &self.elems[j]),
        }
    }
    /// Group form: `(rs)² ≠ (sr)²`.
    fn d_inequality(&self, r: usize, s: usize) -> bool {
        if let Some(t) = self.table.get() {
            return t.d_inequality(r, s);
        }
        let g = &self.group;
        let rs = g.mul(&self.elems[r], &self.elems[s]);
        let sr = g.mul(&self.elems[s], &self.elems[r]);
        g.mul(&rs, &rs) != g.mul(&sr, &sr)
    }
}

/// Outcome of comparing a unipotent class of `SL_n(q)` with its image in
/// `PSL_n(q)`.
pub struct Projection {
    pub sl: ClassRack<GroupCtx>,
    pub psl: ClassRack<GroupCtx>,
    /// `map[i]` is the PSL index of the image of SL element `i`.
    pub map: Vec<usize>,
    pub pairs_checked: usize,
    pub exhaustive: bool,
}

/// Builds both classes, checks that the projection is a bijection and
/// commutes with `▷` (on all pairs up to 10⁶, on `samples` seeded pairs
/// beyond), and returns the PSL side.
pub fn project_unipotent_class(
    sl: &GroupCtx,
    x: &Matrix,
    cap: usize,
    samples: usize,
    seed: u64,
) -> Result<Projection, GroupError> {
    if sl.family() != Family::SL {
        return Err(GroupError::Shape("projection starts from an SL context".into()));
    }
    if !is_unipotent(x) {
        return Err(GroupError::NotUnipotent);
    }
    let x = sl.element(x.clone())?;
    let psl = sl.with_family(Family::PSL);
    let up = ClassRack::new(sl.clone(), &x, cap)?;
    let down = ClassRack::new(psl.clone(), &psl.canonicalize(x.clone()), cap)?;
    if up.len() != down.len() {
        return Err(GroupError::Verification(format!(
            "class sizes differ: {} in SL, {} in PSL",
            up.len(),
            down.len()
        )));
    }
    let map: Vec<usize> = up
        .elements()
        .par_iter()
        .map(|e| down.index_of(&psl.canonicalize(e.clone())).expect("image lies in the PSL class"))
        .collect();
    let mut hit = vec![false; down.len()];
    for &m in &map {
        if std::mem::replace(&mut hit[m], true) {
            return Err(GroupError::Verification("projection is not injective on the class".into()));
        }
    }
    let n = up.len();
    let exhaustive = n * n <= 1_000_000;
    let check = |i: usize, j: usize| map[up.op(i, j)] == down.op(map[i], map[j]);
    let ok = if exhaustive {
        (0..n).into_par_iter().all(|i| (0..n).all(|j| check(i, j)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| check(rng.gen_range(0..n), rng.gen_range(0..n)))
    };
    if !ok {
        return Err(GroupError::Verification("projection does not commute with ▷".into()));
    }
    Ok(Projection {
        sl: up,
        psl: down,
        map,
        pairs_checked: if exhaustive { n * n } else { samples },
        exhaustive,
    })
}
