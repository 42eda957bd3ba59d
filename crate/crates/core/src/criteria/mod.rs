//! Collapse criteria: type D pairs, type F quadruples, two-generated
//! subrack evidence, dihedral parity and little triangles.

mod classify;
mod cthulhu;
mod dpair;
mod fquad;
mod triangle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matgrp::GroupError;
use crate::rack::{indecomposable_components, Rack};

pub use classify::{classify, ClassifyOptions, Verdict, VerdictTag, Witness};
pub use cthulhu::{cthulhu_two_generated, CthulhuEvidence, PairKind};
pub use dpair::{
    check_type_d_group, check_type_d_rack, find_type_d, reverify_d_group, DPairCheck, DSearch, TypeDWitness,
};
pub use fquad::{
    check_type_f_group, check_type_f_rack, find_type_f, reverify_f_group, FQuadCheck, FSearch, TypeFWitness,
};
pub use triangle::{dihedral_parity_check, find_little_triangle, verify_little_triangle, DihedralParity, LittleTriangle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("elements come from different racks")]
    MixedRacks,
    #[error("inputs must be pairwise distinct")]
    Duplicate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Budgeted,
}

/// How a search ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Found,
    /// Every candidate was examined.
    Exhausted,
    /// The evaluation budget ran out first.
    BudgetSpent,
    /// An orbit computation hit its cap.
    CapExceeded,
}

/// Candidate ordering for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Ascending canonical order over all candidates.
    Exhaustive,
    /// Seeded pseudo-random order, at most `budget` evaluations.
    Budgeted { seed: u64, budget: u64 },
}

impl Order {
    pub fn mode(&self) -> SearchMode {
        match self {
            Order::Exhaustive => SearchMode::Exhaustive,
            Order::Budgeted { .. } => SearchMode::Budgeted,
        }
    }
    pub fn seed(&self) -> u64 {
        match self {
            Order::Exhaustive => 0,
            Order::Budgeted { seed, .. } => *seed,
        }
    }
}

/// A full-period linear congruential walk over `0..n` (Hull–Dobell with a
/// power-of-two modulus), skipping values `≥ n`.
pub fn lcg_permutation(n: usize, seed: u64) -> impl Iterator<Item = usize> {
    let m = (n.max(4)).next_power_of_two() as u64;
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (seed >> 29);
    let a = ((mix >> 7) % (m / 4).max(1)) * 4 + 1;
    let c = (mix | 1) % m;
    let c = if c.is_multiple_of(2) { (c + 1) % m } else { c };
    let mut x = (mix >> 17) % m;
    (0..m).filter_map(move |_| {
        x = (a.wrapping_mul(x).wrapping_add(c)) % m;
        ((x as usize) < n).then_some(x as usize)
    })
}

/// One representative per `Inn`-orbit: enough base points for searches on
/// racks without an ambient group.
pub fn component_bases<R: Rack + ?Sized>(x: &R) -> Vec<usize> {
    let all: Vec<usize> = (0..x.len()).collect();
    indecomposable_components(x, &all).iter().map(|c| c[0]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_is_a_permutation() {
        for n in [1, 2, 3, 5, 17, 64, 100, 1000] {
            for seed in [0, 1, 42, u64::MAX] {
                let mut v: Vec<usize> = lcg_permutation(n, seed).collect();
                assert_eq!(v.len(), n);
                v.sort();
                assert_eq!(v, (0..n).collect::<Vec<_>>());
            }
        }
        let a: Vec<usize> = lcg_permutation(50, 1).collect();
        let b: Vec<usize> = lcg_permutation(50, 2).collect();
        assert_ne!(a, b);
    }
}
