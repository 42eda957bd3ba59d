//! Strips `R_a`: upper unitriangular matrices with superdiagonal `a`.

use rand::Rng;

use super::ClassRack;
use crate::ffield::{Fe, Field};
use crate::group::Group;
use crate::matgrp::unipotent::{in_strip, r_vec};
use crate::matgrp::{GroupCtx, Matrix};

/// Class members lying in `R_a`, ascending.
pub fn strip_members(class: &ClassRack<GroupCtx>, a: &[Fe]) -> Vec<usize> {
    (0..class.elements().len()).filter(|&i| in_strip(class.elem(i), a)).collect()
}

/// A uniformly random member of `R_a`.
pub fn random_strip_member<R: Rng>(field: &Field, a: &[Fe], rng: &mut R) -> Matrix {
    let mut m = r_vec(field, a);
    let n = m.n();
    for i in 0..n {
        for j in i + 2..n {
            m.set(i, j, rng.gen_range(0..field.q()) as Fe);
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripReport {
    /// `u ▷ v ∈ R_b` for all tested `u ∈ R_a`, `v ∈ R_b`.
    pub conjugation_stable: bool,
    /// `u v ∈ R_{a+b}`.
    pub products_in_sum: bool,
    /// `R_a ∩ R_b = ∅` for `a ≠ b`.
    pub disjoint: bool,
}

pub fn strip_stability(ctx: &GroupCtx, a: &[Fe], us: &[Matrix], b: &[Fe], vs: &[Matrix]) -> StripReport {
    let f = ctx.field();
    let sum: Vec<Fe> = a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect();
    let mut rep = StripReport {
        conjugation_stable: true,
        products_in_sum: true,
        disjoint: a == b || !us.iter().any(|u| in_strip(u, b)),
    };
    for u in us {
        for v in vs {
            rep.conjugation_stable &= in_strip(&ctx.conj(u, v), b);
            rep.products_in_sum &= in_strip(&u.mul(v), &sum);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::matgrp::unipotent::r_scalar;
    use crate::matgrp::Family;
    use rand::SeedableRng;

    #[test]
    fn strips_in_sl4_4() {
        let f = make_field(2, 2).unwrap();
        let ctx = GroupCtx::new(Family::SL, 4, &f).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (a, b) = (vec![1, 2, 3], vec![2, 2, 1]);
        let us: Vec<Matrix> = (0..20).map(|_| random_strip_member(&f, &a, &mut rng)).collect();
        let vs: Vec<Matrix> = (0..20).map(|_| random_strip_member(&f, &b, &mut rng)).collect();
        assert!(in_strip(&r_vec(&f, &a), &a));
        let rep = strip_stability(&ctx, &a, &us, &b, &vs);
        assert_eq!(
            rep,
            StripReport {
                conjugation_stable: true,
                products_in_sum: true,
                disjoint: true
            }
        );
    }

    #[test]
    fn strip_members_of_a_class() {
        let f = make_field(3, 1).unwrap();
        let ctx = GroupCtx::new(Family::SL, 3, &f).unwrap();
        let class = ClassRack::new(ctx, &r_scalar(&f, 3, 1), 100_000).unwrap();
        let members = strip_members(&class, &[1, 1]);
        // the strip R_(1,1) has q elements, all regular and conjugate to r_1
        assert_eq!(members.len(), 3);
        assert!(members.contains(&class.base()));
    }
}
