use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rack::{separated_under, Rack};

/// Structure of the subrack generated by a pair `{r, s}`: the union of the
/// `⟨φ_r, φ_s⟩`-orbits of `r` and `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Abelian,
    Indecomposable,
    /// Two components, but `r ▷ (s ▷ (r ▷ s)) = s`.
    DecomposableNoD,
    /// Two components and the D inequality: a type D pair.
    DecomposableD,
    CapExceeded,
}

pub fn pair_kind<R: Rack + ?Sized>(x: &R, r: usize, s: usize, cap: usize) -> PairKind {
    if x.commute(r, s) {
        return PairKind::Abelian;
    }
    match separated_under(x, &[r, s], &[r, s], cap) {
        Err(Some(_)) => PairKind::Indecomposable,
        Err(None) => PairKind::CapExceeded,
        Ok(_) if x.d_inequality(r, s) => PairKind::DecomposableD,
        Ok(_) => PairKind::DecomposableNoD,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CthulhuEvidence {
    pub pairs_checked: u64,
    pub abelian: u64,
    pub indecomposable: u64,
    pub decomposable_without_d: u64,
    /// Every two-generated subrack met is abelian or indecomposable.
    pub strict: bool,
    /// First pair, in scan order, generating a subrack with a D pair.
    pub counterexample: Option<(String, String)>,
    pub cap_hit: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_d_exhaustive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_f_exhaustive: Option<bool>,
}

impl CthulhuEvidence {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && !self.cap_hit
    }
}

/// Classifies `{r, s}` for `r` in `bases` and every `s ≠ r`. A pair whose
/// subrack is decomposable still passes when the D inequality fails.
pub fn cthulhu_two_generated<R: Rack + ?Sized>(x: &R, bases: &[usize], cap: usize) -> CthulhuEvidence {
    let pairs: Vec<(usize, usize)> = bases
        .iter()
        .flat_map(|&r| (0..x.len()).filter(move |&s| s != r).map(move |s| (r, s)))
        .collect();
    let kinds: Vec<PairKind> = pairs.par_iter().map(|&(r, s)| pair_kind(x, r, s, cap)).collect();
    let count = |k: PairKind| kinds.iter().filter(|&&v| v == k).count() as u64;
    let counterexample = kinds
        .iter()
        .position(|&k| k == PairKind::DecomposableD)
        .map(|i| (x.label(pairs[i].0), x.label(pairs[i].1)));
    let decomposable_without_d = count(PairKind::DecomposableNoD);
    CthulhuEvidence {
        pairs_checked: pairs.len() as u64,
        abelian: count(PairKind::Abelian),
        indecomposable: count(PairKind::Indecomposable),
        decomposable_without_d,
        strict: decomposable_without_d == 0 && counterexample.is_none(),
        counterexample,
        cap_hit: count(PairKind::CapExceeded) > 0,
        no_d_exhaustive: None,
        no_f_exhaustive: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::component_bases;
    use crate::rack::{
        affine_rack, all_indices, indecomposable_components, is_abelian, subrack_closure, ClassRack,
    };
    use crate::perm::{Perm, PermGroup};

    /// The pair classification agrees with building the closure and
    /// computing its components.
    #[test]
    fn pair_kind_matches_closure() {
        let s4 = PermGroup::symmetric(4);
        let racks = [
            ClassRack::new(s4.clone(), &Perm::from_cycles(4, &[&[1, 2]]), 100).unwrap(),
            ClassRack::new(s4.clone(), &Perm::from_cycles(4, &[&[1, 2, 3]]), 100).unwrap(),
            ClassRack::new(s4, &Perm::from_cycles(4, &[&[1, 2, 3, 4]]), 100).unwrap(),
        ];
        for x in &racks {
            for r in 0..x.len() {
                for s in 0..x.len() {
                    if r == s {
                        continue;
                    }
                    let y = subrack_closure(x, &[r, s]);
                    let comps = indecomposable_components(x, &y).len();
                    match pair_kind(x, r, s, 1000) {
                        PairKind::Abelian => assert!(is_abelian(x, &y)),
                        PairKind::Indecomposable => assert_eq!(comps, 1),
                        _ => assert!(comps > 1 && !is_abelian(x, &y)),
                    }
                }
            }
        }
        assert!(all_indices(&racks[0]).len() == 6);
    }

    #[test]
    fn affine_d6_fails_and_d5_passes() {
        let d6 = affine_rack(6).unwrap();
        assert!(cthulhu_two_generated(&d6, &component_bases(&d6), 100).counterexample.is_some());
        let d5 = affine_rack(5).unwrap();
        let ev = cthulhu_two_generated(&d5, &component_bases(&d5), 100);
        assert!(ev.passed() && ev.strict);
    }
}
