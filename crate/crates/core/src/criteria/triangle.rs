use serde::{Deserialize, Serialize};

use super::CriteriaError;
use crate::group::Group;
use crate::matgrp::orbit::{centralizer_from_transversal, orbit_with_transversal, separated_conjugation_orbits};
use crate::matgrp::GroupError;
use crate::rack::ClassRack;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralParity {
    pub order_rs: u128,
    /// `|rs|` even: the two orbits should be separate.
    pub predicted_separated: bool,
    pub bfs_separated: bool,
}

/// For non-commuting involutions, `r` and `s` are in different
/// `⟨r, s⟩`-orbits iff `|rs|` is even.
pub fn dihedral_parity_check<G: Group>(
    g: &G,
    r: &G::Elem,
    s: &G::Elem,
    cap: usize,
) -> Result<DihedralParity, CriteriaError> {
    if g.is_identity(r) || g.is_identity(s) || !g.is_identity(&g.mul(r, r)) || !g.is_identity(&g.mul(s, s)) {
        return Err(CriteriaError::Precondition("both elements must be involutions".into()));
    }
    if g.commute(r, s) {
        return Err(CriteriaError::Precondition("the involutions commute".into()));
    }
    let order_rs = g.order_of(&g.mul(r, s));
    let bfs = match separated_conjugation_orbits(g, &[r.clone(), s.clone()], &[r.clone(), s.clone()], cap) {
        Ok(_) => true,
        Err(Some(_)) => false,
        Err(None) => return Err(GroupError::CapExceeded { cap }.into()),
    };
    Ok(DihedralParity {
        order_rs,
        predicted_separated: order_rs % 2 == 0,
        bfs_separated: bfs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LittleTriangle {
    pub sigma: [String; 3],
    pub h: u128,
    pub g2: String,
    pub g3: String,
}

/// Re-checks every defining condition by direct group arithmetic.
pub fn verify_little_triangle<G: Group>(g: &G, t: &LittleTriangle) -> bool {
    let parse = |s: &str| g.parse(s).ok();
    let (Some(s1), Some(s2), Some(s3), Some(g2), Some(g3)) =
        (parse(&t.sigma[0]), parse(&t.sigma[1]), parse(&t.sigma[2]), parse(&t.g2), parse(&t.g3))
    else {
        return false;
    };
    let distinct = s1 != s2 && s2 != s3 && s1 != s3;
    let commuting = g.commute(&s1, &s2) && g.commute(&s2, &s3) && g.commute(&s1, &s3);
    let power = t.h % 2 == 1 && g.pow(&s1, t.h) == g.mul(&s2, &s3);
    let conj = g.conj(&g2, &s1) == s2 && g.conj(&g3, &s1) == s3;
    let central = g.commute(&g.mul(&g3, &g2), &s1) && g.commute(&g.mul(&g2, &g3), &s1);
    distinct && commuting && power && conj && central
}

/// Fixes `σ_1` at the class base point, scans commuting `σ_2 < σ_3` in the
/// centralizer, odd `h` up to `|σ_1|`, then `g_2 ∈ t_2 C` and
/// `g_3 ∈ C g_2⁻¹`, where `C = C_G(σ_1)`.
pub fn find_little_triangle<G: Group>(
    g: &G,
    class: &ClassRack<G>,
    orbit_cap: usize,
    centralizer_cap: usize,
) -> Result<Option<LittleTriangle>, GroupError>
where
    G::Elem: Ord + Send + Sync,
{
    let s1 = class.elem(class.base()).clone();
    let tr = orbit_with_transversal(g, &s1, orbit_cap)?;
    let cent = centralizer_from_transversal(g, &tr, centralizer_cap)?;
    let cands: Vec<&G::Elem> = class.elements().iter().filter(|e| **e != s1 && g.commute(e, &s1)).collect();
    let ord = g.order_of(&s1);
    let powers: Vec<(u128, G::Elem)> = (1..=ord).step_by(2).map(|h| (h, g.pow(&s1, h))).collect();
    for (i, &s2) in cands.iter().enumerate() {
        for &s3 in &cands[i + 1..] {
            if !g.commute(s2, s3) {
                continue;
            }
            let prod = g.mul(s2, s3);
            let Some(&(h, _)) = powers.iter().find(|(_, p)| *p == prod) else {
                continue;
            };
            let t2 = &tr.transversal[tr.index[s2]];
            for c in &cent {
                let g2 = g.mul(t2, c);
                let g2_inv = g.inv(&g2);
                let tau = g.conj(&g2_inv, &s1);
                for c2 in &cent {
                    if g.conj(c2, &tau) != *s3 {
                        continue;
                    }
                    let g3 = g.mul(c2, &g2_inv);
                    let gg = g.mul(&g2, &g3);
                    if g.mul(&gg, &s1) == g.mul(&s1, &gg) {
                        return Ok(Some(LittleTriangle {
                            sigma: [g.render(&s1), g.render(s2), g.render(s3)],
                            h,
                            g2: g.render(&g2),
                            g3: g.render(&g3),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, PermGroup};
    use crate::rack::Rack;

    #[test]
    fn klein_triangle_in_a4() {
        let a4 = PermGroup::alternating(4);
        let x = Perm::from_cycles(4, &[&[1, 2], &[3, 4]]);
        let class = ClassRack::new(a4.clone(), &x, 100).unwrap();
        assert_eq!(class.len(), 3);
        let t = find_little_triangle(&a4, &class, 100, 100).unwrap().unwrap();
        assert_eq!(t.h, 1);
        assert!(verify_little_triangle(&a4, &t));
        let mut bad = t.clone();
        bad.h = 2;
        assert!(!verify_little_triangle(&a4, &bad));
    }

    #[test]
    fn identity_class_has_no_triangle() {
        let s3 = PermGroup::symmetric(3);
        let class = ClassRack::new(s3.clone(), &Perm::identity(3), 10).unwrap();
        assert_eq!(find_little_triangle(&s3, &class, 10, 10).unwrap(), None);
    }

    #[test]
    fn dihedral_parity() {
        let s3 = PermGroup::symmetric(3);
        let t = |a, b| Perm::from_cycles(3, &[&[a, b]]);
        let res = dihedral_parity_check(&s3, &t(1, 2), &t(1, 3), 100).unwrap();
        assert_eq!((res.order_rs, res.predicted_separated, res.bfs_separated), (3, false, false));
        let d4 = PermGroup::dihedral(4);
        let s = Perm::from_cycles(4, &[&[2, 4]]);
        let sr = Perm::from_cycles(4, &[&[1, 2], &[3, 4]]);
        let res = dihedral_parity_check(&d4, &s, &sr, 100).unwrap();
        assert_eq!((res.order_rs, res.predicted_separated, res.bfs_separated), (4, true, true));
        let comm = Perm::from_cycles(4, &[&[1, 3]]);
        assert!(dihedral_parity_check(&d4, &s, &comm, 100).is_err());
    }
}
