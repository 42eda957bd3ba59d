//! Mixed classes: nontrivial semisimple part times nontrivial unipotent part.

use super::{
    assertion, ctx, d_pair_assertions, field, hypothesis, literal_eq, Assertion, Construction, LemmaId, PaperwitError,
    WitnessParams,
};
use crate::ffield::{poly, Fe, Field};
use crate::group::Group;
use crate::matgrp::{in_i_q, solve_intertwiner, Family, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NonssCase {
    /// One semisimple block type, repeated twice, with a type (2) unipotent part.
    M1L1,
    /// The same shape over `F_9`, realized over `F_3`.
    M1L1Q9,
    /// Two scalar blocks, one carrying the unipotent part.
    M1Lgt1,
    /// `PSL_4(3)` with two type (2) parts on the eigenvalues `1` and `2`.
    Mgt1Psl43,
}

impl NonssCase {
    fn lemma(self) -> LemmaId {
        match self {
            NonssCase::M1L1 => LemmaId::NonssIq,
            NonssCase::M1L1Q9 => LemmaId::NonssQ9,
            NonssCase::M1Lgt1 => LemmaId::NonssThreeBlock,
            NonssCase::Mgt1Psl43 => LemmaId::NonssPsl43,
        }
    }
}

pub fn build_nonss_witness(case: NonssCase, params: &WitnessParams) -> Result<Construction, PaperwitError> {
    build(case, params)
}

pub(super) fn build(case: NonssCase, params: &WitnessParams) -> Result<Construction, PaperwitError> {
    match case {
        NonssCase::M1L1 => build_iq(params),
        NonssCase::M1L1Q9 => build_q9(),
        NonssCase::M1Lgt1 => build_three_block(params),
        NonssCase::Mgt1Psl43 => build_psl43(),
    }
}

pub(super) fn verify(case: NonssCase, params: &WitnessParams) -> Result<(Vec<Assertion>, Option<String>), PaperwitError> {
    match case {
        NonssCase::M1L1 => verify_iq(params),
        NonssCase::M1L1Q9 => Ok((verify_q9()?, None)),
        NonssCase::M1Lgt1 => Ok((
            verify_three_block(params)?,
            Some("only the displayed type (2) block layout is constructed".into()),
        )),
        NonssCase::Mgt1Psl43 => Ok((verify_psl43()?, None)),
    }
}

fn elements(case: NonssCase, g: crate::matgrp::GroupCtx, es: Vec<(&str, Matrix)>) -> Construction {
    Construction {
        lemma: case.lemma(),
        ctx: g,
        elements: es.into_iter().map(|(k, m)| (k.to_string(), m)).collect(),
    }
}

fn blocks2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    Matrix::from_blocks(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
}

// Case M = 1 = ℓ with a characteristic polynomial in the quasi-real set.

/// Smallest-degree, then smallest-encoding, monic irreducible polynomial in
/// the quasi-real set, with its scalar `c`.
fn smallest_quasi_real(f: &Field) -> Option<(Vec<Fe>, Fe)> {
    let q = f.q() as usize;
    for deg in 2..q {
        for k in 0..q.pow(deg as u32) {
            let mut p: Vec<Fe> = (0..deg).map(|i| ((k / q.pow(i as u32)) % q) as Fe).collect();
            p.push(1);
            if !poly::is_irreducible(f, &p) {
                continue;
            }
            if let Ok(Some(c)) = in_i_q(f, &p) {
                return Some((p, c));
            }
        }
    }
    None
}

fn build_iq(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = field(params.q_or(3))?;
    let (p, c) = smallest_quasi_real(&f)
        .ok_or_else(|| PaperwitError::Hypothesis(format!("no quasi-real irreducible polynomial over F_{}", f.q())))?;
    let s = Matrix::companion(&f, &p);
    let y = solve_intertwiner(&s, c)?;
    let l = s.n();
    let id = Matrix::identity(&f, l);
    let zero = Matrix::zero(&f, l);
    let r = blocks2(&s, &s, &zero, &s);
    let d = Matrix::block_diag(&[id, y.clone()]);
    let sw = d.mul(&r).mul(&d.inverse().map_err(crate::matgrp::GroupError::from)?);
    Ok(elements(
        NonssCase::M1L1,
        ctx(Family::GL, 2 * l, &f)?,
        vec![("r", r), ("s", sw), ("S", s), ("Y", y), ("c", Matrix::scalar(&f, 1, c))],
    ))
}

fn verify_iq(params: &WitnessParams) -> Result<(Vec<Assertion>, Option<String>), PaperwitError> {
    let con = build_iq(params)?;
    let f = con.ctx.field().clone();
    let (r, s, sm, y) = (con.get("r"), con.get("s"), con.get("S"), con.get("Y"));
    let c = con.get("c").get(0, 0);
    let l = sm.n();
    let yi = y.inverse().map_err(crate::matgrp::GroupError::from)?;
    let zero = Matrix::zero(&f, l);
    let c2 = f.mul(c, c);
    let mut out = vec![
        literal_eq("S^q = cS", &sm.pow(f.q() as u128), &sm.scale(c)),
        literal_eq("Y S Y^-1 = cS", &y.mul(sm).mul(&yi), &sm.scale(c)),
        assertion("det Y = 1 and Y is not scalar", y.det() == 1 && y.is_scalar().is_none(), y.literal()),
        literal_eq("s = (S, S Y^-1; 0, cS)", s, &blocks2(sm, &sm.mul(&yi), &zero, &sm.scale(c))),
    ];
    let rs = r.mul(s);
    let sr = s.mul(r);
    let (rs2, sr2) = (rs.mul(&rs), sr.mul(&sr));
    let s2 = sm.pow(2);
    let s4 = sm.pow(4);
    let want_rs = s4
        .scale(f.add(c, c2))
        .add(&s4.mul(&yi))
        .add(&s2.mul(&yi).mul(&s2).scale(c));
    let want_sr = s4
        .scale(f.add(c, 1))
        .add(&sm.pow(3).mul(&yi).mul(sm))
        .add(&sm.mul(&yi).mul(&sm.pow(3)).scale(c));
    out.push(literal_eq("(rs)^2", &rs2, &blocks2(&s4, &want_rs, &zero, &s4.scale(c2))));
    out.push(literal_eq("(sr)^2", &sr2, &blocks2(&s4, &want_sr, &zero, &s4.scale(c2))));
    out.push(assertion(
        "(rs)^2 = (sr)^2 iff c^2 = 1",
        (rs2 == sr2) == (c2 == 1),
        format!("c = {c}, c^2 = {c2}, squares equal: {}", rs2 == sr2),
    ));
    // Conjugation by r and s keeps block upper triangular shape and fixes the
    // diagonal blocks, because S and cS commute with S.
    let shape = |m: &Matrix| m.block(l, 0, l) == zero;
    let fixes = |m: &Matrix| {
        let (a, d) = (m.block(0, 0, l), m.block(l, l, l));
        a.mul(sm) == sm.mul(&a) && d.mul(sm) == sm.mul(&d)
    };
    out.push(assertion(
        "orbits stay in the (S, S) and (S, cS) diagonal strips, which differ modulo scalars",
        shape(r) && shape(s) && fixes(r) && fixes(s) && c != 1,
        "",
    ));
    let det = r.det();
    let note = if det != 1 {
        Some(format!(
            "det r = {det} != 1 over F_{}, so the pair lives in GL only; the block identities are checked as matrix algebra",
            f.q()
        ))
    } else if c2 == 1 {
        Some("c^2 = 1, so the squares agree and this layout is not a D pair".into())
    } else {
        let g = ctx(Family::PSL, 2 * l, &f)?;
        out.extend(d_pair_assertions(&g, &g.element(r.clone())?, &g.element(s.clone())?, "PSL"));
        None
    };
    Ok((out, note))
}

// q^Λ = 9, realized over F_3.

fn build_q9() -> Result<Construction, PaperwitError> {
    let f = field(3)?;
    let s = Matrix::from_ints(&f, &[&[0, 1], &[2, 0]]);
    let rr = Matrix::from_ints(&f, &[&[1, 1], &[1, 2]]);
    let id = Matrix::identity(&f, 2);
    let zero = Matrix::zero(&f, 2);
    let w = blocks2(&zero, &id, &id.scale(2), &zero);
    let r = blocks2(&s, &s, &zero, &s);
    let big_r = blocks2(&rr, &rr, &zero, &rr);
    let sw = w.mul(&big_r).mul(&w.inverse().map_err(crate::matgrp::GroupError::from)?);
    Ok(elements(
        NonssCase::M1L1Q9,
        ctx(Family::PSL, 4, &f)?,
        vec![("r", r), ("s", sw), ("S", s), ("R", rr), ("W", w)],
    ))
}

fn verify_q9() -> Result<Vec<Assertion>, PaperwitError> {
    let con = build_q9()?;
    let g = &con.ctx;
    let f = g.field().clone();
    let (r, s, sm, rr, w) = (con.get("r"), con.get("s"), con.get("S"), con.get("R"), con.get("W"));
    let zero = Matrix::zero(&f, 2);
    let sl2 = ctx(Family::SL, 2, &f)?;
    let t = crate::matgrp::orbit::subgroup_closure(&sl2, sl2.generators(), 100)?
        .into_iter()
        .find(|t| t.mul(sm).mul(&t.inverse().expect("invertible")) == *rr);
    let p2 = ctx(Family::PSL, 2, &f)?;
    let mut out = vec![
        assertion("det S = det R = 1", sm.det() == 1 && rr.det() == 1, ""),
        assertion("S and R are SL_2(3)-conjugate", t.is_some(), t.as_ref().map(|t| t.literal()).unwrap_or_default()),
        literal_eq("SR = -RS", &sm.mul(rr), &rr.mul(sm).scale(2)),
        assertion(
            "images of S and R commute in PSL_2(3)",
            p2.commute(&p2.element(sm.clone())?, &p2.element(rr.clone())?),
            "",
        ),
        assertion("S and R are not proportional", (1..3).all(|k| sm.scale(k) != *rr), ""),
        assertion("det W = 1", w.det() == 1, ""),
        literal_eq("s = (R, 0; 2R, R)", s, &blocks2(rr, &zero, &rr.scale(2), rr)),
    ];
    if let Some(t) = &t {
        let c = w.mul(&Matrix::block_diag(&[t.clone(), t.clone()]));
        out.push(literal_eq(
            "W diag(T, T) conjugates r to s",
            &c.mul(r).mul(&c.inverse().expect("invertible")),
            s,
        ));
    }
    out.extend(d_pair_assertions(g, &g.element(r.clone())?, &g.element(s.clone())?, "PSL_4(3)"));
    Ok(out)
}

// Two scalar eigenvalues, one Jordan pair.

fn three_block_scalars(f: &Field) -> Result<(Fe, Fe), PaperwitError> {
    let a = f.nonzero().find(|&a| f.pow(a, 3) != 1);
    let a = a.ok_or_else(|| PaperwitError::Hypothesis(format!("every unit of F_{} is a cube root of 1", f.q())))?;
    let ai = f.inv(a).expect("nonzero");
    Ok((a, f.mul(ai, ai)))
}

fn build_three_block(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = field(params.q_or(3))?;
    let (a, b) = three_block_scalars(&f)?;
    let r = Matrix::from_encodings(&f, &[&[a, a, 0], &[0, a, 0], &[0, 0, b]]).expect("valid");
    let s = Matrix::from_encodings(&f, &[&[b, 0, 0], &[0, a, a], &[0, 0, a]]).expect("valid");
    Ok(elements(NonssCase::M1Lgt1, ctx(Family::PSL, 3, &f)?, vec![("r", r), ("s", s)]))
}

fn verify_three_block(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let con = build_three_block(params)?;
    let (g, f) = (&con.ctx, con.ctx.field().clone());
    let (r, s) = (con.get("r"), con.get("s"));
    let (a, b) = three_block_scalars(&f)?;
    hypothesis(a != b, "the two eigenvalues must differ")?;
    let p = Matrix::from_ints(&f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let m = |x: Fe, y: Fe| f.mul(x, y);
    let a2 = m(a, a);
    let a3 = m(a2, a);
    let (apb, ap2b) = (f.add(a, b), f.add(a, f.add(b, b)));
    let want_rs = Matrix::from_encodings(
        &f,
        &[&[m(a2, m(b, b)), m(a3, apb), m(a3, ap2b)], &[0, m(a3, a), m(a3, apb)], &[0, 0, m(a2, m(b, b))]],
    )
    .expect("valid");
    let a2b = m(a2, b);
    let want_sr = Matrix::from_encodings(
        &f,
        &[&[m(a2, m(b, b)), m(a2b, apb), m(a2, m(b, b))], &[0, m(a3, a), m(a2b, apb)], &[0, 0, m(a2, m(b, b))]],
    )
    .expect("valid");
    let rs = r.mul(s);
    let sr = s.mul(r);
    let mut out = vec![
        assertion("det r = 1", r.det() == 1, ""),
        assertion("P is in SL_3", p.det() == 1, ""),
        literal_eq("s = P r P^-1", s, &p.mul(r).mul(&p.inverse().expect("invertible"))),
        literal_eq("(rs)^2", &rs.mul(&rs), &want_rs),
        literal_eq("(sr)^2", &sr.mul(&sr), &want_sr),
    ];
    out.extend(d_pair_assertions(g, &g.element(r.clone())?, &g.element(s.clone())?, "PSL_3(q)"));
    Ok(out)
}

// PSL_4(3), eigenvalues 1 and 2 each with a type (2) part.

fn build_psl43() -> Result<Construction, PaperwitError> {
    let f = field(3)?;
    let r = Matrix::from_ints(&f, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 2], &[0, 0, 0, 2]]);
    let p = Matrix::from_ints(&f, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]]);
    let s = p.mul(&r).mul(&p.inverse().expect("invertible"));
    Ok(elements(NonssCase::Mgt1Psl43, ctx(Family::PSL, 4, &f)?, vec![("r", r), ("s", s), ("P", p)]))
}

fn verify_psl43() -> Result<Vec<Assertion>, PaperwitError> {
    let con = build_psl43()?;
    let (g, f) = (&con.ctx, con.ctx.field().clone());
    let (r, s, p) = (con.get("r"), con.get("s"), con.get("P"));
    let want = Matrix::from_ints(&f, &[&[1, 0, 0, 1], &[0, 2, 2, 0], &[0, 0, 2, 0], &[0, 0, 0, 1]]);
    let diag = |m: &Matrix| (0..4).map(|i| m.get(i, i)).collect::<Vec<_>>();
    let neg: Vec<Fe> = diag(s).into_iter().map(|x| f.neg(x)).collect();
    let mut out = vec![
        assertion("det r = det P = 1", r.det() == 1 && p.det() == 1, ""),
        literal_eq("s = P r P^-1", s, &want),
        assertion("r and s are upper triangular", r.is_upper_triangular() && s.is_upper_triangular(), ""),
        assertion(
            "diagonals differ modulo -1",
            diag(r) != diag(s) && diag(r) != neg,
            format!("{:?} vs {:?}", diag(r), diag(s)),
        ),
    ];
    out.extend(d_pair_assertions(g, &g.element(r.clone())?, &g.element(s.clone())?, "PSL_4(3)"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(v: &[Assertion]) {
        for a in v {
            assert!(a.pass, "{}: {}", a.name, a.detail);
        }
    }

    #[test]
    fn quasi_real_choices() {
        let (p, c) = smallest_quasi_real(&field(3).unwrap()).unwrap();
        assert_eq!((p, c), (vec![1, 0, 1], 2));
        let (p, _) = smallest_quasi_real(&field(4).unwrap()).unwrap();
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn quasi_real_cases() {
        let (v, note) = verify_iq(&WitnessParams::q(3)).unwrap();
        all_pass(&v);
        assert!(note.unwrap().contains("c^2 = 1"));
        let (v, note) = verify_iq(&WitnessParams::q(4)).unwrap();
        all_pass(&v);
        assert!(note.unwrap().contains("GL only"));
    }

    #[test]
    fn q9_and_psl43() {
        all_pass(&verify_q9().unwrap());
        all_pass(&verify_psl43().unwrap());
    }

    #[test]
    fn three_block() {
        for q in [3, 5, 7] {
            all_pass(&verify_three_block(&WitnessParams::q(q)).unwrap());
        }
        assert!(build_three_block(&WitnessParams::q(4)).is_err());
    }
}
