use super::{
    assertion, ctx, d_pair_assertions, field, hypothesis, literal_eq, Assertion, Construction, LemmaId, PaperwitError,
    WitnessParams, WITNESS_CAP,
};
use crate::ffield::make_field;
use crate::group::Group;
use crate::matgrp::orbit::{centralizer_elements, subgroup_closure};
use crate::matgrp::unipotent::{in_strip, r_scalar, r_vec, regular_class_membership, unipotent_type};
use crate::matgrp::{Family, Matrix};

fn odd_q(params: &WitnessParams, default: u32) -> Result<crate::ffield::Field, PaperwitError> {
    let f = field(params.q_or(default))?;
    hypothesis(f.p() != 2, "the construction needs odd characteristic")?;
    Ok(f)
}

// SL_2(q), q an odd square other than 9: r = r_1 and the lower transvection
// by a nonsquare x ≠ 2 of the prime field.

pub(super) fn build_sl2_odd_square(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = odd_q(params, 25)?;
    hypothesis(f.m() % 2 == 0, format!("q = {} is not a square", f.q()))?;
    hypothesis(f.q() != 9, "q = 9 is excluded")?;
    let fp = make_field(f.p(), 1)?;
    let x = fp
        .nonzero()
        .find(|&x| x != 2 && !fp.is_square(x).unwrap_or(true))
        .ok_or_else(|| PaperwitError::Hypothesis(format!("F_{} has no nonsquare other than 2", f.p())))?;
    let g = ctx(Family::SL, 2, &f)?;
    let r = r_scalar(&f, 2, 1);
    let s = Matrix::from_ints(&f, &[&[1, 0], &[-(x as i64), 1]]);
    let v = r_scalar(&f, 2, x);
    Ok(Construction {
        lemma: LemmaId::Sl2OddSquare,
        ctx: g,
        elements: vec![("r".into(), r), ("s".into(), s), ("v".into(), v)],
    })
}

pub(super) fn verify_sl2_odd_square(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_sl2_odd_square(params)?;
    let f = c.ctx.field().clone();
    let fp = make_field(f.p(), 1)?;
    let (r, s, v) = (c.get("r"), c.get("s"), c.get("v"));
    let x = v.get(0, 1);
    let mut out = Vec::new();
    let w = Matrix::from_ints(&f, &[&[0, 1], &[-1, 0]]);
    out.push(literal_eq("s = w r_x w^-1 with w in SL_2(p)", &c.ctx.conj(&w, v), s));
    let vp = r_scalar(&fp, 2, x);
    let over_p = regular_class_membership(&vp, 1)?;
    out.push(assertion(
        "r_1 and r_x are not conjugate in SL_2(p)",
        !over_p.member,
        format!("x = {x}"),
    ));
    let over_q = regular_class_membership(v, 1)?;
    out.push(assertion(
        "r_x lies in the class of r_1 in SL_2(q)",
        over_q.member,
        format!("theta = {:?}", over_q.theta),
    ));
    out.extend(d_pair_assertions(&c.ctx, r, s, "SL_2(q)"));
    let psl = c.ctx.with_family(Family::PSL);
    out.extend(d_pair_assertions(&psl, &psl.canonicalize(r.clone()), &psl.canonicalize(s.clone()), "PSL_2(q)"));
    Ok(out)
}

// Regular classes, q odd: r_1 and its conjugate by t = diag(1, ζ, ζ⁻¹, 1, …).

fn zeta_cube(f: &crate::ffield::Field) -> Option<u16> {
    f.nonzero().find(|&z| f.pow(z, 3) != 1)
}

pub(super) fn build_regular_odd(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = odd_q(params, 5)?;
    let n = params.n_or(3);
    hypothesis(n >= 3, "the regular construction needs n ≥ 3")?;
    let z = zeta_cube(&f).ok_or_else(|| PaperwitError::Hypothesis("every element is a cube root of 1".into()))?;
    let zi = f.inv(z).expect("nonzero");
    let mut d = vec![1; n];
    d[1] = z;
    d[2] = zi;
    let t = Matrix::diag(&f, &d);
    let r = r_scalar(&f, n, 1);
    let b = c_tr(&t, &r).superdiagonal();
    let rb = r_vec(&f, &b);
    Ok(Construction {
        lemma: LemmaId::RegularOdd,
        ctx: ctx(Family::SL, n, &f)?,
        elements: vec![("r".into(), r), ("s".into(), rb), ("t".into(), t)],
    })
}

fn c_tr(t: &Matrix, r: &Matrix) -> Matrix {
    t.mul(r).mul(&t.inverse().expect("invertible"))
}

pub(super) fn verify_regular_odd(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_regular_odd(params)?;
    let f = c.ctx.field().clone();
    let (r, s, t) = (c.get("r"), c.get("s"), c.get("t"));
    let b = s.superdiagonal();
    let z = t.get(1, 1);
    let zi = f.inv(z).expect("nonzero");
    let mut out = Vec::new();
    out.push(assertion("det t = 1", t.det() == 1, ""));
    out.push(assertion("t r_1 t^-1 lies in R_b", in_strip(&c_tr(t, r), &b), format!("b = {b:?}")));
    let mut expect = vec![1; b.len()];
    expect[0] = zi;
    expect[1] = f.mul(z, z);
    if b.len() > 2 {
        expect[2] = zi;
    }
    out.push(assertion(
        "b = (ζ^-1, ζ^2, ζ^-1, 1, …) with the third entry present for n ≥ 4",
        b == expect,
        format!("ζ = {z}"),
    ));
    out.push(assertion("strips R_1 and R_b are distinct", b != vec![1; b.len()], ""));
    let m = regular_class_membership(s, 1)?;
    out.push(assertion("R_b meets the class of r_1", m.member, format!("theta = {:?}", m.theta)));
    out.extend(d_pair_assertions(&c.ctx, r, s, "SL_n(q)"));
    Ok(out)
}

// Type (2,2), q odd: r = diag(r_1, r_1) and s = t ▷ r for the displayed t.

pub(super) fn build_type22(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = odd_q(params, 3)?;
    let z = f.smallest_nonsquare().expect("odd q has nonsquares");
    let zi = f.inv(z).expect("nonzero");
    let (nz, nzi) = (f.neg(z), f.neg(zi));
    let r1 = r_scalar(&f, 2, 1);
    let u = Matrix::block_diag(&[r1.clone(), r1]);
    let t = Matrix::from_encodings(&f, &[&[0, nz, 1, 1], &[1, 0, 0, 0], &[0, 0, 0, nzi], &[0, 0, 1, 0]])
        .expect("valid encodings");
    let s = c_tr(&t, &u);
    Ok(Construction {
        lemma: LemmaId::Type22Odd,
        ctx: ctx(Family::SL, 4, &f)?,
        elements: vec![("r".into(), u), ("s".into(), s), ("t".into(), t)],
    })
}

pub(super) fn verify_type22(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_type22(params)?;
    let f = c.ctx.field().clone();
    let (r, s, t) = (c.get("r"), c.get("s"), c.get("t"));
    let z = f.neg(t.get(0, 1));
    let zi = f.inv(z).expect("nonzero");
    let (nz, nzi) = (f.neg(z), f.neg(zi));
    let display = Matrix::from_encodings(&f, &[&[1, 0, nz, 0], &[nzi, 1, f.neg(1), zi], &[0, 0, 1, 0], &[0, 0, nz, 1]])
        .expect("valid encodings");
    let mut out = vec![
        assertion("det t = 1", t.det() == 1, format!("det t = {}", t.det())),
        literal_eq("t ▷ r matches the displayed s", s, &display),
    ];
    let block_ut = |m: &Matrix| (2..4).all(|i| (0..2).all(|j| m.get(i, j) == 0));
    let blocks_sl2 = |m: &Matrix| m.block(0, 0, 2).det() == 1 && m.block(2, 2, 2).det() == 1;
    out.push(assertion(
        "r and s are block upper triangular with SL_2 diagonal blocks",
        block_ut(r) && block_ut(s) && blocks_sl2(r) && blocks_sl2(s),
        "",
    ));
    let lower = s.block(0, 0, 2);
    let w = Matrix::from_ints(&f, &[&[0, 1], &[-1, 0]]);
    let upper = c_tr(&w, &lower);
    out.push(literal_eq(
        "leading block of s is SL_2-conjugate to (1 ζ^-1; 0 1)",
        &upper,
        &r_scalar(&f, 2, zi),
    ));
    let m = regular_class_membership(&upper, 1)?;
    out.push(assertion(
        "(1 ζ^-1; 0 1) is not in the class of r_1 in SL_2(q)",
        !m.member,
        format!("ζ = {z}"),
    ));
    out.extend(d_pair_assertions(&c.ctx, r, s, "SL_4(q)"));
    Ok(out)
}

// Type (2,1), q odd: r = Id + e_12 and its conjugate by the cyclic
// permutation matrix.

pub(super) fn build_type21(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = odd_q(params, 3)?;
    let r = Matrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let p = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let s = c_tr(&p, &r);
    Ok(Construction {
        lemma: LemmaId::Type21Odd,
        ctx: ctx(Family::SL, 3, &f)?,
        elements: vec![("r".into(), r), ("s".into(), s), ("p".into(), p)],
    })
}

pub(super) fn verify_type21(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_type21(params)?;
    let f = c.ctx.field().clone();
    let (r, s, p) = (c.get("r"), c.get("s"), c.get("p"));
    let mut out = vec![
        assertion("det of the permutation matrix is 1", p.det() == 1, ""),
        literal_eq("conjugate is Id + e_31", s, &Matrix::from_ints(&f, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]])),
        assertion(
            "both have type (2,1)",
            unipotent_type(r)?.parts() == [2, 1] && unipotent_type(s)?.parts() == [2, 1],
            "",
        ),
    ];
    let h = subgroup_closure(&c.ctx, &[r.clone(), s.clone()], WITNESS_CAP)?;
    let pcube = (f.p() as usize).pow(3);
    let shaped = h
        .iter()
        .all(|m| (0..3).all(|i| m.get(i, i) == 1) && m.get(0, 2) == 0 && m.get(1, 0) == 0 && m.get(1, 2) == 0);
    out.push(assertion(format!("|<r,s>| = p^3 = {pcube}"), h.len() == pcube, format!("|H| = {}", h.len())));
    out.push(assertion("every element of <r,s> has the displayed shape", shaped, ""));
    let prime = h.iter().all(|m| m.entries().iter().all(|&x| (x as u32) < f.p()));
    out.push(assertion("entries of <r,s> lie in the prime field", prime, ""));
    out.extend(d_pair_assertions(&c.ctx, r, s, "SL_3(q)"));
    Ok(out)
}

// GL_2(q), q > 3 odd: s = u and r_d = A_d u A_d⁻¹ for a nonsquare d, 2d ≠ 1.

pub(super) fn build_gl2(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = odd_q(params, 5)?;
    hypothesis(f.q() > 3, "q must exceed 3")?;
    let two = f.from_int(2);
    let d = f
        .nonzero()
        .find(|&d| !f.is_square(d).unwrap_or(true) && f.mul(two, d) != 1)
        .ok_or_else(|| PaperwitError::Hypothesis("no nonsquare d with 2d ≠ 1".into()))?;
    let u = r_scalar(&f, 2, 1);
    let ad = Matrix::from_encodings(&f, &[&[1, 0], &[1, d]]).expect("valid encodings");
    let rd = c_tr(&ad, &u);
    Ok(Construction {
        lemma: LemmaId::Gl2,
        ctx: ctx(Family::GL, 2, &f)?,
        elements: vec![("r".into(), rd), ("s".into(), u), ("a".into(), ad)],
    })
}

pub(super) fn verify_gl2(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_gl2(params)?;
    let f = c.ctx.field().clone();
    let g = &c.ctx;
    let (rd, s, ad) = (c.get("r"), c.get("s"), c.get("a"));
    let d = ad.get(1, 1);
    let di = f.inv(d).expect("nonzero");
    let e = |k: i64| f.from_int(k);
    let sub = |a: u16, b: u16| f.sub(a, b);
    let display_r = Matrix::from_encodings(&f, &[&[sub(d, 1), 1], &[f.neg(1), f.add(d, 1)]])
        .expect("valid")
        .scale(di);
    let d2 = f.mul(d, d);
    let t_disp = Matrix::from_encodings(
        &f,
        &[
            &[f.add(d2, sub(d, e(2))), f.add(sub(d2, f.mul(e(4), d)), e(4))],
            &[f.neg(1), f.add(sub(d2, d), e(2))],
        ],
    )
    .expect("valid")
    .scale(f.mul(di, di));
    let t = g.conj(s, &g.conj(rd, s));
    let mut out = vec![
        literal_eq("A_d u A_d^-1 matches the displayed r_d", rd, &display_r),
        literal_eq("s ▷ (r_d ▷ s) matches the displayed t", &t, &t_disp),
        assertion("det A_d is a nonsquare", !f.is_square(ad.det())?, format!("d = {d}")),
        assertion("2d ≠ 1", f.mul(e(2), d) != 1, ""),
        assertion("r_d ▷ (s ▷ (r_d ▷ s)) ≠ s", g.conj(rd, &t) != *s, ""),
    ];
    let cent = centralizer_elements(g, s, WITNESS_CAP, WITNESS_CAP)?;
    let q = f.q() as usize;
    out.push(assertion(
        "C(u) consists of the q(q-1) matrices (a b; 0 a)",
        cent.len() == q * (q - 1) && cent.iter().all(|m| m.get(1, 0) == 0 && m.get(0, 0) == m.get(1, 1)),
        format!("|C(u)| = {}", cent.len()),
    ));
    out.push(assertion(
        "every centralizer determinant is a square",
        cent.iter().all(|m| f.is_square(m.det()).unwrap_or(false)),
        "",
    ));
    out.extend(d_pair_assertions(g, rd, s, "GL_2(q)"));
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
    fn sl2_odd_square_at_25() {
        let c = build_sl2_odd_square(&WitnessParams::q(25)).unwrap();
        assert_eq!(c.get("s").literal(), "1,0;2,1");
        all_pass(&verify_sl2_odd_square(&WitnessParams::q(25)).unwrap());
        assert!(build_sl2_odd_square(&WitnessParams::q(9)).is_err());
        assert!(build_sl2_odd_square(&WitnessParams::q(81)).is_err());
        assert!(build_sl2_odd_square(&WitnessParams::q(27)).is_err());
    }

    #[test]
    fn regular_odd_vector_b() {
        let c = build_regular_odd(&WitnessParams::nq(4, 5)).unwrap();
        // ζ = 2, ζ⁻¹ = 3, ζ² = 4.
        assert_eq!(c.get("s").superdiagonal(), vec![3, 4, 3]);
        for (n, q) in [(3, 5), (3, 7), (4, 5), (4, 7)] {
            all_pass(&verify_regular_odd(&WitnessParams::nq(n, q)).unwrap());
        }
    }

    #[test]
    fn small_odd_families() {
        for q in [3, 5] {
            all_pass(&verify_type22(&WitnessParams::q(q)).unwrap());
            all_pass(&verify_type21(&WitnessParams::q(q)).unwrap());
        }
        for q in [5, 7] {
            all_pass(&verify_gl2(&WitnessParams::q(q)).unwrap());
        }
        assert!(build_gl2(&WitnessParams::q(3)).is_err());
        assert!(build_type21(&WitnessParams::q(4)).is_err());
    }
}
