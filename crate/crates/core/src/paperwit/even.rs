use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::{
    assertion, ctx, d_pair_assertions, field, hypothesis, literal_eq, Assertion, Construction, LemmaId, PaperwitError,
    WitnessParams, WITNESS_CAP,
};
use crate::criteria::{cthulhu_two_generated, find_type_d, reverify_d_group, Order, Outcome};
use crate::ffield::Field;
use crate::group::Group;
use crate::matgrp::orbit::{separated_conjugation_orbits, subgroup_closure};
use crate::matgrp::unipotent::{r_scalar, regular_sl_conjugator, unipotent_representative, unipotent_type};
use crate::matgrp::{Family, GroupCtx, Matrix, Partition};
use crate::rack::{ClassRack, Rack};

fn even_q(params: &WitnessParams, default: u32) -> Result<Field, PaperwitError> {
    let f = field(params.q_or(default))?;
    hypothesis(f.p() == 2, "the construction needs even q")?;
    Ok(f)
}

fn class_of(g: &GroupCtx, parts: &[usize]) -> Result<ClassRack<GroupCtx>, PaperwitError> {
    let lambda = Partition::new(parts.to_vec())?;
    let x = g.element(unipotent_representative(g.field(), &lambda))?;
    Ok(ClassRack::new(g.clone(), &x, WITNESS_CAP)?)
}

// PSL_4(2) = SL_4(2): the four nontrivial unipotent types, by direct search.

pub(super) fn verify_psl4_2(_params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let f = field(2)?;
    let g = ctx(Family::PSL, 4, &f)?;
    let order = g.group_order();
    let mut out = Vec::new();
    for (parts, cent, d_expected) in [
        (&[2, 1, 1][..], 192u32, false),
        (&[2, 2][..], 96, true),
        (&[3, 1][..], 0, true),
        (&[4][..], 0, true),
    ] {
        let x = class_of(&g, parts)?;
        let tag = format!("{:?}", parts);
        if cent > 0 {
            let got = &order / BigUint::from(x.len());
            out.push(assertion(
                format!("{tag}: centralizer order {cent}"),
                got == BigUint::from(cent),
                format!("|class| = {}, |C| = {got}", x.len()),
            ));
        }
        let d = find_type_d(&x, &[x.base()], Order::Exhaustive, WITNESS_CAP);
        if d_expected {
            let w = d.witness.as_ref();
            out.push(assertion(
                format!("{tag}: D witness found and re-verified"),
                w.is_some_and(|w| reverify_d_group(&g, w, WITNESS_CAP)),
                w.map(|w| format!("r = {}, s = {}", w.r, w.s)).unwrap_or_default(),
            ));
            if let (Some(w), [2, 2]) = (w, parts) {
                out.extend(embedded_d(&g, &w.r, &w.s)?);
            }
        } else {
            out.push(assertion(
                format!("{tag}: exhaustive D search finds nothing"),
                d.outcome == Outcome::Exhausted,
                format!("{} candidates", d.budget_spent),
            ));
            let ev = cthulhu_two_generated(&x, &[x.base()], WITNESS_CAP);
            out.push(assertion(
                format!("{tag}: two-generated subracks pass"),
                ev.passed(),
                format!(
                    "{} pairs: {} abelian, {} indecomposable, {} decomposable without D",
                    ev.pairs_checked, ev.abelian, ev.indecomposable, ev.decomposable_without_d
                ),
            ));
        }
    }
    Ok(out)
}

/// A D pair over `F_2` stays one after embedding into `PSL_4(4)`.
fn embedded_d(g: &GroupCtx, r: &str, s: &str) -> Result<Vec<Assertion>, PaperwitError> {
    let big = ctx(Family::PSL, 4, &field(4)?)?;
    let lift = |t: &str| -> Result<Matrix, PaperwitError> {
        let m = g.parse_element(t)?;
        Ok(big.element(m.embed_prime_field(big.field()).map_err(crate::matgrp::GroupError::from)?)?)
    };
    Ok(d_pair_assertions(&big, &lift(r)?, &lift(s)?, "(2,2) pair inside PSL_4(4)"))
}

// Two Jordan blocks of sizes λ1 ≥ λ2 ≥ 3 over even q.

pub(super) fn build_two_big_blocks(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = even_q(params, 2)?;
    let lambda = params.partition.clone().unwrap_or(Partition::new(vec![3, 3])?);
    let &[l1, l2] = lambda.parts() else {
        return Err(PaperwitError::Hypothesis("expected two blocks".into()));
    };
    hypothesis(l2 >= 3, "both blocks must have size at least 3")?;
    let n = l1 + l2;
    let x1 = r_scalar(&f, l1, 1);
    let x2 = r_scalar(&f, l2, 1);
    let u = Matrix::block_diag(&[x1.clone(), x2.clone()]);
    let mut p = Matrix::identity(&f, n);
    p.set(l1 - 1, l1, 1);
    let d = Matrix::block_diag(&[x1.inverse().expect("invertible"), x2]);
    let v = p.mul(&d).mul(&p);
    Ok(Construction {
        lemma: LemmaId::TwoBigBlocksEven,
        ctx: ctx(Family::SL, n, &f)?,
        elements: vec![("r".into(), u), ("s".into(), v), ("p".into(), p)],
    })
}

fn top_right(m: &Matrix, l1: usize, l2: usize) -> Vec<Vec<u16>> {
    (0..l1).map(|i| (0..l2).map(|j| m.get(i, l1 + j)).collect()).collect()
}

pub(super) fn verify_two_big_blocks(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_two_big_blocks(params)?;
    let f = c.ctx.field().clone();
    let (u, v, p) = (c.get("r"), c.get("s"), c.get("p"));
    let lambda = unipotent_type(u)?;
    let (l1, l2) = (lambda.parts()[0], lambda.parts()[1]);
    let mut out = vec![
        assertion("P is an involution in SL_n", p.mul(p).is_identity() && p.det() == 1, ""),
        assertion("v has the type of u", unipotent_type(v)? == lambda, format!("type {lambda}")),
    ];
    let x1inv = u.block(0, 0, l1).inverse().expect("invertible");
    let mut z1 = vec![vec![0u16; l2]; l1];
    for row in z1.iter_mut().take(l1 - 1) {
        row[0] = 1;
    }
    z1[l1 - 1][1] = 1;
    out.push(assertion(
        "v = (x1^-1, z1; 0, x2)",
        v.block(0, 0, l1) == x1inv && top_right(v, l1, l2) == z1 && v.block(l1, l1, l2) == u.block(l1, l1, l2),
        v.literal(),
    ));
    let uv = u.mul(v);
    let vu = v.mul(u);
    let (uv2, vu2) = (uv.mul(&uv), vu.mul(&vu));
    let x2_4 = u.block(l1, l1, l2).pow(4);
    for (name, m) in [("(uv)^2", &uv2), ("(vu)^2", &vu2)] {
        out.push(assertion(
            format!("{name} has diagonal blocks Id and x2^4"),
            m.block(0, 0, l1).is_identity() && m.block(l1, l1, l2) == x2_4,
            "",
        ));
    }
    let x1 = u.block(0, 0, l1);
    let x2 = u.block(l1, l1, l2);
    // Blocks embedded in n×n matrices, so corner products are plain products.
    let n = l1 + l2;
    let embed = |b: &Matrix, r0: usize, c0: usize| {
        let mut m = Matrix::zero(&f, n);
        m.put_block(r0, c0, b);
        m
    };
    let mut zf = Matrix::zero(&f, n);
    for i in 0..l1 {
        for j in 0..l2 {
            zf.set(i, l1 + j, v.get(i, l1 + j));
        }
    }
    let tail = embed(&Matrix::identity(&f, l2).add(&x2.pow(2)), l1, l1);
    out.push(assertion(
        "(uv)^2 corner = x1 z1 (1 + x2^2)",
        top_right(&uv2, l1, l2) == top_right(&embed(&x1, 0, 0).mul(&zf).mul(&tail), l1, l2),
        "",
    ));
    out.push(assertion(
        "(vu)^2 corner = z1 x2 (1 + x2^2)",
        top_right(&vu2, l1, l2) == top_right(&zf.mul(&embed(&x2, l1, l1)).mul(&tail), l1, l2),
        "",
    ));
    // Displayed corners; for l2 = 3 they truncate to e_{l1-1,3} and the
    // column e_{1,3} + ... + e_{l1-1,3}.
    let mut z2 = vec![vec![0u16; l2]; l1];
    let mut z3 = vec![vec![0u16; l2]; l1];
    let put = |z: &mut Vec<Vec<u16>>, i: usize, j: usize| {
        if j < l2 {
            z[i][j] = 1;
        }
    };
    for (i, j) in [(l1 - 2, 2), (l1 - 2, 3), (l1 - 1, 3)] {
        put(&mut z2, i, j);
    }
    for i in 0..l1 - 1 {
        put(&mut z3, i, 2);
        put(&mut z3, i, 3);
    }
    put(&mut z3, l1 - 1, 3);
    put(&mut z3, l1 - 1, 4);
    out.push(assertion("(uv)^2 corner is z2", top_right(&uv2, l1, l2) == z2, format!("{:?}", top_right(&uv2, l1, l2))));
    out.push(assertion("(vu)^2 corner is z3", top_right(&vu2, l1, l2) == z3, format!("{:?}", top_right(&vu2, l1, l2))));
    out.push(assertion("x1 != x1^-1, so the two strips differ", u.block(0, 0, l1) != x1inv, format!("q = {}", f.q())));
    out.extend(d_pair_assertions(&c.ctx, u, v, "SL_n(q)"));
    Ok(out)
}

// SL_3(4): the pair generating a group of order 108.

pub(super) fn build_sl3_4(_params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = field(4)?;
    let z = f.nonzero().find(|&z| z > 1).expect("F_4 has elements outside F_2");
    let z2 = f.mul(z, z);
    let r = r_scalar(&f, 3, 1);
    let s = Matrix::from_encodings(&f, &[&[z2, 0, z2], &[z, 1, z2], &[z, z2, z2]]).expect("valid");
    Ok(Construction {
        lemma: LemmaId::Sl34Order108,
        ctx: ctx(Family::SL, 3, &f)?,
        elements: vec![("r".into(), r), ("s".into(), s)],
    })
}

pub(super) fn verify_sl3_4(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_sl3_4(params)?;
    let g = &c.ctx;
    let (r, s) = (c.get("r"), c.get("s"));
    let mut out = vec![assertion("det s = 1", s.det() == 1, "")];
    let conj = regular_sl_conjugator(r, s)?;
    out.push(assertion(
        "s is SL_3(4)-conjugate to r",
        conj.is_some(),
        conj.map(|m| format!("C = {}", m.literal())).unwrap_or_default(),
    ));
    let h = subgroup_closure(g, &[r.clone(), s.clone()], WITNESS_CAP)?;
    out.push(assertion("|<r,s>| = 108", h.len() == 108, format!("|H| = {}", h.len())));
    let is_id = |m: &Matrix| g.is_identity(m);
    let si = g.inv(s);
    let rs = g.mul(r, s);
    let sr = g.mul(s, r);
    out.push(assertion(
        "r^4 = s^4 = (rs)^3 = (sr)^3 = 1",
        is_id(&g.pow(r, 4)) && is_id(&g.pow(s, 4)) && is_id(&g.pow(&rs, 3)) && is_id(&g.pow(&sr, 3)),
        "",
    ));
    let nested = g.conj(r, &g.conj(&si, &g.conj(r, s)));
    out.push(assertion("(r ▷ (s^-1 ▷ (r ▷ s))) s^-1 = 1", is_id(&g.mul(&nested, &si)), ""));
    let ri = g.inv(r);
    out.push(assertion(
        "s r^-1 s centralizes r and r s^-1 r centralizes s",
        g.commute(&g.mul(&g.mul(s, &ri), s), r) && g.commute(&g.mul(&g.mul(r, &si), r), s),
        "",
    ));
    let orbit = |x: &Matrix| -> BTreeSet<Matrix> { h.iter().map(|k| g.conj(k, x)).collect() };
    let (or, os) = (orbit(r), orbit(s));
    out.push(assertion(
        "|O_r^H| = 9 = |O_s^H|",
        or.len() == 9 && os.len() == 9,
        format!("{} and {}", or.len(), os.len()),
    ));
    out.push(assertion("s is not in O_r^H", !or.contains(s), ""));
    let listed = |a: &Matrix, b: &Matrix, x: &Matrix| -> BTreeSet<Matrix> {
        let mut set = BTreeSet::new();
        for i in 0..4u128 {
            for j in 0..3u128 {
                if j == 0 && i != 0 {
                    continue;
                }
                set.insert(g.conj(&g.mul(&g.pow(a, i), &g.pow(b, j)), x));
            }
        }
        set
    };
    out.push(assertion("O_r^H = {(r^i s^j) ▷ r}", listed(r, s, r) == or, ""));
    out.push(assertion("O_s^H = {(s^i r^j) ▷ s}", listed(s, r, s) == os, ""));
    let sep = separated_conjugation_orbits(g, &[r.clone(), s.clone()], &[r.clone(), s.clone()], WITNESS_CAP);
    out.push(assertion(
        "generator BFS agrees on the orbit sizes",
        sep.as_ref().is_ok_and(|v| v == &vec![9, 9]),
        format!("{sep:?}"),
    ));
    out.extend(d_pair_assertions(g, r, s, "SL_3(4)"));
    Ok(out)
}

// Type (2,1,…,1), q even: no D pair, by exhaustive search.

pub(super) fn verify_not_d_transvection(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let f = even_q(params, 2)?;
    let n = params.n_or(3);
    hypothesis(n >= 2, "n must be at least 2")?;
    let g = ctx(Family::SL, n, &f)?;
    let mut parts = vec![1; n - 1];
    parts[0] = 2;
    let x = class_of(&g, &parts)?;
    let d = find_type_d(&x, &[x.base()], Order::Exhaustive, WITNESS_CAP);
    Ok(vec![
        literal_eq(
            "class representative is a transvection",
            x.elem(x.base()),
            &g.element(unipotent_representative(&f, &Partition::new(parts)?))?,
        ),
        assertion(
            "exhaustive D search over the class finds nothing",
            d.outcome == Outcome::Exhausted && d.witness.is_none(),
            format!("|class| = {}, {} candidates", x.len(), d.budget_spent),
        ),
    ])
}
