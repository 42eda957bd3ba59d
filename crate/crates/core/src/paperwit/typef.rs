use super::{
    assertion, ctx, field, hypothesis, literal_eq, Assertion, Construction, LemmaId, PaperwitError, WitnessParams,
    WITNESS_CAP,
};
use crate::criteria::{check_type_f_group, find_type_f, Outcome};
use crate::ffield::{Fe, Field};
use crate::group::Group;
use crate::matgrp::unipotent::{in_strip, r_vec, regular_class_membership, theta, unipotent_representative, unipotent_type};
use crate::matgrp::{Family, GroupCtx, Matrix, Partition};
use crate::rack::{ClassRack, MemoRack, Rack, TABLE_LIMIT};

type Triple = [Fe; 3];

fn even_field(q: u32) -> Result<Field, PaperwitError> {
    let f = field(q)?;
    hypothesis(f.p() == 2, "the construction needs even q")?;
    Ok(f)
}

fn triples(f: &Field) -> Vec<Triple> {
    let e: Vec<Fe> = f.elements().collect();
    let mut out = Vec::with_capacity(e.len().pow(3));
    for &x in &e {
        for &y in &e {
            for &z in &e {
                out.push([x, y, z]);
            }
        }
    }
    out
}

fn add3(f: &Field, u: &Triple, w: &Triple) -> Triple {
    [f.add(u[0], w[0]), f.add(u[1], w[1]), f.add(u[2], w[2])]
}

fn sum(f: &Field, xs: &[Fe]) -> Fe {
    xs.iter().fold(0, |acc, &x| f.add(acc, x))
}

/// Shared checks for a family `x_a(u)` with `x_a(u) x_b(v) = x_b(v + w) x_a(u)`.
struct Family3<'a> {
    f: &'a Field,
    g: &'a GroupCtx,
    x: &'a dyn Fn(&Triple, &Triple) -> Matrix,
    w: &'a dyn Fn(&Triple, &Triple, &Triple, &Triple) -> Triple,
}

impl Family3<'_> {
    fn commutation(&self, labels: &[Triple]) -> Assertion {
        let us = triples(self.f);
        let mut bad = None;
        'outer: for a in labels {
            for b in labels {
                for u in &us {
                    let xa = (self.x)(a, u);
                    for v in &us {
                        let lhs = xa.mul(&(self.x)(b, v));
                        let rhs = (self.x)(b, &add3(self.f, v, &(self.w)(a, b, u, v))).mul(&xa);
                        if lhs != rhs {
                            bad = Some(format!("a={a:?} b={b:?} u={u:?} v={v:?}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        assertion(
            "x_a(u) x_b(v) = x_b(v + w) x_a(u)",
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} labels, all u, v", labels.len())),
        )
    }

    fn never_fixed(&self, labels: &[Triple]) -> Assertion {
        let us = triples(self.f);
        let mut bad = None;
        'outer: for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                if i == j {
                    continue;
                }
                for u in &us {
                    let xa = (self.x)(a, u);
                    for v in &us {
                        let xb = (self.x)(b, v);
                        if self.g.commute(&xa, &xb) {
                            bad = Some(format!("a={a:?} b={b:?} u={u:?} v={v:?}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        assertion(
            "x_a(u) ▷ x_b(v) != x_b(v) for distinct labels",
            bad.is_none(),
            bad.unwrap_or_default(),
        )
    }
}

fn f_assertion(g: &GroupCtx, rs: &[Matrix], tag: &str) -> Result<Assertion, PaperwitError> {
    let arr: [Matrix; 4] = rs.to_vec().try_into().map_err(|_| PaperwitError::Hypothesis("need four".into()))?;
    let c = check_type_f_group(g, &arr, WITNESS_CAP)?;
    Ok(assertion(
        format!("{tag}: four elements with disjoint orbits, pairwise non-commuting"),
        c.is_witness(),
        format!("{c:?}"),
    ))
}

fn construction(lemma: LemmaId, g: GroupCtx, rs: Vec<Matrix>) -> Construction {
    Construction {
        lemma,
        ctx: g,
        elements: rs.into_iter().enumerate().map(|(i, m)| (format!("r{}", i + 1), m)).collect(),
    }
}

fn members(c: &Construction) -> Vec<Matrix> {
    c.elements.iter().map(|(_, m)| m.clone()).collect()
}

// Regular, n ≥ 5.

const A_REGULAR: [Triple; 4] = [[1, 1, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

fn x_regular(f: &Field, n: usize, a: &Triple, u: &Triple) -> Matrix {
    let mut m = r_vec(f, &vec![1; n - 1]);
    m.set(0, n - 3, a[0]);
    m.set(0, n - 2, u[0]);
    m.set(0, n - 1, u[2]);
    m.set(1, n - 2, a[1]);
    m.set(1, n - 1, u[1]);
    m.set(2, n - 1, a[2]);
    m
}

/// At `n = 5` the label entries share a diagonal with the `u` entries and
/// the last coordinate picks up `a_1 b_3 + a_3 b_1`.
fn w_regular(f: &Field, n: usize, a: &Triple, b: &Triple, u: &Triple, v: &Triple) -> Triple {
    let w0 = sum(f, &[a[0], a[1], b[0], b[1]]);
    let mut w2 = sum(f, &[w0, u[0], u[1], v[0], v[1]]);
    if n == 5 {
        w2 = sum(f, &[w2, f.mul(a[0], b[2]), f.mul(a[2], b[0])]);
    }
    [w0, sum(f, &[a[1], a[2], b[1], b[2]]), w2]
}

pub(super) fn build_regular(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let n = params.n_or(5);
    hypothesis(n >= 5, "needs n at least 5")?;
    let f = even_field(params.q_or(2))?;
    let rs = A_REGULAR.iter().map(|a| x_regular(&f, n, a, &[0; 3])).collect();
    Ok(construction(LemmaId::FRegular, ctx(Family::SL, n, &f)?, rs))
}

pub(super) fn verify_regular(params: &WitnessParams) -> Result<(Vec<Assertion>, Option<String>), PaperwitError> {
    let c = build_regular(params)?;
    let (g, f) = (&c.ctx, c.ctx.field());
    let n = g.n();
    let x = |a: &Triple, u: &Triple| x_regular(f, n, a, u);
    let w = |a: &Triple, b: &Triple, u: &Triple, v: &Triple| w_regular(f, n, a, b, u, v);
    let fam = Family3 { f, g, x: &x, w: &w };
    let mut in_class = true;
    for a in A_REGULAR {
        for u in triples(f) {
            in_class &= regular_class_membership(&x(&a, &u), 1)?.member;
        }
    }
    let note = (n == 5).then(|| "at n = 5 the last coordinate of w carries an extra a1 b3 + a3 b1".to_string());
    Ok((
        vec![
            assertion("every x_a(u) lies in the class of r_1", in_class, format!("n = {n}, q = {}", f.q())),
            fam.commutation(&A_REGULAR),
            fam.never_fixed(&A_REGULAR),
            f_assertion(g, &members(&c), "x_a(0), a in A")?,
        ],
        note,
    ))
}

// Type (3,2).

const A_32: [Triple; 4] = [[1, 0, 0], [1, 1, 1], [0, 1, 1], [0, 0, 0]];

fn x_32(f: &Field, a: &Triple, u: &Triple) -> Matrix {
    Matrix::from_encodings(
        f,
        &[
            &[1, 1, a[0], u[0], u[2]],
            &[0, 1, 1, a[1], u[1]],
            &[0, 0, 1, 0, a[2]],
            &[0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 1],
        ],
    )
    .expect("valid encodings")
}

fn w_32(f: &Field, a: &Triple, b: &Triple, u: &Triple, v: &Triple) -> Triple {
    let s = f.add(a[1], b[1]);
    [
        s,
        0,
        sum(f, &[s, f.mul(a[0], b[1]), f.mul(a[1], b[0]), u[0], u[1], v[0], v[1]]),
    ]
}

pub(super) fn build_32(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = even_field(params.q_or(2))?;
    let rs = A_32
        .iter()
        .enumerate()
        .map(|(i, a)| x_32(&f, a, &if i == 0 { [1, 0, 0] } else { [0; 3] }))
        .collect();
    Ok(construction(LemmaId::F32, ctx(Family::SL, 5, &f)?, rs))
}

pub(super) fn verify_32(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_32(params)?;
    let (g, f) = (&c.ctx, c.ctx.field());
    let x = |a: &Triple, u: &Triple| x_32(f, a, u);
    let w = |a: &Triple, b: &Triple, u: &Triple, v: &Triple| w_32(f, a, b, u, v);
    let fam = Family3 { f, g, x: &x, w: &w };
    let target = Partition::new(vec![3, 2])?;
    let mut iff = true;
    for a in triples(f) {
        let all = triples(f).iter().map(|u| unipotent_type(&x(&a, u))).collect::<Result<Vec<_>, _>>()?;
        iff &= all.iter().all(|t| *t == target) == (a[1] == a[2]);
    }
    let labels: Vec<Triple> = triples(f).into_iter().filter(|a| a[1] == a[2]).collect();
    let rs = members(&c);
    let fixed = (0..4).any(|i| (0..4).any(|j| i != j && g.conj(&rs[i], &rs[j]) == rs[j]));
    Ok(vec![
        assertion("X_a lies in the (3,2) class iff a_2 = a_3", iff, format!("all a in F_{}^3", f.q())),
        fam.commutation(&labels),
        assertion("r_i ▷ r_j != r_j for i != j", !fixed, ""),
        f_assertion(g, &rs, "(3,2) quadruple")?,
    ])
}

// Regular, n = 3, q ≥ 8.

pub(super) fn build_regular_n3(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = even_field(params.q_or(8))?;
    hypothesis(f.q() >= 8, "needs q at least 8")?;
    let rs = f.nonzero().take(4).map(|a| r_vec(&f, &label_n3(&f, a))).collect();
    Ok(construction(LemmaId::FRegularN3, ctx(Family::SL, 3, &f)?, rs))
}

fn label_n3(f: &Field, a: Fe) -> [Fe; 2] {
    [f.mul(a, a), f.inv(a).expect("nonzero")]
}

pub(super) fn verify_regular_n3(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_regular_n3(params)?;
    let (g, f) = (&c.ctx, c.ctx.field());
    let labels: Vec<[Fe; 2]> = f.nonzero().map(|a| label_n3(f, a)).collect();
    let mut in_class = true;
    for l in &labels {
        in_class &= regular_class_membership(&r_vec(f, l), 1)?.member;
    }
    let theta_nonzero = (0..labels.len())
        .all(|i| (0..labels.len()).all(|j| i == j || theta(f, &labels[i], &labels[j], 1) != 0));
    Ok(vec![
        assertion("r_(a^2, a^-1) lies in the class of r_1", in_class, format!("{} labels", labels.len())),
        assertion("theta^1 != 0 for distinct labels", theta_nonzero, ""),
        f_assertion(g, &members(&c), "first four labels")?,
    ])
}

// Type (2,1,1,1).

pub(super) fn build_2111(params: &WitnessParams) -> Result<Construction, PaperwitError> {
    let f = even_field(params.q_or(2))?;
    let e = |j: usize| -> Vec<Fe> { (0..4).map(|i| Fe::from(i == j)).collect() };
    let mut r3 = Matrix::identity(&f, 5);
    r3.set(1, 3, 1);
    r3.set(2, 3, 1);
    let mut r4 = Matrix::identity(&f, 5);
    for i in 1..4 {
        r4.set(i, 4, 1);
    }
    let rs = vec![r_vec(&f, &e(0)), r_vec(&f, &e(1)), r3, r4];
    Ok(construction(LemmaId::F2111, ctx(Family::SL, 5, &f)?, rs))
}

pub(super) fn verify_2111(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let c = build_2111(params)?;
    let (g, f) = (&c.ctx, c.ctx.field());
    let rs = members(&c);
    let e = |j: usize| -> Vec<Fe> { (0..4).map(|i| Fe::from(i == j)).collect() };
    let mut p3 = Matrix::identity(f, 5);
    p3.set(1, 2, 1);
    let mut p4 = Matrix::identity(f, 5);
    p4.set(1, 3, 1);
    p4.set(2, 3, 1);
    let target = Partition::new(vec![2, 1, 1, 1])?;
    let mut out = vec![
        literal_eq("r_3 = P_3 r_e3 P_3", &rs[2], &p3.mul(&r_vec(f, &e(2))).mul(&p3)),
        literal_eq("r_4 = P_4 r_e4 P_4", &rs[3], &p4.mul(&r_vec(f, &e(3))).mul(&p4)),
    ];
    let strips = (0..4).all(|j| in_strip(&rs[j], &e(j)));
    let types = rs.iter().map(unipotent_type).collect::<Result<Vec<_>, _>>()?;
    out.push(assertion("r_j lies in the strip of e_j", strips, ""));
    out.push(assertion("each r_j has type (2,1,1,1)", types.iter().all(|t| *t == target), ""));
    out.push(f_assertion(g, &rs, "(2,1,1,1) quadruple")?);
    Ok(out)
}

// Type (2,1) in SL_3(q), q even: no F quadruple.

pub(super) fn verify_not_f_21(params: &WitnessParams) -> Result<(Vec<Assertion>, Option<String>), PaperwitError> {
    let f = even_field(params.q_or(2))?;
    let g = ctx(Family::SL, 3, &f)?;
    let x0 = g.element(unipotent_representative(&f, &Partition::new(vec![2, 1])?))?;
    let class = ClassRack::new(g, &x0, WITNESS_CAP)?;
    let budget = 10_000_000;
    let s = if class.len() <= TABLE_LIMIT {
        find_type_f(&MemoRack::new(&class), &[class.base()], budget, WITNESS_CAP)
    } else {
        find_type_f(&class, &[class.base()], budget, WITNESS_CAP)
    };
    let note = (s.outcome != Outcome::Exhausted).then(|| format!("F scan stopped early: {:?}", s.outcome));
    Ok((
        vec![assertion(
            "exhaustive F scan over the (2,1) class finds nothing",
            s.outcome == Outcome::Exhausted && s.witness.is_none(),
            format!("|class| = {}, {} separation tests", class.len(), s.budget_spent),
        )],
        note,
    ))
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
    fn families_over_f2() {
        let (v, note) = verify_regular(&WitnessParams::nq(5, 2)).unwrap();
        all_pass(&v);
        assert!(note.is_some());
        let (v, note) = verify_regular(&WitnessParams::nq(6, 2)).unwrap();
        all_pass(&v);
        assert!(note.is_none());
        all_pass(&verify_32(&WitnessParams::q(2)).unwrap());
        all_pass(&verify_2111(&WitnessParams::q(2)).unwrap());
    }

    #[test]
    fn regular_n3_over_f8() {
        all_pass(&verify_regular_n3(&WitnessParams::q(8)).unwrap());
        assert!(build_regular_n3(&WitnessParams::q(4)).is_err());
    }

    #[test]
    fn two_one_has_no_quadruple() {
        let (v, note) = verify_not_f_21(&WitnessParams::q(2)).unwrap();
        all_pass(&v);
        assert!(note.is_none());
    }

    #[test]
    fn odd_q_rejected() {
        assert!(build_regular(&WitnessParams::nq(5, 3)).is_err());
    }
}
