use super::{assertion, ctx, field, Assertion, PaperwitError, WitnessParams, WITNESS_CAP};
use crate::criteria::{cthulhu_two_generated, find_little_triangle, find_type_d, find_type_f, verify_little_triangle, Order, Outcome};
use crate::group::Group;
use crate::matgrp::orbit::centralizer_elements;
use crate::matgrp::unipotent::{class_representative, regular_labels};
use crate::matgrp::{Family, GroupCtx, Matrix, Partition};
use crate::rack::{project_unipotent_class, ClassRack, MemoRack, Rack};

/// Each unipotent class of `SL_n(q)` maps isomorphically onto its image in
/// `PSL_n(q)`.
pub(super) fn verify_isogeny(params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let f = field(params.q_or(4))?;
    let n = params.n_or(3);
    let sl = ctx(Family::SL, n, &f)?;
    let mut out = Vec::new();
    for lambda in Partition::all(n).into_iter().filter(|l| !l.is_trivial()) {
        let labels = if lambda.is_regular() { regular_labels(&f, n) } else { vec![1] };
        for a in labels {
            let x = class_representative(&sl, &lambda, a)?;
            let name = format!("{lambda} label {a}: SL class projects isomorphically");
            match project_unipotent_class(&sl, &x, WITNESS_CAP, 10_000, 0) {
                Ok(p) => out.push(assertion(
                    name,
                    true,
                    format!(
                        "|class| = {}, {} pairs checked{}",
                        p.psl.len(),
                        p.pairs_checked,
                        if p.exhaustive { ", all pairs" } else { ", sampled" }
                    ),
                )),
                Err(e) => out.push(assertion(name, false, e.to_string())),
            }
        }
    }
    Ok(out)
}

fn class(g: &GroupCtx, x: Matrix) -> Result<ClassRack<GroupCtx>, PaperwitError> {
    let x = g.element(x)?;
    Ok(ClassRack::new(g.clone(), &x, WITNESS_CAP)?)
}

fn triangle(g: &GroupCtx, c: &ClassRack<GroupCtx>, tag: &str) -> Result<Assertion, PaperwitError> {
    let t = find_little_triangle(g, c, WITNESS_CAP, WITNESS_CAP)?;
    Ok(assertion(
        format!("{tag}: little triangle found and re-verified"),
        t.as_ref().is_some_and(|t| verify_little_triangle(g, t)),
        t.map(|t| format!("sigma = {:?}, h = {}", t.sigma, t.h)).unwrap_or_default(),
    ))
}

pub(super) fn verify_psl2_7(_params: &WitnessParams) -> Result<Vec<Assertion>, PaperwitError> {
    let f = field(7)?;
    let g = ctx(Family::PSL, 2, &f)?;
    let inv = class(&g, Matrix::from_ints(&f, &[&[0, 1], &[-1, 0]]))?;
    let four = class(&g, Matrix::from_ints(&f, &[&[0, -1], &[1, 3]]))?;
    let x4 = four.elem(four.base()).clone();
    let mut out = vec![
        assertion("involution class has 21 elements", inv.len() == 21, format!("{}", inv.len())),
        assertion(
            "order-4 class has 42 elements",
            four.len() == 42 && g.order_of(&x4) == 4,
            format!("|class| = {}, order {}", four.len(), g.order_of(&x4)),
        ),
    ];
    let ev = cthulhu_two_generated(&MemoRack::new(&inv), &[inv.base()], WITNESS_CAP);
    out.push(assertion(
        "involutions: every two-generated subrack passes",
        ev.passed(),
        format!("{} pairs, strict = {}", ev.pairs_checked, ev.strict),
    ));
    let m4 = MemoRack::new(&four);
    let d = find_type_d(&m4, &[four.base()], Order::Exhaustive, WITNESS_CAP);
    let fs = find_type_f(&m4, &[four.base()], 10_000_000, WITNESS_CAP);
    out.push(assertion(
        "order 4: exhaustive D search finds nothing",
        d.outcome == Outcome::Exhausted && d.witness.is_none(),
        format!("{} candidates", d.budget_spent),
    ));
    out.push(assertion(
        "order 4: exhaustive F search finds nothing",
        fs.outcome == Outcome::Exhausted && fs.witness.is_none(),
        format!("{} separation tests", fs.budget_spent),
    ));
    let cent = centralizer_elements(&g, &x4, WITNESS_CAP, WITNESS_CAP)?;
    let mut powers: Vec<Matrix> = (0..4).map(|k| g.pow(&x4, k)).collect();
    powers.sort();
    out.push(assertion(
        "order 4: centralizer is the cyclic group generated by x",
        cent == powers,
        format!("|C| = {}", cent.len()),
    ));
    out.push(triangle(&g, &inv, "PSL_2(7) involutions")?);
    let f2 = field(2)?;
    let g3 = ctx(Family::PSL, 3, &f2)?;
    let t21 = class(&g3, Matrix::from_ints(&f2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]))?;
    out.push(triangle(&g3, &t21, "PSL_3(2) transvections")?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl2_7_all_pass() {
        for a in verify_psl2_7(&WitnessParams::default()).unwrap() {
            assert!(a.pass, "{}: {}", a.name, a.detail);
        }
    }

    #[test]
    fn isogeny_small() {
        let v = verify_isogeny(&WitnessParams::nq(2, 7)).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|a| a.pass));
    }
}
