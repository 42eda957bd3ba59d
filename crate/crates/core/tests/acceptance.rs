//! One pass/fail line per acceptance criterion. All checks are exact; the
//! only tolerance is a wall-clock limit per criterion.

use std::time::Instant;

use fqrack::criteria::{classify, component_bases, find_type_d, reverify_d_group, ClassifyOptions, Order, Outcome, VerdictTag};
use fqrack::ffield::gcd;
use fqrack::matgrp::unipotent::{r_scalar, regular_labels};
use fqrack::paperwit::{formula_oracle_suite, standard_cases, verify_lemma, LemmaId, WitnessParams};
use fqrack::rack::{affine_rack, find_isomorphism};
use fqrack::report::{Expectation, Report, RowStatus, TableOptions};
use fqrack::{field_of_order, ClassRack, Family, GroupCtx, Perm, PermGroup, Rack};

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    secs: f64,
    limit: f64,
}

fn run(id: u32, name: &'static str, limit: f64, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (ok, detail) = f();
    let secs = t.elapsed().as_secs_f64();
    let line = Line {
        id,
        name,
        pass: ok && secs <= limit,
        detail,
        secs,
        limit,
    };
    println!(
        "criterion {:>2} [{}] {}: {} ({:.1} s, limit {} s)",
        line.id,
        if line.pass { "PASS" } else { "FAIL" },
        line.name,
        line.detail,
        line.secs,
        line.limit
    );
    line
}

fn lemma_cases(cases: &[(LemmaId, WitnessParams)]) -> (bool, String) {
    let mut failed = Vec::new();
    let mut count = 0;
    for (id, p) in cases {
        match verify_lemma(*id, p) {
            Ok(rep) => {
                count += rep.assertions.len();
                failed.extend(rep.failures().map(|a| format!("{id} {p:?}: {}", a.name)));
            }
            Err(e) => failed.push(format!("{id} {p:?}: {e}")),
        }
    }
    (failed.is_empty(), format!("{} cases, {count} assertions, failures {failed:?}", cases.len()))
}

fn regular_class_counts() -> (bool, String) {
    let mut bad = Vec::new();
    for n in [2usize, 3] {
        for q in [2u32, 3, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            let g = GroupCtx::new(Family::SL, n, &f).unwrap();
            let mut classes: Vec<ClassRack<GroupCtx>> = Vec::new();
            for a in f.nonzero() {
                let x = g.element(r_scalar(&f, n, a)).unwrap();
                if classes.iter().all(|c| c.index_of(&x).is_none()) {
                    classes.push(ClassRack::new(g.clone(), &x, 1_000_000).unwrap());
                }
            }
            let d = gcd(n as u64, q as u64 - 1) as usize;
            if classes.len() != d || regular_labels(&f, n).len() != d {
                bad.push(format!("n={n} q={q}: {} classes, expected {d}", classes.len()));
            }
        }
    }
    (bad.is_empty(), format!("10 groups, mismatches {bad:?}"))
}

fn sl2_dichotomy() -> (bool, String) {
    let mut bad = Vec::new();
    let mut found = Vec::new();
    let mut largest = 0;
    for q in [5u32, 7, 8, 9, 11, 13, 16, 25, 27] {
        let f = field_of_order(q).unwrap();
        let g = GroupCtx::new(Family::PSL, 2, &f).unwrap();
        for a in regular_labels(&f, 2) {
            let x = g.element(r_scalar(&f, 2, a)).unwrap();
            let c = ClassRack::new(g.clone(), &x, 1_000_000).unwrap();
            largest = largest.max(c.len());
            let d = find_type_d(&c, &[c.base()], Order::Exhaustive, 1_000_000);
            match (&d.witness, q == 25) {
                (Some(w), true) if reverify_d_group(&g, w, 1_000_000) => found.push(q),
                (None, false) if d.outcome == Outcome::Exhausted => {}
                _ => bad.push(format!("q={q} label {a}: {:?}", d.outcome)),
            }
        }
    }
    (
        bad.is_empty() && !found.is_empty() && found.iter().all(|&q| q == 25),
        format!("witness at q in {found:?}, largest class {largest}, problems {bad:?}"),
    )
}

fn affine_racks() -> (bool, String) {
    let opts = ClassifyOptions::default();
    let tag = |n: usize| {
        let r = affine_rack(n).unwrap();
        classify(&r, &component_bases(&r), &opts)
    };
    let d6 = tag(6);
    let (d5, d7) = (tag(5), tag(7));
    let s3 = PermGroup::symmetric(3);
    let t = ClassRack::new(s3, &Perm::from_cycles(3, &[&[1, 2]]), 100).unwrap();
    let iso = find_isomorphism(&affine_rack(3).unwrap(), &t).is_some();
    let ok = d6.tag == VerdictTag::TypeD
        && d5.no_d_exhaustive()
        && d7.no_d_exhaustive()
        && d5.witness.is_none()
        && d7.witness.is_none()
        && iso;
    (
        ok,
        format!("D6 {}, D5 {}, D7 {}, D3 isomorphic to S3 transpositions: {iso}", d6.tag, d5.tag, d7.tag),
    )
}

fn full_suite() -> Report {
    Report::new(0)
        .with_table(&TableOptions::default())
        .unwrap()
        .with_lemmas(&standard_cases())
        .with_oracle(200)
}

fn table_check(r: &Report) -> (bool, String) {
    let unknown_ok = r.rows.iter().all(|row| match &row.verdict {
        Some(v) if v.tag == VerdictTag::Unknown => {
            row.expected == Some(Expectation::OpenF)
                || v.f_search.as_ref().is_some_and(|f| f.outcome == Outcome::BudgetSpent)
        }
        _ => true,
    });
    let skips_carry_cap = r
        .rows
        .iter()
        .filter(|row| row.status == RowStatus::Skipped)
        .all(|row| row.skip_reason.as_deref().is_some_and(|s| s.contains("1000000")));
    let s = &r.summary;
    (
        s.disagree == 0 && r.exit_code() == 0 && unknown_ok && skips_carry_cap,
        format!(
            "{} rows: {} agree, {} disagree, {} skipped, {} without expectation; exit code {}",
            s.rows,
            s.agree,
            s.disagree,
            s.skipped,
            s.no_expectation,
            r.exit_code()
        ),
    )
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn main() {
    use LemmaId::*;
    let mut lines = vec![
        run(1, "regular unipotent class count equals gcd(n, q-1)", 60.0, regular_class_counts),
        run(2, "closed-form oracle, 200 trials", 10.0, || {
            let o = formula_oracle_suite(200, 0);
            (
                o.passed() && o.equal_squares > 0 && o.equal_squares < o.trials,
                format!("{} checks, {} equal squares, mismatches {:?}", o.checks, o.equal_squares, o.mismatches),
            )
        }),
        run(3, "PSL_2(q) D dichotomy", 300.0, sl2_dichotomy),
        run(4, "order-108 subgroup of SL_3(4)", 1.0, || {
            let rep = verify_lemma(Sl34Order108, &WitnessParams::default()).unwrap();
            let has108 = rep.assertions.iter().any(|a| a.pass && a.name.contains("108"));
            (rep.passed() && has108, format!("{} assertions", rep.assertions.len()))
        }),
        run(5, "PSL_4(2) centralizers and verdicts", 300.0, || {
            lemma_cases(&[(Psl42, WitnessParams::default())])
        }),
        run(6, "transvection classes are not of type D", 600.0, || {
            let cases: Vec<_> = [(2, 2), (2, 4), (3, 2), (3, 4), (4, 2)]
                .into_iter()
                .map(|(n, q)| (NotDTransvection, WitnessParams::nq(n, q)))
                .collect();
            lemma_cases(&cases)
        }),
        run(7, "type (2,1) in SL_3(2) is not of type F", 120.0, || {
            let rep = verify_lemma(NotF21, &WitnessParams::q(2)).unwrap();
            (rep.passed() && rep.note.is_none(), format!("{} assertions", rep.assertions.len()))
        }),
        run(8, "PSL_2(7) classes", 600.0, || lemma_cases(&[(Psl27, WitnessParams::default())])),
        run(9, "type F families", 60.0, || {
            lemma_cases(&[
                (FRegular, WitnessParams::nq(5, 2)),
                (FRegular, WitnessParams::nq(5, 4)),
                (FRegular, WitnessParams::nq(6, 2)),
                (F32, WitnessParams::q(2)),
                (FRegularN3, WitnessParams::q(8)),
                (F2111, WitnessParams::q(2)),
            ])
        }),
        run(10, "non-semisimple witnesses", 120.0, || {
            lemma_cases(&[
                (NonssIq, WitnessParams::q(3)),
                (NonssQ9, WitnessParams::default()),
                (NonssThreeBlock, WitnessParams::q(3)),
                (NonssPsl43, WitnessParams::default()),
            ])
        }),
        run(11, "SL to PSL is a rack isomorphism on unipotent classes", 300.0, || {
            let cases: Vec<_> = [(3, 4), (2, 7), (4, 3)]
                .into_iter()
                .map(|(n, q)| (Isogeny, WitnessParams::nq(n, q)))
                .collect();
            lemma_cases(&cases)
        }),
        run(12, "affine racks", 1.0, affine_racks),
    ];
    let mut first = None;
    lines.push(run(13, "table sweep n in 2..4, q in 2..5", 1800.0, || {
        let r = pool(1).install(full_suite);
        let out = table_check(&r);
        first = Some(r);
        out
    }));
    let first = first.expect("criterion 13 ran");
    lines.push(run(14, "byte-identical reports across thread counts", 1800.0, || {
        let second = pool(2).install(full_suite);
        let (a, b) = (first.to_json(), second.to_json());
        (
            a == b && first.summary.lemma_failures == 0,
            format!("{} bytes, identical: {}", a.len(), a == b),
        )
    }));
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", lines.len());
}
