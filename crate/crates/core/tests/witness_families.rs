use fqrack::paperwit::{build_witness, standard_cases, verify_lemma, LemmaId, WitnessParams, WitnessSummary};

#[test]
fn every_standard_case_verifies() {
    let mut failed = Vec::new();
    for (id, params) in standard_cases() {
        let rep = verify_lemma(id, &params).unwrap_or_else(|e| panic!("{id} {params:?}: {e}"));
        assert!(!rep.assertions.is_empty(), "{id} made no assertions");
        for a in rep.failures() {
            failed.push(format!("{id} {params:?}: {} ({})", a.name, a.detail));
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn witness_summaries_parse_back() {
    for &id in LemmaId::ALL {
        let params = standard_cases().into_iter().find(|(i, _)| *i == id).unwrap().1;
        let Ok(c) = build_witness(id, &params) else { continue };
        let s = WitnessSummary::from(&c);
        for (name, lit) in &s.elements {
            let m = fqrack::Matrix::parse(c.ctx.field(), lit).unwrap();
            assert_eq!(&m, c.get(name), "{id}: {name}");
        }
    }
}

#[test]
fn outside_hypotheses_are_rejected() {
    for (id, params) in [
        (LemmaId::Sl2OddSquare, WitnessParams::q(9)),
        (LemmaId::Gl2, WitnessParams::q(3)),
        (LemmaId::FRegular, WitnessParams::nq(4, 2)),
        (LemmaId::F32, WitnessParams::q(3)),
        (LemmaId::FRegularN3, WitnessParams::q(4)),
        (LemmaId::NonssThreeBlock, WitnessParams::q(4)),
        (LemmaId::TwoBigBlocksEven, WitnessParams::partition(&[3, 2], 2)),
    ] {
        assert!(verify_lemma(id, &params).is_err(), "{id} {params:?}");
    }
}

#[test]
fn quasi_real_note_is_reported() {
    let rep = verify_lemma(LemmaId::NonssIq, &WitnessParams::q(4)).unwrap();
    assert!(rep.passed());
    assert!(rep.note.unwrap().contains("GL only"));
}
