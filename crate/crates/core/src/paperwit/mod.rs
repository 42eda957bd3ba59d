//! Explicit witness constructions for the collapse criteria, each paired with
//! an exact re-check of the identities it is built to satisfy.

mod even;
mod misc;
mod nonss;
mod odd;
mod oracle;
mod typef;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{check_type_d_group, CriteriaError};
use crate::ffield::{field_of_order, Field, FieldError};
use crate::group::Group;
use crate::matgrp::{Family, GroupCtx, GroupError, Matrix, Partition};

pub use nonss::{build_nonss_witness, NonssCase};
pub use oracle::{formula_oracle_suite, OracleReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PaperwitError {
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("parameters outside the construction's hypotheses: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

macro_rules! lemma_ids {
    ($($var:ident => $s:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum LemmaId { $($var),* }

        impl LemmaId {
            pub const ALL: &'static [LemmaId] = &[$(LemmaId::$var),*];
            pub fn as_str(self) -> &'static str {
                match self { $(LemmaId::$var => $s),* }
            }
        }

        impl FromStr for LemmaId {
            type Err = PaperwitError;
            fn from_str(s: &str) -> Result<Self, PaperwitError> {
                match s { $($s => Ok(LemmaId::$var),)* other => Err(PaperwitError::UnknownLemma(other.into())) }
            }
        }
    };
}

lemma_ids! {
    Sl2OddSquare => "sl2-odd-square",
    RegularOdd => "regular-odd",
    Type22Odd => "type22-odd",
    Type21Odd => "type21-odd",
    Gl2 => "gl2",
    Psl42 => "psl4-2",
    TwoBigBlocksEven => "two-big-blocks-even",
    Sl34Order108 => "sl3-4-order108",
    NotDTransvection => "not-d-transvection",
    FRegular => "f-regular",
    F32 => "f-32",
    FRegularN3 => "f-regular-n3",
    F2111 => "f-2111",
    NotF21 => "not-f-21",
    NonssIq => "nonss-iq",
    NonssQ9 => "nonss-q9",
    NonssThreeBlock => "nonss-three-block",
    NonssPsl43 => "nonss-psl43",
    Isogeny => "isogeny",
    Psl27 => "psl2-7",
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for LemmaId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for LemmaId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Free parameters of a construction; `None` picks the family default.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
}

impl WitnessParams {
    pub fn nq(n: usize, q: u32) -> Self {
        WitnessParams {
            n: Some(n),
            q: Some(q),
            partition: None,
        }
    }
    pub fn q(q: u32) -> Self {
        WitnessParams {
            q: Some(q),
            ..Default::default()
        }
    }
    pub fn partition(p: &[usize], q: u32) -> Self {
        let part = Partition::new(p.to_vec()).expect("valid partition");
        WitnessParams {
            n: Some(part.n()),
            q: Some(q),
            partition: Some(part),
        }
    }
    fn q_or(&self, d: u32) -> u32 {
        self.q.unwrap_or(d)
    }
    fn n_or(&self, d: usize) -> usize {
        self.n.unwrap_or(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub params: WitnessParams,
    pub assertions: Vec<Assertion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }
    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

/// A built witness: the ambient group and the named elements.
#[derive(Clone, Debug)]
pub struct Construction {
    pub lemma: LemmaId,
    pub ctx: GroupCtx,
    pub elements: Vec<(String, Matrix)>,
}

impl Construction {
    pub fn get(&self, name: &str) -> &Matrix {
        &self.elements.iter().find(|(k, _)| k == name).expect("named element").1
    }
}

/// Serializable view of a [`Construction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub lemma: LemmaId,
    pub group: String,
    pub elements: Vec<(String, String)>,
}

impl From<&Construction> for WitnessSummary {
    fn from(c: &Construction) -> Self {
        WitnessSummary {
            lemma: c.lemma,
            group: format!("{:?}", c.ctx),
            elements: c.elements.iter().map(|(k, m)| (k.clone(), m.literal())).collect(),
        }
    }
}

/// Builds the witness of a family. Families that certify a negative result
/// by exhaustive search have no witness to build.
pub fn build_witness(id: LemmaId, params: &WitnessParams) -> Result<Construction, PaperwitError> {
    use LemmaId::*;
    match id {
        Sl2OddSquare => odd::build_sl2_odd_square(params),
        RegularOdd => odd::build_regular_odd(params),
        Type22Odd => odd::build_type22(params),
        Type21Odd => odd::build_type21(params),
        Gl2 => odd::build_gl2(params),
        TwoBigBlocksEven => even::build_two_big_blocks(params),
        Sl34Order108 => even::build_sl3_4(params),
        FRegular => typef::build_regular(params),
        F32 => typef::build_32(params),
        FRegularN3 => typef::build_regular_n3(params),
        F2111 => typef::build_2111(params),
        NonssIq => nonss::build(NonssCase::M1L1, params),
        NonssQ9 => nonss::build(NonssCase::M1L1Q9, params),
        NonssThreeBlock => nonss::build(NonssCase::M1Lgt1, params),
        NonssPsl43 => nonss::build(NonssCase::Mgt1Psl43, params),
        Psl42 | NotDTransvection | NotF21 | Isogeny | Psl27 => Err(PaperwitError::Hypothesis(format!(
            "`{id}` is certified by exhaustive computation, not by a single witness"
        ))),
    }
}

/// Builds the family's witness and re-checks every asserted identity.
pub fn verify_lemma(id: LemmaId, params: &WitnessParams) -> Result<LemmaReport, PaperwitError> {
    use LemmaId::*;
    let (assertions, note) = match id {
        Sl2OddSquare => (odd::verify_sl2_odd_square(params)?, None),
        RegularOdd => (odd::verify_regular_odd(params)?, None),
        Type22Odd => (odd::verify_type22(params)?, None),
        Type21Odd => (odd::verify_type21(params)?, None),
        Gl2 => (odd::verify_gl2(params)?, None),
        Psl42 => (even::verify_psl4_2(params)?, None),
        TwoBigBlocksEven => (even::verify_two_big_blocks(params)?, None),
        Sl34Order108 => (even::verify_sl3_4(params)?, None),
        NotDTransvection => (even::verify_not_d_transvection(params)?, None),
        FRegular => typef::verify_regular(params)?,
        F32 => (typef::verify_32(params)?, None),
        FRegularN3 => (typef::verify_regular_n3(params)?, None),
        F2111 => (typef::verify_2111(params)?, None),
        NotF21 => typef::verify_not_f_21(params)?,
        NonssIq => nonss::verify(NonssCase::M1L1, params)?,
        NonssQ9 => nonss::verify(NonssCase::M1L1Q9, params)?,
        NonssThreeBlock => nonss::verify(NonssCase::M1Lgt1, params)?,
        NonssPsl43 => nonss::verify(NonssCase::Mgt1Psl43, params)?,
        Isogeny => (misc::verify_isogeny(params)?, None),
        Psl27 => (misc::verify_psl2_7(params)?, None),
    };
    Ok(LemmaReport {
        lemma: id,
        params: params.clone(),
        assertions,
        note,
    })
}

/// Every family at the parameters the test suite and `verify-paper` run.
pub fn standard_cases() -> Vec<(LemmaId, WitnessParams)> {
    use LemmaId::*;
    let mut v = vec![(Sl2OddSquare, WitnessParams::q(25))];
    for n in [3, 4] {
        for q in [5, 7] {
            v.push((RegularOdd, WitnessParams::nq(n, q)));
        }
    }
    for q in [3, 5] {
        v.push((Type22Odd, WitnessParams::q(q)));
    }
    for q in [3, 5] {
        v.push((Type21Odd, WitnessParams::q(q)));
    }
    for q in [5, 7] {
        v.push((Gl2, WitnessParams::q(q)));
    }
    v.push((Psl42, WitnessParams::default()));
    v.push((TwoBigBlocksEven, WitnessParams::partition(&[3, 3], 2)));
    v.push((TwoBigBlocksEven, WitnessParams::partition(&[4, 3], 2)));
    v.push((Sl34Order108, WitnessParams::default()));
    for (n, q) in [(2, 2), (2, 4), (3, 2), (3, 4), (4, 2)] {
        v.push((NotDTransvection, WitnessParams::nq(n, q)));
    }
    for (n, q) in [(5, 2), (5, 4), (6, 2)] {
        v.push((FRegular, WitnessParams::nq(n, q)));
    }
    v.push((F32, WitnessParams::q(2)));
    v.push((FRegularN3, WitnessParams::q(8)));
    v.push((F2111, WitnessParams::q(2)));
    v.push((NotF21, WitnessParams::q(2)));
    v.push((NonssIq, WitnessParams::q(3)));
    v.push((NonssIq, WitnessParams::q(4)));
    v.push((NonssQ9, WitnessParams::default()));
    v.push((NonssThreeBlock, WitnessParams::q(3)));
    v.push((NonssPsl43, WitnessParams::default()));
    for (n, q) in [(3, 4), (2, 7), (4, 3)] {
        v.push((Isogeny, WitnessParams::nq(n, q)));
    }
    v.push((Psl27, WitnessParams::default()));
    v
}

// Shared helpers for the family modules.

pub(crate) const WITNESS_CAP: usize = 1_000_000;

pub(crate) fn assertion(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Assertion {
    Assertion {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

pub(crate) fn field(q: u32) -> Result<Field, PaperwitError> {
    Ok(field_of_order(q)?)
}

pub(crate) fn ctx(family: Family, n: usize, f: &Field) -> Result<GroupCtx, PaperwitError> {
    Ok(GroupCtx::new(family, n, f)?)
}

pub(crate) fn hypothesis(ok: bool, msg: impl Into<String>) -> Result<(), PaperwitError> {
    if ok {
        Ok(())
    } else {
        Err(PaperwitError::Hypothesis(msg.into()))
    }
}

/// `(rs)² ≠ (sr)²` plus disjoint `⟨r, s⟩`-orbits, as three assertions.
pub(crate) fn d_pair_assertions<G: Group>(g: &G, r: &G::Elem, s: &G::Elem, tag: &str) -> Vec<Assertion> {
    let c = check_type_d_group(g, r, s, WITNESS_CAP);
    vec![
        assertion(format!("{tag}: r and s do not commute"), !c.commute, ""),
        assertion(format!("{tag}: (rs)^2 != (sr)^2"), c.d_inequality, ""),
        assertion(
            format!("{tag}: <r,s>-orbits of r and s are disjoint"),
            c.orbits.is_some(),
            match c.orbits {
                Some((a, b)) => format!("orbit sizes {a} and {b}"),
                None if c.cap_hit => format!("orbit cap {WITNESS_CAP} reached"),
                None => "orbits meet".into(),
            },
        ),
    ]
}

pub(crate) fn literal_eq(name: &str, got: &Matrix, want: &Matrix) -> Assertion {
    assertion(name, got == want, format!("got {}, expected {}", got.literal(), want.literal()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for &id in LemmaId::ALL {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(serde_json::from_str::<LemmaId>(&json).unwrap(), id);
        }
        assert!("lemma-3.4".parse::<LemmaId>().is_err());
    }

    #[test]
    fn every_id_has_a_standard_case() {
        let cases = standard_cases();
        for id in LemmaId::ALL {
            assert!(cases.iter().any(|(c, _)| c == id), "{id}");
        }
    }
}
