//! Class enumeration, the verdict table sweep and report rendering.

mod expected;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{classify, ClassifyOptions, Verdict, VerdictTag, Witness};
use crate::ffield::{field_of_order, Fe, FieldError};
use crate::matgrp::unipotent::{class_representative, regular_labels};
use crate::matgrp::{Family, GroupCtx, GroupError, Partition};
use crate::paperwit::{formula_oracle_suite, standard_cases, verify_lemma, Assertion, LemmaId, LemmaReport, OracleReport, WitnessParams};
use crate::rack::ClassRack;

pub use expected::{agrees, Expectation, ExpectedTable, Rule};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Classes larger than this are reported as skipped by the table sweep.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("expected-verdict rules: {0}")]
    Rules(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A unipotent conjugacy class, named by its Jordan type and, for the
/// regular type, a scalar label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub kind: String,
    pub partition: Partition,
    pub label: Fe,
    pub representative: String,
}

/// One class per partition of `n`; the regular type splits into one class
/// per label.
pub fn enumerate_unipotent_classes(ctx: &GroupCtx) -> Result<Vec<ClassSpec>, GroupError> {
    let f = ctx.field();
    let mut out = Vec::new();
    for lambda in Partition::all(ctx.n()) {
        let labels = if lambda.is_regular() && ctx.family() != Family::GL {
            regular_labels(f, ctx.n())
        } else {
            vec![1]
        };
        for a in labels {
            let rep = ctx.element(class_representative(ctx, &lambda, a)?)?;
            out.push(ClassSpec {
                kind: "unipotent".into(),
                partition: lambda.clone(),
                label: a,
                representative: rep.literal(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Agree,
    Disagree,
    Skipped,
    NoExpectation,
}

impl std::fmt::Display for RowStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RowStatus::Agree => "agree",
            RowStatus::Disagree => "DISAGREE",
            RowStatus::Skipped => "SKIPPED",
            RowStatus::NoExpectation => "no expectation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub group: String,
    pub n: usize,
    pub q: u32,
    pub class: ClassSpec,
    pub class_size: Option<usize>,
    pub expected: Option<Expectation>,
    pub expected_remark: Option<String>,
    pub status: RowStatus,
    pub skip_reason: Option<String>,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub family: Family,
    pub ns: Vec<usize>,
    pub qs: Vec<u32>,
    pub d_exhaustive_limit: usize,
    pub d_budget: u64,
    pub f_budget: u64,
    pub orbit_cap: usize,
    pub class_cap: usize,
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub family: Family,
    pub ns: Vec<usize>,
    pub qs: Vec<u32>,
    pub classify: ClassifyOptions,
    pub class_cap: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            family: Family::PSL,
            ns: vec![2, 3, 4],
            qs: vec![2, 3, 4, 5],
            classify: ClassifyOptions::default(),
            class_cap: DEFAULT_CLASS_CAP,
        }
    }
}

impl TableOptions {
    fn settings(&self) -> Settings {
        let c = &self.classify;
        Settings {
            family: self.family,
            ns: self.ns.clone(),
            qs: self.qs.clone(),
            d_exhaustive_limit: c.d_exhaustive_limit,
            d_budget: c.d_budget,
            f_budget: c.f_budget,
            orbit_cap: c.orbit_cap,
            class_cap: self.class_cap,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: usize,
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
    pub no_expectation: usize,
    pub lemmas: usize,
    pub lemma_failures: usize,
    pub oracle_passed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub seed: u64,
    pub settings: Option<Settings>,
    pub rows: Vec<TableRow>,
    pub lemmas: Vec<LemmaReport>,
    pub oracle: Option<OracleReport>,
    pub summary: Summary,
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Report {
            tool_version: TOOL_VERSION.into(),
            seed,
            settings: None,
            rows: Vec::new(),
            lemmas: Vec::new(),
            oracle: None,
            summary: Summary::default(),
            timing_ms: None,
        }
    }

    fn resummarize(&mut self) {
        let count = |s: RowStatus| self.rows.iter().filter(|r| r.status == s).count();
        self.summary = Summary {
            rows: self.rows.len(),
            agree: count(RowStatus::Agree),
            disagree: count(RowStatus::Disagree),
            skipped: count(RowStatus::Skipped),
            no_expectation: count(RowStatus::NoExpectation),
            lemmas: self.lemmas.len(),
            lemma_failures: self.lemmas.iter().filter(|l| !l.passed()).count(),
            oracle_passed: self.oracle.as_ref().map(|o| o.passed()),
        };
    }

    pub fn with_table(mut self, opts: &TableOptions) -> Result<Self, ReportError> {
        self.settings = Some(opts.settings());
        self.rows = table_rows(opts)?;
        self.resummarize();
        Ok(self)
    }

    pub fn with_lemmas(self, cases: &[(LemmaId, WitnessParams)]) -> Self {
        self.with_lemma_reports(lemma_reports(cases))
    }

    pub fn with_lemma_reports(mut self, lemmas: Vec<LemmaReport>) -> Self {
        self.lemmas = lemmas;
        self.resummarize();
        self
    }

    pub fn with_oracle(mut self, trials: usize) -> Self {
        self.oracle = Some(formula_oracle_suite(trials, self.seed));
        self.resummarize();
        self
    }

    /// 0 when everything agrees and every check passes, 1 otherwise.
    /// Skipped rows do not affect the code.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.disagree > 0 || s.lemma_failures > 0 || s.oracle_passed == Some(false) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        render_markdown(self)
    }
}

/// Every family at its standard parameters.
pub fn standard_lemma_reports() -> Vec<LemmaReport> {
    lemma_reports(&standard_cases())
}

/// Runs each case; a construction error becomes a single failing assertion.
pub fn lemma_reports(cases: &[(LemmaId, WitnessParams)]) -> Vec<LemmaReport> {
    cases
        .par_iter()
        .map(|(id, params)| {
            verify_lemma(*id, params).unwrap_or_else(|e| LemmaReport {
                lemma: *id,
                params: params.clone(),
                assertions: vec![Assertion {
                    name: "construction".into(),
                    pass: false,
                    detail: e.to_string(),
                }],
                note: None,
            })
        })
        .collect()
}

fn classify_row(ctx: &GroupCtx, spec: ClassSpec, table: &ExpectedTable, opts: &TableOptions) -> Result<TableRow, ReportError> {
    let rule = table.lookup(ctx.n(), ctx.q(), &spec.partition);
    let mut row = TableRow {
        group: format!("{:?}", ctx),
        n: ctx.n(),
        q: ctx.q(),
        class: spec,
        class_size: None,
        expected: rule.map(|r| r.expect),
        expected_remark: rule.map(|r| r.remark.clone()),
        status: RowStatus::Skipped,
        skip_reason: None,
        verdict: None,
    };
    let x = ctx.parse_element(&row.class.representative)?;
    let rack = match ClassRack::new(ctx.clone(), &x, opts.class_cap) {
        Ok(r) => r,
        Err(GroupError::CapExceeded { cap }) => {
            row.skip_reason = Some(format!("class exceeds the cap of {cap} elements"));
            return Ok(row);
        }
        Err(e) => return Err(e.into()),
    };
    let v = classify(&rack, &[rack.base()], &opts.classify);
    row.class_size = Some(v.class_size);
    row.status = match row.expected {
        None => RowStatus::NoExpectation,
        Some(e) if agrees(e, v.tag, v.no_d_exhaustive()) => RowStatus::Agree,
        Some(_) => RowStatus::Disagree,
    };
    row.verdict = Some(v);
    Ok(row)
}

/// Classifies every nontrivial unipotent class of `family_n(q)` over the
/// grid, in grid order.
pub fn table_rows(opts: &TableOptions) -> Result<Vec<TableRow>, ReportError> {
    let table = ExpectedTable::embedded()?;
    let mut jobs = Vec::new();
    for &n in &opts.ns {
        for &q in &opts.qs {
            let f = field_of_order(q)?;
            let ctx = GroupCtx::new(opts.family, n, &f)?;
            for spec in enumerate_unipotent_classes(&ctx)? {
                if !spec.partition.is_trivial() {
                    jobs.push((ctx.clone(), spec));
                }
            }
        }
    }
    jobs.into_par_iter()
        .map(|(ctx, spec)| classify_row(&ctx, spec, &table, opts))
        .collect()
}

fn computed_cell(v: &Verdict) -> String {
    match &v.witness {
        Some(Witness::TypeD(w)) => format!("TypeD (orbits {}, {})", w.orbit_r, w.orbit_s),
        Some(Witness::TypeF(w)) => format!("TypeF (orbits {:?})", w.orbits),
        None if v.tag == VerdictTag::Unknown => {
            format!("Unknown (D {:?}, F {:?})", v.d_search.outcome, v.f_search.as_ref().map(|f| f.outcome))
        }
        None => v.tag.to_string(),
    }
}

fn render_markdown(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# fqrack report\n");
    let _ = writeln!(s, "tool version {}, seed {}\n", r.tool_version, r.seed);
    if !r.rows.is_empty() {
        let _ = writeln!(s, "## Unipotent classes\n");
        let _ = writeln!(s, "| group | type | label | class size | expected | computed | mode | status |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|");
        for row in &r.rows {
            let size = row.class_size.map_or("-".to_string(), |c| c.to_string());
            let exp = row.expected.map_or("-".to_string(), |e| e.to_string());
            let (comp, mode) = match &row.verdict {
                Some(v) => (computed_cell(v), format!("{:?}", v.mode).to_lowercase()),
                None => (row.skip_reason.clone().unwrap_or_default(), "-".into()),
            };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                row.group, row.class.partition, row.class.label, size, exp, comp, mode, row.status
            );
        }
        s.push('\n');
    }
    if !r.lemmas.is_empty() {
        let _ = writeln!(s, "## Witness families\n");
        let _ = writeln!(s, "| family | parameters | assertions | result |");
        let _ = writeln!(s, "|---|---|---|---|");
        for l in &r.lemmas {
            let params = serde_json::to_string(&l.params).expect("params serialize");
            let res = if l.passed() { "pass".to_string() } else { format!("FAIL ({})", l.failures().count()) };
            let _ = writeln!(s, "| {} | `{}` | {} | {} |", l.lemma, params, l.assertions.len(), res);
        }
        s.push('\n');
        for l in r.lemmas.iter().filter(|l| l.note.is_some()) {
            let _ = writeln!(s, "- {}: {}", l.lemma, l.note.as_deref().unwrap_or_default());
        }
        for l in &r.lemmas {
            for a in l.failures() {
                let _ = writeln!(s, "- FAIL {}: {} ({})", l.lemma, a.name, a.detail);
            }
        }
        s.push('\n');
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(
            s,
            "## Formula oracle\n\n{} trials, {} checks, {} mismatches\n",
            o.trials,
            o.checks,
            o.mismatches.len()
        );
    }
    let m = &r.summary;
    let _ = writeln!(
        s,
        "## Summary\n\nrows {}: agree {}, disagree {}, skipped {}, no expectation {}; families {} with {} failing",
        m.rows, m.agree, m.disagree, m.skipped, m.no_expectation, m.lemmas, m.lemma_failures
    );
    if let Some(t) = r.timing_ms {
        let _ = writeln!(s, "\nelapsed {t} ms");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_classes_split_by_label() {
        let f = field_of_order(7).unwrap();
        let sl = GroupCtx::new(Family::SL, 3, &f).unwrap();
        let specs = enumerate_unipotent_classes(&sl).unwrap();
        assert_eq!(specs.iter().filter(|s| s.partition.is_regular()).count(), 3);
        assert_eq!(specs.len(), 3 + 2);
    }

    #[test]
    fn small_table_agrees() {
        let opts = TableOptions {
            ns: vec![2, 3],
            qs: vec![2, 3],
            ..Default::default()
        };
        let r = Report::new(0).with_table(&opts).unwrap();
        assert_eq!(r.summary.disagree, 0, "{}", r.to_markdown());
        assert_eq!(r.summary.skipped, 0);
        assert_eq!(r.exit_code(), 0);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn tiny_class_cap_skips() {
        let opts = TableOptions {
            ns: vec![3],
            qs: vec![2],
            class_cap: 30,
            ..Default::default()
        };
        let r = Report::new(0).with_table(&opts).unwrap();
        assert_eq!(r.summary.skipped, 1);
        assert_eq!(r.exit_code(), 0);
        assert!(r.to_markdown().contains("SKIPPED"));
    }
}
