use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fqrack::criteria::{classify, find_little_triangle, verify_little_triangle, ClassifyOptions, VerdictTag};
use fqrack::matgrp::orbit::DEFAULT_ORBIT_CAP;
use fqrack::matgrp::unipotent::class_representative;
use fqrack::paperwit::{standard_cases, LemmaId, WitnessParams};
use fqrack::report::{enumerate_unipotent_classes, lemma_reports, Report, TableOptions, DEFAULT_CLASS_CAP};
use fqrack::{field_of_order, make_field, ClassRack, Family, Field, GroupCtx, GroupError, Partition, Rack};

const EXIT_DISAGREE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Enumeration is limited to these dimensions and field orders.
const ENUM_MAX_N: usize = 8;
const ENUM_MAX_Q: u32 = 9;

#[derive(Parser)]
#[command(name = "fqrack", version, about = "Conjugacy-class racks over finite fields and their collapse criteria")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Seed for budgeted scans and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Separation tests allowed to the F scan.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Candidates examined by a budgeted D scan.
    #[arg(long, global = true, default_value_t = 100_000)]
    d_budget: u64,
    /// Cap on any single orbit computation.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
    /// Largest conjugacy class that will be built.
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_CAP)]
    class_cap: usize,
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Md,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field order p^m.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u32>,
    #[arg(long, requires = "m")]
    p: Option<u32>,
    #[arg(long, requires = "p")]
    m: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field, String> {
        match (self.q, self.p, self.m) {
            (Some(q), _, _) => field_of_order(q).map_err(|e| e.to_string()),
            (None, Some(p), Some(m)) => make_field(p, m).map_err(|e| e.to_string()),
            _ => Err("give --q or both --p and --m".into()),
        }
    }
    fn order(&self) -> Option<u32> {
        self.q.or_else(|| self.p?.checked_pow(self.m?))
    }
}

#[derive(Args, Clone)]
struct GroupArgs {
    #[arg(long, default_value = "psl", value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    field: FieldArgs,
}

impl GroupArgs {
    fn ctx(&self) -> Result<GroupCtx, String> {
        GroupCtx::new(self.family, self.n, &self.field.field()?).map_err(|e| e.to_string())
    }
}

#[derive(Args, Clone)]
struct ElementArgs {
    /// Matrix literal, rows separated by `;`, entries by `,` (field encodings).
    #[arg(long, conflicts_with = "partition")]
    element: Option<String>,
    /// Unipotent class by Jordan type, e.g. `2,1`.
    #[arg(long, value_parser = parse_partition)]
    partition: Option<Partition>,
    /// Label of a regular unipotent class.
    #[arg(long, default_value_t = 1)]
    label: u16,
}

impl ElementArgs {
    fn element(&self, ctx: &GroupCtx) -> Result<fqrack::Matrix, String> {
        let m = match (&self.element, &self.partition) {
            (Some(s), _) => ctx.parse_element(s).map_err(|e| e.to_string())?,
            (None, Some(p)) => class_representative(ctx, p, self.label).map_err(|e| e.to_string())?,
            (None, None) => return Err("give --element or --partition".into()),
        };
        ctx.element(m).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a finite field.
    Field(FieldArgs),
    /// Classify the conjugacy class of an element.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// List the unipotent classes of a group.
    EnumerateUnipotent(GroupArgs),
    /// Classify every unipotent class over a grid and compare with the
    /// expected verdicts.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        ns: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        qs: Vec<u32>,
        #[arg(long, default_value = "psl", value_parser = parse_family)]
        family: Family,
        /// Also verify every witness family and run the formula oracle.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 200)]
        oracle_trials: usize,
    },
    /// Re-check witness constructions; all families at standard parameters
    /// when no family is given.
    VerifyPaper {
        #[arg(long)]
        lemma: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_partition)]
        partition: Option<Partition>,
        #[arg(long, default_value_t = 200)]
        oracle_trials: usize,
    },
    /// Search a class for a little triangle.
    LittleTriangle {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

struct Output {
    text: String,
    code: u8,
}

fn emit_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn render(report: &Report, g: &Global) -> String {
    match g.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    }
}

fn classify_opts(g: &Global) -> ClassifyOptions {
    ClassifyOptions {
        f_budget: g.budget,
        d_budget: g.d_budget,
        seed: g.seed,
        orbit_cap: g.orbit_cap,
        ..ClassifyOptions::default()
    }
}

fn class_of(ctx: &GroupCtx, x: &fqrack::Matrix, cap: usize) -> Result<ClassRack<GroupCtx>, Failure> {
    ClassRack::new(ctx.clone(), x, cap).map_err(|e| match e {
        GroupError::CapExceeded { .. } => Failure::Cap(e.to_string()),
        other => Failure::Usage(other.to_string()),
    })
}

fn run(cmd: &Cmd, g: &Global, start: Instant) -> Result<Output, Failure> {
    let elapsed = || g.timing.then(|| start.elapsed().as_millis() as u64);
    match cmd {
        Cmd::Field(fa) => {
            let f = fa.field()?;
            let v = json!({
                "p": f.p(),
                "m": f.m(),
                "q": f.q(),
                "modulus": f.spec().modulus,
                "primitive": f.primitive(),
                "smallest_nonsquare": f.smallest_nonsquare(),
            });
            let text = match g.format {
                Format::Json => emit_json(&v),
                Format::Md => format!(
                    "F_{} = F_{}[X]/({:?}), primitive element {}, smallest nonsquare {:?}\n",
                    f.q(),
                    f.p(),
                    f.spec().modulus,
                    f.primitive(),
                    f.smallest_nonsquare()
                ),
            };
            Ok(Output { text, code: 0 })
        }
        Cmd::Classify { group, element } => {
            let ctx = group.ctx()?;
            let x = element.element(&ctx)?;
            let rack = class_of(&ctx, &x, g.class_cap)?;
            let v = classify(&rack, &[rack.base()], &classify_opts(g));
            let code = if v.tag == VerdictTag::Unknown { EXIT_CAP } else { 0 };
            let body = json!({
                "tool_version": fqrack::report::TOOL_VERSION,
                "seed": g.seed,
                "group": format!("{ctx:?}"),
                "element": x.literal(),
                "verdict": v,
                "timing_ms": elapsed(),
            });
            let text = match g.format {
                Format::Json => emit_json(&body),
                Format::Md => format!(
                    "{ctx:?}, class of size {}: {} ({} mode, {} evaluations)\n",
                    v.class_size,
                    v.tag,
                    serde_json::to_value(v.mode).expect("mode serializes"),
                    v.budget_spent
                ),
            };
            Ok(Output { text, code })
        }
        Cmd::EnumerateUnipotent(ga) => {
            if ga.n > ENUM_MAX_N || ga.field.order().is_none_or(|q| q > ENUM_MAX_Q) {
                return Err(Failure::Cap(format!(
                    "enumeration is limited to n <= {ENUM_MAX_N} and q <= {ENUM_MAX_Q}"
                )));
            }
            let ctx = ga.ctx()?;
            let specs = enumerate_unipotent_classes(&ctx).map_err(|e| e.to_string())?;
            let text = match g.format {
                Format::Json => emit_json(&json!({ "group": format!("{ctx:?}"), "classes": specs })),
                Format::Md => {
                    let mut s = String::from("| type | label | representative |\n|---|---|---|\n");
                    for c in &specs {
                        s += &format!("| {} | {} | `{}` |\n", c.partition, c.label, c.representative);
                    }
                    s
                }
            };
            Ok(Output { text, code: 0 })
        }
        Cmd::Table {
            ns,
            qs,
            family,
            full,
            oracle_trials,
        } => {
            let opts = TableOptions {
                family: *family,
                ns: ns.clone(),
                qs: qs.clone(),
                classify: classify_opts(g),
                class_cap: g.class_cap,
            };
            let mut report = Report::new(g.seed).with_table(&opts).map_err(|e| e.to_string())?;
            if *full {
                report = report.with_lemmas(&standard_cases()).with_oracle(*oracle_trials);
            }
            report.timing_ms = elapsed();
            Ok(Output {
                text: render(&report, g),
                code: report.exit_code() as u8,
            })
        }
        Cmd::VerifyPaper {
            lemma,
            n,
            field,
            partition,
            oracle_trials,
        } => {
            let mut report = Report::new(g.seed);
            match lemma {
                None => report = report.with_lemmas(&standard_cases()).with_oracle(*oracle_trials),
                Some(name) => {
                    let id: LemmaId = name.parse().map_err(|e: fqrack::paperwit::PaperwitError| e.to_string())?;
                    let params = WitnessParams {
                        n: n.or(partition.as_ref().map(|p| p.n())),
                        q: field.order(),
                        partition: partition.clone(),
                    };
                    let reports = lemma_reports(&[(id, params)]);
                    if let Some(a) = reports[0].assertions.iter().find(|a| a.name == "construction" && !a.pass) {
                        return Err(Failure::Usage(a.detail.clone()));
                    }
                    report = report.with_lemma_reports(reports);
                }
            }
            report.timing_ms = elapsed();
            Ok(Output {
                text: render(&report, g),
                code: report.exit_code() as u8,
            })
        }
        Cmd::LittleTriangle { group, element } => {
            let ctx = group.ctx()?;
            let x = element.element(&ctx)?;
            let rack = class_of(&ctx, &x, g.class_cap)?;
            let t = find_little_triangle(&ctx, &rack, g.orbit_cap, g.orbit_cap).map_err(|e| match e {
                GroupError::CapExceeded { .. } => Failure::Cap(e.to_string()),
                other => Failure::Usage(other.to_string()),
            })?;
            let verified = t.as_ref().is_some_and(|t| verify_little_triangle(&ctx, t));
            let body = json!({
                "group": format!("{ctx:?}"),
                "element": x.literal(),
                "class_size": rack.len(),
                "triangle": t,
                "verified": verified,
            });
            let text = match g.format {
                Format::Json => emit_json(&body),
                Format::Md => match &t {
                    Some(t) => format!("little triangle: sigma = {:?}, h = {}, verified = {verified}\n", t.sigma, t.h),
                    None => "no little triangle\n".into(),
                },
            };
            let code = if t.is_some() && !verified { EXIT_DISAGREE } else { 0 };
            Ok(Output { text, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = &cli.global;
    if g.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(g.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli.cmd, g, Instant::now()) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match &g.out {
                Some(p) => {
                    if let Err(e) = fs::write(p, text) {
                        eprintln!("error: {}: {e}", p.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CAP)
        }
    }
}
