//! Command implementations behind the `beideal` binary.
//!
//! Every command returns an [`Outcome`]: the JSON document, its table
//! rendering and the exit code. `main` only parses arguments and prints.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use beideal::betti::Subject;
use beideal::dsl::parse_expr;
use beideal::graph::classify;
use beideal::verify::{
    betti_table, hilbert_report, run_invariants, Method, Mode, OracleConfig, Verdict,
    VerificationReport,
};
use beideal::{Error, FamilyExpr, Graph};

pub mod scan;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_NOT_COMPUTABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "beideal",
    version,
    about = "Binomial edge ideals of Cohen-Macaulay graph families"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Field characteristic: a prime, or 0 for the rationals.
    #[arg(long = "char", global = true, default_value_t = 32003)]
    pub characteristic: u32,
    /// Largest internal degree computed by the Koszul oracle.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Worker threads (0 picks the number of CPUs).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Hochster,
    Koszul,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Closed,
    Oracle,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Closed => Mode::Closed,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Both => Mode::Both,
        }
    }
}

/// A family expression, or a graph JSON file (`-` reads stdin).
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Family expression, e.g. `circ(Fm(4), Fm(3))`.
    #[arg(required_unless_present = "graph", conflicts_with = "graph")]
    pub expr: Option<String>,
    /// Graph JSON `{"n": .., "edges": [[u, v], ..]}` instead of an expression.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct the graph and classify its vertices.
    Build(Input),
    /// Closed-form invariants, oracle invariants, or both compared.
    Invariants {
        expr: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Graded Betti table of S/J (Koszul) or S/in(J) (Hochster).
    Betti(Input),
    /// Hilbert series data and the h-vector checks.
    Hilbert {
        #[command(flatten)]
        input: Input,
        /// Last degree of the Hilbert function compared with the series.
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// Compare closed forms with the oracle for each expression.
    Verify {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Evaluate a template over parameter ranges, one row per instance.
    Scan(scan::ScanArgs),
}

#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub code: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            Format::Table => self.table.clone(),
        }
    }
}

/// Error document: `{"error": {"kind", "message", "position"}}`.
pub fn error_outcome(e: &Error) -> Outcome {
    let (kind, code) = match e {
        Error::Parse { .. } => ("parse", EXIT_INPUT),
        Error::SizeCap { .. } => ("size-cap", EXIT_NOT_COMPUTABLE),
        Error::InvalidFamily(_) => ("invalid-family", EXIT_INPUT),
        Error::InvalidCharacteristic(_) => ("invalid-characteristic", EXIT_INPUT),
        Error::Json(_) => ("json", EXIT_INPUT),
        Error::VertexOutOfRange { .. } | Error::InvalidEdge(..) => ("invalid-graph", EXIT_INPUT),
        _ => ("not-computable", EXIT_NOT_COMPUTABLE),
    };
    let position = match e {
        Error::Parse { pos, .. } => Some(*pos),
        _ => None,
    };
    Outcome {
        json: json!({"error": {"kind": kind, "message": e.to_string(), "position": position}}),
        table: format!("error: {e}\n"),
        code,
    }
}

impl Global {
    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            characteristic: self.characteristic,
            max_degree: self.max_degree,
            method: match self.method {
                MethodArg::Hochster => Method::Hochster,
                MethodArg::Koszul => Method::Koszul,
                MethodArg::Auto => Method::Auto,
            },
        }
    }
}

/// Runs a parsed command line inside a pool of `--threads` workers.
pub fn run(cli: &Cli) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if cli.global.threads > 0 {
        pool = pool.num_threads(cli.global.threads);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                json: json!({"error": {"kind": "threads", "message": e.to_string(), "position": null}}),
                table: format!("error: {e}\n"),
                code: EXIT_INPUT,
            }
        }
    };
    pool.install(|| dispatch(cli).unwrap_or_else(|e| error_outcome(&e)))
}

fn dispatch(cli: &Cli) -> beideal::Result<Outcome> {
    let cfg = cli.global.oracle();
    if cfg.characteristic != 0 {
        beideal::PrimeField::new(cfg.characteristic)?;
    }
    match &cli.command {
        Command::Build(input) => build(input),
        Command::Invariants { expr, mode } => {
            let e = parse_expr(expr)?;
            let r = run_invariants(&e, (*mode).into(), &cfg)?;
            Ok(Outcome {
                table: report_table(&r),
                code: r.exit_code(),
                json: to_json(&r),
            })
        }
        Command::Betti(input) => {
            let (g, _) = load(input)?;
            let t = betti_table(&g, &cfg)?;
            Ok(Outcome {
                table: format!(
                    "S/{} table over {} variables\n{}",
                    t.subject(),
                    t.nvars(),
                    t.to_grid()
                ),
                json: t.to_json(),
                code: EXIT_OK,
            })
        }
        Command::Hilbert { input, window } => {
            let (g, e) = load(input)?;
            let r = hilbert_report(&g, e.as_ref(), &cfg, *window)?;
            let mut table = String::new();
            let _ = writeln!(
                table,
                "h = {:?}, d = {}, a = {}",
                r.data.h, r.data.d, r.data.a
            );
            let _ = writeln!(table, "p(t) = {:?}", r.data.p);
            let _ = writeln!(table, "H(k), k = 0..={window}: {:?}", r.values);
            let _ = writeln!(table, "series matches: {}", r.series_matches);
            if let Some(m) = r.table_matches {
                let _ = writeln!(table, "Betti numerator matches: {m}");
            }
            if let Some(l) = &r.lemma {
                let _ = writeln!(
                    table,
                    "|lc h| = {} vs beta_{{{},{}}} = {}: {}; deg h = reg: {}",
                    l.leading_h.abs(),
                    l.p,
                    l.p + l.r,
                    l.corner,
                    l.abs_matches,
                    l.deg_h_equals_reg
                );
            }
            if let Some(c) = &r.closed_h {
                let _ = writeln!(
                    table,
                    "closed h = {c:?}: {}",
                    r.closed_matches == Some(true)
                );
            }
            for n in &r.notes {
                let _ = writeln!(table, "note: {n}");
            }
            Ok(Outcome {
                code: r.exit_code(),
                json: to_json(&r),
                table,
            })
        }
        Command::Verify { exprs } => verify(exprs, &cfg),
        Command::Scan(args) => scan::scan(args, &cfg),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_source(path: &str) -> beideal::Result<String> {
    let io = |e: std::io::Error| Error::Parse {
        pos: 0,
        msg: format!("{path}: {e}"),
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn load(input: &Input) -> beideal::Result<(Graph, Option<FamilyExpr>)> {
    match (&input.expr, &input.graph) {
        (Some(text), _) => {
            let e = parse_expr(text)?;
            Ok((e.build()?, Some(e)))
        }
        (None, Some(path)) => Ok((Graph::from_json_str(&read_source(path)?)?, None)),
        (None, None) => Err(Error::Parse {
            pos: 0,
            msg: "an expression or --graph is required".into(),
        }),
    }
}

fn build(input: &Input) -> beideal::Result<Outcome> {
    let (g, e) = load(input)?;
    let special = match &e {
        Some(e) => e.build_composite()?.special,
        None => None,
    };
    let c = classify(&g);
    let mut json = g.to_json();
    let obj = json.as_object_mut().expect("graph JSON is an object");
    obj.insert(
        "expression".into(),
        json!(e.as_ref().map(|e| e.to_string())),
    );
    obj.insert("special".into(), json!(special));
    obj.insert(
        "classification".into(),
        json!({
            "leaves": c.leaves,
            "freeVertices": c.free_vertices,
            "cutpoints": c.cutpoints,
            "splitVertices": c.split_vertices,
            "pieces": c.pieces.iter().map(|p| &p.vertices).collect::<Vec<_>>(),
        }),
    );
    let mut table = String::new();
    if let Some(e) = &e {
        let _ = writeln!(table, "{e}");
    }
    let _ = writeln!(table, "n = {}, |E| = {}", g.vertex_count(), g.edge_count());
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    let _ = writeln!(table, "edges: {}", edges.join(" "));
    if let Some(s) = special {
        let _ = writeln!(table, "apex / glued vertex: {s}");
    }
    let _ = writeln!(table, "leaves: {:?}", c.leaves);
    let _ = writeln!(table, "free vertices: {:?}", c.free_vertices);
    let _ = writeln!(table, "cutpoints: {:?}", c.cutpoints);
    let pieces: Vec<_> = c.pieces.iter().map(|p| &p.vertices).collect();
    let _ = writeln!(table, "pieces: {pieces:?}");
    Ok(Outcome {
        json,
        table,
        code: EXIT_OK,
    })
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn value_cell(v: &Option<Value>) -> String {
    match v {
        None => "-".into(),
        Some(Value::Object(m)) => m
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" "),
        Some(v) => v.to_string(),
    }
}

pub fn report_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}  [{}]", r.expression, r.verdict);
    if !r.comparisons.is_empty() {
        let _ = writeln!(
            out,
            "{:<14} {:>16} {:>16}  verdict",
            "invariant", "closed", "oracle"
        );
        for c in &r.comparisons {
            let _ = writeln!(
                out,
                "{:<14} {:>16} {:>16}  {}",
                c.invariant,
                value_cell(&c.closed),
                value_cell(&c.oracle),
                c.verdict
            );
        }
    } else {
        if let Some(c) = &r.closed_form {
            let _ = writeln!(
                out,
                "closed: reg {} projdim {} extremal {} cm-type {}",
                cell(&c.reg),
                cell(&c.projdim),
                cell(&c.extremal_betti),
                cell(&c.cm_type)
            );
        }
        if let Some(o) = &r.oracle {
            let _ = writeln!(
                out,
                "oracle ({}): reg {} projdim {} extremal {} cm-type {}",
                o.method,
                cell(&o.reg),
                cell(&o.projdim),
                cell(&o.extremal_betti),
                cell(&o.cm_type)
            );
        }
    }
    for a in &r.adjudications {
        let cands: Vec<String> = a
            .candidates
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(
            out,
            "adjudication: {}: {} oracle={} confirmed={:?}",
            a.question,
            cands.join(" "),
            cell(&a.oracle),
            a.confirmed
        );
    }
    let notes = r
        .closed_form
        .iter()
        .flat_map(|c| &c.notes)
        .chain(r.oracle.iter().flat_map(|o| &o.notes))
        .chain(&r.oracle_error);
    for n in notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

/// Worst verdict wins: mismatch over not-computable over match.
pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts
        .into_iter()
        .fold(Verdict::Match, |acc, v| match (acc, v) {
            (Verdict::Mismatch, _) | (_, Verdict::Mismatch) => Verdict::Mismatch,
            (Verdict::NotComputable, _) | (_, Verdict::NotComputable) => Verdict::NotComputable,
            _ => Verdict::Match,
        })
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Match => EXIT_OK,
        Verdict::Mismatch => EXIT_MISMATCH,
        Verdict::NotComputable => EXIT_NOT_COMPUTABLE,
    }
}

fn verify(exprs: &[String], cfg: &OracleConfig) -> beideal::Result<Outcome> {
    let parsed = exprs
        .iter()
        .map(|s| parse_expr(s))
        .collect::<beideal::Result<Vec<_>>>()?;
    let reports = parsed
        .par_iter()
        .map(|e| run_invariants(e, Mode::Both, cfg))
        .collect::<beideal::Result<Vec<_>>>()?;
    let verdict = combine(reports.iter().map(|r| r.verdict));
    let table = reports
        .iter()
        .map(report_table)
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        json: json!({"reports": reports, "verdict": verdict}),
        table,
        code: exit_code(verdict),
    })
}

/// The β_{p,p+j} = 0 for j < r check on a full table of S/J.
pub fn conjecture_status(r: &VerificationReport) -> &'static str {
    let Some(o) = &r.oracle else {
        return "untested";
    };
    let (Some(t), Some(p), Some(reg)) = (&o.table, o.projdim, o.reg) else {
        return "untested";
    };
    if t.subject() != Subject::Ideal || !t.is_complete() {
        return "untested";
    }
    if (0..reg).all(|j| t.get(p, p + j) == 0) {
        "holds"
    } else {
        "fails"
    }
}

pub(crate) fn param_table(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
