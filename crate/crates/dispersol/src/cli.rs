//! Argument parsing and command dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dispersion_core::gadgets::{gen_chordal_gadget, gen_is_gadget, gen_mcis_gadget, gen_sat_to_mcis, GadgetInstance};
use dispersion_core::rat::{parse_rat, Rat};
use dispersion_core::rounding::{round_set, round_up_delta, RoundingError};
use dispersion_core::solver::{
    brute_force_dis, brute_force_dispersion_with_limit, decide_dispersion, solve_max_dispersion, Method, SolveError,
    SolveOptions, DEFAULT_STATE_BUDGET,
};
use dispersion_core::translate::{translate_down, translate_up, TranslateError};
use dispersion_core::{Graph, PointSet, Space};
use serde_json::{json, Value};
use thiserror::Error;

use crate::dot::export_dot;
use crate::formats::{self, FormatError};
use crate::oracle::{self, Suite};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const BUDGET_ENV: &str = "DISPERSOL_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "dispersol", version, about = "Exact continuous dispersion on unit-length graphs")]
pub struct Cli {
    /// Worker threads for the oracle suites (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum dispersed set with a witness.
    Solve(SolveArgs),
    /// Is there a dispersed set of k points? Exit 0 for yes, 1 for no.
    Decide(SolveArgs),
    /// Check a point file for dispersion (and auto-dispersion with --auto).
    Verify(VerifyArgs),
    /// Push a dispersed set to the rounded distance.
    Round(RoundArgs),
    /// Move a set between delta and delta/(delta+1).
    Translate(TranslateArgs),
    /// Generate a reduction instance.
    Gen(GenArgs),
    /// Brute-force oracles and randomized cross-check suites.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dp,
    Brute,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub graph: PathBuf,
    /// Distance as `a/b` or an integer.
    #[arg(long, value_parser = parse_delta)]
    pub delta: Option<Rat>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the main output file (witness, points or graph).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a Graphviz rendering of the graph and the resulting points.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub k: Option<usize>,
    /// PACE tree decomposition of the input graph.
    #[arg(long)]
    pub td: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Upper bound on the longest path length.
    #[arg(long = "L")]
    pub longest_path: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub auto: bool,
}

#[derive(Debug, Args)]
pub struct RoundArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long = "L")]
    pub longest_path: Option<usize>,
    /// Write the per-step JSON trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Way {
    Up,
    Down,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[arg(value_enum)]
    pub way: Way,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub points: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GadgetKind {
    Is,
    Chordal,
    Mcis,
    Sat,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GadgetKind,
    /// Source graph, colored graph (`c` class lines) or DIMACS CNF.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_delta)]
    pub delta: Option<Rat>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleKind {
    /// Brute-force optimum over the grid.
    Brute,
    /// Brute-force distance-d independent set.
    Dis,
    /// Rounded distance by enumerating numerators.
    RoundDelta,
    /// A randomized cross-check suite.
    Suite,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Pipeline,
    Translation,
    Dp,
    Rounding,
    Gadgets,
    Subdivision,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub kind: OracleKind,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, value_parser = parse_delta)]
    pub delta: Option<Rat>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long = "L")]
    pub longest_path: Option<usize>,
    #[arg(long, default_value_t = oracle::ORACLE_GRID_LIMIT)]
    pub limit: usize,
    #[arg(long, value_enum)]
    pub suite: Option<SuiteArg>,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the brute-force witness as a point file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_delta(s: &str) -> Result<Rat, String> {
    let d = parse_rat(s).map_err(|_| format!("`{s}` is not a rational `a/b`"))?;
    if d <= Rat::from_integer(0.into()) {
        return Err("delta must be positive".into());
    }
    Ok(d)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Guard(_) => EXIT_GUARD,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Guard(_) | SolveError::StateBudget { .. } | SolveError::Overflow => CliError::Guard(e.to_string()),
            SolveError::Decomposition(_) => CliError::Input(e.to_string()),
            SolveError::Translate(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RoundingError> for CliError {
    fn from(e: RoundingError) -> Self {
        match e {
            RoundingError::NotDispersed | RoundingError::DeltaTooLarge => CliError::Input(e.to_string()),
            RoundingError::StepBudget { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<TranslateError> for CliError {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::OutputInvalid(_) | TranslateError::OutputSize { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: FormatError) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    formats::parse_graph(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_points(path: &Path, g: &Graph) -> Result<formats::PointFile, CliError> {
    formats::parse_points(&read(path)?, g).map_err(|e| in_file(path, e))
}

fn require_delta(flag: Option<&Rat>, embedded: Option<&Rat>) -> Result<Rat, CliError> {
    flag.or(embedded).cloned().ok_or_else(|| CliError::Input("--delta is required".into()))
}

fn state_budget() -> Result<f64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(DEFAULT_STATE_BUDGET),
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|b| *b > 0.0)
            .ok_or_else(|| CliError::Input(format!("{BUDGET_ENV}=`{v}` is not a positive number"))),
    }
}

/// A finished command: its JSON report and exit code.
struct Outcome {
    report: Value,
    code: i32,
}

fn ok(report: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { report, code: EXIT_OK })
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs one command, writing the report to `out` (unless `--json` names a file) and
/// diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let json_path = match &cli.command {
        Command::Solve(a) | Command::Decide(a) => a.common.json.clone(),
        Command::Verify(a) => a.common.json.clone(),
        Command::Round(a) => a.common.json.clone(),
        Command::Translate(a) => a.common.json.clone(),
        Command::Gen(a) => a.json.clone(),
        Command::Oracle(a) => a.json.clone(),
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(CliError::Input(format!("--threads: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match result {
        Ok(o) => {
            let text = format!("{}\n", serde_json::to_string_pretty(&o.report).expect("reports serialize"));
            let written = match json_path {
                Some(p) => write(&p, &text),
                None => out.write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string())),
            };
            match written {
                Ok(()) => o.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Solve(a) => solve(a),
        Command::Decide(a) => decide(a),
        Command::Verify(a) => verify(a),
        Command::Round(a) => round(a),
        Command::Translate(a) => translate(a),
        Command::Gen(a) => gen(a),
        Command::Oracle(a) => run_oracle(a),
    }
}

fn solve_options(a: &SolveArgs, g: &Graph) -> Result<SolveOptions, CliError> {
    let td = match &a.td {
        None => None,
        Some(p) => {
            let td = formats::parse_td(&read(p)?).map_err(|e| in_file(p, e))?;
            td.validate(g).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Some(td)
        }
    };
    Ok(SolveOptions {
        method: match a.method {
            MethodArg::Auto => Method::Auto,
            MethodArg::Dp => Method::Dp,
            MethodArg::Brute => Method::Brute,
        },
        state_budget: state_budget()?,
        longest_path_hint: a.longest_path,
        td,
    })
}

fn write_outputs(c: &Common, g: &Graph, set: &PointSet) -> Result<(), CliError> {
    if let Some(p) = &c.out {
        write(p, &formats::emit_points(&set.points, Some(&set.delta)))?;
    }
    if let Some(p) = &c.dot {
        write(p, &export_dot(g, Some(&set.points)))?;
    }
    Ok(())
}

fn solve(a: &SolveArgs) -> Result<Outcome, CliError> {
    let g = load_graph(&a.common.graph)?;
    let delta = require_delta(a.common.delta.as_ref(), None)?;
    let opts = solve_options(a, &g)?;
    let r = solve_max_dispersion(&g, &delta, &opts)?;
    write_outputs(&a.common, &g, &r.witness)?;
    let mut rep = report::solve(&r);
    if let Some(k) = a.k {
        rep["k"] = json!(k);
        rep["at_least_k"] = json!(r.optimum >= k);
    }
    ok(rep)
}

fn decide(a: &SolveArgs) -> Result<Outcome, CliError> {
    let g = load_graph(&a.common.graph)?;
    let delta = require_delta(a.common.delta.as_ref(), None)?;
    let k = a.k.ok_or_else(|| CliError::Input("decide needs --k".into()))?;
    let opts = solve_options(a, &g)?;
    let d = decide_dispersion(&g, &delta, k, &opts)?;
    if let Some(c) = &d.certificate {
        write_outputs(&a.common, &g, c)?;
    }
    Ok(Outcome { report: report::decision(&delta, k, &d), code: if d.yes { EXIT_OK } else { EXIT_NO } })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let g = load_graph(&a.common.graph)?;
    let pf = load_points(&a.points, &g)?;
    let delta = require_delta(a.common.delta.as_ref(), pf.delta.as_ref())?;
    let set = PointSet::new(pf.points, delta.clone());
    if let Some(p) = &a.common.dot {
        write(p, &export_dot(&g, Some(&set.points)))?;
    }
    let sp = Space::new(&g);
    let mut rep = json!({
        "schema": report::SCHEMA,
        "command": "verify",
        "delta": report::rat(&delta),
        "size": set.len(),
    });
    let mut good = true;
    match sp.validate_dispersed(&set.points, &delta) {
        Ok(()) => rep["dispersed"] = json!(true),
        Err(v) => {
            good = false;
            rep["dispersed"] = json!(false);
            rep["violation"] = json!({
                "p": report::point(&v.p),
                "q": report::point(&v.q),
                "distance": report::rat(&v.distance),
            });
        }
    }
    if a.auto {
        match sp.validate_auto_dispersed(&set.points, &delta) {
            Ok(()) => rep["auto_dispersed"] = json!(true),
            Err(v) => {
                good = false;
                rep["auto_dispersed"] = json!(false);
                rep["auto_violation"] = json!(v.to_string());
            }
        }
    }
    rep["ok"] = json!(good);
    Ok(Outcome { report: rep, code: if good { EXIT_OK } else { EXIT_NO } })
}

fn round(a: &RoundArgs) -> Result<Outcome, CliError> {
    let g = load_graph(&a.common.graph)?;
    let pf = load_points(&a.points, &g)?;
    let delta = require_delta(a.common.delta.as_ref(), pf.delta.as_ref())?;
    let l = g.longest_path_bound(a.longest_path);
    let space = Space::new(&g);
    let (pts, trace) = round_set(&space, &pf.points, &delta, l)?;
    let set = PointSet::new(pts, trace.delta_star.clone());
    write_outputs(&a.common, &g, &set)?;
    if let Some(p) = &a.trace {
        let text = serde_json::to_string_pretty(&report::trace(&trace)).expect("trace serializes");
        write(p, &(text + "\n"))?;
    }
    ok(report::round(&trace, l, &set.points))
}

fn translate(a: &TranslateArgs) -> Result<Outcome, CliError> {
    let g = load_graph(&a.common.graph)?;
    let pf = load_points(&a.points, &g)?;
    let delta = require_delta(a.common.delta.as_ref(), pf.delta.as_ref())?;
    let input = PointSet::new(pf.points, delta.clone());
    let (set, cert) = match a.way {
        Way::Up => translate_up(&g, &input)?,
        Way::Down => translate_down(&g, &input)?,
    };
    write_outputs(&a.common, &g, &set)?;
    ok(report::certificate(&cert, &delta, &set.delta))
}

fn gen(a: &GenArgs) -> Result<Outcome, CliError> {
    let text = read(&a.input)?;
    let need_delta = || a.delta.clone().ok_or_else(|| CliError::Input("this gadget needs --delta".into()));
    let gadget_err = |e: dispersion_core::gadgets::GadgetError| CliError::Input(e.to_string());
    let (kind, gd, source): (&str, GadgetInstance, Value) = match a.kind {
        GadgetKind::Is | GadgetKind::Chordal => {
            let g = formats::parse_graph(&text).map_err(|e| in_file(&a.input, e))?;
            let delta = need_delta()?;
            let (kind, gd) = match a.kind {
                GadgetKind::Is => ("is", gen_is_gadget(&g, &delta).map_err(gadget_err)?),
                _ => ("chordal", gen_chordal_gadget(&g, &delta).map_err(gadget_err)?),
            };
            (kind, gd, json!({ "n": g.n(), "m": g.m() }))
        }
        GadgetKind::Mcis => {
            let inst = formats::parse_mcis(&text).map_err(|e| in_file(&a.input, e))?;
            let gd = gen_mcis_gadget(&inst).map_err(gadget_err)?;
            ("mcis", gd, json!({ "n": inst.n, "classes": inst.classes }))
        }
        GadgetKind::Sat => {
            let cnf = formats::parse_cnf(&text).map_err(|e| in_file(&a.input, e))?;
            let (inst, assignments) = gen_sat_to_mcis(&cnf);
            let groups: Vec<Value> = assignments.iter().map(|(vars, vals)| json!({ "vars": vars, "values": vals })).collect();
            if inst.classes.iter().any(|c| c.is_empty()) {
                return Ok(Outcome {
                    report: json!({
                        "schema": report::SCHEMA,
                        "command": "gen",
                        "kind": "sat",
                        "unsatisfiable_group": true,
                        "assignments": groups,
                    }),
                    code: EXIT_NO,
                });
            }
            let gd = gen_mcis_gadget(&inst).map_err(gadget_err)?;
            ("sat", gd, json!({ "vars": cnf.vars, "clauses": cnf.clauses.len(), "classes": inst.classes, "assignments": groups }))
        }
    };
    write(&a.out, &formats::emit_graph(gd.n, &gd.edges))?;
    let mut rep = report::gadget(kind, &gd, source);
    rep["components"] = json!(gd.components().len());
    ok(rep)
}

fn run_oracle(a: &OracleArgs) -> Result<Outcome, CliError> {
    let need_graph = || {
        a.graph.as_deref().ok_or_else(|| CliError::Input("--graph is required".into())).and_then(load_graph)
    };
    let need_delta = || a.delta.clone().ok_or_else(|| CliError::Input("--delta is required".into()));
    match a.kind {
        OracleKind::Brute => {
            let g = need_graph()?;
            let delta = need_delta()?;
            let (k, w) = brute_force_dispersion_with_limit(&g, &delta, a.limit)
                .map_err(|e| CliError::Guard(format!("{e}; raise --limit")))?;
            if let Some(p) = &a.out {
                write(p, &formats::emit_points(&w.points, Some(&delta)))?;
            }
            ok(json!({
                "schema": report::SCHEMA,
                "command": "oracle",
                "kind": "brute",
                "delta": report::rat(&delta),
                "optimum": k,
                "witness": report::points(&w.points),
            }))
        }
        OracleKind::Dis => {
            let g = need_graph()?;
            let d = a.d.ok_or_else(|| CliError::Input("--d is required".into()))?;
            let (k, sel) = brute_force_dis(&g, d).map_err(|e| CliError::Guard(e.to_string()))?;
            ok(json!({ "schema": report::SCHEMA, "command": "oracle", "kind": "dis", "d": d, "optimum": k, "vertices": sel }))
        }
        OracleKind::RoundDelta => {
            let delta = need_delta()?;
            let l = match (a.longest_path, &a.graph) {
                (Some(l), _) => l,
                (None, Some(_)) => need_graph()?.longest_path_bound(None),
                (None, None) => return Err(CliError::Input("--L or --graph is required".into())),
            };
            let enumerated = enumerate_round(&delta, l);
            let fast = round_up_delta(&delta, l).map(|r| r.delta_star);
            if enumerated != fast {
                return Err(CliError::Internal("rounded distance disagrees with enumeration".into()));
            }
            ok(json!({
                "schema": report::SCHEMA,
                "command": "oracle",
                "kind": "round-delta",
                "delta": report::rat(&delta),
                "L": l,
                "delta_star": enumerated.as_ref().map(report::rat),
            }))
        }
        OracleKind::Suite => {
            let suite = match a.suite.ok_or_else(|| CliError::Input("--suite is required".into()))? {
                SuiteArg::Pipeline => Suite::Pipeline,
                SuiteArg::Translation => Suite::Translation,
                SuiteArg::Dp => Suite::Dp,
                SuiteArg::Rounding => Suite::Rounding,
                SuiteArg::Gadgets => Suite::Gadgets,
                SuiteArg::Subdivision => Suite::Subdivision,
            };
            let r = oracle::run_suite(suite, a.seed, a.count);
            Ok(Outcome {
                report: json!({
                    "schema": report::SCHEMA,
                    "command": "oracle",
                    "kind": "suite",
                    "suite": suite.name(),
                    "seed": a.seed,
                    "checked": r.checked,
                    "passed": r.passed(),
                    "failures": r.failures,
                }),
                code: if r.passed() { EXIT_OK } else { EXIT_NO },
            })
        }
    }
}

/// Least `a/b >= delta` with `a <= 2L+2`, by trying every numerator.
fn enumerate_round(delta: &Rat, l: usize) -> Option<Rat> {
    (1..=2 * l as i64 + 2)
        .filter_map(|a| {
            let b = (Rat::from_integer(a.into()) / delta).floor();
            (b >= Rat::from_integer(1.into())).then(|| Rat::from_integer(a.into()) / b)
        })
        .min()
}

