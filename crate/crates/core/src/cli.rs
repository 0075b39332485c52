//! Command-line front end. Every subcommand produces a deterministic report
//! on stdout: parameter echo, exact values and pass/fail checks with both
//! sides exact.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::format::{read_is, read_pl, write_is, write_pl};
use crate::game::{self, Adversary, GameTranscript};
use crate::interval::Interval;
use crate::omalley::geps::{check_components, g_epsilon, g_epsilon_measure_bound_check};
use crate::omalley::search::{
    approx_max_search, local_max_knots, monotonicity_witness, MaxSearchCertificate, MaxSearchOutcome, Monotonicity,
};
use crate::ornstein::bprime::{bprime_check, threshold, BPrimeCertificate, LevelStatus, SeedPath};
use crate::ornstein::construct::{lazy_eval, LazyConstruction, DEFAULT_CAP};
use crate::ornstein::converge::convergence_report;
use crate::ornstein::diverge::divergence_report;
use crate::ornstein::seed::{SeedFunction, SeedKind};
use crate::pl::PLFunction;
use crate::rat::{self, fmt_exact, parse_rat, to_decimal, Rat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Exact,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "plreal", version, about = "Exact density calculus for piecewise-linear functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Largest number of pieces to materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(10_000..))]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Exact)]
    format: OutputFormat,
    /// Write the exact artifact (or CSV plus `.exact` sidecar) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print a built-in seed.
    Seed {
        #[command(subcommand)]
        action: SeedCmd,
    },
    /// Materialize the self-insertion of a seed.
    Construct {
        seed: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Evaluate lazily at this point instead of printing knots.
        #[arg(long, value_parser = parse_rat_arg)]
        x0: Option<Rat>,
    },
    /// Drop ratios across the nested central intervals of the eight-knot seed.
    Diverge {
        #[arg(long, default_value_t = 8)]
        levels: usize,
        /// Levels for the g_n(1/2) table.
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Drops and sup distances of the fourteen-knot construction.
    Converge {
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Certified density bounds at the point selected by a path.
    Bprime {
        #[arg(long, default_value = "central")]
        path: String,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = 12)]
        enclosure_depth: usize,
    },
    /// Nested approximate-maximum search.
    Gmax {
        /// A PL file or a seed name.
        function: String,
        #[arg(long, value_parser = parse_interval_arg)]
        interval: Option<Interval>,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Strict increase or a point with non-positive right slope.
    Witness {
        function: String,
        #[arg(long, value_parser = parse_interval_arg)]
        interval: Option<Interval>,
    },
    /// Components of G_eps for an IS file.
    Geps {
        set: PathBuf,
        #[arg(long, value_parser = parse_interval_arg)]
        interval: Interval,
        #[arg(long, value_parser = parse_rat_arg)]
        epsilon: Rat,
    },
    /// Play the Banach-Mazur game.
    Game {
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = AdversaryArg::Random)]
        adversary: AdversaryArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Re-check a CERT or GAME file; BPRIME, PL and IS files are round-tripped.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SeedCmd {
    Show { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversaryArg {
    Random,
    Monotone,
}

fn parse_rat_arg(s: &str) -> std::result::Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parse_interval_arg(s: &str) -> std::result::Result<Interval, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `<rat>,<rat>`, got `{s}`"))?;
    let (a, b) = (parse_rat_arg(a.trim())?, parse_rat_arg(b.trim())?);
    Interval::new(a, b).map_err(|e| e.to_string())
}

/// One checked relation, both sides exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub op: &'static str,
    pub rhs: String,
    pub pass: bool,
}

/// A rational or plain cell of a plot table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Exact(Rat),
    Int(u128),
    Text(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub subcommand: String,
    pub params: Vec<(String, String)>,
    pub values: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    artifact: Option<String>,
    table: Option<Table>,
}

impl RunReport {
    fn new(subcommand: &str) -> Self {
        RunReport {
            subcommand: subcommand.to_string(),
            params: Vec::new(),
            values: Vec::new(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
            artifact: None,
            table: None,
        }
    }

    fn param(&mut self, k: &str, v: impl ToString) {
        self.params.push((k.to_string(), v.to_string()));
    }

    fn value(&mut self, k: impl Into<String>, v: impl ToString) {
        self.values.push((k.into(), v.to_string()));
    }

    fn check(&mut self, name: impl Into<String>, lhs: &Rat, op: &'static str, rhs: &Rat) {
        let pass = match op {
            "==" => lhs == rhs,
            "<" => lhs < rhs,
            "<=" => lhs <= rhs,
            ">" => lhs > rhs,
            ">=" => lhs >= rhs,
            _ => unreachable!("unknown relation {op}"),
        };
        self.checks.push(Check { name: name.into(), lhs: fmt_exact(lhs), op, rhs: fmt_exact(rhs), pass });
    }

    fn flag(&mut self, name: impl Into<String>, pass: bool) {
        let shown = if pass { "true" } else { "false" };
        self.checks.push(Check { name: name.into(), lhs: shown.into(), op: "is", rhs: "true".into(), pass });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn artifact(&self) -> Option<&str> {
        self.artifact.as_deref()
    }

    /// The deterministic text form; elapsed time is left out.
    pub fn render(&self) -> String {
        let mut out = format!("plreal {}\n", self.subcommand);
        for (k, v) in &self.params {
            let _ = writeln!(out, "param {k} = {v}");
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "value {k} = {v}");
        }
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "check {}: {} {} {} {verdict}", c.name, c.lhs, c.op, c.rhs);
        }
        let ok = self.checks.iter().filter(|c| c.pass).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result {verdict} ({ok}/{} checks)", self.checks.len());
        out
    }
}

/// Exit code, stdout text and stderr text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::SelfCheck(_) => EXIT_FAIL,
        _ => EXIT_PRECONDITION,
    }
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    if cli.format == OutputFormat::Csv && cli.out.is_none() {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: "--format csv requires --out <path>\n".into(),
        };
    }
    let start = Instant::now();
    let mut report = match execute(&cli) {
        Ok(r) => r,
        Err(Failure::Engine(e)) => {
            return Outcome { code: exit_for(&e), stdout: String::new(), stderr: format!("error: {e}\n") };
        }
        Err(Failure::Io(msg)) => {
            return Outcome { code: EXIT_IO, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    };
    report.elapsed = start.elapsed();
    if let Some(path) = &cli.out {
        if let Err(msg) = emit(&report, cli.format, path) {
            return Outcome { code: EXIT_IO, stdout: report.render(), stderr: format!("error: {msg}\n") };
        }
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    Outcome { code, stdout: report.render(), stderr: format!("elapsed {:.3} s\n", report.elapsed.as_secs_f64()) }
}

enum Failure {
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_function(source: &str) -> Result<PLFunction, Failure> {
    match SeedKind::parse(source) {
        Ok(kind) => Ok(SeedFunction::of_kind(kind).function().clone()),
        Err(_) => Ok(read_pl(&read_file(Path::new(source))?)?),
    }
}

fn pl_table(f: &PLFunction) -> Table {
    Table {
        columns: vec!["x", "y"],
        rows: f.knots().iter().map(|k| vec![Cell::Exact(k.x.clone()), Cell::Exact(k.y.clone())]).collect(),
    }
}

fn execute(cli: &Cli) -> Result<RunReport, Failure> {
    let cap = cli.cap as u128;
    match &cli.cmd {
        Cmd::Seed { action: SeedCmd::Show { name } } => {
            let seed = SeedFunction::of_kind(SeedKind::parse(name)?);
            let f = seed.function();
            let mut r = RunReport::new("seed show");
            r.param("seed", seed.kind());
            r.value("knots", f.knots().len());
            for k in f.knots() {
                r.value(format!("knot {}", fmt_exact(&k.x)), fmt_exact(&k.y));
            }
            r.check("f(0)", &f.eval(&rat::zero())?, "==", &rat::one());
            r.check("f(1)", &f.eval(&rat::one())?, "==", &rat::zero());
            r.artifact = Some(write_pl(f));
            r.table = Some(pl_table(f));
            Ok(r)
        }
        Cmd::Construct { seed, depth, x0 } => {
            let seed = SeedFunction::of_kind(SeedKind::parse(seed)?);
            let c = LazyConstruction::new(seed.clone(), *depth);
            let mut r = RunReport::new("construct");
            r.param("seed", seed.kind());
            r.param("depth", depth);
            if let Some(x) = x0 {
                r.param("x0", fmt_exact(x));
                let v = lazy_eval(&seed, *depth, x)?;
                r.value("lazy value", fmt_exact(&v));
                if c.projected_segments(*depth) <= cap.min(100_000) {
                    let f = c.materialize(cap)?;
                    r.check("lazy == materialized", &v, "==", &f.eval(x)?);
                }
                return Ok(r);
            }
            let f = c.materialize(cap)?;
            let projected = c.projected_segments(*depth);
            r.value("segments", f.segment_count());
            r.check("segment count", &rat::int(f.segment_count() as i64), "==", &Rat::from_integer(projected.into()));
            r.check("f(0)", &f.first().y, "==", &rat::one());
            r.check("f(1)", &f.last().y, "==", &rat::zero());
            r.artifact = Some(write_pl(&f));
            r.table = Some(pl_table(&f));
            Ok(r)
        }
        Cmd::Diverge { levels, depth } => {
            let d = divergence_report(*levels, *depth)?;
            let mut r = RunReport::new("diverge");
            r.param("levels", levels);
            r.param("depth", depth);
            let mut table = Table { columns: vec!["n", "lo", "hi", "drop", "left_value", "formula"], rows: Vec::new() };
            for l in &d.levels {
                r.value(format!("level {} interval", l.n), &l.interval);
                r.value(format!("level {} drop", l.n), fmt_exact(&l.drop));
                r.value(format!("level {} left value", l.n), fmt_exact(&l.left_value));
                if let Some(v) = &l.left_value_current {
                    r.value(format!("level {} left value of I_n", l.n), fmt_exact(v));
                }
                r.flag(format!("level {} linear on interval", l.n), l.linear);
                r.check(format!("level {} drop", l.n), &l.drop, "==", &-rat::pow(&rat::rat(5, 3), l.n as u32 + 1));
                if let Some(ratio) = &l.ratio {
                    r.check(format!("level {} ratio", l.n), ratio, "==", &rat::rat(5, 3));
                }
                r.check(format!("level {} partial sum", l.n), &l.left_value, "==", &l.formula);
                table.rows.push(vec![
                    Cell::Int(l.n as u128),
                    Cell::Exact(l.interval.lo().clone()),
                    Cell::Exact(l.interval.hi().clone()),
                    Cell::Exact(l.drop.clone()),
                    Cell::Exact(l.left_value.clone()),
                    Cell::Exact(l.formula.clone()),
                ]);
            }
            for (n, v) in d.center_values.iter().enumerate() {
                r.value(format!("g_{n}(1/2)"), fmt_exact(v));
            }
            r.value("g_n(1/2) strictly increasing", d.center_strictly_increasing());
            r.table = Some(table);
            Ok(r)
        }
        Cmd::Converge { levels } => {
            let seed = SeedFunction::fixed_h();
            let c = convergence_report(&seed, *levels, cap)?;
            let mut r = RunReport::new("converge");
            r.param("levels", levels);
            r.value("C", fmt_exact(&c.c));
            r.value("contraction", fmt_exact(&c.contraction));
            let mut table = Table { columns: vec!["n", "max_drop", "sup_diff", "bound"], rows: Vec::new() };
            for l in &c.levels {
                r.value(format!("level {} segments", l.n), l.segments);
                r.check(
                    format!("level {} max drop", l.n),
                    &l.max_drop,
                    "==",
                    &rat::pow(&c.contraction, l.n as u32 + 1),
                );
                r.check(format!("level {} sup diff", l.n), &l.sup_diff, "<=", &l.bound);
                table.rows.push(vec![
                    Cell::Int(l.n as u128),
                    Cell::Exact(l.max_drop.clone()),
                    Cell::Exact(l.sup_diff.clone()),
                    Cell::Exact(l.bound.clone()),
                ]);
            }
            r.table = Some(table);
            Ok(r)
        }
        Cmd::Bprime { path, levels, enclosure_depth } => {
            let seed = SeedFunction::fixed_h();
            let p = SeedPath::parse(path, &seed)?;
            let cert = bprime_check(&seed, &p, *levels, *enclosure_depth)?;
            let mut r = RunReport::new("bprime");
            r.param("path", path);
            r.param("levels", levels);
            r.param("enclosure-depth", enclosure_depth);
            r.value("x0", fmt_exact(&cert.x0));
            r.value("h_inf(x0)", fmt_exact(&cert.y0));
            r.value("enclosure", &cert.enclosure);
            let mut table = Table { columns: vec!["n", "lo", "hi", "lower_bound", "upper_bound"], rows: Vec::new() };
            for l in &cert.levels {
                r.value(format!("level {} interval", l.n), &l.interval);
                r.value(format!("level {} upper bound", l.n), fmt_exact(&l.upper_bound));
                r.check(format!("level {} density", l.n), &l.lower_bound, ">=", &threshold());
                if let LevelStatus::Inconclusive { needed_depth } = &l.status {
                    let needed = needed_depth.map_or("none within search".to_string(), |d| d.to_string());
                    r.value(format!("level {} inconclusive, needed depth", l.n), needed);
                }
                let expected = if l.n == 0 { rat::int(13) } else { rat::pow(&rat::rat(1, 13), l.n as u32 - 1) };
                r.check(format!("level {} scaled length", l.n), &l.scaled_length, "==", &expected);
                table.rows.push(vec![
                    Cell::Int(l.n as u128),
                    Cell::Exact(l.interval.lo().clone()),
                    Cell::Exact(l.interval.hi().clone()),
                    Cell::Exact(l.lower_bound.clone()),
                    Cell::Exact(l.upper_bound.clone()),
                ]);
            }
            r.artifact = Some(cert.to_text());
            r.table = Some(table);
            Ok(r)
        }
        Cmd::Gmax { function, interval, depth } => {
            let f = load_function(function)?;
            let iv = interval.clone().unwrap_or_else(|| f.domain());
            let mut r = RunReport::new("gmax");
            r.param("function", function);
            r.param("interval", &iv);
            r.param("depth", depth);
            match approx_max_search(&f, iv.lo(), iv.hi(), *depth)? {
                MaxSearchOutcome::NoMaxRequired => {
                    r.value("outcome", "strictly increasing; no approximate maximum required")
                }
                MaxSearchOutcome::LeftEndpoint { x0 } => {
                    r.value("outcome", "maximum at left endpoint");
                    r.value("x0", fmt_exact(&x0));
                }
                MaxSearchOutcome::Flat { x0, segment, level } => {
                    r.value("outcome", "flat piece");
                    r.value("segment", segment);
                    r.value("level", fmt_exact(&level));
                    r.value("x0", fmt_exact(&x0));
                }
                MaxSearchOutcome::Certificate(c) => {
                    report_certificate(&mut r, &c)?;
                    let bound = iv.length() / rat::pow(&rat::int(2), *depth as u32);
                    r.check("enclosure width", &c.enclosure().length(), "<=", &bound);
                    r.artifact = Some(c.to_text());
                    r.table = Some(cert_table(&c));
                }
            }
            Ok(r)
        }
        Cmd::Witness { function, interval } => {
            let f = load_function(function)?;
            let iv = interval.clone().unwrap_or_else(|| f.domain());
            let mut r = RunReport::new("witness");
            r.param("function", function);
            r.param("interval", &iv);
            match monotonicity_witness(&f, iv.lo(), iv.hi())? {
                Monotonicity::StrictIncrease { f1, f2 } => {
                    r.value("outcome", "strict increase");
                    r.check("f(x1) < f(x2)", &f1, "<", &f2);
                }
                Monotonicity::Witness { x0, enclosure, right_slope } => {
                    r.value("outcome", "approximate maximum");
                    r.value("x0", fmt_exact(&x0));
                    r.value("enclosure", enclosure);
                    match right_slope {
                        Some(s) => r.check("right slope", &s, "<=", &rat::zero()),
                        None => r.check("x0 is the right end", &x0, "==", iv.hi()),
                    }
                }
            }
            Ok(r)
        }
        Cmd::Geps { set, interval, epsilon } => {
            let h = read_is(&read_file(set)?)?;
            let comps = g_epsilon(&h, interval, epsilon)?;
            let mut r = RunReport::new("geps");
            r.param("set", set.display());
            r.param("interval", interval);
            r.param("epsilon", fmt_exact(epsilon));
            r.value("components", comps.components.len());
            let half = epsilon / rat::int(2);
            for (i, c) in check_components(&h, interval, epsilon)?.iter().enumerate() {
                r.value(format!("component {i}"), &c.component);
                r.check(format!("component {i} density"), &c.density, ">=", &half);
                if let Some(m) = &c.max_straddling {
                    r.check(format!("component {i} straddling"), m, "<=", epsilon);
                }
            }
            let b = g_epsilon_measure_bound_check(&h, interval, epsilon)?;
            r.check("measure bound", &b.lhs, "<=", &b.rhs);
            r.artifact = Some(write_is(&comps.as_set()));
            r.table = Some(Table {
                columns: vec!["lo", "hi"],
                rows: comps
                    .components
                    .iter()
                    .map(|c| vec![Cell::Exact(c.lo().clone()), Cell::Exact(c.hi().clone())])
                    .collect(),
            });
            Ok(r)
        }
        Cmd::Game { rounds, seed, adversary, samples } => {
            let adv = match adversary {
                AdversaryArg::Random => Adversary::Random,
                AdversaryArg::Monotone => Adversary::TowardMonotone,
            };
            let knot_cap = cap.min(game::DEFAULT_KNOT_CAP.max(cap / 5));
            let t = game::simulate_with(*rounds, *seed, adv, knot_cap)?;
            let mut r = RunReport::new("game");
            r.param("rounds", rounds);
            r.param("seed", seed);
            r.param("adversary", format!("{adversary:?}").to_lowercase());
            r.param("samples", samples);
            report_transcript(&mut r, &t, *samples)?;
            r.artifact = Some(t.to_text());
            r.table = Some(Table {
                columns: vec!["play", "radius"],
                rows: t
                    .radii()
                    .into_iter()
                    .enumerate()
                    .map(|(i, rad)| vec![Cell::Int(i as u128), Cell::Exact(rad)])
                    .collect(),
            });
            Ok(r)
        }
        Cmd::Verify { file, samples } => {
            let text = read_file(file)?;
            let head = text.split_whitespace().next().unwrap_or("");
            let mut r = RunReport::new("verify");
            r.param("file", file.display());
            match head {
                "CERT" => {
                    let c = MaxSearchCertificate::from_text(&text)?;
                    report_certificate(&mut r, &c)?;
                    r.flag("round trip", c.to_text() == text);
                }
                "GAME" => {
                    let t = GameTranscript::from_text(&text)?;
                    report_transcript(&mut r, &t, *samples)?;
                    r.flag("round trip", t.to_text() == text);
                }
                "BPRIME" => {
                    let c = BPrimeCertificate::from_text(&text)?;
                    r.value("levels", c.levels.len());
                    r.flag("round trip", c.to_text() == text);
                }
                "PL" => {
                    let f = read_pl(&text)?;
                    r.value("knots", f.knots().len());
                    r.flag("round trip", write_pl(&f) == text);
                }
                "IS" => {
                    let s = read_is(&text)?;
                    r.value("parts", s.len());
                    r.flag("round trip", write_is(&s) == text);
                }
                other => return Err(Failure::Engine(Error::parse(1, format!("unknown artifact header `{other}`")))),
            }
            Ok(r)
        }
    }
}

fn report_certificate(r: &mut RunReport, c: &MaxSearchCertificate) -> Result<(), Failure> {
    r.value("stages", c.depth());
    r.value("enclosure", c.enclosure());
    const ITEMS: [&str; 6] = ["nested", "halving", "level rise", "endpoint cap", "density above 1/2", "straddling"];
    for (k, items) in c.verify()? {
        for (name, ok) in ITEMS.iter().zip(items) {
            r.flag(format!("stage {k} {name}"), ok);
        }
    }
    let enc = c.enclosure();
    let inside = local_max_knots(&c.function).into_iter().find(|x| enc.contains(x));
    match &inside {
        Some(x) => r.value("local maximum knot", fmt_exact(x)),
        None => r.value("local maximum knot", "none"),
    }
    r.flag("enclosure holds a local maximum knot", inside.is_some());
    Ok(())
}

fn cert_table(c: &MaxSearchCertificate) -> Table {
    Table {
        columns: vec!["k", "a", "b", "y"],
        rows: c
            .stages
            .iter()
            .enumerate()
            .map(|(k, s)| {
                vec![Cell::Int(k as u128), Cell::Exact(s.a.clone()), Cell::Exact(s.b.clone()), Cell::Exact(s.y.clone())]
            })
            .collect(),
    }
}

fn report_transcript(r: &mut RunReport, t: &GameTranscript, samples: usize) -> Result<(), Failure> {
    let check = game::verify_limit_scales(t, samples)?;
    r.value("plays", t.plays.len());
    for (i, rad) in t.radii().iter().enumerate() {
        r.value(format!("radius {i}"), fmt_exact(rad));
    }
    for (i, (lhs, rhs)) in check.nesting.iter().enumerate() {
        r.check(format!("nesting {i}"), lhs, "<", rhs);
    }
    for (i, ok) in check.margins.iter().enumerate() {
        r.flag(format!("P2 move {i} margins"), *ok);
    }
    for (i, ok) in check.partitions.iter().enumerate() {
        r.flag(format!("P2 move {i} partition covers [0, 1]"), *ok);
    }
    for (i, (lhs, rhs)) in check.final_inside.iter().enumerate() {
        r.check(format!("final ball inside P2 ball {i}"), lhs, "<", rhs);
    }
    for (i, ok) in check.nowhere_monotone.iter().enumerate() {
        r.flag(format!("P2 move {i} decreases on every cell"), *ok);
    }
    for rec in &check.records {
        let tag = format!("play {} x0 {}", rec.play, fmt_exact(&rec.x0));
        r.check(format!("{tag} density"), &rec.density, ">", &rec.alpha);
        r.check(format!("{tag} margin"), &rec.margin, ">", &rat::zero());
        r.flag(format!("{tag} dq"), rec.dq_ok);
    }
    Ok(())
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Exact(q) => to_decimal(q),
        Cell::Int(n) => n.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn exact_cell(c: &Cell) -> String {
    match c {
        Cell::Exact(q) => fmt_exact(q),
        Cell::Int(n) => n.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".exact");
    PathBuf::from(s)
}

/// Writes the report's artifact (exact) or its table as CSV with an exact
/// sidecar at `<path>.exact`.
fn emit(report: &RunReport, format: OutputFormat, path: &Path) -> Result<(), String> {
    let write = |p: &Path, text: &str| std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()));
    match format {
        OutputFormat::Exact => {
            write(path, report.artifact().map(str::to_string).as_deref().unwrap_or(&report.render()))
        }
        OutputFormat::Csv => {
            let table = report.table.clone().unwrap_or_default();
            let sidecar = sidecar_path(path);
            let mut csv = format!(
                "# approximate: decimal projections to 12 significant digits; exact values in {}\n",
                sidecar.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
            );
            let mut exact = String::new();
            let _ = writeln!(csv, "{}", table.columns.join(","));
            let _ = writeln!(exact, "{}", table.columns.join(" "));
            for row in &table.rows {
                let _ = writeln!(csv, "{}", row.iter().map(csv_cell).collect::<Vec<_>>().join(","));
                let _ = writeln!(exact, "{}", row.iter().map(exact_cell).collect::<Vec<_>>().join(" "));
            }
            if let Some(a) = report.artifact() {
                exact.push_str(a);
            }
            write(path, &csv)?;
            write(&sidecar, &exact)
        }
    }
}
