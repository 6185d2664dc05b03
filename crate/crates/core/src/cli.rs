//! Command-line front end. Every subcommand writes its report to `out` and
//! returns the process exit status, so the whole surface can be driven from
//! tests without spawning a process.
//!
//! Exit statuses: 0 solved / valid / passed, 2 infeasible / invalid / failed,
//! 1 error (reported by the caller as a one-line `error[CODE]` diagnostic).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::corpus::{self, CorpusSpec};
use crate::error::{Error, Result};
use crate::fast::solve_fast_with;
use crate::model::{generate_random, ProperIntervalModel};
use crate::oracle::{
    brute_force_min_capped, check_lemma_components, first_violation, is_dominating, set_cost, Solution, VertexSet,
    DEFAULT_BRUTE_CAP,
};
use crate::problem::{Engine, Problem, Variant};
use crate::rational::{self, Rational};
use crate::reduction::{build_digraph_with, solve_naive_with, EngineOptions, Fault, Reduction, DEFAULT_NODE_CAP};

pub const SEED_ENV: &str = "PIKDOM_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pikdom", version, about = "Exact (total) k-domination on proper interval graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance file.
    Solve(SolveArgs),
    /// Check a candidate vertex set against an instance.
    Verify(VerifyArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Time engines over generated instances or an instance directory (CSV).
    Bench(BenchArgs),
    /// Randomized three-engine agreement and invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_parser = parse_variant, default_value = "total")]
    pub variant: Variant,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_parser = parse_engine, default_value = "fast")]
    pub algo: Engine,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Include engine statistics in the report.
    #[arg(long)]
    pub stats: bool,
    /// Write the explicit digraph (nodes, then arcs) to this file.
    #[arg(long)]
    pub dump_dag: Option<PathBuf>,
    /// Refuse to enumerate more digraph nodes than this.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub cap_nodes: u64,
    /// Largest n the brute-force engine accepts.
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    pub cap_brute: usize,
    /// Ignore costs in a weighted instance file.
    #[arg(long)]
    pub unweighted: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// One 1-based vertex index per line.
    pub candidate: PathBuf,
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Common interval length; left endpoints advance by 1..=4.
    #[arg(long, value_parser = parse_rational, default_value = "3")]
    pub stretch: Rational,
    /// Attach random integer costs in `0..=max_cost`.
    #[arg(long)]
    pub max_cost: Option<i64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Solve every file in this directory instead of generating instances.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub n_min: usize,
    #[arg(long, default_value_t = 16)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<usize>,
    #[arg(long, value_parser = parse_variant, default_value = "total")]
    pub variant: Variant,
    #[arg(long, value_delimiter = ',', value_parser = parse_engine, default_value = "naive,fast")]
    pub engines: Vec<Engine>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_rational, default_value = "3")]
    pub stretch: Rational,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub cap_nodes: u64,
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    pub cap_brute: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fewer instances, k in {1,2} only.
    #[arg(long)]
    pub quick: bool,
    /// Run the fast engine with a deliberately broken arc test.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_engine(s: &str) -> std::result::Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

/// `PIKDOM_SEED`, when set, takes precedence over the `--seed` flag.
pub fn resolve_seed(flag: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Param(format!("{SEED_ENV}={v:?} is not a u64"))),
        Err(_) => Ok(flag),
    }
}

/// One-line diagnostic for an error that aborts a command.
pub fn diagnostic(err: &Error) -> String {
    format!("error[{}]: {}", err.code(), err)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::Selftest(a) => cmd_selftest(a, out),
    }
}

fn read_model(path: &Path) -> Result<ProperIntervalModel> {
    let text = fs::read_to_string(path).map_err(|e| Error::Param(format!("cannot read {}: {e}", path.display())))?;
    ProperIntervalModel::parse(&text)
}

fn io(e: std::io::Error) -> Error {
    Error::Param(format!("write failed: {e}"))
}

/// Machine-readable result of `solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub feasible: bool,
    /// Exact cost: an integer, a terminating decimal, or `p/q`.
    pub cost: Option<String>,
    pub set: Vec<usize>,
    pub engine: String,
    pub k: usize,
    pub variant: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<serde_json::Value>,
}

impl Report {
    pub fn new(solution: &Solution, problem: &Problem, n: usize, stats: Option<serde_json::Value>) -> Self {
        Report {
            feasible: solution.feasible,
            cost: solution.cost.as_ref().map(rational::render),
            set: solution.set.members().to_vec(),
            engine: solution.engine.as_str().to_string(),
            k: problem.k,
            variant: problem.variant.as_str().to_string(),
            n,
            stats,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.feasible {
            s.push_str("feasible\n");
            s.push_str(&format!("cost {}\n", self.cost.as_deref().unwrap_or("")));
            let set: Vec<String> = self.set.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("set {}\n", set.join(" ")));
        } else {
            s.push_str("infeasible\n");
        }
        s.push_str(&format!("engine {}\nk {}\nvariant {}\nn {}\n", self.engine, self.k, self.variant, self.n));
        if let Some(stats) = &self.stats {
            s.push_str(&format!("stats {stats}\n"));
        }
        s
    }
}

/// Runs one engine and returns the solution with optional statistics.
fn run_engine(
    model: &ProperIntervalModel,
    problem: &Problem,
    engine: Engine,
    options: EngineOptions,
    cap_brute: usize,
) -> Result<(Solution, serde_json::Value)> {
    Ok(match engine {
        Engine::Fast => {
            let r = solve_fast_with(model, problem, options)?;
            (r.solution, serde_json::to_value(r.stats).expect("stats serialize"))
        }
        Engine::Naive => {
            let r = solve_naive_with(model, problem, options)?;
            (r.solution, serde_json::to_value(r.stats).expect("stats serialize"))
        }
        Engine::Brute => {
            let s = brute_force_min_capped(model, problem, cap_brute)?;
            (s, serde_json::json!({}))
        }
    })
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let model = read_model(&args.input)?;
    let weighted = model.is_weighted() && !args.unweighted;
    let problem = Problem::new(args.problem.k, args.problem.variant, weighted)?;
    let options = EngineOptions { node_cap: args.cap_nodes, ..EngineOptions::default() };

    if let Some(path) = &args.dump_dag {
        let digraph = build_digraph_with(&model, &problem, options)?;
        fs::write(path, digraph.dump()).map_err(|e| Error::Param(format!("cannot write {}: {e}", path.display())))?;
    }

    let start = Instant::now();
    let (solution, stats) = run_engine(&model, &problem, args.algo, options, args.cap_brute)?;
    let elapsed = start.elapsed();

    let report = Report::new(&solution, &problem, model.n(), args.stats.then_some(stats));
    let body = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    out.write_all(body.as_bytes()).map_err(io)?;
    // Timing goes to stderr so stdout stays reproducible.
    writeln!(err, "wall-ms {:.3}", elapsed.as_secs_f64() * 1e3).map_err(io)?;
    Ok(if solution.feasible { EXIT_OK } else { EXIT_NEGATIVE })
}

/// Reads a candidate file: one 1-based index per line, `#` comments and
/// blank lines ignored.
pub fn parse_candidate(text: &str, n: usize) -> Result<VertexSet> {
    let mut members = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: usize =
            line.parse().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad vertex index {line:?}") })?;
        if v == 0 || v > n {
            return Err(Error::Index { index: v, n });
        }
        members.push(v);
    }
    Ok(VertexSet::new(members))
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let model = read_model(&args.input)?;
    let text = fs::read_to_string(&args.candidate)
        .map_err(|e| Error::Param(format!("cannot read {}: {e}", args.candidate.display())))?;
    let set = parse_candidate(&text, model.n())?;
    let problem = Problem::new(args.problem.k, args.problem.variant, false)?;
    match first_violation(&model.derive_graph(), &set, problem.k, problem.variant)? {
        None => {
            writeln!(out, "valid").map_err(io)?;
            Ok(EXIT_OK)
        }
        Some(v) => {
            writeln!(out, "invalid: vertex {v}").map_err(io)?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let seed = resolve_seed(args.seed)?;
    let mut model = generate_random(args.n, seed, args.stretch)?;
    if let Some(max) = args.max_cost {
        if max < 0 {
            return Err(Error::Param("max cost must be non-negative".into()));
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xC057);
        let costs = (0..args.n).map(|_| rational::int(rng.gen_range(0..=max))).collect();
        model = model.with_costs(costs)?;
    }
    let text = model.serialize();
    match &args.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Param(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

/// Header of the `bench` CSV.
pub const BENCH_HEADER: &str = "n,k,variant,engine,nodes,work,wall_ms,cost";

/// One engine run measured by `bench`. `work` is the arc count for `naive`
/// and the representative-test count for `fast`; `brute` reports 0 for both
/// counters.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
    pub engine: Engine,
    pub nodes: u64,
    pub work: u64,
    pub wall_ms: f64,
    pub cost: Option<Rational>,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        let cost = self.cost.as_ref().map(rational::render).unwrap_or_else(|| "inf".into());
        format!(
            "{},{},{},{},{},{},{:.3},{}",
            self.n,
            self.k,
            self.variant.as_str(),
            self.engine.as_str(),
            self.nodes,
            self.work,
            self.wall_ms,
            cost
        )
    }
}

pub fn bench_one(
    model: &ProperIntervalModel,
    problem: &Problem,
    engine: Engine,
    options: EngineOptions,
    cap_brute: usize,
) -> Result<BenchRow> {
    let start = Instant::now();
    let (solution, nodes, work) = match engine {
        Engine::Fast => {
            let r = solve_fast_with(model, problem, options)?;
            (r.solution, r.stats.nodes as u64, r.stats.representative_tests)
        }
        Engine::Naive => {
            let r = solve_naive_with(model, problem, options)?;
            (r.solution, r.stats.nodes as u64, r.stats.arcs as u64)
        }
        Engine::Brute => (brute_force_min_capped(model, problem, cap_brute)?, 0, 0),
    };
    Ok(BenchRow {
        n: model.n(),
        k: problem.k,
        variant: problem.variant,
        engine,
        nodes,
        work,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        cost: solution.cost,
    })
}

fn bench_instances(args: &BenchArgs) -> Result<Vec<(String, ProperIntervalModel)>> {
    if let Some(dir) = &args.dir {
        let entries = fs::read_dir(dir).map_err(|e| Error::Param(format!("cannot read {}: {e}", dir.display())))?;
        let mut paths: Vec<PathBuf> =
            entries.filter_map(|e| e.ok()).map(|e| e.path()).filter(|p| p.is_file()).collect();
        paths.sort();
        if paths.is_empty() {
            return Err(Error::Empty);
        }
        return paths.iter().map(|p| Ok((p.display().to_string(), read_model(p)?))).collect();
    }
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(Error::Param(format!("bad n range {}..={}", args.n_min, args.n_max)));
    }
    let seed = resolve_seed(args.seed)?;
    (args.n_min..=args.n_max)
        .map(|n| {
            let s = seed.wrapping_add(n as u64);
            Ok((format!("generated n={n} seed={s}"), generate_random(n, s, args.stretch)?))
        })
        .collect()
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if args.engines.is_empty() || args.k.is_empty() {
        return Err(Error::Param("need at least one engine and one k".into()));
    }
    let instances = bench_instances(args)?;
    let options = EngineOptions { node_cap: args.cap_nodes, ..EngineOptions::default() };
    writeln!(out, "{BENCH_HEADER}").map_err(io)?;
    for (name, model) in &instances {
        for &k in &args.k {
            let problem = Problem::new(k, args.variant, model.is_weighted())?;
            let mut first: Option<BenchRow> = None;
            for &engine in &args.engines {
                let row = bench_one(model, &problem, engine, options, args.cap_brute)?;
                writeln!(out, "{}", row.csv()).map_err(io)?;
                match &first {
                    Some(f) if f.cost != row.cost => {
                        writeln!(
                            err,
                            "engine disagreement on {name}, k={k}, variant={}: {} says {}, {} says {}",
                            args.variant.as_str(),
                            f.engine.as_str(),
                            f.csv(),
                            row.engine.as_str(),
                            row.csv()
                        )
                        .map_err(io)?;
                        err.write_all(model.serialize().as_bytes()).map_err(io)?;
                        return Ok(EXIT_ERROR);
                    }
                    Some(_) => {}
                    None => first = Some(row),
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// A selftest failure with everything needed to reproduce it.
#[derive(Debug, Clone)]
pub struct Failure {
    pub seed: u64,
    pub index: u64,
    pub problem: Problem,
    pub reason: String,
    pub instance: String,
}

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub seed: u64,
    pub count: usize,
    pub spec: CorpusSpec,
    pub fault: Option<Fault>,
}

impl SelftestConfig {
    pub fn new(seed: u64, quick: bool) -> Self {
        if quick {
            SelftestConfig { seed, count: 40, spec: CorpusSpec { n_max: 10, k_max: 2, ..CorpusSpec::default() }, fault: None }
        } else {
            SelftestConfig { seed, count: 300, spec: CorpusSpec::default(), fault: None }
        }
    }
}

/// Checks one engine answer against the oracle answer and the verifiers.
fn check_answer(model: &ProperIntervalModel, problem: &Problem, oracle: &Solution, got: &Solution) -> Option<String> {
    let graph = model.derive_graph();
    let engine = got.engine.as_str();
    if got.cost != oracle.cost {
        let show = |c: &Option<Rational>| c.as_ref().map(rational::render).unwrap_or_else(|| "infeasible".into());
        return Some(format!("{engine} cost {} != brute cost {}", show(&got.cost), show(&oracle.cost)));
    }
    if !got.feasible {
        return None;
    }
    match is_dominating(&graph, &got.set, problem.k, problem.variant) {
        Ok(true) => {}
        Ok(false) => return Some(format!("{engine} set {:?} fails the verifier", got.set.members())),
        Err(e) => return Some(format!("{engine} set rejected: {e}")),
    }
    match set_cost(model, &got.set, problem.weighted) {
        Ok(c) if Some(c) == got.cost => {}
        _ => return Some(format!("{engine} set cost does not match reported cost")),
    }
    if problem.variant == Variant::Total && check_lemma_components(&graph, &got.set, problem.k) != Ok(true) {
        return Some(format!("{engine} set has a component with at most k vertices"));
    }
    None
}

fn check_instance(model: &ProperIntervalModel, problem: &Problem, fault: Option<Fault>) -> Result<Option<String>> {
    let oracle = brute_force_min_capped(model, problem, DEFAULT_BRUTE_CAP)?;
    let naive = solve_naive_with(model, problem, EngineOptions::default())?;
    let fast = solve_fast_with(model, problem, EngineOptions { fault, ..EngineOptions::default() })?;
    if let Some(msg) = check_answer(model, problem, &oracle, &naive.solution) {
        return Ok(Some(msg));
    }
    if let Some(msg) = check_answer(model, problem, &oracle, &fast.solution) {
        return Ok(Some(msg));
    }
    if problem.variant == Variant::Total {
        let expect = model.derive_graph().min_degree()? >= problem.k;
        if oracle.feasible != expect {
            return Ok(Some(format!("feasible = {} but min degree test says {expect}", oracle.feasible)));
        }
    }
    if fast.solution.feasible {
        let red = Reduction::new(model, problem, EngineOptions::default())?;
        match red.validate_path(&fast.path_nodes()) {
            Ok(len) if Some(len) == fast.solution.cost => {}
            Ok(_) => return Ok(Some("fast path length differs from reported cost".into())),
            Err(e) => return Ok(Some(format!("fast path invalid: {e}"))),
        }
    }
    Ok(None)
}

/// Runs the randomized agreement suite; stops at the first failure.
pub fn selftest(config: &SelftestConfig) -> Result<std::result::Result<usize, Box<Failure>>> {
    let mut checks = 0;
    for index in 0..config.count as u64 {
        let inst = corpus::instance(&config.spec, config.seed, index)?;
        for variant in Variant::ALL {
            for (model, weighted) in [(&inst.model, false), (&inst.weighted, true)] {
                let problem = Problem::new(inst.k, variant, weighted)?;
                if let Some(reason) = check_instance(model, &problem, config.fault)? {
                    return Ok(Err(Box::new(Failure {
                        seed: config.seed,
                        index,
                        problem,
                        reason,
                        instance: model.serialize(),
                    })));
                }
                checks += 1;
            }
        }
    }
    Ok(Ok(checks))
}

pub fn cmd_selftest(args: &SelftestArgs, out: &mut dyn Write) -> Result<i32> {
    let mut config = SelftestConfig::new(resolve_seed(args.seed)?, args.quick);
    if args.inject_fault {
        config.fault = Some(Fault::SkipGapCoverage);
    }
    match selftest(&config)? {
        Ok(checks) => {
            writeln!(out, "selftest passed: {checks} checks over {} instances, seed {}", config.count, config.seed)
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Err(f) => {
            writeln!(
                out,
                "selftest FAILED (seed {}, instance {}, k {}, variant {}, weighted {}): {}",
                f.seed,
                f.index,
                f.problem.k,
                f.problem.variant.as_str(),
                f.problem.weighted,
                f.reason
            )
            .map_err(io)?;
            writeln!(out, "counterexample:").map_err(io)?;
            out.write_all(f.instance.as_bytes()).map_err(io)?;
            Ok(EXIT_NEGATIVE)
        }
    }
}
