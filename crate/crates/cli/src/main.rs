//! `dakc`: solve, check and generate directed anchored k-core instances.
//!
//! Exit codes: 0 yes / valid, 1 no / invalid, 2 unsupported, 3 input
//! error, 4 solver error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dakc::engine::Normalized;
use dakc::format::{parse_cnf, parse_instance, parse_setcover, parse_undirected, write_instance, write_labels};
use dakc::reductions::{amplify_k, gen_from_clique, gen_from_sat, gen_from_setcover, Generated};
use dakc::{
    check_solution, enumerate_important_separators, normalize, oracle_solve, solve_by_degree, solve_dag, solve_k1,
    Instance, Params, Run, SearchConfig, SearchMode, Solution, SolverKind, Verdict, VertexSet, Violation,
};
use serde::{Deserialize, Serialize};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser)]
#[command(name = "dakc", version, about = "Exact solvers for the directed anchored k-core problem")]
struct Cli {
    /// Worker threads for the parallel searches (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance with the solver matching its parameters
    Solve(SolveArgs),
    /// Decide an instance by exhaustive anchor enumeration
    Oracle(OracleArgs),
    /// Check a solution report against an instance
    Verify(VerifyArgs),
    /// Build an instance from a source problem
    Gen(GenArgs),
    /// List the important s-t separators of size at most h
    Seps(SepsArgs),
    /// Largest p for which the instance is a yes-instance
    Max(MaxArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Anchor budget (overrides the `q` line)
    #[arg(long)]
    b: Option<usize>,
    /// In-degree threshold (overrides the `q` line)
    #[arg(long)]
    k: Option<usize>,
    /// Minimum core size (overrides the `q` line)
    #[arg(long)]
    p: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverChoice {
    Auto,
    K1,
    Degree,
    Dag,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeChoice {
    Seeded,
    Exhaustive,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
    solver: SolverChoice,
    /// Coloring strategy for the bounded-degree and DAG solvers
    #[arg(long, value_enum, default_value_t = ModeChoice::Exhaustive)]
    mode: ModeChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Failure probability for seeded mode
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    /// Maximum number of seeded colorings per search
    #[arg(long, default_value_t = 1_000_000)]
    trial_cap: u64,
    /// Let `auto` fall back to the exhaustive oracle
    #[arg(long)]
    allow_oracle: bool,
}

impl SolverArgs {
    fn config(&self) -> SearchConfig {
        let mode = match self.mode {
            ModeChoice::Seeded => SearchMode::Seeded,
            ModeChoice::Exhaustive => SearchMode::Exhaustive,
        };
        SearchConfig { mode, seed: self.seed, eps: self.eps, trial_cap: self.trial_cap, ..SearchConfig::default() }
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write the report here instead of stdout
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    /// Report produced by `solve` or `oracle`
    solution: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceKind {
    Sat,
    Clique,
    Setcover,
    Amplify,
}

#[derive(Args)]
struct GenArgs {
    kind: SourceKind,
    /// CNF, undirected graph, set system, or base instance
    source: PathBuf,
    /// Clique size or set-cover budget
    #[arg(long)]
    b: Option<usize>,
    /// Target in-degree threshold
    #[arg(long)]
    k: Option<usize>,
    /// Degree bound for `amplify`
    #[arg(long)]
    delta: Option<usize>,
    /// Instance path; labels go to `<path>.labels`
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SepsArgs {
    instance: PathBuf,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    h: usize,
}

#[derive(Args)]
struct MaxArgs {
    instance: PathBuf,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    solver: SolverArgs,
}

/// A failed command with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn solver(message: impl Into<String>) -> Self {
        Failure { code: EXIT_SOLVER, message: message.into() }
    }
}

impl From<dakc::Error> for Failure {
    fn from(e: dakc::Error) -> Self {
        match e {
            dakc::Error::Parse(_) | dakc::Error::InvalidSource(_) => Failure::input(e.to_string()),
            _ => Failure::solver(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

#[derive(Serialize)]
struct Report {
    answer: &'static str,
    anchors: Vec<usize>,
    core: Vec<usize>,
    solver: &'static str,
    seed: u64,
    trials: u64,
    capped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

#[derive(Deserialize)]
struct SubmittedSolution {
    #[serde(default)]
    answer: Option<String>,
    anchors: Vec<usize>,
    core: Vec<usize>,
}

#[derive(Serialize)]
struct SeparatorReport {
    s: usize,
    t: usize,
    h: usize,
    separators: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct MaxReport {
    max_p: usize,
    anchors: Vec<usize>,
    core: Vec<usize>,
    solver: &'static str,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, flags: &ParamArgs) -> Result<Instance, Failure> {
    let file = parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let pick = |flag: Option<usize>, name: &str, from_file: Option<usize>| {
        flag.or(from_file)
            .ok_or_else(|| Failure::input(format!("missing --{name} and no `q` line in {}", path.display())))
    };
    let b = pick(flags.b, "b", file.params.map(|q| q.b))?;
    let k = pick(flags.k, "k", file.params.map(|q| q.k))?;
    let p = pick(flags.p, "p", file.params.map(|q| q.p))?;
    Ok(Instance::new(file.graph, b, k, p))
}

fn one_based(set: &VertexSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("report serializes");
    text.push('\n');
    text
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(inst: &Instance, args: &SolverArgs) -> Result<Run, Failure> {
    let cfg = args.config();
    let run = match args.solver {
        SolverChoice::K1 => Run::new(solve_k1(inst)?, SolverKind::K1),
        SolverChoice::Degree => solve_by_degree(inst, &cfg)?,
        SolverChoice::Dag => solve_dag(inst, &cfg)?,
        SolverChoice::Oracle => Run::new(oracle_solve(inst)?, SolverKind::Oracle),
        SolverChoice::Auto => {
            if let Normalized::Immediate(v) = normalize(inst) {
                return Ok(Run::new(v, SolverKind::Trivial));
            }
            let delta = inst.graph.max_degree();
            if inst.k == 1 || 2 * inst.k >= delta {
                solve_by_degree(inst, &cfg)?
            } else if inst.graph.is_acyclic() {
                solve_dag(inst, &cfg)?
            } else if args.allow_oracle {
                Run::new(oracle_solve(inst)?, SolverKind::Oracle)
            } else {
                Run::new(
                    Verdict::Unsupported(format!(
                        "k = {} with maximum degree {delta} lies in the W[2]-hard regime 2k < Δ and the graph \
                         has a cycle; rerun with --allow-oracle or --solver oracle",
                        inst.k
                    )),
                    SolverKind::Oracle,
                )
            }
        }
    };
    if let Verdict::Yes(sol) = &run.verdict {
        if let Err(v) = check_solution(inst, sol) {
            return Err(Failure::solver(format!("solver {} returned an invalid witness: {v}", run.solver.name())));
        }
    }
    Ok(run)
}

fn report(run: &Run, seed: u64) -> (Report, u8) {
    let (answer, code, sol, message) = match &run.verdict {
        Verdict::Yes(sol) => ("yes", EXIT_YES, Some(sol), None),
        Verdict::No => ("no", EXIT_NO, None, None),
        Verdict::NoUpTo(size) => ("no", EXIT_NO, None, Some(format!("no solution with a core of at most {size}"))),
        Verdict::Unsupported(why) => ("unsupported", EXIT_UNSUPPORTED, None, Some(why.clone())),
    };
    let report = Report {
        answer,
        anchors: sol.map(|s| one_based(&s.anchors)).unwrap_or_default(),
        core: sol.map(|s| one_based(&s.core)).unwrap_or_default(),
        solver: run.solver.name(),
        seed,
        trials: run.trials,
        capped: run.capped,
        message,
    };
    (report, code)
}

fn cmd_solve(args: &SolveArgs) -> Outcome {
    let inst = load(&args.instance, &args.params)?;
    let run = dispatch(&inst, &args.solver)?;
    let (report, code) = report(&run, args.solver.seed);
    emit(&json(&report), args.output.as_deref())?;
    Ok(code)
}

fn cmd_oracle(args: &OracleArgs) -> Outcome {
    let inst = load(&args.instance, &args.params)?;
    let verdict = oracle_solve(&inst)?;
    if let Verdict::Yes(sol) = &verdict {
        check_solution(&inst, sol).map_err(|v| Failure::solver(format!("oracle returned an invalid witness: {v}")))?;
    }
    let (report, code) = report(&Run::new(verdict, SolverKind::Oracle), 0);
    emit(&json(&report), args.output.as_deref())?;
    Ok(code)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let inst = load(&args.instance, &args.params)?;
    let text = read(&args.solution)?;
    let submitted: SubmittedSolution = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: malformed solution: {e}", args.solution.display())))?;
    if let Some(answer) = submitted.answer.as_deref().filter(|a| *a != "yes") {
        return Err(Failure::input(format!("report answers {answer:?}; there is no solution to check")));
    }
    let n = inst.n();
    let mut ids = Vec::with_capacity(submitted.anchors.len() + submitted.core.len());
    for &v in submitted.anchors.iter().chain(&submitted.core) {
        if v == 0 {
            return Err(Failure::input("vertex ids are 1-based; found 0"));
        }
        if v > n {
            println!("invalid: {}", Violation::OutOfRange { vertex: v - 1 });
            return Ok(EXIT_NO);
        }
        ids.push(v - 1);
    }
    let (anchor_ids, core_ids) = ids.split_at(submitted.anchors.len());
    let sol = Solution {
        anchors: VertexSet::from_iter(n, anchor_ids.iter().copied()),
        core: VertexSet::from_iter(n, core_ids.iter().copied()),
    };
    match check_solution(&inst, &sol) {
        Ok(()) => {
            println!("valid");
            Ok(EXIT_YES)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(EXIT_NO)
        }
    }
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::input(format!("gen {kind} requires --{flag}")))
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    let text = read(&args.source)?;
    let source = |e: dakc::error::ParseError| Failure::input(format!("{}: {e}", args.source.display()));
    let generated: Generated = match args.kind {
        SourceKind::Sat => gen_from_sat(&parse_cnf(&text).map_err(source)?, need(args.k, "k", "sat")?)?,
        SourceKind::Clique => {
            let g = parse_undirected(&text).map_err(source)?;
            gen_from_clique(&g, need(args.b, "b", "clique")?, need(args.k, "k", "clique")?)?
        }
        SourceKind::Setcover => {
            gen_from_setcover(&parse_setcover(&text, need(args.b, "b", "setcover")?).map_err(source)?)?
        }
        SourceKind::Amplify => {
            let file = parse_instance(&text).map_err(source)?;
            let Some(params) = file.params else {
                return Err(Failure::input(format!("{}: base instance needs a `q` line", args.source.display())));
            };
            let base = Instance::with_params(file.graph, params);
            amplify_k(&base, need(args.k, "k", "amplify")?, need(args.delta, "delta", "amplify")?)?
        }
    };
    let inst = &generated.instance;
    let body = write_instance(&inst.graph, Some(Params { b: inst.b, k: inst.k, p: inst.p }));
    match &args.output {
        Some(path) => {
            write(path, &body)?;
            let mut sidecar = path.clone().into_os_string();
            sidecar.push(".labels");
            write(Path::new(&sidecar), &write_labels(&generated.labels))?;
        }
        None => print!("{body}"),
    }
    Ok(EXIT_YES)
}

fn cmd_seps(args: &SepsArgs) -> Outcome {
    let path = &args.instance;
    let file = parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let n = file.graph.n();
    for (name, v) in [("s", args.s), ("t", args.t)] {
        if v == 0 || v > n {
            return Err(Failure::input(format!("--{name} {v} is outside 1..={n}")));
        }
    }
    let seps = enumerate_important_separators(&file.graph, args.s - 1, args.t - 1, args.h)?;
    let report = SeparatorReport {
        s: args.s,
        t: args.t,
        h: args.h,
        separators: seps.iter().map(|sep| one_based(&sep.vertices)).collect(),
    };
    print!("{}", json(&report));
    Ok(EXIT_YES)
}

// yes-instances are closed under lowering p, so binary search applies
fn cmd_max(args: &MaxArgs) -> Outcome {
    let flags = ParamArgs { b: args.b, k: args.k, p: Some(0) };
    let base = load(&args.instance, &flags)?;
    let mut best: Option<(Solution, SolverKind)> = None;
    let (mut lo, mut hi) = (0, base.n());
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        let inst = Instance { p: mid, ..base.clone() };
        let run = dispatch(&inst, &args.solver)?;
        match run.verdict {
            Verdict::Yes(sol) => {
                lo = mid;
                best = Some((sol, run.solver));
            }
            Verdict::No | Verdict::NoUpTo(_) => hi = mid - 1,
            Verdict::Unsupported(why) => {
                let report = Report {
                    answer: "unsupported",
                    anchors: Vec::new(),
                    core: Vec::new(),
                    solver: run.solver.name(),
                    seed: args.solver.seed,
                    trials: run.trials,
                    capped: run.capped,
                    message: Some(why),
                };
                print!("{}", json(&report));
                return Ok(EXIT_UNSUPPORTED);
            }
        }
    }
    let report = MaxReport {
        max_p: lo,
        anchors: best.as_ref().map(|(s, _)| one_based(&s.anchors)).unwrap_or_default(),
        core: best.as_ref().map(|(s, _)| one_based(&s.core)).unwrap_or_default(),
        solver: best.as_ref().map_or(SolverKind::Trivial, |(_, k)| *k).name(),
    };
    print!("{}", json(&report));
    Ok(EXIT_YES)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("dakc: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let outcome = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Seps(a) => cmd_seps(a),
        Command::Max(a) => cmd_max(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("dakc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
