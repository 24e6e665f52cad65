use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};
use teq_core::bench::bench;
use teq_core::reductions::{build_banks_tournament, build_teq_tournament, Cnf, TStarLayout};
use teq_core::verification::{
    sweep, verify_banks_reduction, verify_teq_reduction, Check, SweepConfig, SweepMode,
    SweepReport, Verdict, EXACT_TEQ_MAX_CLAUSES,
};
use teq_core::{
    banks_member, banks_set, teq_exact_with, teq_heuristic_with, teq_trace, AltSet, Relation,
    TeqOptions, TeqResult, Tournament,
};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 7;

const EXIT_OK: u8 = 0;
const EXIT_FINDING: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "teq",
    version,
    about = "Tournament solutions (top cycle, Banks set, TEQ) and 3SAT gadget tournaments",
    after_help = "Exit codes: 0 success, 1 disagreement or sweep counterexamples, \
                  2 input or usage error, 3 time budget exceeded."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Input file; standard input when absent or `-`.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when absent or `-`.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Wall-clock budget for `solve` and `verify`; 0 means unlimited.
    #[arg(long, global = true, default_value_t = 0)]
    time_budget_ms: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a solution set of a tournament file.
    Solve(SolveArgs),
    /// Build a gadget tournament from a DIMACS formula.
    Reduce(ReduceArgs),
    /// Check satisfiability against decision-node membership.
    Verify(VerifyArgs),
    /// Run property checks over all or sampled tournaments.
    Sweep(SweepArgs),
    /// Time exact TEQ against the heuristic on random tournaments.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    TeqExact,
    TeqHeuristic,
    Banks,
    Topcycle,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Banks,
    Teq,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, short, value_enum, default_value = "teq-exact")]
    method: Method,
    /// Decide membership of one alternative instead of printing the set.
    #[arg(long)]
    member: Option<String>,
    /// Print recursive call counts to standard error.
    #[arg(long)]
    stats: bool,
    /// Print the exact recursion down to this depth (teq-exact only).
    #[arg(long)]
    trace: Option<usize>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long, short, value_enum)]
    target: Target,
    /// Emit ranked DOT instead of the tournament text format.
    #[arg(long)]
    dot: bool,
    /// Write the name-to-role table to this file.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, short, value_enum)]
    target: Target,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Tournament sizes: `N` or `A..B` (inclusive). Required unless replaying
    /// a report given with `--input`.
    #[arg(long)]
    n: Option<String>,
    /// Enumerate every labeled tournament (the default).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Draw this many seeded random tournaments per size.
    #[arg(long)]
    samples: Option<u64>,
    /// Comma-separated checks; all by default.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Sizes: comma-separated values or ranges `A..B` / `A..B:STEP`.
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

/// Failure that ends the process with a specific exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn input(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<teq_core::Error> for Exit {
    fn from(e: teq_core::Error) -> Self {
        Exit::input(e.to_string())
    }
}

type CmdResult = Result<u8, Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(&cli.global, a),
        Command::Reduce(a) => cmd_reduce(&cli.global, a),
        Command::Verify(a) => cmd_verify(&cli.global, a),
        Command::Sweep(a) => cmd_sweep(&cli.global, a),
        Command::Bench(a) => cmd_bench(&cli.global, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn read_input(g: &GlobalOpts) -> Result<String, Exit> {
    match &g.input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Exit::input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Exit::input(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| Exit::input(format!("{}: {e}", path.display())))
}

fn write_output(g: &GlobalOpts, text: &str) -> Result<(), Exit> {
    match &g.output {
        Some(p) if p.as_os_str() != "-" => write_file(p, text),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Exit::input(format!("stdout: {e}")))
        }
    }
}

enum Budgeted<T> {
    Done(T),
    TimedOut(Duration),
}

/// Runs `job` on a helper thread and stops waiting after the budget. A job
/// that overruns keeps running detached until the process exits.
fn with_budget<T, F>(budget_ms: u64, job: F) -> Budgeted<T>
where
    T: Send + 'static,
    F: FnOnce() -> T + Send + 'static,
{
    if budget_ms == 0 {
        return Budgeted::Done(job());
    }
    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    std::thread::spawn(move || {
        let _ = tx.send(job());
    });
    match rx.recv_timeout(Duration::from_millis(budget_ms)) {
        Ok(v) => Budgeted::Done(v),
        Err(_) => Budgeted::TimedOut(start.elapsed()),
    }
}

fn timeout_exit(g: &GlobalOpts, elapsed: Duration, calls: Option<u64>) -> CmdResult {
    let mut line = format!(
        "TIMEOUT budget_ms={} elapsed_ms={}",
        g.time_budget_ms,
        elapsed.as_millis()
    );
    if let Some(c) = calls {
        line.push_str(&format!(" calls={c}"));
    }
    line.push('\n');
    write_output(g, &line)?;
    Ok(EXIT_TIMEOUT)
}

fn names_line(t: &Tournament, x: &AltSet) -> String {
    format!("{}\n", t.sorted_names(x).join(" "))
}

fn path_witness(t: &Tournament, path: &[usize]) -> String {
    let names: Vec<&str> = path.iter().map(|&a| t.name(a)).collect();
    format!("path: {}\n", names.join(" => "))
}

/// Membership witness in `rel` with top cycle `top`: a member gets a cycle
/// through itself inside the top cycle, a non-member a shortest path reaching
/// it from the top cycle.
fn relation_witness(t: &Tournament, rel: &Relation, top: &AltSet, a: usize) -> Option<String> {
    if top.contains(a) {
        if top.len() == 1 {
            return None;
        }
        let inner = rel.restrict(top);
        inner.shortest_path(a, a).map(|p| path_witness(t, &p))
    } else {
        top.iter()
            .filter_map(|s| rel.shortest_path(s, a))
            .min_by_key(|p| p.len())
            .map(|p| path_witness(t, &p))
    }
}

fn cmd_solve(g: &GlobalOpts, args: &SolveArgs) -> CmdResult {
    let t = Tournament::parse(&read_input(g)?)?;
    let member = args
        .member
        .as_deref()
        .map(|name| t.index_of(name))
        .transpose()?;

    if let Some(depth) = args.trace {
        if args.method != Method::TeqExact {
            return Err(Exit::input("--trace needs --method teq-exact"));
        }
        write_output(g, &teq_trace(&t, &t.all(), depth)?)?;
        return Ok(EXIT_OK);
    }

    let progress = Arc::new(AtomicU64::new(0));
    let method = args.method;
    let tj = t.clone();
    let pj = Arc::clone(&progress);
    let outcome = with_budget(g.time_budget_ms, move || -> teq_core::Result<Solved> {
        let all = tj.all();
        let opts = TeqOptions {
            progress: Some(pj),
            ..TeqOptions::default()
        };
        Ok(match method {
            Method::TeqExact => Solved::Teq(teq_exact_with(&tj, &all, opts)?),
            Method::TeqHeuristic => Solved::Teq(teq_heuristic_with(&tj, &all, opts)?),
            Method::Banks => match member {
                Some(a) => Solved::BanksMember(banks_member(&tj, &all, a)?.map(|c| c.display(&tj))),
                None => Solved::Set(banks_set(&tj, &all)?),
            },
            Method::Topcycle => Solved::TopCycle(tj.dominance_relation(&all)?),
        })
    });
    let solved = match outcome {
        Budgeted::Done(r) => r?,
        Budgeted::TimedOut(elapsed) => {
            let calls = matches!(method, Method::TeqExact | Method::TeqHeuristic)
                .then(|| progress.load(Ordering::Relaxed));
            return timeout_exit(g, elapsed, calls);
        }
    };

    let mut out = String::new();
    match (solved, member) {
        (Solved::Set(x), _) => out = names_line(&t, &x),
        (Solved::BanksMember(chain), _) => {
            out.push_str(if chain.is_some() { "true\n" } else { "false\n" });
            if let Some(c) = chain {
                out.push_str(&c);
                out.push('\n');
            }
        }
        (Solved::Teq(r), None) => {
            out = names_line(&t, &r.teq_set);
            if args.stats {
                eprintln!(
                    "calls={} memo_entries={} iterations={}",
                    r.stats.calls, r.stats.memo_entries, r.stats.iterations
                );
            }
        }
        (Solved::Teq(r), Some(a)) => {
            out.push_str(&format!("{}\n", r.teq_set.contains(a)));
            if let Some(w) = relation_witness(&t, &r.teq_relation, &r.teq_set, a) {
                out.push_str(&w);
            }
        }
        (Solved::TopCycle(rel), None) => out = names_line(&t, &rel.top_cycle()?),
        (Solved::TopCycle(rel), Some(a)) => {
            let top = rel.top_cycle()?;
            out.push_str(&format!("{}\n", top.contains(a)));
            if let Some(w) = relation_witness(&t, &rel, &top, a) {
                out.push_str(&w);
            }
        }
    }
    write_output(g, &out)?;
    Ok(EXIT_OK)
}

enum Solved {
    Set(AltSet),
    BanksMember(Option<String>),
    Teq(TeqResult),
    TopCycle(Relation),
}

fn build(target: Target, cnf: &Cnf) -> TStarLayout {
    match target {
        Target::Banks => build_banks_tournament(cnf),
        Target::Teq => build_teq_tournament(cnf),
    }
}

fn cmd_reduce(g: &GlobalOpts, args: &ReduceArgs) -> CmdResult {
    let cnf = Cnf::parse_dimacs(&read_input(g)?)?;
    let layout = build(args.target, &cnf);
    if let Some(p) = &args.labels {
        write_file(p, &layout.label_map())?;
    }
    let text = if args.dot {
        layout.to_dot()
    } else {
        layout.tournament().to_text()
    };
    write_output(g, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(g: &GlobalOpts, args: &VerifyArgs) -> CmdResult {
    let cnf = Cnf::parse_dimacs(&read_input(g)?)?;
    let target = args.target;
    let m = cnf.m();
    let outcome = with_budget(g.time_budget_ms, move || match target {
        Target::Banks => verify_banks_reduction(&cnf),
        Target::Teq => verify_teq_reduction(&cnf),
    });
    let v = match outcome {
        Budgeted::Done(r) => r?,
        Budgeted::TimedOut(elapsed) => return timeout_exit(g, elapsed, None),
    };
    let mut out = format!("{v}\n");
    if let Some(chain) = &v.witness {
        out.push_str(&chain.display(v.layout.tournament()));
        out.push('\n');
    }
    write_output(g, &out)?;
    Ok(match v.verdict {
        Verdict::Agree => EXIT_OK,
        Verdict::Disagree => EXIT_FINDING,
        Verdict::Unverified => {
            eprintln!(
                "warning: {m} clauses exceed the exact cap of {EXACT_TEQ_MAX_CLAUSES}; \
                 membership comes from the heuristic"
            );
            EXIT_OK
        }
    })
}

fn parse_size(s: &str) -> Result<usize, Exit> {
    s.trim()
        .parse()
        .map_err(|_| Exit::input(format!("bad size `{s}`")))
}

/// `N`, `A..B`, or `A..B:STEP`, inclusive.
fn parse_range(s: &str) -> Result<Vec<usize>, Exit> {
    let (range, step) = match s.split_once(':') {
        Some((r, st)) => (r, parse_size(st)?),
        None => (s, 1),
    };
    if step == 0 {
        return Err(Exit::input(format!("zero step in `{s}`")));
    }
    match range.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse_size(a)?, parse_size(b)?);
            if a > b {
                return Err(Exit::input(format!("empty range `{s}`")));
            }
            Ok((a..=b).step_by(step).collect())
        }
        None => Ok(vec![parse_size(range)?]),
    }
}

fn sweep_config(g: &GlobalOpts, args: &SweepArgs) -> Result<SweepConfig, Exit> {
    let n = args
        .n
        .as_deref()
        .ok_or_else(|| Exit::input("--n is required"))?;
    let sizes = parse_range(n)?;
    let checks = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks
            .iter()
            .map(|c| c.parse())
            .collect::<teq_core::Result<_>>()?
    };
    Ok(SweepConfig {
        n_min: sizes[0],
        n_max: *sizes.last().unwrap(),
        checks,
        mode: match args.samples {
            Some(samples) => SweepMode::Random { samples },
            None => SweepMode::Exhaustive,
        },
        seed: g.seed,
        workers: g.workers,
    })
}

fn cmd_sweep(g: &GlobalOpts, args: &SweepArgs) -> CmdResult {
    if g.input.is_some() {
        return replay_sweep(g);
    }
    let report = sweep(&sweep_config(g, args)?)?;
    let mut out = String::new();
    for ce in &report.counterexamples {
        out.push_str(&format!("FAIL {} {}\n", ce.check, ce.encoding()));
    }
    out.push_str(&report.summary());
    out.push('\n');
    if let Some(p) = g.output.as_ref().filter(|p| p.as_os_str() != "-") {
        write_file(p, &report.to_text())?;
    }
    print!("{out}");
    Ok(if report.failures() == 0 { EXIT_OK } else { EXIT_FINDING })
}

/// Re-runs the configuration stored in a report and compares the results.
fn replay_sweep(g: &GlobalOpts) -> CmdResult {
    let stored = SweepReport::parse(&read_input(g)?)?;
    let mut config = stored.config.clone();
    config.workers = g.workers;
    let fresh = sweep(&config)?;
    let same = fresh.canonical_text() == stored.canonical_text();
    let out = format!(
        "{}\nreplay {}\n",
        fresh.summary(),
        if same { "identical" } else { "differs" }
    );
    write_output(g, &out)?;
    Ok(if same && fresh.failures() == 0 { EXIT_OK } else { EXIT_FINDING })
}

fn cmd_bench(g: &GlobalOpts, args: &BenchArgs) -> CmdResult {
    let mut sizes = Vec::new();
    for part in args.sizes.split(',') {
        sizes.extend(parse_range(part)?);
    }
    let report = bench(&sizes, args.samples, g.seed)?;
    write_output(g, &report.render())?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").ok().unwrap(), [3]);
        assert_eq!(parse_range("3..5").ok().unwrap(), [3, 4, 5]);
        assert_eq!(parse_range("10..14:2").ok().unwrap(), [10, 12, 14]);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("a").is_err());
        assert!(parse_range("1..4:0").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
