//! Command-line front end.
//!
//! Exit codes: 0 decided or completed, 1 usage error, 2 undecided or
//! inconclusive, 3 resource limit, 4 input could not be read or parsed.
//! Machine-readable output goes to stdout (or the `--json`/`--csv` path);
//! diagnostics go to stderr.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::experiments::{self, meta_lll, meta_taut, phase_sweep, DnfParams, RunOptions, SweepRange};
use crate::formula::{Formula, Kind};
use crate::io::{parse_auto, parse_dimacs, parse_native, serialize_native, write_dimacs};
use crate::lll::{self, dnf_to_pg, LllVerdict};
use crate::oracle::{Oracle, OracleError, DEFAULT_VAR_LIMIT, MAX_VAR_LIMIT};
use crate::randgen::{generator_id, rand_nf, GenSpec, LiteralSampling, DEFAULT_WIDTH, PRNG_ID};
use crate::solver::{solve_cnf_sat, taut, SatVerdict, SolverConfig, SolverError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "iesat", about = "Inclusion-exclusion tautology / SAT solver")]
struct Cli {
    /// Worker threads for solver expansion and bench trials (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide tautology (DNF) or satisfiability (CNF) by inclusion-exclusion.
    Solve(SolveArgs),
    /// Decide by enumerating every assignment.
    Oracle(OracleArgs),
    /// Generate a random normal form.
    Gen(GenArgs),
    /// Check a DNF with the Lovász local lemma.
    Lll(LllArgs),
    /// Batch experiments, CSV on stdout.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Auto,
    Native,
    Dimacs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Taut,
    Sat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Dnf,
    Cnf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Sym,
    Asym,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Formula file, or `-` for stdin.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Maximum inclusion-exclusion depth.
    #[arg(long)]
    threshold: usize,
    /// `taut` needs a DNF, `sat` a CNF; inferred from the formula when omitted.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    max_table: Option<usize>,
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Write the JSON record here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_VAR_LIMIT)]
    var_limit: u32,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    vars: u32,
    #[arg(long)]
    clauses: usize,
    #[arg(long, default_value_t = DEFAULT_WIDTH)]
    width: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = KindArg::Dnf)]
    kind: KindArg,
    /// Emit DIMACS (CNF only).
    #[arg(long)]
    dimacs: bool,
    /// Sample distinct variables per clause instead of independent literals.
    #[arg(long)]
    distinct_vars: bool,
}

#[derive(Args, Debug)]
struct LllArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = VariantArg::Asym)]
    variant: VariantArg,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CommonBench {
    #[arg(long)]
    vars: u32,
    #[arg(long, default_value_t = DEFAULT_WIDTH)]
    width: u32,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    distinct_vars: bool,
    #[arg(long)]
    max_table: Option<usize>,
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write a JSON run summary (arguments, generator, aggregates) here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Solver runs on random DNFs (trials CSV).
    MetaTaut {
        #[command(flatten)]
        common: CommonBench,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        threshold: usize,
    },
    /// Conclusive proportion over a range of clause counts (sweep CSV).
    Phase {
        #[command(flatten)]
        common: CommonBench,
        #[arg(long)]
        threshold: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
    },
    /// Local-lemma detection rates (lll CSV).
    MetaLll {
        #[command(flatten)]
        common: CommonBench,
        #[arg(long)]
        clauses: usize,
    },
}

/// Error carrying its exit code and one-line diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) => fs::write(p, text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", p.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::new(EXIT_USAGE, e)),
        }
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "{text}");
    }

    fn read_formula(&mut self, args: &InputArgs) -> Result<Formula, Failure> {
        let text = if args.input.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("stdin: {e}")))?;
            s
        } else {
            fs::read_to_string(&args.input)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.input.display())))?
        };
        let parsed = match args.format {
            Format::Auto => parse_auto(&text),
            Format::Native => parse_native(&text),
            Format::Dimacs => parse_dimacs(&text),
        };
        parsed.map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.input.display())))
    }
}

fn version_string() -> String {
    format!("{} (prng: {PRNG_ID})", env!("CARGO_PKG_VERSION"))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let version: &'static str = Box::leak(version_string().into_boxed_str());
    let matches = Cli::command().version(version).try_get_matches_from(args);
    let cli = match matches.and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    match dispatch(cli, &mut io) {
        Ok(code) => code,
        Err(f) => {
            io.note(&format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(cli: Cli, io: &mut Io<'_>) -> Result<i32, Failure> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Solve(args) => solve(args, jobs, io),
        Command::Oracle(args) => oracle(args, io),
        Command::Gen(args) => generate(args, io),
        Command::Lll(args) => check_lll(args, io),
        Command::Bench(cmd) => bench(cmd, jobs, io),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().map_err(|e| Failure::new(EXIT_USAGE, e))
}

fn solve(args: SolveArgs, jobs: Option<usize>, io: &mut Io<'_>) -> Result<i32, Failure> {
    let f = io.read_formula(&args.input)?;
    let mut cfg = SolverConfig::new(args.threshold).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    cfg.max_table_entries = args.max_table;
    cfg.time_budget = args.time_budget_ms.map(Duration::from_millis);
    let mode = args.mode.unwrap_or(match f.kind() {
        Kind::Dnf => Mode::Taut,
        Kind::Cnf => Mode::Sat,
    });
    let pool = pool(jobs)?;
    let result = pool.install(|| match mode {
        Mode::Taut => taut(&f, &cfg).map(|o| {
            let code = if o.verdict.is_decided() {
                EXIT_OK
            } else {
                EXIT_UNDECIDED
            };
            (o.to_json(), code)
        }),
        Mode::Sat => solve_cnf_sat(&f, &cfg).map(|o| {
            let code = match o.verdict {
                SatVerdict::Decided { .. } => EXIT_OK,
                SatVerdict::Undecided { .. } => EXIT_UNDECIDED,
            };
            (o.to_json(), code)
        }),
    });
    match result {
        Ok((value, code)) => {
            io.emit(args.json.as_ref(), &format!("{value}\n"))?;
            Ok(code)
        }
        Err(SolverError::ResourceLimit {
            kind,
            level,
            partial,
            stats,
        }) => {
            let value = json!({
                "method": "inclusion_exclusion",
                "decided": false,
                "resource_limit": kind,
                "level": level,
                "partial_numerator": partial.numerator().to_string(),
                "exponent": partial.exponent(),
                "terms_evaluated": stats.terms_evaluated,
                "table_peak": stats.table_peak,
                "wall_ms": stats.wall_time.as_secs_f64() * 1e3,
            });
            io.emit(args.json.as_ref(), &format!("{value}\n"))?;
            Err(Failure::new(
                EXIT_RESOURCE,
                format!("resource limit ({kind:?}) after level {level}"),
            ))
        }
        Err(e) => Err(Failure::new(EXIT_USAGE, e)),
    }
}

fn oracle(args: OracleArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let f = io.read_formula(&args.input)?;
    if args.var_limit > MAX_VAR_LIMIT {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("--var-limit may not exceed {MAX_VAR_LIMIT}"),
        ));
    }
    let value = Oracle::with_limit(args.var_limit).to_json(&f).map_err(|e| match e {
        OracleError::TooLarge { .. } => Failure::new(EXIT_RESOURCE, e),
        OracleError::Formula(_) => Failure::new(EXIT_USAGE, e),
    })?;
    io.emit(args.json.as_ref(), &format!("{value}\n"))?;
    Ok(EXIT_OK)
}

fn sampling(distinct: bool) -> LiteralSampling {
    if distinct {
        LiteralSampling::DistinctVars
    } else {
        LiteralSampling::Uniform
    }
}

fn generate(args: GenArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let kind = match args.kind {
        KindArg::Dnf => Kind::Dnf,
        KindArg::Cnf => Kind::Cnf,
    };
    if args.dimacs && kind != Kind::Cnf {
        return Err(Failure::new(EXIT_USAGE, "--dimacs requires --kind cnf"));
    }
    let spec = GenSpec::new(args.vars, args.clauses, args.seed)
        .with_width(args.width)
        .with_sampling(sampling(args.distinct_vars));
    let f = rand_nf(&spec, kind).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    let text = if args.dimacs {
        write_dimacs(&f).expect("kind checked above")
    } else {
        serialize_native(&f) + "\n"
    };
    io.emit(None, &text)?;
    Ok(EXIT_OK)
}

fn check_lll(args: LllArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let f = io.read_formula(&args.input)?;
    let g = dnf_to_pg(&f).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    let variant = match args.variant {
        VariantArg::Sym => lll::Variant::Sym,
        VariantArg::Asym => lll::Variant::Asym,
    };
    let report = lll::report(&g, variant);
    io.emit(args.json.as_ref(), &format!("{}\n", report.to_json()))?;
    Ok(match report.verdict() {
        LllVerdict::NotTautology => EXIT_OK,
        LllVerdict::Inconclusive => EXIT_UNDECIDED,
    })
}

fn bench(cmd: BenchCommand, jobs: Option<usize>, io: &mut Io<'_>) -> Result<i32, Failure> {
    let fail = |e: experiments::ExperimentError| Failure::new(EXIT_USAGE, e);
    let opts = |c: &CommonBench| RunOptions {
        jobs,
        max_table_entries: c.max_table,
        time_budget: c.time_budget_ms.map(Duration::from_millis),
    };
    let params =
        |c: &CommonBench, clauses| DnfParams::new(c.vars, clauses, c.width).with_sampling(sampling(c.distinct_vars));
    let mut csv = Vec::new();
    let (common, summary) = match &cmd {
        BenchCommand::MetaTaut {
            common,
            clauses,
            threshold,
        } => {
            let recs = meta_taut(
                params(common, *clauses),
                *threshold,
                common.trials,
                common.seed,
                &opts(common),
            )
            .map_err(fail)?;
            experiments::write_trials_csv(&recs, &mut csv).map_err(fail)?;
            let decided = recs.iter().filter(|r| r.outcome.is_decided()).count();
            let summary = json!({
                "command": "meta-taut",
                "n": common.vars, "N": clauses, "M": common.width, "K": threshold,
                "trials": common.trials, "decided": decided,
                "proportion_decided": decided as f64 / common.trials as f64,
            });
            (common, summary)
        }
        BenchCommand::Phase {
            common,
            threshold,
            from,
            to,
            step,
        } => {
            let range = SweepRange {
                from: *from,
                to: *to,
                step: *step,
            };
            let pts = phase_sweep(
                params(common, 0),
                *threshold,
                range,
                common.trials,
                common.seed,
                &opts(common),
            )
            .map_err(fail)?;
            experiments::write_sweep_csv(&pts, &mut csv).map_err(fail)?;
            let summary = json!({
                "command": "phase",
                "n": common.vars, "k": threshold, "M": common.width,
                "from": from, "to": to, "step": step, "trials": common.trials,
                "points": pts.iter().map(|p| json!({"N": p.num_clauses, "conclusive": p.conclusive, "proportion": p.proportion()})).collect::<Vec<_>>(),
            });
            (common, summary)
        }
        BenchCommand::MetaLll { common, clauses } => {
            let (rows, s) =
                meta_lll(params(common, *clauses), common.trials, common.seed, &opts(common)).map_err(fail)?;
            experiments::write_lll_csv(&rows, &mut csv).map_err(fail)?;
            let mut summary = s.to_json();
            summary["command"] = json!("meta-lll");
            summary["n"] = json!(common.vars);
            summary["N"] = json!(clauses);
            summary["M"] = json!(common.width);
            (common, summary)
        }
    };
    let mut summary = summary;
    summary["seed"] = json!(common.seed);
    summary["generator"] = json!(generator_id(sampling(common.distinct_vars)));
    summary["version"] = json!(env!("CARGO_PKG_VERSION"));
    io.emit(common.csv.as_ref(), &String::from_utf8(csv).expect("csv is utf-8"))?;
    if let Some(path) = &common.json {
        fs::write(path, format!("{summary:#}\n"))
            .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    }
    io.note(&format!("summary: {summary}"));
    Ok(EXIT_OK)
}
