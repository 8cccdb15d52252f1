//! `fcmerge`: command-line front end for the revision, arbitration and
//! merging operators and their verification harness.
//!
//! Exit codes: 0 success (or a postulate holds / is vacuous), 1 a postulate
//! is violated, the corpus mismatches or fuzzing violated a guaranteed
//! postulate, 2 unreadable or malformed input, 3 usage or configuration
//! error, 4 enumeration size limit exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fcmerge::corpus::{run_corpus, Corpus};
use fcmerge::fuzz::{search, shrink_violation, FuzzConfig};
use fcmerge::{
    arbitrate, check, closure, flock_closure, merge, parse_programs, revise_extended_hull, revise_hull, revise_rank,
    stratify, ClosedSet, Error, Flock, Instance, Limits, PostulateId, Profile, Program, Render, Status, Strategy, Var,
};
use serde_json::{json, Value};

/// `println!` that ignores a closed stdout (e.g. piping into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "fcmerge",
    version,
    about = "Revision, arbitration and merging of forward-chaining programs"
)]
struct Cli {
    /// Print a JSON document instead of the canonical rendering.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closure of a program.
    Cns {
        file: PathBuf,
        /// Also print the literal hierarchy, one layer per line.
        #[arg(long)]
        strata: bool,
    },
    /// Revise BASE by NEW and print the consequences.
    Revise {
        #[arg(long, default_value = "rk")]
        op: Strategy,
        /// Print the revised program (or flock) instead of its closure.
        #[arg(long)]
        program: bool,
        base: PathBuf,
        new: PathBuf,
    },
    /// Arbitrate between A and B.
    Arbitrate {
        #[arg(long, default_value = "rk")]
        op: Strategy,
        a: PathBuf,
        b: PathBuf,
    },
    /// Merge the programs in PROG... under CONSTRAINT. A file may hold
    /// several programs separated by `---` lines.
    Merge {
        #[arg(long, default_value = "rk")]
        op: Strategy,
        constraint: PathBuf,
        #[arg(required = true)]
        profile: Vec<PathBuf>,
    },
    /// Evaluate one postulate on the given bindings.
    Check(CheckArgs),
    /// Search random instances for postulate violations.
    Fuzz(FuzzArgs),
    /// Replay the counterexample corpus.
    Corpus {
        /// Corpus directory holding expectations.toml; defaults to the
        /// built-in corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// SA1..SA8 or FP0..FP8.
    postulate: PostulateId,
    #[arg(long, default_value = "rk")]
    op: Strategy,
    #[arg(long = "P", value_name = "FILE")]
    p: Option<PathBuf>,
    #[arg(long = "Q", value_name = "FILE")]
    q: Option<PathBuf>,
    #[arg(long = "P1", value_name = "FILE")]
    p1: Option<PathBuf>,
    #[arg(long = "P2", value_name = "FILE")]
    p2: Option<PathBuf>,
    #[arg(long = "Q1", value_name = "FILE")]
    q1: Option<PathBuf>,
    #[arg(long = "Q2", value_name = "FILE")]
    q2: Option<PathBuf>,
    #[arg(long = "Phi", value_name = "FILE")]
    phi: Option<PathBuf>,
    #[arg(long = "Phi1", value_name = "FILE")]
    phi1: Option<PathBuf>,
    #[arg(long = "Phi2", value_name = "FILE")]
    phi2: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 6)]
    atoms: usize,
    #[arg(long, default_value_t = 8)]
    rules: usize,
    #[arg(long, default_value_t = 3)]
    body_len: usize,
    #[arg(long, default_value_t = 0.3)]
    neg_prob: f64,
    /// Comma-separated strategies; all by default.
    #[arg(long, value_delimiter = ',')]
    strategies: Vec<Strategy>,
    /// Comma-separated postulates; all by default.
    #[arg(long, value_delimiter = ',')]
    postulates: Vec<PostulateId>,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Shrink every violation before reporting it.
    #[arg(long)]
    shrink: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn from_error(error: Error, context: Option<&Path>) -> Self {
        let code = match &error {
            Error::Source(_) | Error::EmptyProfile | Error::EmptyMember(_) | Error::Io { .. } | Error::Corpus(_) => 2,
            Error::SizeLimitExceeded { .. } => 4,
            _ => 3,
        };
        let message = match context {
            Some(path) => format!("{}:{error}", path.display()),
            None => error.to_string(),
        };
        Failure::new(code, message)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("fcmerge: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits::from_env().map_err(|e| Failure::from_error(e, None))?;
    let json = cli.json;
    match cli.command {
        Command::Cns { file, strata } => cns(&file, strata, json),
        Command::Revise { op, program, base, new } => revise(op, program, &base, &new, &limits, json),
        Command::Arbitrate { op, a, b } => {
            let (a, b) = (read_program(&a)?, read_program(&b)?);
            let result = arbitrate(&a, &b, op, &limits).map_err(|e| Failure::from_error(e, None))?;
            emit_set(&result, json);
            Ok(0)
        }
        Command::Merge {
            op,
            constraint,
            profile,
        } => {
            let constraint = read_program(&constraint)?;
            let profile = read_profile(&profile)?;
            let result = merge(&constraint, &profile, op, &limits).map_err(|e| Failure::from_error(e, None))?;
            emit_set(&result, json);
            Ok(0)
        }
        Command::Check(args) => check_postulate(args, &limits, json),
        Command::Fuzz(args) => fuzz(args, &limits, json),
        Command::Corpus { dir } => corpus(dir.as_deref(), &limits, json),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn read_program(path: &Path) -> Result<Program, Failure> {
    fcmerge::parse_program(&read(path)?).map_err(|e| Failure::from_error(e.into(), Some(path)))
}

fn read_profile(paths: &[PathBuf]) -> Result<Profile, Failure> {
    let mut members = Vec::new();
    for path in paths {
        let programs = parse_programs(&read(path)?).map_err(|e| Failure::from_error(e.into(), Some(path)))?;
        members.extend(programs);
    }
    Profile::new(members).map_err(|e| Failure::from_error(e, None))
}

fn set_json(set: &ClosedSet) -> Value {
    serde_json::to_value(set).expect("closed sets serialize")
}

fn emit_set(set: &ClosedSet, json: bool) {
    if json {
        say!("{}", json!({ "closure": set_json(set), "rendered": set.render() }));
    } else {
        say!("{}", set.render());
    }
}

fn cns(file: &Path, strata: bool, json: bool) -> Outcome {
    let program = read_program(file)?;
    let result = closure(&program);
    if !strata {
        emit_set(&result, json);
        return Ok(0);
    }
    let layers = stratify(&program).map_err(|e| Failure::from_error(e, Some(file)))?;
    let rendered: Vec<String> = layers
        .layers()
        .iter()
        .map(|layer| ClosedSet::from_literals(layer.iter().cloned()).render())
        .collect();
    if json {
        say!(
            "{}",
            json!({ "closure": set_json(&result), "rendered": result.render(), "strata": rendered })
        );
    } else {
        say!("{}", result.render());
        for (i, layer) in rendered.iter().enumerate() {
            say!("L{i}: {layer}");
        }
    }
    Ok(0)
}

fn revise(op: Strategy, show_program: bool, base: &Path, new: &Path, limits: &Limits, json: bool) -> Outcome {
    let (p, q) = (read_program(base)?, read_program(new)?);
    let fail = |e| Failure::from_error(e, None);
    if !show_program {
        emit_set(&op.revise(&p, &q, limits).map_err(fail)?, json);
        return Ok(0);
    }
    let flock = match op {
        Strategy::Rank => Flock::from(revise_rank(&p, &q)),
        Strategy::Hull => Flock::from(revise_hull(&p, &q, limits).map_err(fail)?),
        Strategy::ExtendedHull => revise_extended_hull(&Flock::from(p), &q, limits).map_err(fail)?,
    };
    if json {
        let members: Vec<String> = flock.members().iter().map(Render::render).collect();
        say!(
            "{}",
            json!({ "members": members, "closure": set_json(&flock_closure(&flock)) })
        );
    } else {
        say!("{}", flock.render());
    }
    Ok(0)
}

fn check_postulate(args: CheckArgs, limits: &Limits, json: bool) -> Outcome {
    let id = args.postulate;
    let bindings = [
        (Var::P, args.p),
        (Var::Q, args.q),
        (Var::P1, args.p1),
        (Var::P2, args.p2),
        (Var::Q1, args.q1),
        (Var::Q2, args.q2),
        (Var::Phi, args.phi),
        (Var::Phi1, args.phi1),
        (Var::Phi2, args.phi2),
    ];
    let mut instance = Instance::new(args.op);
    for (var, path) in bindings {
        let Some(path) = path else { continue };
        if var.is_profile() {
            instance.bind_profile(var, read_profile(std::slice::from_ref(&path))?);
        } else {
            instance.bind(var, read_program(&path)?);
        }
    }
    let verdict = check(id, &instance, limits).map_err(|e| Failure::from_error(e, None))?;
    if json {
        say!(
            "{}",
            json!({
                "postulate": id.to_string(),
                "strategy": args.op.short_name(),
                "status": verdict.status.name(),
                "witness": verdict.witness.iter().map(|(l, v)| json!({ "label": l, "value": set_json(v) })).collect::<Vec<_>>(),
            })
        );
    } else {
        say!("{id} under {}: {}", args.op, verdict.status);
        for (label, value) in &verdict.witness {
            say!("  {label} = {{{}}}", value.render());
        }
    }
    Ok(match verdict.status {
        Status::Holds | Status::Vacuous => 0,
        Status::Violated => 1,
        Status::Skipped(_) => 4,
    })
}

fn fuzz(args: FuzzArgs, limits: &Limits, json: bool) -> Outcome {
    let defaults = FuzzConfig::default();
    let cfg = FuzzConfig {
        seed: args.seed,
        trials: args.trials,
        atoms: args.atoms,
        rules: args.rules,
        body_len: args.body_len,
        neg_prob: args.neg_prob,
        strategies: if args.strategies.is_empty() {
            defaults.strategies
        } else {
            args.strategies
        },
        postulates: if args.postulates.is_empty() {
            defaults.postulates
        } else {
            args.postulates
        },
    };
    let fail = |e| Failure::from_error(e, None);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(Failure::new(3, "--jobs must be at least 1"));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| Failure::new(3, e.to_string()))?;
    let mut report = pool.install(|| search(&cfg, limits)).map_err(fail)?;
    if args.shrink {
        for v in &mut report.violations {
            let small = shrink_violation(v.postulate, &v.instance, limits).map_err(fail)?;
            let verdict = check(v.postulate, &small, limits).map_err(fail)?;
            v.bindings = small.render();
            v.witness = verdict.witness;
            v.instance = small;
        }
    }
    if json {
        say!("{}", report.to_json());
    } else {
        say!("{}", report.to_text().trim_end());
    }
    Ok(if report.unexpected_violations().next().is_some() {
        1
    } else {
        0
    })
}

fn corpus(dir: Option<&Path>, limits: &Limits, json: bool) -> Outcome {
    let fail = |e| Failure::from_error(e, None);
    let report = match dir {
        Some(dir) => Corpus::from_dir(dir).map_err(fail)?.run(limits),
        None => run_corpus(limits).map_err(fail)?,
    };
    if json {
        say!(
            "{}",
            serde_json::to_string_pretty(&json!({ "success": report.success(), "results": report.results }))
                .expect("reports serialize")
        );
    } else {
        for r in &report.results {
            let mark = if r.matched { "ok" } else { "MISMATCH" };
            say!("{:<8} {:<32} {:<3} {}", mark, r.name, r.strategy.short_name(), r.actual);
            if !r.matched {
                say!("         expected {}", r.expected);
            }
        }
        let failed = report.mismatches().count();
        say!("{} entries, {} mismatched", report.results.len(), failed);
    }
    Ok(if report.success() { 0 } else { 1 })
}
