//! Command-line front-end: evaluate points, tabulate grids, run verification
//! suites and compute fractional moments, with deterministic machine-readable
//! output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracgreen_core::{
    green, moment, quadrature_moment, run_suite, Error, EvaluationResult, FractionalTriplet, Suite,
};
use rayon::prelude::*;
use std::io::Write;
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "fracgreen",
    version,
    about = "Green function of space-time fractional diffusion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Green function at a single point
    Eval(EvalArgs),
    /// Tabulate the Green function on a uniform grid
    Table(TableArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Evaluate a closed-form fractional moment
    Moments(MomentArgs),
}

#[derive(Args)]
struct TripletArgs {
    /// Space-fractional order, 0 < alpha <= 2
    #[arg(long)]
    alpha: f64,
    /// Time-fractional order, 0 < beta <= 2
    #[arg(long)]
    beta: f64,
    /// Skewness, |theta| <= min(alpha, 2 - alpha)
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    triplet: TripletArgs,
    /// Evaluation point
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Time, > 0
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Absolute tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write output to this file instead of standard output
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    triplet: TripletArgs,
    #[arg(long = "x-min", allow_negative_numbers = true)]
    x_min: f64,
    #[arg(long = "x-max", allow_negative_numbers = true)]
    x_max: f64,
    /// Number of grid points, >= 2
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// normalization | symmetry | subordination | moments | tails | oracles | all
    #[arg(long)]
    suite: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct MomentArgs {
    #[command(flatten)]
    triplet: TripletArgs,
    /// Moment order, inside the validity strip
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Also run the quadrature oracle and print the difference
    #[arg(long)]
    check: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Json,
}

/// 17 significant digits: round-trip fidelity for machine formats.
fn machine(v: f64) -> String {
    format!("{v:.16e}")
}

/// 7 significant digits for human-facing output.
fn human(v: f64) -> String {
    format!("{v:.6e}")
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Unsupported(_) => 2,
        Error::Accuracy { .. } | Error::Collision { .. } | Error::Pole(_) => 3,
        Error::WaveCase => 4,
    }
}

fn emit(out: &Option<String>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| format!("{path}: {e}")),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn init_threads() {
    let n = std::env::var("FRACGREEN_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(0);
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Moments(args) => cmd_moments(args),
    };
    match result {
        Ok(code) => code,
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<ExitCode, (String, u8)>;

fn parse_triplet(args: &TripletArgs) -> Result<FractionalTriplet, (String, u8)> {
    FractionalTriplet::new(args.alpha, args.beta, args.theta)
        .map_err(|e| (e.to_string(), exit_code_for(&e)))
}

fn flags_of(r: &EvaluationResult) -> Vec<&'static str> {
    let mut f = Vec::new();
    if r.non_probabilistic {
        f.push("non-probabilistic");
    }
    if r.reduced_confidence {
        f.push("reduced-confidence");
    }
    f
}

fn cmd_eval(args: EvalArgs) -> CmdResult {
    let t = parse_triplet(&args.triplet)?;
    let r = green(&t, args.x, args.t, args.tol)
        .map_err(|e| (e.to_string(), exit_code_for(&e)))?;
    let content = match args.format {
        Format::Human => {
            let flags = flags_of(&r);
            let suffix = if flags.is_empty() {
                String::new()
            } else {
                format!("  [{}]", flags.join(", "))
            };
            format!(
                "value {}  abs_err {}  method {}{}\n",
                human(r.value),
                human(r.abs_error_estimate),
                r.method.tag(),
                suffix
            )
        }
        Format::Csv => format!(
            "value,abs_err,method\n{},{},{}\n",
            machine(r.value),
            machine(r.abs_error_estimate),
            r.method.tag()
        ),
        Format::Json => {
            let obj = serde_json::json!({
                "value": r.value,
                "abs_err": r.abs_error_estimate,
                "method": r.method.tag(),
                "flags": flags_of(&r),
            });
            format!("{obj}\n")
        }
    };
    emit(&args.out, &content).map_err(|m| (m, 2))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> CmdResult {
    let t = parse_triplet(&args.triplet)?;
    if !(args.x_min < args.x_max) {
        return Err((format!("--x-min {} must be < --x-max {}", args.x_min, args.x_max), 2));
    }
    if args.n < 2 {
        return Err((format!("--n {} must be >= 2", args.n), 2));
    }
    if args.format == Format::Human {
        return Err(("table output must be csv or json".into(), 2));
    }
    let step = (args.x_max - args.x_min) / (args.n - 1) as f64;
    let xs: Vec<f64> = (0..args.n).map(|i| args.x_min + i as f64 * step).collect();
    // rows evaluated in parallel, emitted in x-ascending order; any error
    // aborts without partial output
    let rows: Result<Vec<(f64, EvaluationResult)>, Error> = xs
        .par_iter()
        .map(|&x| green(&t, x, args.t, args.tol).map(|r| (x, r)))
        .collect();
    let rows = rows.map_err(|e| (e.to_string(), exit_code_for(&e)))?;
    let content = match args.format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str(&format!("# fracgreen v{VERSION}\n"));
            s.push_str(&format!(
                "# alpha={} beta={} theta={} t={} tol={}\n",
                machine(args.triplet.alpha),
                machine(args.triplet.beta),
                machine(args.triplet.theta),
                machine(args.t),
                machine(args.tol)
            ));
            s.push_str("x,value,abs_err,method\n");
            for (x, r) in &rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    machine(*x),
                    machine(r.value),
                    machine(r.abs_error_estimate),
                    r.method.tag()
                ));
            }
            s
        }
        Format::Json => {
            let obj = serde_json::json!({
                "meta": {
                    "alpha": args.triplet.alpha,
                    "beta": args.triplet.beta,
                    "theta": args.triplet.theta,
                    "t": args.t,
                    "tol": args.tol,
                    "version": VERSION,
                },
                "rows": rows
                    .iter()
                    .map(|(x, r)| {
                        serde_json::json!([x, r.value, r.abs_error_estimate, r.method.tag()])
                    })
                    .collect::<Vec<_>>(),
            });
            format!("{obj}\n")
        }
        Format::Human => unreachable!(),
    };
    emit(&args.out, &content).map_err(|m| (m, 2))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let suite = Suite::parse(&args.suite)
        .ok_or_else(|| (format!("unknown suite '{}'", args.suite), 2))?;
    let checks = run_suite(suite);
    let mut s = String::new();
    let mut passed = 0usize;
    for c in &checks {
        if c.passed {
            passed += 1;
        }
        s.push_str(&format!(
            "{} {}  deviation {}  tol {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            human(c.deviation),
            human(c.tolerance)
        ));
    }
    s.push_str(&format!(
        "# summary suite={} checks={} passed={} failed={}\n",
        suite.name(),
        checks.len(),
        passed,
        checks.len() - passed
    ));
    emit(&args.out, &s).map_err(|m| (m, 2))?;
    Ok(if passed == checks.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_moments(args: MomentArgs) -> CmdResult {
    let t = parse_triplet(&args.triplet)?;
    let m = moment(&t, args.delta).map_err(|e| (e.to_string(), exit_code_for(&e)))?;
    let mut s = format!("moment {}\n", machine(m));
    if args.check {
        let q = quadrature_moment(&t, args.delta, 1e-7)
            .map_err(|e| (e.to_string(), exit_code_for(&e)))?;
        s.push_str(&format!(
            "quadrature {}\ndifference {}\n",
            machine(q),
            human((m - q).abs())
        ));
    }
    emit(&args.out, &s).map_err(|m| (m, 2))?;
    Ok(ExitCode::SUCCESS)
}
