//! `cyclodet`: verify determinant identities for `A_k(t)` over finite fields.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 on a usage
//! error. Log verbosity comes from `CYCLODET_LOG`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclodet::arith::prime_power;
use cyclodet::field::{FieldCtx, DEFAULT_MAX_ORDER};
use cyclodet::sweep::{self, Format, KFilter, SweepConfig, CSV_HEADER};
use cyclodet::{char_sum_power, curve_count, jacobi_sum, selftest, verifier, Branch, Error};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "cyclodet", version, about = "Exact checks of det A_k(t) over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one (q, k) pair
    Verify(VerifyArgs),
    /// Verify every admissible (q, k) in a range
    Sweep(SweepArgs),
    /// Print the Jacobi sum J(χ^i, χ^j) as a cyclotomic integer
    Jacobi(JacobiArgs),
    /// Count points on y^2 = x^k + sign, with one point at infinity
    CurveCount(CurveArgs),
    /// Run the randomized property suite
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field order; must be an odd prime power
    #[arg(long, conflicts_with_all = ["p", "s"])]
    q: Option<u64>,
    /// Characteristic, used with --s
    #[arg(long, requires = "s")]
    p: Option<u64>,
    /// Extension degree, used with --p
    #[arg(long, requires = "p")]
    s: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Include wall-clock time in the output
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    q_min: u64,
    #[arg(long, default_value_t = 100)]
    q_max: u64,
    /// "all" or a comma-separated list of k values
    #[arg(long, default_value = "all")]
    k: String,
    /// Comma-separated subset of i, ii, iii, unsupported
    #[arg(long, default_value = "i,ii,iii")]
    branches: String,
    /// Worker threads; defaults to the number of CPUs
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also check generator independence with this many random orderings
    #[arg(long)]
    independence: Option<usize>,
    /// Write reports here instead of stdout
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct JacobiArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    #[arg(long, allow_hyphen_values = true)]
    j: i64,
    /// Order of the target root of unity; defaults to q - 1
    #[arg(long)]
    order: Option<u64>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    k: u64,
    /// +1 or -1
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    sign: i8,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("expected +1 or -1, got {s}")),
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotOddPrime(_)
            | Error::ZeroDegree
            | Error::FieldTooLarge { .. }
            | Error::NotPrimePower(_)
            | Error::EvenOrder(_)
            | Error::KDoesNotDivide { .. }
            | Error::CharacterOrder { .. }
            | Error::RootOrder { .. }
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn field(args: &FieldArgs) -> Result<FieldCtx, Failure> {
    let (p, s) = match (args.q, args.p, args.s) {
        (Some(q), _, _) => {
            if q % 2 == 0 {
                return Err(Error::EvenOrder(q).into());
            }
            prime_power(q).ok_or(Error::NotPrimePower(q))?
        }
        (None, Some(p), Some(s)) => (p, s),
        _ => return Err(Failure::Usage("give --q or both --p and --s".into())),
    };
    Ok(FieldCtx::new(p, s, DEFAULT_MAX_ORDER)?)
}

fn check_k(ctx: &FieldCtx, k: u64) -> Result<(), Failure> {
    if k == 0 || (ctx.q() - 1) % k != 0 {
        return Err(Error::KDoesNotDivide { k, q: ctx.q() }.into());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let ctx = field(&args.field)?;
    check_k(&ctx, args.k)?;
    let report = verifier::verify(&ctx, args.k)?;
    if args.format == Format::Csv {
        println!("{CSV_HEADER}");
    }
    println!("{}", sweep::render(&report, args.format, args.timings));
    Ok(report.passed())
}

fn parse_branches(s: &str) -> Result<Vec<Branch>, Failure> {
    s.split(',')
        .map(|b| match b.trim() {
            "i" | "part_i" => Ok(Branch::PartI),
            "ii" | "part_ii" => Ok(Branch::PartII),
            "iii" | "part_iii" => Ok(Branch::PartIII),
            "unsupported" => Ok(Branch::Unsupported),
            other => Err(Failure::Usage(format!("unknown branch {other:?}"))),
        })
        .collect()
}

fn parse_k(s: &str) -> Result<KFilter, Failure> {
    if s == "all" {
        return Ok(KFilter::All);
    }
    s.split(',')
        .map(|k| {
            k.trim()
                .parse::<u64>()
                .map_err(|e| Failure::Usage(format!("bad k {k:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(KFilter::List)
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    let cfg = SweepConfig {
        q_min: args.q_min,
        q_max: args.q_max,
        k_filter: parse_k(&args.k)?,
        branches: parse_branches(&args.branches)?,
        jobs: args
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        seed: args.seed,
        independence: args.independence,
        max_order: DEFAULT_MAX_ORDER,
    };
    cfg.validate()?;
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if args.format == Format::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    let mut write_err = None;
    let summary = sweep::run_sweep(&cfg, |r| {
        if write_err.is_none() {
            if let Err(e) = writeln!(out, "{}", sweep::render(r, args.format, args.timings)) {
                write_err = Some(e);
            }
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    out.flush()?;
    eprintln!("{}", sweep::render_summary(&summary));
    Ok(summary.failed == 0)
}

fn cmd_jacobi(args: JacobiArgs) -> CmdResult {
    let ctx = field(&args.field)?;
    let order = args.order.unwrap_or(ctx.q() - 1);
    let j = jacobi_sum(&ctx, args.i, args.j, order)?;
    let norm = j.mul(&j.conj())?.as_integer();
    let out = json!({
        "q": ctx.q(),
        "i": args.i,
        "j": args.j,
        "order": order,
        "value": j,
        "norm": norm.map(|n| n.to_string()),
    });
    println!("{out}");
    Ok(true)
}

fn cmd_curve_count(args: CurveArgs) -> CmdResult {
    let ctx = field(&args.field)?;
    let c = curve_count(&ctx, args.k, args.sign)?;
    let sum = char_sum_power(&ctx, args.k, args.sign)?;
    let out = json!({
        "q": ctx.q(),
        "k": c.k,
        "sign": c.sign,
        "points": c.points,
        "trace": c.trace,
        "char_sum": sum,
        "within_weil_bound": c.within_weil_bound(ctx.q()),
    });
    println!("{out}");
    Ok(true)
}

fn cmd_selftest(args: SelftestArgs) -> CmdResult {
    let report = selftest::run(args.seed);
    print!("{}", report.render());
    Ok(report.passed())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CYCLODET_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Jacobi(a) => cmd_jacobi(a),
        Command::CurveCount(a) => cmd_curve_count(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
