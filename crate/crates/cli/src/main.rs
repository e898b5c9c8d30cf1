mod cache;
mod invfile;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use coxsaito::coxeter::{build_datum, builtin_invariants, BasicInvariants, CoxeterDatum, GroupType};
use coxsaito::exactalg::Scalar;
use coxsaito::saito::{build_context, Perturbation, SaitoContext};
use coxsaito::verify::{run_suites, Bounds, Suite};

use cache::DiskCache;
use invfile::ingest_invariants;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "coxsaito",
    version,
    about = "Exact verification of Saito flat-structure identities for finite Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites and report every result.
    Verify(VerifyArgs),
    /// Print the basis xi^(m)_1..xi^(m)_l with degrees.
    Basis(BasisArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Group family: A, B, D or I2.
    #[arg(long = "type", value_name = "TYPE", required_unless_present = "invariants")]
    group_type: Option<String>,
    /// Rank for A, B and D.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    rank: Option<u32>,
    /// Order parameter for I2(m).
    #[arg(long = "m", value_name = "M", value_parser = clap::value_parser!(u32).range(3..))]
    dihedral_m: Option<u32>,
    /// Invariants file describing a custom group and its basic invariants.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["group_type", "rank", "dihedral_m"])]
    invariants: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated suites (context, bk, christoffel, basis, hodge, flat) or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    kmax: u64,
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..))]
    mmax: u32,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Add a rational to one entry before checking (one-based indices):
    /// `bk:K:I:J:DELTA`, `metric:I:J:DELTA` or `xi:M:I:J:DELTA`.
    #[arg(long, value_name = "SPEC")]
    perturb: Vec<String>,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Contact order m of the basis.
    #[arg(short = 'm', long = "order", value_name = "M")]
    order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl ToString) -> Self {
        Failure { code: EXIT_CONFIG, message: message.to_string() }
    }

    fn internal(message: impl ToString) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.to_string() }
    }
}

fn resolve_group(args: &GroupArgs) -> Result<(CoxeterDatum, BasicInvariants, String), Failure> {
    if let Some(path) = &args.invariants {
        let (d, inv) = ingest_invariants(path).map_err(Failure::config)?;
        return Ok((d, inv, path.display().to_string()));
    }
    let label = args.group_type.as_deref().unwrap_or_default();
    let t =
        GroupType::parse(label).ok_or_else(|| Failure::config(format!("unknown group type `{label}`")))?;
    let n = match t {
        GroupType::I2(_) => args.dihedral_m.ok_or_else(|| Failure::config("type I2 needs --m"))?,
        _ => args.rank.ok_or_else(|| Failure::config(format!("type {label} needs --rank")))?,
    };
    let t = match t {
        GroupType::I2(_) => GroupType::I2(n),
        other => other,
    };
    let d = build_datum(&t, n).map_err(Failure::config)?;
    let inv = builtin_invariants(&d).map_err(Failure::config)?;
    Ok((d, inv, "builtin".into()))
}

fn context(args: &GroupArgs) -> Result<(SaitoContext, String), Failure> {
    let (d, inv, id) = resolve_group(args)?;
    let ctx = build_context(&d, &inv).map_err(Failure::internal)?;
    Ok((ctx, id))
}

fn parse_perturbation(spec: &str, ctx: &SaitoContext) -> Result<Perturbation, Failure> {
    let bad = || Failure::config(format!("bad perturbation `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    let (kind, rest) = parts.split_first().ok_or_else(bad)?;
    let (delta, idx) = rest.split_last().ok_or_else(bad)?;
    let delta: BigRational = delta.parse().map_err(|_| bad())?;
    let delta = Scalar::from_rational(ctx.datum().field(), delta);
    let idx: Vec<usize> = idx
        .iter()
        .map(|s| s.parse::<usize>().ok().filter(|&n| n >= 1))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let l = ctx.rank();
    let entry = |i: usize, j: usize| if i <= l && j <= l { Ok((i - 1, j - 1)) } else { Err(bad()) };
    match (*kind, idx.as_slice()) {
        ("bk", &[k, i, j]) => {
            let (i, j) = entry(i, j)?;
            Ok(Perturbation::BkEntry { k, i, j, delta })
        }
        ("metric", &[i, j]) => {
            let (i, j) = entry(i, j)?;
            Ok(Perturbation::MetricEntry { i, j, delta })
        }
        ("xi", &[m, i, j]) => {
            let (i, j) = entry(i, j)?;
            let m = u32::try_from(m).map_err(|_| bad())?;
            Ok(Perturbation::XiCoefficient { m, i, j, delta })
        }
        _ => Err(bad()),
    }
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, Failure> {
    if names.iter().any(|s| s == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    names
        .iter()
        .map(|s| Suite::parse(s.trim()).ok_or_else(|| Failure::config(format!("unknown suite `{s}`"))))
        .collect()
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let suites = parse_suites(&args.suite)?;
    let (mut ctx, id) = context(&args.group)?;
    for spec in &args.perturb {
        let p = parse_perturbation(spec, &ctx)?;
        ctx = ctx.with_perturbation(p).map_err(Failure::internal)?;
    }
    let bounds = Bounds { k_max: args.kmax as usize, m_max: args.mmax, p_max: args.pmax as usize };
    let disk = std::env::var_os("COXSAITO_CACHE_DIR")
        .filter(|_| args.perturb.is_empty())
        .map(|dir| DiskCache::new(dir.as_ref(), &ctx));
    if let Some(c) = &disk {
        c.load(&ctx);
    }
    let report = run_suites(&ctx, &suites, bounds, &id);
    if let Some(c) = &disk {
        if let Err(e) = c.store(&ctx) {
            eprintln!("warning: could not write {}: {e}", c.path().display());
        }
    }
    let field = ctx.datum().field();
    let text = match args.format {
        Format::Text => report::report_text(&report, field),
        Format::Json => report::report_json(&report, field),
    };
    emit(&text, args.out.as_ref())?;
    Ok(if report.has_internal_error() {
        EXIT_INTERNAL
    } else if report.all_passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn basis(args: &BasisArgs) -> Result<u8, Failure> {
    let (ctx, _) = context(&args.group)?;
    let xi = ctx.xi_basis(args.order).map_err(Failure::internal)?;
    let label = ctx.datum().label();
    let field = ctx.datum().field();
    let text = match args.format {
        Format::Text => report::basis_text(&label, field, &xi),
        Format::Json => report::basis_json(&label, field, &xi),
    };
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Basis(a) => basis(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
