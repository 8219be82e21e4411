//! `meanscale`: evaluate, invert and scan scales of quasi-arithmetic means.
//!
//! Exit codes: 0 success, 2 invalid input or evaluation error, 3 target too
//! close to an endpoint for the solver, 4 scale monotonicity violation,
//! 5 dual-mean residual above 1e-8.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod format;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meanscale_core::{
    check_scale, parse, solve_parameter, ConvexPotential, DualMeanPair, Error, Generator, Interval,
    ScaleDirection, ScaleFamily,
};

use crate::format::g17;

const DUAL_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "meanscale",
    version,
    about = "Scales of quasi-arithmetic means and their midpoints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the mean m_alpha(x, y) of one family member.
    Eval(EvalArgs),
    /// Find the parameter whose mean of (a, b) equals c.
    Solve(SolveArgs),
    /// Write `alpha,mean` CSV rows over a parameter range.
    Scan(ScanArgs),
    /// Check that the family is a strictly monotone scale on (a, b).
    CheckScale(CheckArgs),
    /// Compare primal and dual centroids of a convex potential.
    Dual(DualArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Power,
    Exponential,
    Radical,
    Custom,
}

/// Family selection shared by the scale commands.
#[derive(Args)]
struct FamilyArgs {
    /// Scale family. Radical means are addressed by t = ln(alpha) in `scan`,
    /// `solve` and `check-scale`; `eval` takes alpha itself.
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Generator s(u) for the custom family, e.g. "exp(u)". Member alpha
    /// uses s_alpha(u) = s(alpha*u); alpha = 0 is the arithmetic mean.
    #[arg(long)]
    expr: Option<String>,
    /// Lower end of the custom generator's domain.
    #[arg(long, default_value_t = f64::NEG_INFINITY, allow_hyphen_values = true)]
    domain_min: f64,
    /// Upper end of the custom generator's domain.
    #[arg(long, default_value_t = f64::INFINITY, allow_hyphen_values = true)]
    domain_max: f64,
}

impl FamilyArgs {
    fn family(&self) -> Result<ScaleFamily, Failure> {
        Ok(match self.family {
            FamilyName::Power => ScaleFamily::power(),
            FamilyName::Exponential => ScaleFamily::exponential(),
            FamilyName::Radical => ScaleFamily::radical(),
            FamilyName::Custom => {
                let text = self
                    .expr
                    .as_deref()
                    .ok_or_else(|| Failure::input("--family custom requires --expr"))?;
                let expr = parse(text).map_err(Error::from)?;
                let domain = Interval::new(self.domain_min, self.domain_max);
                ScaleFamily::custom(Generator::custom(expr, domain)?)
            }
        })
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    y: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SolveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    /// Accepted absolute residual |m_alpha(a, b) - c|.
    #[arg(long, default_value = "1e-12")]
    tol: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    alpha_min: f64,
    #[arg(long)]
    alpha_max: f64,
    #[arg(long)]
    steps: usize,
    /// Log-uniform spacing (requires 0 < alpha-min).
    #[arg(long)]
    log: bool,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CheckArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PotentialName {
    Exp,
    Quadratic,
    Custom,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct DualArgs {
    #[arg(long, value_enum)]
    potential: PotentialName,
    /// Convex potential f(u) for `--potential custom`.
    #[arg(long)]
    expr: Option<String>,
    /// Base point fixing the arc-length constants of a custom potential.
    #[arg(long, default_value_t = 0.0)]
    base: f64,
    #[arg(long, default_value_t = f64::NEG_INFINITY, allow_hyphen_values = true)]
    domain_min: f64,
    #[arg(long, default_value_t = f64::INFINITY, allow_hyphen_values = true)]
    domain_max: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
}

/// A failed command: diagnostic for standard error and the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BracketExhausted { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::input(format!("i/o error: {e}"))
    }
}

fn eval(args: &EvalArgs, out: &mut impl Write) -> Result<(), Failure> {
    let fam = args.family.family()?;
    let coord = fam.from_alpha(args.alpha)?;
    let m = fam.mean(coord, args.x, args.y)?;
    writeln!(out, "{}", g17(m))?;
    Ok(())
}

fn solve(args: &SolveArgs, out: &mut impl Write) -> Result<(), Failure> {
    let fam = args.family.family()?;
    let r = solve_parameter(&fam, args.a, args.b, args.c, args.tol)?;
    writeln!(out, "alpha: {}", g17(r.alpha))?;
    writeln!(out, "coordinate: {}", g17(r.coordinate))?;
    writeln!(out, "mean: {}", g17(r.achieved_mean))?;
    writeln!(out, "residual: {}", g17(r.residual))?;
    writeln!(out, "iterations: {}", r.iterations)?;
    writeln!(out, "bracket: {},{}", g17(r.bracket.0), g17(r.bracket.1))?;
    Ok(())
}

/// Scan coordinates; the last one is `max` exactly.
fn scan_grid(min: f64, max: f64, steps: usize, log: bool) -> Result<Vec<f64>, Failure> {
    if !(min < max) {
        return Err(Failure::input("scan needs alpha-min < alpha-max"));
    }
    if steps < 2 {
        return Err(Failure::input("scan needs at least 2 steps"));
    }
    if log && !(min > 0.0) {
        return Err(Failure::input("--log needs alpha-min > 0"));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let s = i as f64 / last;
            match (i, log) {
                (0, _) => min,
                (i, _) if i == steps - 1 => max,
                (_, true) => (min.ln() + s * (max.ln() - min.ln())).exp(),
                (_, false) => min + s * (max - min),
            }
        })
        .collect())
}

fn scan(args: &ScanArgs, stdout: &mut impl Write) -> Result<(), Failure> {
    let fam = args.family.family()?;
    let grid = scan_grid(args.alpha_min, args.alpha_max, args.steps, args.log)?;
    let mut rows = String::from("alpha,mean\n");
    for alpha in grid {
        let m = fam.mean(alpha, args.a, args.b)?;
        rows.push_str(&format!("{},{}\n", g17(alpha), g17(m)));
    }
    match &args.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(rows.as_bytes())?;
            w.flush()?;
        }
        None => stdout.write_all(rows.as_bytes())?,
    }
    Ok(())
}

fn check(args: &CheckArgs, out: &mut impl Write) -> Result<(), Failure> {
    let fam = args.family.family()?;
    let report = check_scale(&fam, args.a, args.b, args.samples)?;
    let observed = report
        .observed
        .map_or("Flat".to_string(), |d| d.to_string());
    writeln!(out, "{observed}")?;
    writeln!(
        out,
        "range: {},{}",
        g17(report.range.0),
        g17(report.range.1)
    )?;
    if let Some((c0, c1)) = report.violation {
        writeln!(out, "violation: {},{}", g17(c0), g17(c1))?;
        let declared = fam
            .direction()
            .map_or("a scale".into(), |d: ScaleDirection| d.to_string());
        return Err(Failure {
            code: 4,
            message: format!("means are not strictly ordered as {declared} between {c0} and {c1}"),
        });
    }
    Ok(())
}

fn dual(args: &DualArgs, out: &mut impl Write) -> Result<(), Failure> {
    let pot = match args.potential {
        PotentialName::Exp => ConvexPotential::exponential(),
        PotentialName::Quadratic => ConvexPotential::quadratic(),
        PotentialName::Custom => {
            let text = args
                .expr
                .as_deref()
                .ok_or_else(|| Failure::input("--potential custom requires --expr"))?;
            let expr = parse(text).map_err(Error::from)?;
            ConvexPotential::from_expr(
                expr,
                Interval::new(args.domain_min, args.domain_max),
                args.base,
            )?
        }
    };
    let r = DualMeanPair::quadrature(&pot)?.check(args.a, args.b)?;
    writeln!(out, "theta_mean: {}", g17(r.theta_mean))?;
    writeln!(out, "eta_mean: {}", g17(r.eta_mean))?;
    writeln!(out, "transported_eta: {}", g17(r.transported_eta))?;
    writeln!(out, "arc_primal: {}", g17(r.arc_primal))?;
    writeln!(out, "arc_dual: {}", g17(r.arc_dual))?;
    writeln!(out, "eta_residual: {}", g17(r.eta_residual))?;
    writeln!(out, "arc_residual: {}", g17(r.arc_residual))?;
    if !r.consistent(DUAL_TOL) {
        return Err(Failure {
            code: 5,
            message: format!("dual means disagree beyond {DUAL_TOL:e}"),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Eval(a) => eval(a, &mut out),
        Command::Solve(a) => solve(a, &mut out),
        Command::Scan(a) => scan(a, &mut out),
        Command::CheckScale(a) => check(a, &mut out),
        Command::Dual(a) => dual(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("meanscale: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
