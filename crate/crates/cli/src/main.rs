mod funcspec;
mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use fbp_core::{
    convergence_study, expansion_coefficients, functional_norm, gram_matrix, lacunary_witness, make_sequence,
    recommended_sample_count, Error, NormSpec, PointSequence, WitnessSupport, DEFAULT_SAMPLES,
};
use serde_json::json;

use crate::funcspec::FuncSpec;
use crate::output::{emit, to_json, RunMeta};

#[derive(Parser)]
#[command(name = "fbp", version, about = "Expansions in finite Blaschke products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion coefficients and remainder norms as JSON.
    Expand(ExpandArgs),
    /// Remainder norms per term as CSV.
    Convergence(ConvergenceArgs),
    /// Diagnostics for the orthonormal system built from the sequence.
    Tmw(TmwArgs),
    /// Runs the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    /// Sequence spec: harmonic[:step] | harmonic-shifted | geometric:q | explicit:[z1,z2,...]
    #[arg(long, default_value = "harmonic-shifted")]
    seq: String,
    /// Grid size (power of two, at least 16).
    #[arg(long, env = "BLASCHKE_SAMPLES")]
    samples: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// poly:a0,a1,... | kernel:z | blaschke:z1;z2;... | ratgeo:c | file:<path>
    #[arg(long)]
    func: String,
    #[arg(long, default_value_t = 32)]
    nterms: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    expand: ExpandArgs,
    /// Comma-separated norms: sup | hardy:p | bergman:p:alpha[:nodes]
    #[arg(long, default_value = "sup")]
    norms: String,
    /// Adds the bound column for kernel functions.
    #[arg(long, value_parser = ["kernel"])]
    bound: Option<String>,
}

#[derive(Args)]
struct TmwArgs {
    #[command(subcommand)]
    command: TmwCommand,
}

#[derive(Subcommand)]
enum TmwCommand {
    /// Gram matrix of the first K elements.
    Gram {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Norm of the N-th evaluation functional, by quadrature and closed form.
    Functional {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Functional values on a truncated lacunary function.
    Witness {
        /// pow2 or a comma-separated index list.
        #[arg(long, default_value = "pow2")]
        support: String,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 0.25)]
        exponent: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct SelftestArgs {
    /// Only run invariants whose name contains this string.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, env = "BLASCHKE_SAMPLES")]
    samples: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("{flag}: {e}"),
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("write failed: {e}"),
    }
}

fn sequence(spec: &str, count: usize) -> Result<PointSequence, Failure> {
    make_sequence(spec, count).map_err(|e| usage("--seq", e))
}

fn finish(command: &str, common: &Common, sample_count: usize, contents: &str, start: Instant) -> Result<(), Failure> {
    let meta = RunMeta {
        tool: "fbp",
        version: env!("CARGO_PKG_VERSION"),
        command,
        arguments: std::env::args().skip(1).collect(),
        sample_count,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        unix_time: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
    };
    emit(common.out.as_deref(), contents, &meta).map_err(io_failure)
}

fn expand(args: &ExpandArgs, start: Instant) -> Result<(), Failure> {
    let spec: FuncSpec = args.func.parse().map_err(Failure::from)?;
    let m = args.common.samples.unwrap_or(DEFAULT_SAMPLES);
    let f = spec.build(m)?;
    let seq = sequence(&args.common.seq, args.nterms)?;
    let result = expansion_coefficients(&f, &seq, args.nterms)?.with_description(&args.func);
    let text = to_json(&result).map_err(io_failure)?;
    finish("expand", &args.common, f.sample_count(), &text, start)
}

fn convergence(args: &ConvergenceArgs, start: Instant) -> Result<(), Failure> {
    let e = &args.expand;
    let spec: FuncSpec = e.func.parse().map_err(Failure::from)?;
    let norms: Vec<NormSpec> = args
        .norms
        .split(',')
        .map(|s| s.parse())
        .collect::<Result<_, Error>>()
        .map_err(|err| usage("--norms", err))?;
    let alpha = match args.bound {
        Some(_) => Some(
            spec.kernel_pole()
                .ok_or_else(|| usage("--bound", "the kernel bound needs --func kernel:<z>"))?,
        ),
        None => None,
    };
    let m = e.common.samples.unwrap_or(DEFAULT_SAMPLES);
    let f = spec.build(m)?;
    let seq = sequence(&e.common.seq, e.nterms)?;
    let mut table = convergence_study(&f, &seq, e.nterms, &norms)?;
    if let Some(alpha) = alpha {
        table = table.with_kernel_bound(&seq, alpha)?;
    }
    finish("convergence", &e.common, f.sample_count(), &table.to_csv(), start)
}

fn tmw(args: &TmwArgs, start: Instant) -> Result<(), Failure> {
    match &args.command {
        TmwCommand::Gram { k, common } => {
            let m = common.samples.unwrap_or(DEFAULT_SAMPLES);
            let seq = sequence(&common.seq, *k)?;
            let g = gram_matrix(&seq, *k, m)?;
            let report = json!({
                "size": g.size,
                "sample_count": g.sample_count,
                "max_identity_deviation": g.max_identity_deviation(),
                "max_off_diagonal": g.max_off_diagonal(),
                "entries": g.entries,
            });
            finish("tmw gram", common, m, &to_json(&report).map_err(io_failure)?, start)
        }
        TmwCommand::Functional { n, common } => {
            let m = common.samples.unwrap_or(DEFAULT_SAMPLES);
            let seq = sequence(&common.seq, *n)?;
            let f = functional_norm(&seq, *n, m)?;
            finish("tmw functional", common, m, &to_json(&f).map_err(io_failure)?, start)
        }
        TmwCommand::Witness {
            support,
            kmax,
            exponent,
            common,
        } => {
            let support: WitnessSupport = support.parse().map_err(|e: Error| usage("--support", e))?;
            let seq = sequence(&common.seq, *kmax)?;
            let m = match common.samples {
                Some(m) => m,
                None => recommended_sample_count(&seq, *kmax, DEFAULT_SAMPLES)?,
            };
            let w = lacunary_witness(&seq, *kmax, *exponent, &support, m)?;
            let mut report = serde_json::to_value(&w).map_err(io_failure)?;
            report["sample_count"] = json!(m);
            report["max_relative_deviation"] = json!(w.max_relative_deviation());
            report["strictly_increasing"] = json!(w.strictly_increasing());
            finish("tmw witness", common, m, &to_json(&report).map_err(io_failure)?, start)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Expand(args) => expand(&args, start),
        Command::Convergence(args) => convergence(&args, start),
        Command::Tmw(args) => tmw(&args, start),
        Command::Selftest(args) => {
            let m = args.samples.unwrap_or(DEFAULT_SAMPLES);
            match selftest::run(m, args.filter.as_deref()) {
                Ok(()) => Ok(()),
                Err(name) => Err(Failure {
                    code: 3,
                    message: format!("invariant `{name}` failed"),
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fbp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
