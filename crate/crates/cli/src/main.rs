use anyhow::Result;
use clap::{Parser, Subcommand};
use quiver_moduli_cli::commands::{self, RunOpts};
use quiver_moduli_cli::formats::ReportFile;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qmod", about = "Quiver moduli computations", version)]
struct Cli {
    /// RNG seed; identical inputs, seed and prime give byte-identical reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime modulus for sampled computations.
    #[arg(long, global = true, default_value_t = quiver_moduli::DEFAULT_PRIME)]
    prime: u64,
    /// Sampling rounds for Monte-Carlo quantities.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Enumeration cap for subdimension-vector searches.
    #[arg(long, global = true, default_value_t = quiver_moduli::stability::DEFAULT_ENUM_CAP)]
    cap: u64,
    /// Re-run sampled quantities over the rationals and record agreement.
    #[arg(long, global = true)]
    certify: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stability class, moduli dimension and Schur flag for a weight.
    Analyze {
        quiver: String,
        alpha: String,
        sigma: String,
    },
    /// Orthogonal roots of alpha up to a bound.
    Roots {
        quiver: String,
        alpha: String,
        #[arg(long)]
        bound: Option<String>,
    },
    /// Facets and extremal rays of the cone of numerically effective weights.
    Cone { quiver: String, alpha: String },
    /// Core subcone cut out by the orthogonal roots, with membership of beta.
    Core {
        quiver: String,
        alpha: String,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Perpendicular quiver of an exceptional root, with optional transport.
    Project {
        quiver: String,
        eps: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Blow-up invariants of the wall defined by an exceptional root.
    Blowup {
        quiver: String,
        alpha: String,
        eps: String,
        beta: String,
    },
    /// Divisor class transform under the projection at eps.
    Divisor {
        quiver: String,
        alpha: String,
        eps: String,
        beta: String,
    },
    /// Dimension of the semi-invariants of weight n*sigma, stabilized.
    SiDim {
        quiver: String,
        alpha: String,
        sigma: String,
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
    /// Regenerate the corpus quivers whose orientation is pinned by invariants.
    Reconstruct {
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Golden-value checks across a corpus directory.
    VerifyCorpus { dir: PathBuf },
}

fn run(cli: &Cli) -> Result<(ReportFile, i32)> {
    let o = RunOpts {
        seed: cli.seed,
        prime: cli.prime,
        trials: cli.trials,
        cap: cli.cap,
        certify: cli.certify,
    };
    match &cli.command {
        Cmd::Analyze { quiver, alpha, sigma } => {
            commands::run_analyze(&commands::load_quiver_file(quiver)?, alpha, sigma, &o)
        }
        Cmd::Roots { quiver, alpha, bound } => commands::run_roots(
            &commands::load_quiver_file(quiver)?,
            alpha,
            bound.as_deref(),
            &o,
        ),
        Cmd::Cone { quiver, alpha } => {
            commands::run_cone(&commands::load_quiver_file(quiver)?, alpha, &o)
        }
        Cmd::Core { quiver, alpha, beta } => commands::run_core(
            &commands::load_quiver_file(quiver)?,
            alpha,
            beta.as_deref(),
            &o,
        ),
        Cmd::Project { quiver, eps, alpha } => commands::run_project(
            &commands::load_quiver_file(quiver)?,
            eps,
            alpha.as_deref(),
            &o,
        ),
        Cmd::Blowup { quiver, alpha, eps, beta } => {
            commands::run_blowup(&commands::load_quiver_file(quiver)?, alpha, eps, beta, &o)
        }
        Cmd::Divisor { quiver, alpha, eps, beta } => {
            commands::run_divisor(&commands::load_quiver_file(quiver)?, alpha, eps, beta, &o)
        }
        Cmd::SiDim { quiver, alpha, sigma, n } => {
            commands::run_si_dim(&commands::load_quiver_file(quiver)?, alpha, sigma, *n, &o)
        }
        Cmd::Reconstruct { out_dir } => commands::run_reconstruct(out_dir.as_deref(), &o),
        Cmd::VerifyCorpus { dir } => commands::run_verify_corpus(dir, &o),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            let rendered = report.render();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{rendered}");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
