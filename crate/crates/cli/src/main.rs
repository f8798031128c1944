mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use cvop::sweep::{
    evaluate, evaluate_asymmetric, find_advantage_boundary, find_crossover, find_threshold,
    format_g, run_figure_sweep, FigureId, Metric, RChoice, Strategy, ThresholdQuery,
};
use cvop::validation::run_validation;
use cvop::{build_operated_state, par, LocalOp, Mode, SqueezeParam, SuperpositionOp};

use config::{ConfigFlags, RunConfig};
use error::CliError;

/// Entanglement, EPR correlation and teleportation fidelity of two-mode
/// squeezed states after coherent photon subtraction/addition.
#[derive(Debug, Parser)]
#[command(name = "cvop", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the data behind one figure to `<out-dir>/fig<ID>.csv`
    Figure {
        /// 1a, 1b, 2, 3a, 3b, 4, 5, 6a or 6b
        id: FigureId,
    },
    /// Print one metric value
    Eval {
        /// entropy, epr or fidelity
        metric: Metric,
        /// Squeezing parameter, s >= 0
        #[arg(long)]
        s: f64,
        /// Required for coherent_A and coherent_AB
        #[arg(long)]
        r: Option<f64>,
        /// Separate r on mode B (coherent_AB only); --r then applies to mode A
        #[arg(long)]
        r_b: Option<f64>,
        /// tmss, sub_A, sub_AB, addsub_AB, coherent_A or coherent_AB
        #[arg(long, default_value = "coherent_AB")]
        strategy: Strategy,
        /// Coherent input amplitude for fidelity, as `re` or `re,im`
        #[arg(long, value_name = "RE[,IM]", value_parser = parse_complex)]
        input_amplitude: Option<Complex64>,
        /// Also write the normalized Fock amplitudes to this CSV file
        #[arg(long, value_name = "FILE")]
        dump_state: Option<std::path::PathBuf>,
    },
    /// Squeezing at which a metric reaches a target value
    Threshold {
        #[arg(long)]
        metric: Metric,
        #[arg(long, default_value = "coherent_AB")]
        strategy: Strategy,
        /// Defaults to 2 for epr and 0.5 for fidelity
        #[arg(long)]
        target: Option<f64>,
        /// Fixed r; the optimal r is used when absent
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, value_name = "LO,HI", value_parser = parse_pair, default_value = "0,1")]
        bracket: (f64, f64),
    },
    /// Squeezing at which two optimized strategies cross, or where the
    /// coherent operation stops beating subtraction and addition
    Crossover {
        #[arg(long)]
        metric: Metric,
        #[arg(long, default_value = "coherent_AB")]
        strategy: Strategy,
        #[arg(
            long,
            required_unless_present = "advantage",
            conflicts_with = "advantage"
        )]
        versus: Option<Strategy>,
        #[arg(long)]
        advantage: bool,
        #[arg(long, value_name = "LO,HI", value_parser = parse_pair)]
        bracket: Option<(f64, f64)>,
    },
    /// Run every cross-check and analytic oracle
    Validate,
}

fn parse_pair(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text.split_once(',').ok_or("expected LO,HI")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    match text.split_once(',') {
        Some(_) => parse_pair(text).map(|(re, im)| Complex64::new(re, im)),
        None => text
            .trim()
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.config)?;
    par::with_workers(cfg.workers, || dispatch(cli.command, &cfg))?
}

fn dispatch(command: Command, cfg: &RunConfig) -> Result<(), CliError> {
    let mut ecfg = cfg.eval_config();
    match command {
        Command::Figure { id } => {
            let data = run_figure_sweep(id, &cfg.grid, &ecfg)?;
            let path = output::write_atomic(&cfg.out_dir, &format!("fig{id}.csv"), &data.to_csv())?;
            println!("{}", path.display());
        }
        Command::Eval {
            metric,
            s,
            r,
            r_b,
            strategy,
            input_amplitude,
            dump_state,
        } => {
            if let Some(gamma) = input_amplitude {
                ecfg.fidelity.input_amplitude = gamma;
            }
            let value = match r_b {
                Some(r_b) => {
                    if strategy != Strategy::CoherentAB {
                        return Err(CliError::usage("--r-b needs --strategy coherent_AB"));
                    }
                    let r_a = r.ok_or_else(|| CliError::usage("--r-b needs --r"))?;
                    evaluate_asymmetric(metric, s, r_a, r_b, &ecfg)?
                }
                None => evaluate(metric, strategy, s, r, &ecfg)?,
            };
            if let Some(path) = dump_state {
                let ops = match (r, r_b) {
                    (Some(r_a), Some(r_b)) => vec![
                        LocalOp::Superposition(Mode::B, SuperpositionOp::from_r(r_b)?),
                        LocalOp::Superposition(Mode::A, SuperpositionOp::from_r(r_a)?),
                    ],
                    _ => strategy.ops(r)?,
                };
                let state = build_operated_state(SqueezeParam::new(s)?, &ops, &ecfg.policy)?;
                let (dir, name) = split_path(&path)?;
                output::write_atomic(dir, name, &output::state_csv(&state))?;
            }
            println!("{}", format_g(value));
        }
        Command::Threshold {
            metric,
            strategy,
            target,
            r,
            bracket,
        } => {
            let target = match (target, metric) {
                (Some(t), _) => t,
                (None, Metric::Epr) => 2.0,
                (None, Metric::Fidelity) => 0.5,
                (None, Metric::Entropy) => {
                    return Err(CliError::usage("entropy thresholds need --target"))
                }
            };
            let r = match (strategy.has_r(), r) {
                (true, Some(r)) => RChoice::Fixed(r),
                (true, None) => RChoice::Optimize,
                (false, None) => RChoice::Absent,
                (false, Some(_)) => {
                    return Err(CliError::usage(format!("{strategy} takes no --r")))
                }
            };
            let q = ThresholdQuery {
                metric,
                strategy,
                target,
                r,
                bracket,
            };
            println!("{}", format_g(find_threshold(&q, &ecfg)?));
        }
        Command::Crossover {
            metric,
            strategy,
            versus,
            advantage,
            bracket,
        } => {
            let s = if advantage {
                find_advantage_boundary(metric, strategy, bracket.unwrap_or((0.01, 1.0)), &ecfg)?
            } else {
                let versus = versus.expect("clap enforces --versus");
                find_crossover(
                    metric,
                    strategy,
                    versus,
                    bracket.unwrap_or((0.01, 1.0)),
                    &ecfg,
                )?
            };
            println!("{}", format_g(s));
        }
        Command::Validate => {
            let checks = run_validation(&ecfg)?;
            let mut failed = Vec::new();
            for c in &checks {
                println!(
                    "{} {}: discrepancy {:.3e} (tolerance {:.1e})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.discrepancy,
                    c.tolerance
                );
                if !c.passed {
                    failed.push(c.name.to_string());
                }
            }
            if !failed.is_empty() {
                return Err(CliError::Validation(failed));
            }
        }
    }
    Ok(())
}

fn split_path(path: &std::path::Path) -> Result<(&std::path::Path, &str), CliError> {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| CliError::usage(format!("bad file name {}", path.display())))?;
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    Ok((dir.unwrap_or(std::path::Path::new(".")), name))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
