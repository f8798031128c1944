//! Run configuration: command-line flags layered over an optional `key=value` file.

use std::fs;
use std::path::{Path, PathBuf};

use cvop::sweep::{EvalConfig, GridSpec};
use cvop::teleport::FidelitySettings;
use cvop::TruncationPolicy;

use crate::error::CliError;

/// Flags shared by every subcommand. `None` means "not given on the command line".
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ConfigFlags {
    /// Initial Fock truncation per mode [default: 60]
    #[arg(long, global = true, value_name = "N")]
    pub n_max: Option<usize>,

    /// Largest tolerated tail mass before the truncation grows [default: 1e-12]
    #[arg(long, global = true, value_name = "TOL")]
    pub tail_tol: Option<f64>,

    /// Gauss-Hermite nodes per axis for fidelity integrals [default: 40]
    #[arg(long, global = true, value_name = "N")]
    pub quad_order: Option<usize>,

    /// Grid density as `N` (both axes) or `SxR`; figure defaults apply when absent
    #[arg(long, global = true, value_name = "N|SxR")]
    pub grid: Option<String>,

    /// Directory for figure CSVs [default: .]
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Worker threads; 0 uses every core [default: 0]
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    /// `key=value` file with any of the keys n_max, tail_tol, quad_order,
    /// grid, out_dir, workers. Flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_max: usize,
    pub tail_tol: f64,
    pub quad_order: usize,
    pub grid: GridSpec,
    pub out_dir: PathBuf,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let policy = TruncationPolicy::default();
        Self {
            n_max: policy.n_max,
            tail_tol: policy.tail_tol,
            quad_order: FidelitySettings::default().order,
            grid: GridSpec::default(),
            out_dir: PathBuf::from("."),
            workers: 0,
        }
    }
}

impl RunConfig {
    pub fn resolve(flags: &ConfigFlags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => read_config_file(path)?,
            None => ConfigFlags::default(),
        };
        let pick_grid = flags.grid.as_ref().or(file.grid.as_ref());
        let d = RunConfig::default();
        let cfg = RunConfig {
            n_max: flags.n_max.or(file.n_max).unwrap_or(d.n_max),
            tail_tol: flags.tail_tol.or(file.tail_tol).unwrap_or(d.tail_tol),
            quad_order: flags.quad_order.or(file.quad_order).unwrap_or(d.quad_order),
            grid: pick_grid
                .map(|g| parse_grid(g))
                .transpose()?
                .unwrap_or(d.grid),
            out_dir: flags.out_dir.clone().or(file.out_dir).unwrap_or(d.out_dir),
            workers: flags.workers.or(file.workers).unwrap_or(d.workers),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n_max == 0 {
            return Err(CliError::usage("n_max must be positive"));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(CliError::usage("tail_tol must lie in (0, 1)"));
        }
        if self.quad_order < 2 {
            return Err(CliError::usage("quad_order must be at least 2"));
        }
        self.eval_config().policy.validate()?;
        Ok(())
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            policy: TruncationPolicy {
                n_max: self.n_max,
                tail_tol: self.tail_tol,
                ..TruncationPolicy::default()
            },
            fidelity: FidelitySettings {
                order: self.quad_order,
                ..FidelitySettings::default()
            },
        }
    }
}

pub fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    let num = |t: &str| -> Result<usize, CliError> {
        match t.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::usage(format!("bad grid size '{t}'"))),
        }
    };
    let (s, r) = match text.split_once(['x', 'X']) {
        Some((s, r)) => (num(s)?, num(r)?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    Ok(GridSpec {
        s_points: Some(s),
        r_points: Some(r),
    })
}

fn read_config_file(path: &Path) -> Result<ConfigFlags, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Parses `key=value` lines; blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> Result<ConfigFlags, CliError> {
    let mut out = ConfigFlags::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::usage(format!("config line {}: {what}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("expected key=value"))?;
        let (key, value) = (key.trim().replace('-', "_"), value.trim());
        let int = || {
            value
                .parse::<usize>()
                .map_err(|_| bad("expected an integer"))
        };
        match key.as_str() {
            "n_max" => out.n_max = Some(int()?),
            "tail_tol" => out.tail_tol = Some(value.parse().map_err(|_| bad("expected a number"))?),
            "quad_order" => out.quad_order = Some(int()?),
            "grid" => out.grid = Some(value.to_string()),
            "out_dir" => out.out_dir = Some(PathBuf::from(value)),
            "workers" => out.workers = Some(int()?),
            _ => return Err(bad(&format!("unknown key '{key}'"))),
        }
    }
    Ok(out)
}
