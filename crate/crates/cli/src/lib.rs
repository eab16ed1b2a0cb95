//! Library half of the `bmc` command: settings resolution, command runners
//! and output formatting. `main.rs` only maps arguments and exit codes.

pub mod config;
pub mod output;

use bmc_core::capacity::{optimal_nbar, theta, OptimalSignalResult, DEFAULT_SEARCH_MAX};
use bmc_core::sweep::DEFAULT_T_GRID;
use bmc_core::validation::{default_etas, default_times, DEFAULT_DIM};
use bmc_core::{
    run_sweep, run_validation, ChannelParams, Complex64, SweepRow, SweepSpec, ValidationOptions,
    ValidationReport,
};

pub use config::{parse_config, parse_config_str, Settings};

pub const DEFAULT_GAMMA: f64 = 0.1;
pub const DEFAULT_BETA: f64 = 0.01;
pub const DEFAULT_N_BAR: f64 = 5.0;
pub const DEFAULT_T: f64 = 1.0;
/// Environment variable overriding the default Fock cutoff.
pub const DIM_ENV: &str = "BMC_DEFAULT_DIM";

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_NO_OPTIMUM: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid value for `{key}`: {msg}")]
    Invalid { key: String, msg: String },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] bmc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                bmc_core::Error::TruncationInsufficient { .. } | bmc_core::Error::Stiffness { .. },
            ) => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        }
    }
}

/// Cutoff used when neither flag nor config sets `dim`.
pub fn default_dim() -> Result<usize, CliError> {
    match std::env::var(DIM_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) if d >= 2 => Ok(d),
            _ => Err(CliError::Invalid {
                key: DIM_ENV.into(),
                msg: format!("`{v}` is not an integer >= 2"),
            }),
        },
        Err(_) => Ok(DEFAULT_DIM),
    }
}

fn squeezing(s: &Settings) -> Complex64 {
    Complex64::new(s.m_re.unwrap_or(0.0), s.m_im.unwrap_or(0.0))
}

fn channel(s: &Settings, base: &ChannelParams) -> Result<ChannelParams, CliError> {
    let m = if s.m_re.is_some() || s.m_im.is_some() {
        squeezing(s)
    } else {
        base.m_squeeze
    };
    Ok(ChannelParams::with_squeezing(
        s.gamma.unwrap_or(base.gamma),
        s.beta.unwrap_or(base.beta_rate),
        m,
        s.n_bar.unwrap_or(base.n_bar),
    )?)
}

fn default_channel() -> ChannelParams {
    ChannelParams::new(DEFAULT_GAMMA, DEFAULT_BETA, DEFAULT_N_BAR).expect("defaults are valid")
}

/// Preset (if any), then explicit range and fixed values.
pub fn resolve_sweep(s: &Settings) -> Result<SweepSpec, CliError> {
    let mut spec = match s.preset {
        Some(p) => SweepSpec::preset(p),
        None => {
            let swept = s.swept.ok_or_else(|| {
                CliError::Usage("sweep needs --preset or --sweep <param> with --lo/--hi".into())
            })?;
            let (Some(lo), Some(hi)) = (s.lo, s.hi) else {
                return Err(CliError::Usage(format!(
                    "sweeping {swept} needs both --lo and --hi"
                )));
            };
            SweepSpec {
                swept,
                lo,
                hi,
                steps: 10,
                fixed: default_channel(),
                t_grid: DEFAULT_T_GRID.to_vec(),
            }
        }
    };
    if let Some(swept) = s.swept {
        spec.swept = swept;
    }
    spec.lo = s.lo.unwrap_or(spec.lo);
    spec.hi = s.hi.unwrap_or(spec.hi);
    spec.steps = s.steps.unwrap_or(spec.steps);
    if let Some(t) = &s.t {
        spec.t_grid = t.clone();
    }
    spec.fixed = channel(s, &spec.fixed)?;
    spec.validate()?;
    Ok(spec)
}

pub fn sweep(s: &Settings) -> Result<(SweepSpec, Vec<SweepRow>), CliError> {
    let spec = resolve_sweep(s)?;
    let rows = run_sweep(&spec)?;
    Ok((spec, rows))
}

pub fn resolve_validation(s: &Settings) -> Result<(ChannelParams, ValidationOptions), CliError> {
    let params = channel(s, &default_channel())?;
    let opts = ValidationOptions {
        etas: s.eta.clone().unwrap_or_else(default_etas),
        times: s.t.clone().unwrap_or_else(default_times),
        dim: match s.dim {
            Some(d) => d,
            None => default_dim()?,
        },
        ..ValidationOptions::default()
    };
    Ok((params, opts))
}

pub fn validate(s: &Settings) -> Result<ValidationReport, CliError> {
    let (params, opts) = resolve_validation(s)?;
    Ok(run_validation(&params, &opts)?)
}

#[derive(Debug, Clone)]
pub struct OptimalRun {
    pub params: ChannelParams,
    pub t: f64,
    pub search_max: f64,
    pub result: OptimalSignalResult,
}

pub fn optimal(s: &Settings) -> Result<OptimalRun, CliError> {
    let params = channel(s, &default_channel())?;
    let t = match s.t.as_deref() {
        None => DEFAULT_T,
        Some([t]) => *t,
        Some(_) => return Err(CliError::Usage("optimal takes a single --t".into())),
    };
    let search_max = s.search_max.unwrap_or(DEFAULT_SEARCH_MAX);
    let result = optimal_nbar(&params, t, search_max)?;
    Ok(OptimalRun {
        params,
        t,
        search_max,
        result,
    })
}

pub const CURVE_POINTS: usize = 200;

/// Θ on a log grid over the search interval, with the optimum spliced in.
pub fn theta_curve(run: &OptimalRun) -> Result<Vec<(f64, f64)>, CliError> {
    let lo = 1e-3 * run.search_max.min(1.0);
    let ratio = (run.search_max / lo).ln();
    let mut xs: Vec<f64> = (0..CURVE_POINTS)
        .map(|i| lo * (ratio * i as f64 / (CURVE_POINTS - 1) as f64).exp())
        .collect();
    if run.result.interior {
        xs.push(run.result.n_bar_opt);
        xs.sort_by(f64::total_cmp);
    }
    xs.into_iter()
        .map(|n| Ok((n, theta(&run.params.with_n_bar(n), run.t)?)))
        .collect()
}
