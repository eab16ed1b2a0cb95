//! Cross-check of the closed-form channel output against the integrated
//! master equation over a grid of coherent inputs and times.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{evolve_coherent_analytic, to_density_matrix};
use crate::capacity::g_entropy;
use crate::error::{Error, Result};
use crate::fock::{self, coherent_state, trace_distance, von_neumann_entropy};
use crate::lindblad::{evolve_with_trajectory, ChannelParams, IntegratorOptions};

pub const DEFAULT_DIM: usize = 50;
pub const DEFAULT_TRACE_DISTANCE_TOL: f64 = 1e-6;
pub const DEFAULT_ENTROPY_TOL: f64 = 1e-6;

pub fn default_etas() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 1.0),
    ]
}

pub fn default_times() -> Vec<f64> {
    vec![0.1, 0.5, 1.0, 5.0, 20.0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationOptions {
    pub etas: Vec<Complex64>,
    pub times: Vec<f64>,
    pub dim: usize,
    pub trace_distance_tol: f64,
    pub entropy_tol: f64,
    pub integrator: IntegratorOptions,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            etas: default_etas(),
            times: default_times(),
            dim: DEFAULT_DIM,
            trace_distance_tol: DEFAULT_TRACE_DISTANCE_TOL,
            entropy_tol: DEFAULT_ENTROPY_TOL,
            integrator: IntegratorOptions::default(),
        }
    }
}

/// Outcome at one `(η, t)` grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub eta: Complex64,
    pub t: f64,
    /// Lindblad output vs closed-form displaced thermal state.
    pub trace_distance: f64,
    /// Entropy of the integrated state, in bits.
    pub entropy: f64,
    /// `|S(ρ_lindblad) − g(β(t))|` in bits.
    pub entropy_gap: f64,
    /// Worst `|Tr ρ − 1|` along the trajectory.
    pub max_trace_error: f64,
    /// Worst `‖ρ − ρ⁺‖_max` along the trajectory.
    pub max_hermiticity_error: f64,
    /// Smallest eigenvalue seen along the trajectory.
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub results: Vec<GridResult>,
    /// Grid point with the largest trace distance.
    pub worst_case: GridResult,
    pub trace_distance_tol: f64,
    pub entropy_tol: f64,
    pub passed: bool,
}

impl ValidationReport {
    pub fn grid(&self) -> Vec<(Complex64, f64)> {
        self.results.iter().map(|r| (r.eta, r.t)).collect()
    }

    pub fn trace_distances(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.trace_distance).collect()
    }

    pub fn entropy_gaps(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.entropy_gap).collect()
    }

    pub fn max_trace_distance(&self) -> f64 {
        self.results
            .iter()
            .map(|r| r.trace_distance)
            .fold(0.0, f64::max)
    }

    pub fn max_entropy_gap(&self) -> f64 {
        self.results
            .iter()
            .map(|r| r.entropy_gap)
            .fold(0.0, f64::max)
    }
}

/// Checks that `dim` can hold the coherent input and the analytic output
/// at every grid point.
pub fn check_truncation(params: &ChannelParams, opts: &ValidationOptions) -> Result<()> {
    let mut needed = 0usize;
    for &eta in &opts.etas {
        let n = eta.norm_sqr();
        needed = needed.max(fock::required_dim(n, n));
        for &t in &opts.times {
            needed = needed.max(evolve_coherent_analytic(eta, params, t)?.suggested_dim());
        }
    }
    if opts.dim < needed {
        return Err(Error::TruncationInsufficient {
            dim: opts.dim,
            suggested: needed,
            detail: "validation grid inputs exceed the truncated space".into(),
        });
    }
    Ok(())
}

/// Runs the closed-form vs integrator comparison. Only unsqueezed
/// reservoirs (`M = 0`) are accepted.
pub fn run_validation(
    params: &ChannelParams,
    opts: &ValidationOptions,
) -> Result<ValidationReport> {
    params.validate()?;
    if params.m_squeeze != Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter {
            name: "m",
            value: params.m_squeeze.norm(),
            reason: "the closed form covers the thermal reservoir only; set M = 0",
        });
    }
    if opts.etas.is_empty() || opts.times.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            value: 0.0,
            reason: "validation grid is empty",
        });
    }
    check_truncation(params, opts)?;

    let grid: Vec<(Complex64, f64)> = opts
        .etas
        .iter()
        .flat_map(|&e| opts.times.iter().map(move |&t| (e, t)))
        .collect();
    let results: Vec<GridResult> = grid
        .par_iter()
        .map(|&(eta, t)| grid_point(params, opts, eta, t))
        .collect::<Result<_>>()?;

    let worst_case = *results
        .iter()
        .max_by(|a, b| a.trace_distance.total_cmp(&b.trace_distance))
        .expect("grid is non-empty");
    let passed = results
        .iter()
        .all(|r| r.trace_distance <= opts.trace_distance_tol && r.entropy_gap <= opts.entropy_tol);
    Ok(ValidationReport {
        results,
        worst_case,
        trace_distance_tol: opts.trace_distance_tol,
        entropy_tol: opts.entropy_tol,
        passed,
    })
}

fn grid_point(
    params: &ChannelParams,
    opts: &ValidationOptions,
    eta: Complex64,
    t: f64,
) -> Result<GridResult> {
    let input = coherent_state(eta, opts.dim)?.projector();
    let (numeric, traj) = evolve_with_trajectory(&input, params, t, &opts.integrator)?;
    let state = evolve_coherent_analytic(eta, params, t)?;
    let analytic = to_density_matrix(&state, opts.dim)?;

    let mut max_trace_error = 0.0_f64;
    let mut max_hermiticity_error = 0.0_f64;
    let mut min_eigenvalue = f64::INFINITY;
    for (_, rho) in &traj {
        max_trace_error = max_trace_error.max((rho.trace() - 1.0).norm());
        max_hermiticity_error = max_hermiticity_error.max(rho.hermiticity_error());
        min_eigenvalue = min_eigenvalue.min(rho.min_eigenvalue());
    }

    let entropy = von_neumann_entropy(&numeric)?;
    Ok(GridResult {
        eta,
        t,
        trace_distance: trace_distance(&numeric, &analytic)?,
        entropy,
        entropy_gap: (entropy - g_entropy(state.thermal_photons)?).abs(),
        max_trace_error,
        max_hermiticity_error,
        min_eigenvalue,
    })
}
