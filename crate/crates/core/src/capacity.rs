//! Holevo capacity of the Gaussian coherent-state ensemble, transmission
//! fidelity, and the fidelity–capacity product Θ = F̄·χ with its optimal
//! input strength.
//!
//! All entropies are in bits.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::analytic::beta_t;
use crate::error::{check_time, Error, Result};
use crate::fock::xlog2x;
use crate::lindblad::ChannelParams;

/// `g(x) = (1+x) log₂(1+x) − x log₂ x`, the entropy of a thermal state of
/// mean occupation `x`.
pub fn g_entropy(x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            reason: "thermal occupation must be finite and nonnegative",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(((1.0 + x) * x.ln_1p() - x * x.ln()) / LN_2)
}

/// `χ = g(β(t) + n̄e^{−γt}) − g(β(t))`.
pub fn channel_capacity(params: &ChannelParams, t: f64) -> Result<f64> {
    params.validate()?;
    let b = beta_t(params, t)?;
    let out = b + params.n_bar * (-params.gamma * t).exp();
    Ok(g_entropy(out)? - g_entropy(b)?)
}

/// `F(η) = ⟨η|ρ(t)|η⟩ = exp[−(e^{−γt/2} − 1)² |η|² / (1+β(t))] / (1+β(t))`.
pub fn fidelity_analytic(eta: Complex64, params: &ChannelParams, t: f64) -> Result<f64> {
    let b = beta_t(params, t)?;
    let c = amplitude_loss_sq(params, t);
    Ok((-c * eta.norm_sqr() / (1.0 + b)).exp() / (1.0 + b))
}

/// Ensemble-averaged fidelity `F̄ = 1 / (1 + β(t) + n̄(e^{−γt/2} − 1)²)`.
pub fn average_fidelity(params: &ChannelParams, t: f64) -> Result<f64> {
    params.validate()?;
    let b = beta_t(params, t)?;
    Ok(1.0 / (1.0 + b + params.n_bar * amplitude_loss_sq(params, t)))
}

/// `(1 − e^{−γt/2})²`, computed without cancellation at small `γt`.
fn amplitude_loss_sq(params: &ChannelParams, t: f64) -> f64 {
    let x = (-0.5 * params.gamma * t).exp_m1();
    x * x
}

/// `Θ = F̄ · χ`.
pub fn theta(params: &ChannelParams, t: f64) -> Result<f64> {
    Ok(average_fidelity(params, t)? * channel_capacity(params, t)?)
}

/// One `(t, χ, F̄, Θ)` sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityPoint {
    pub t: f64,
    pub chi: f64,
    pub avg_fidelity: f64,
    pub theta: f64,
}

impl CapacityPoint {
    pub fn evaluate(params: &ChannelParams, t: f64) -> Result<Self> {
        let chi = channel_capacity(params, t)?;
        let avg_fidelity = average_fidelity(params, t)?;
        Ok(Self {
            t,
            chi,
            avg_fidelity,
            theta: chi * avg_fidelity,
        })
    }
}

/// Left-hand minus right-hand side of the printed stationarity condition
///
/// ```text
/// a(1+β) log(1+β) − aβ log β = (aβ − (1+β)) log b − (a−1)(1+β) log(1+b)
/// ```
///
/// with `a = (e^{γt/2} − 1)²`, `b = β(t) + n̄e^{−γt}`, `β = β(t)`, logs base 2
/// and `0 log 0 = 0`.
pub fn criterion_residual(n_bar: f64, params: &ChannelParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let beta = beta_t(params, t)?;
    let a = {
        let x = (0.5 * params.gamma * t).exp_m1();
        x * x
    };
    let b = beta + n_bar * (-params.gamma * t).exp();
    let lhs = a * xlog2x(1.0 + beta) - a * xlog2x(beta);
    let log_b = if b > 0.0 { b.log2() } else { 0.0 };
    let rhs = (a * beta - (1.0 + beta)) * log_b - (a - 1.0) * (1.0 + beta) * (1.0 + b).log2();
    Ok(lhs - rhs)
}

/// Optimum of Θ over the input mean photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalSignalResult {
    /// Maximiser of Θ, or `search_max` when no interior optimum exists.
    pub n_bar_opt: f64,
    pub theta_at_opt: f64,
    /// [`criterion_residual`] at `n_bar_opt`.
    pub criterion_residual: f64,
    /// Θ decreases on both sides of `n_bar_opt` and Θ'' < 0 there.
    pub second_order_ok: bool,
    /// `false` when dΘ/dn̄ never changes sign on `(0, search_max]`.
    pub interior: bool,
}

pub const DEFAULT_SEARCH_MAX: f64 = 1e3;
const SCAN_POINTS: usize = 400;

fn theta_at(params: &ChannelParams, t: f64, n_bar: f64) -> f64 {
    theta(&params.with_n_bar(n_bar), t).expect("parameters validated by caller")
}

/// Central difference with step `1e−6·max(1, n̄)`.
pub fn theta_derivative(params: &ChannelParams, t: f64, n_bar: f64) -> f64 {
    let h = 1e-6 * n_bar.max(1.0);
    let lo = (n_bar - h).max(0.0);
    let hi = n_bar + h;
    (theta_at(params, t, hi) - theta_at(params, t, lo)) / (hi - lo)
}

fn scan_grid(search_max: f64) -> Vec<f64> {
    let lo = (1e-3 * search_max.min(1.0)).ln();
    let hi = search_max.ln();
    (0..SCAN_POINTS)
        .map(|i| (lo + (hi - lo) * i as f64 / (SCAN_POINTS - 1) as f64).exp())
        .collect()
}

/// Maximises Θ(n̄) on `(0, search_max]` by bracketing a sign change of the
/// numerical derivative and bisecting it.
pub fn optimal_nbar(
    params: &ChannelParams,
    t: f64,
    search_max: f64,
) -> Result<OptimalSignalResult> {
    params.validate()?;
    check_time(t)?;
    if t <= 0.0 {
        return Err(Error::InvalidTime(t));
    }
    if !(search_max.is_finite() && search_max > 0.0) {
        return Err(Error::InvalidParameter {
            name: "search_max",
            value: search_max,
            reason: "search bound must be positive",
        });
    }
    let grid = scan_grid(search_max);
    let deriv: Vec<f64> = grid
        .iter()
        .map(|&n| theta_derivative(params, t, n))
        .collect();
    let bracket = (1..grid.len()).find(|&i| deriv[i - 1] > 0.0 && deriv[i] <= 0.0);

    let Some(i) = bracket else {
        let n = search_max;
        return Ok(OptimalSignalResult {
            n_bar_opt: n,
            theta_at_opt: theta_at(params, t, n),
            criterion_residual: criterion_residual(n, params, t)?,
            second_order_ok: false,
            interior: false,
        });
    };

    let (mut lo, mut hi) = (grid[i - 1], grid[i]);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if theta_derivative(params, t, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    let n_opt = 0.5 * (lo + hi);
    Ok(OptimalSignalResult {
        n_bar_opt: n_opt,
        theta_at_opt: theta_at(params, t, n_opt),
        criterion_residual: criterion_residual(n_opt, params, t)?,
        second_order_ok: is_local_max(params, t, n_opt),
        interior: true,
    })
}

fn is_local_max(params: &ChannelParams, t: f64, n: f64) -> bool {
    let d = 1e-3 * n;
    let (left, mid, right) = (
        theta_at(params, t, n - d),
        theta_at(params, t, n),
        theta_at(params, t, n + d),
    );
    left <= mid && right <= mid && (left - 2.0 * mid + right) < 0.0
}

/// Golden-section maximisation of a unimodal `f` on `[lo, hi]`; stops when
/// the bracket is narrower than `rel_tol·|x|`.
pub fn golden_section_maximize(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > rel_tol * (0.5 * (lo + hi)).abs().max(f64::MIN_POSITIVE) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Independent maximiser of Θ: scans Θ itself on the log grid and refines
/// the best sample by golden-section search. Returns `None` when the best
/// sample sits on the upper boundary.
pub fn optimal_nbar_golden(
    params: &ChannelParams,
    t: f64,
    search_max: f64,
) -> Result<Option<(f64, f64)>> {
    params.validate()?;
    check_time(t)?;
    let grid = scan_grid(search_max);
    let values: Vec<f64> = grid.iter().map(|&n| theta_at(params, t, n)).collect();
    let best = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    if best + 1 == grid.len() {
        return Ok(None);
    }
    let lo = if best == 0 { 0.0 } else { grid[best - 1] };
    let hi = grid[best + 1];
    Ok(Some(golden_section_maximize(
        |n| theta_at(params, t, n),
        lo,
        hi,
        1e-10,
    )))
}
