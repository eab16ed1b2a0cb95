//! Numerical time evolution of the thermal / squeezed-reservoir master
//! equation on a truncated Fock space (interaction picture):
//!
//! ```text
//! dρ/dt = γ/2 (N+1) (2aρa⁺ − a⁺aρ − ρa⁺a)
//!       + γ/2 N     (2a⁺ρa − aa⁺ρ − ρaa⁺)
//!       + γ/2 M     (2a⁺ρa⁺ − a⁺a⁺ρ − ρa⁺a⁺)
//!       + γ/2 M*    (2aρa − aaρ − ρaa)
//! ```
//!
//! with reservoir occupation `N = β/γ`. The generator is applied through
//! closed-form matrix elements of the truncated ladder products, so a step
//! costs O(dim²) and the dim²×dim² superoperator is never formed. The
//! truncated operators keep the dissipator exactly trace preserving.

use num_complex::Complex64;

use crate::error::{check_time, Error, Result};
use crate::fock::{CMatrix, DensityMatrix};

/// Physical parameters of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Energy decay rate γ (s⁻¹).
    pub gamma: f64,
    /// Thermal noise rate β (s⁻¹).
    pub beta_rate: f64,
    /// Reservoir squeezing parameter M. Only the integrator uses it.
    pub m_squeeze: Complex64,
    /// Mean photon number of the input ensemble.
    pub n_bar: f64,
}

impl ChannelParams {
    /// Thermal (unsqueezed) reservoir.
    pub fn new(gamma: f64, beta_rate: f64, n_bar: f64) -> Result<Self> {
        Self::with_squeezing(gamma, beta_rate, Complex64::new(0.0, 0.0), n_bar)
    }

    pub fn with_squeezing(
        gamma: f64,
        beta_rate: f64,
        m_squeeze: Complex64,
        n_bar: f64,
    ) -> Result<Self> {
        let p = Self {
            gamma,
            beta_rate,
            m_squeeze,
            n_bar,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| {
            Err(Error::InvalidParameter {
                name,
                value,
                reason,
            })
        };
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return bad("gamma", self.gamma, "decay rate must be positive");
        }
        if !(self.beta_rate.is_finite() && self.beta_rate >= 0.0) {
            return bad(
                "beta",
                self.beta_rate,
                "thermal noise rate must be nonnegative",
            );
        }
        if !(self.n_bar.is_finite() && self.n_bar >= 0.0) {
            return bad(
                "n_bar",
                self.n_bar,
                "mean photon number must be nonnegative",
            );
        }
        let m2 = self.m_squeeze.norm_sqr();
        let n = self.reservoir_photons();
        if !m2.is_finite() || m2 > n * (n + 1.0) * (1.0 + 1e-12) {
            return bad(
                "m",
                m2.sqrt(),
                "unphysical reservoir: |M|² must not exceed N(N+1)",
            );
        }
        Ok(())
    }

    /// Reservoir mean photon number `N = β/γ`.
    pub fn reservoir_photons(&self) -> f64 {
        self.beta_rate / self.gamma
    }

    pub fn with_n_bar(mut self, n_bar: f64) -> Self {
        self.n_bar = n_bar;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    FixedRk4,
    AdaptiveRk45,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Largest step (s). For [`Method::FixedRk4`] this is the step.
    pub max_step: f64,
    pub method: Method,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-11,
            max_step: 1.0,
            method: Method::AdaptiveRk45,
        }
    }
}

impl IntegratorOptions {
    pub fn fixed_rk4(step: f64) -> Self {
        Self {
            max_step: step,
            method: Method::FixedRk4,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("max_step", self.max_step),
        ] {
            if value.is_nan() || value <= 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "integrator settings must be positive",
                });
            }
        }
        Ok(())
    }
}

/// Trace drift beyond which evolution is reported as under-truncated.
pub const TRACE_DRIFT_LIMIT: f64 = 1e-6;

/// The master-equation generator for one dimension and parameter set.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    dim: usize,
    sqrt_n: Vec<f64>,
    /// Diagonal of the truncated `aa⁺`: `n+1` below the edge, 0 at it.
    aadag: Vec<f64>,
    loss: f64,
    gain: f64,
    squeeze: Complex64,
}

impl Liouvillian {
    pub fn new(dim: usize, params: &ChannelParams) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "need at least two Fock levels",
            });
        }
        params.validate()?;
        let n_res = params.reservoir_photons();
        let half = 0.5 * params.gamma;
        Ok(Self {
            dim,
            sqrt_n: (0..dim + 2).map(|n| (n as f64).sqrt()).collect(),
            aadag: (0..dim)
                .map(|n| if n + 1 < dim { (n + 1) as f64 } else { 0.0 })
                .collect(),
            loss: half * (n_res + 1.0),
            gain: half * n_res,
            squeeze: params.m_squeeze * half,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Writes `dρ/dt` into `out`.
    pub fn apply_into(&self, rho: &CMatrix, out: &mut CMatrix) {
        let d = self.dim;
        let s = &self.sqrt_n;
        let q = &self.aadag;
        let squeezed = self.squeeze != Complex64::new(0.0, 0.0);
        let ms = self.squeeze;
        let msc = self.squeeze.conj();
        for n in 0..d {
            for m in 0..d {
                let r = rho[(m, n)];
                // loss: 2aρa⁺ − a⁺aρ − ρa⁺a
                let mut loss = -r * (m + n) as f64;
                if m + 1 < d && n + 1 < d {
                    loss += rho[(m + 1, n + 1)] * (2.0 * s[m + 1] * s[n + 1]);
                }
                // gain: 2a⁺ρa − aa⁺ρ − ρaa⁺
                let mut gain = -r * (q[m] + q[n]);
                if m > 0 && n > 0 {
                    gain += rho[(m - 1, n - 1)] * (2.0 * s[m] * s[n]);
                }
                let mut val = loss * self.loss + gain * self.gain;
                if squeezed {
                    // 2a⁺ρa⁺ − a⁺a⁺ρ − ρa⁺a⁺
                    let mut up = Complex64::new(0.0, 0.0);
                    if m > 0 && n + 1 < d {
                        up += rho[(m - 1, n + 1)] * (2.0 * s[m] * s[n + 1]);
                    }
                    if m > 1 {
                        up -= rho[(m - 2, n)] * (s[m] * s[m - 1]);
                    }
                    if n + 2 < d {
                        up -= rho[(m, n + 2)] * (s[n + 2] * s[n + 1]);
                    }
                    // 2aρa − aaρ − ρaa
                    let mut down = Complex64::new(0.0, 0.0);
                    if m + 1 < d && n > 0 {
                        down += rho[(m + 1, n - 1)] * (2.0 * s[m + 1] * s[n]);
                    }
                    if m + 2 < d {
                        down -= rho[(m + 2, n)] * (s[m + 1] * s[m + 2]);
                    }
                    if n > 1 {
                        down -= rho[(m, n - 2)] * (s[n - 1] * s[n]);
                    }
                    val += up * ms + down * msc;
                }
                out[(m, n)] = val;
            }
        }
    }

    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        self.apply_into(rho, &mut out);
        out
    }
}

/// Time derivative `dρ/dt` of the master equation at `rho`.
pub fn lindblad_rhs(rho: &DensityMatrix, params: &ChannelParams) -> Result<CMatrix> {
    Ok(Liouvillian::new(rho.dim(), params)?.apply(rho.matrix()))
}

/// Accepted integration points, starting with `(0, ρ₀)`.
pub type Trajectory = Vec<(f64, DensityMatrix)>;

/// Integrates the master equation from `rho0` for a duration `t`.
pub fn evolve(
    rho0: &DensityMatrix,
    params: &ChannelParams,
    t: f64,
    opts: &IntegratorOptions,
) -> Result<DensityMatrix> {
    integrate(rho0, params, t, opts, false).map(|(rho, _)| rho)
}

/// As [`evolve`], also returning every accepted step.
pub fn evolve_with_trajectory(
    rho0: &DensityMatrix,
    params: &ChannelParams,
    t: f64,
    opts: &IntegratorOptions,
) -> Result<(DensityMatrix, Trajectory)> {
    integrate(rho0, params, t, opts, true)
}

fn integrate(
    rho0: &DensityMatrix,
    params: &ChannelParams,
    t_end: f64,
    opts: &IntegratorOptions,
    record: bool,
) -> Result<(DensityMatrix, Trajectory)> {
    check_time(t_end)?;
    opts.validate()?;
    let gen = Liouvillian::new(rho0.dim(), params)?;
    let mut traj = Vec::new();
    if record {
        traj.push((0.0, rho0.clone()));
    }
    if t_end == 0.0 {
        return Ok((rho0.clone(), traj));
    }
    let trace0 = rho0.trace();
    let mut on_step = |t: f64, y: &CMatrix| -> Result<()> {
        let drift = (y.trace() - trace0).norm();
        if drift > TRACE_DRIFT_LIMIT {
            return Err(Error::TruncationInsufficient {
                dim: gen.dim(),
                suggested: 2 * gen.dim(),
                detail: format!("trace drifted by {drift:.3e} at t = {t:.6}"),
            });
        }
        if record {
            traj.push((t, DensityMatrix::from_raw(y.clone())));
        }
        Ok(())
    };
    let y = match opts.method {
        Method::FixedRk4 => rk4(
            &gen,
            rho0.matrix().clone(),
            t_end,
            opts.max_step,
            &mut on_step,
        )?,
        Method::AdaptiveRk45 => dopri5(&gen, rho0.matrix().clone(), t_end, opts, &mut on_step)?,
    };
    Ok((DensityMatrix::from_raw(y), traj))
}

fn rk4(
    gen: &Liouvillian,
    mut y: CMatrix,
    t_end: f64,
    step: f64,
    on_step: &mut dyn FnMut(f64, &CMatrix) -> Result<()>,
) -> Result<CMatrix> {
    let steps = (t_end / step).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;
    let d = gen.dim();
    let (mut k1, mut k2, mut k3, mut k4) = (
        CMatrix::zeros(d, d),
        CMatrix::zeros(d, d),
        CMatrix::zeros(d, d),
        CMatrix::zeros(d, d),
    );
    for i in 0..steps {
        gen.apply_into(&y, &mut k1);
        gen.apply_into(&(&y + &k1 * c(0.5 * h)), &mut k2);
        gen.apply_into(&(&y + &k2 * c(0.5 * h)), &mut k3);
        gen.apply_into(&(&y + &k3 * c(h)), &mut k4);
        y += (&k1 + &k2 * c(2.0) + &k3 * c(2.0) + &k4) * c(h / 6.0);
        let t = if i + 1 == steps {
            t_end
        } else {
            (i + 1) as f64 * h
        };
        on_step(t, &y)?;
    }
    Ok(y)
}

#[inline]
fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 5th minus 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn dopri5(
    gen: &Liouvillian,
    mut y: CMatrix,
    t_end: f64,
    opts: &IntegratorOptions,
    on_step: &mut dyn FnMut(f64, &CMatrix) -> Result<()>,
) -> Result<CMatrix> {
    let d = gen.dim();
    let zeros = || CMatrix::zeros(d, d);
    let (mut k2, mut k3, mut k4, mut k5, mut k6, mut k7) =
        (zeros(), zeros(), zeros(), zeros(), zeros(), zeros());
    let mut k1 = gen.apply(&y);

    let mut t = 0.0;
    let mut h = initial_step(&y, &k1, opts).min(opts.max_step).min(t_end);
    let mut rejected_last = false;

    while t < t_end {
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        gen.apply_into(&(&y + &k1 * c(h * A21)), &mut k2);
        gen.apply_into(&(&y + (&k1 * c(A31) + &k2 * c(A32)) * c(h)), &mut k3);
        gen.apply_into(
            &(&y + (&k1 * c(A41) + &k2 * c(A42) + &k3 * c(A43)) * c(h)),
            &mut k4,
        );
        gen.apply_into(
            &(&y + (&k1 * c(A51) + &k2 * c(A52) + &k3 * c(A53) + &k4 * c(A54)) * c(h)),
            &mut k5,
        );
        gen.apply_into(
            &(&y + (&k1 * c(A61) + &k2 * c(A62) + &k3 * c(A63) + &k4 * c(A64) + &k5 * c(A65))
                * c(h)),
            &mut k6,
        );
        let y_new =
            &y + (&k1 * c(B1) + &k3 * c(B3) + &k4 * c(B4) + &k5 * c(B5) + &k6 * c(B6)) * c(h);
        gen.apply_into(&y_new, &mut k7);
        let err_est =
            (&k1 * c(E1) + &k3 * c(E3) + &k4 * c(E4) + &k5 * c(E5) + &k6 * c(E6) + &k7 * c(E7))
                * c(h);

        let mut err = 0.0_f64;
        for ((e, a), b) in err_est.iter().zip(y.iter()).zip(y_new.iter()) {
            let scale = opts.abs_tol + opts.rel_tol * a.norm().max(b.norm());
            err = err.max(e.norm() / scale);
        }

        if err <= 1.0 {
            t = if last { t_end } else { t + h };
            y = y_new;
            std::mem::swap(&mut k1, &mut k7);
            on_step(t, &y)?;
            let grow = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            // no growth straight after a rejection
            h *= if rejected_last { grow.min(1.0) } else { grow };
            h = h.min(opts.max_step);
            rejected_last = false;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            rejected_last = true;
        }
        if h < 1e-14 * t.abs().max(1.0) && t < t_end {
            return Err(Error::Stiffness { t, step: h });
        }
    }
    Ok(y)
}

fn initial_step(y: &CMatrix, f: &CMatrix, opts: &IntegratorOptions) -> f64 {
    let mut d0 = 0.0_f64;
    let mut d1 = 0.0_f64;
    for (a, b) in y.iter().zip(f.iter()) {
        let scale = opts.abs_tol + opts.rel_tol * a.norm();
        d0 = d0.max(a.norm() / scale);
        d1 = d1.max(b.norm() / scale);
    }
    if d1 <= 1e-12 {
        opts.max_step
    } else {
        // fifth-order local error roughly (h·‖f‖)^5 / 120
        0.1 * d0.max(1.0).powf(0.2) / d1
    }
}
