//! Closed-form channel action for coherent inputs.
//!
//! A coherent input `|η⟩` leaves the channel as a displaced thermal state
//! with amplitude `η e^{−γt/2}` and thermal occupation
//! `β(t) = (β/γ)(1 − e^{−γt})`. Averaging over the Gaussian input ensemble
//! `p(η) = e^{−|η|²/n̄}/(π n̄)` gives an undisplaced thermal state of mean
//! `β(t) + n̄ e^{−γt}`.

use num_complex::Complex64;

use crate::error::{check_time, Error, Result};
use crate::fock::{self, DensityMatrix};
use crate::lindblad::ChannelParams;

/// Displaced thermal state `D(α) ρ_th(n) D⁺(α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianChannelState {
    pub displacement: Complex64,
    pub thermal_photons: f64,
}

impl GaussianChannelState {
    pub fn new(displacement: Complex64, thermal_photons: f64) -> Result<Self> {
        if !(thermal_photons.is_finite() && thermal_photons >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "thermal_photons",
                value: thermal_photons,
                reason: "thermal occupation must be finite and nonnegative",
            });
        }
        Ok(Self {
            displacement,
            thermal_photons,
        })
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.displacement.norm_sqr() + self.thermal_photons
    }

    /// Photon-number variance `n(n+1) + |α|²(2n+1)`.
    pub fn photon_number_variance(&self) -> f64 {
        let n = self.thermal_photons;
        n * (n + 1.0) + self.displacement.norm_sqr() * (2.0 * n + 1.0)
    }

    /// Smallest Fock dimension accepted for this state: the mean/variance
    /// heuristic, raised if needed so the thermal tail is below 1e-9.
    pub fn suggested_dim(&self) -> usize {
        fock::required_dim(self.mean_photon_number(), self.photon_number_variance())
            .max(fock::thermal_required_dim(self.thermal_photons, 1e-9))
    }

    /// Recovers `(⟨a⟩, ⟨a⁺a⟩ − |⟨a⟩|²)` from a density matrix.
    pub fn from_moments(rho: &DensityMatrix) -> Self {
        let displacement = rho.mean_annihilation();
        let thermal_photons = (rho.mean_photon_number() - displacement.norm_sqr()).max(0.0);
        Self {
            displacement,
            thermal_photons,
        }
    }
}

/// `β(t) = (β/γ)(1 − e^{−γt})`.
pub fn beta_t(params: &ChannelParams, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(params.reservoir_photons() * -(-params.gamma * t).exp_m1())
}

/// `f = e^{−γt/2} / (1 + β(t))`.
pub fn f_factor(params: &ChannelParams, t: f64) -> Result<f64> {
    Ok((-0.5 * params.gamma * t).exp() / (1.0 + beta_t(params, t)?))
}

/// Channel output for the coherent input `|η⟩` after time `t`.
pub fn evolve_coherent_analytic(
    eta: Complex64,
    params: &ChannelParams,
    t: f64,
) -> Result<GaussianChannelState> {
    let thermal_photons = beta_t(params, t)?;
    Ok(GaussianChannelState {
        displacement: eta * (-0.5 * params.gamma * t).exp(),
        thermal_photons,
    })
}

/// Output averaged over the Gaussian coherent-state ensemble of mean `n̄`.
pub fn ensemble_average_state(params: &ChannelParams, t: f64) -> Result<GaussianChannelState> {
    let b = beta_t(params, t)?;
    Ok(GaussianChannelState {
        displacement: Complex64::new(0.0, 0.0),
        thermal_photons: b + params.n_bar * (-params.gamma * t).exp(),
    })
}

/// `D(α) ρ_th D⁺(α)` on `dim` levels, renormalised to unit trace.
///
/// Fails with [`Error::TruncationInsufficient`] when `dim` is below
/// [`GaussianChannelState::suggested_dim`].
pub fn to_density_matrix(state: &GaussianChannelState, dim: usize) -> Result<DensityMatrix> {
    let suggested = state.suggested_dim();
    if dim < suggested {
        return Err(Error::TruncationInsufficient {
            dim,
            suggested,
            detail: format!(
                "displaced thermal state (α = {}, n_th = {}) needs more levels",
                state.displacement, state.thermal_photons
            ),
        });
    }
    to_density_matrix_unchecked(state, dim)
}

/// As [`to_density_matrix`] without the truncation check.
pub fn to_density_matrix_unchecked(
    state: &GaussianChannelState,
    dim: usize,
) -> Result<DensityMatrix> {
    let thermal = fock::thermal_state(state.thermal_photons, dim)?;
    if state.displacement == Complex64::new(0.0, 0.0) {
        return Ok(thermal);
    }
    let d = fock::displacement_operator(state.displacement, dim)?;
    Ok(thermal.conjugate_by(&d)?.hermitized().renormalized())
}
