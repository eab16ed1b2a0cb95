//! Classical (Holevo) capacity and transmission fidelity of the lossy
//! bosonic Markov channel generated by a damped mode coupled to a thermal
//! reservoir.
//!
//! The closed-form results live in [`analytic`] and [`capacity`]. The
//! [`lindblad`] integrator on a truncated Fock space ([`fock`]) is kept as
//! an independent numerical check of every closed form; [`validation`]
//! runs that comparison over a grid and [`sweep`] produces the parameter
//! scans.

pub mod analytic;
pub mod capacity;
pub mod error;
pub mod fock;
pub mod lindblad;
pub mod sweep;
pub mod validation;

pub use analytic::{
    beta_t, ensemble_average_state, evolve_coherent_analytic, f_factor, to_density_matrix,
    GaussianChannelState,
};
pub use capacity::{
    average_fidelity, channel_capacity, criterion_residual, fidelity_analytic, g_entropy,
    optimal_nbar, theta, CapacityPoint, OptimalSignalResult,
};
pub use error::{Error, Result};
pub use fock::{DensityMatrix, StateVector};
pub use lindblad::{evolve, lindblad_rhs, ChannelParams, IntegratorOptions, Method};
pub use num_complex::Complex64;
pub use sweep::{run_sweep, Preset, SweepRow, SweepSpec, SweptParam};
pub use validation::{run_validation, ValidationOptions, ValidationReport};
