//! Test-only oracles: Gauss–Laguerre quadrature over the Gaussian input
//! ensemble, built independently of the closed-form averages.

#![allow(dead_code)]

use bmc_core::analytic::to_density_matrix_unchecked;
use bmc_core::fock::{CMatrix, DensityMatrix};
use bmc_core::{evolve_coherent_analytic, ChannelParams, Complex64};
use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights for `∫₀^∞ e^{−u} f(u) du` (Golub–Welsch).
pub fn gauss_laguerre(n: usize) -> Vec<(f64, f64)> {
    let jacobi = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            (2 * i + 1) as f64
        } else if i + 1 == j || j + 1 == i {
            (i.max(j)) as f64
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut out: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &x)| (x, eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `∫ d²η p(η) F(|η|)` with `p(η) = e^{−|η|²/n̄}/(πn̄)`, by substituting
/// `u = |η|²/n̄`.
pub fn ensemble_average_radial(n_bar: f64, nodes: &[(f64, f64)], f: impl Fn(f64) -> f64) -> f64 {
    nodes.iter().map(|&(u, w)| w * f((n_bar * u).sqrt())).sum()
}

/// Ensemble average of the analytic coherent-input outputs: radial
/// Gauss–Laguerre in `|η|²/n̄` times a `phases`-point trapezoid rule in
/// `arg η`. A phase rotation `e^{iφ a⁺a}` multiplies entry `(m, n)` by
/// `e^{i(m−n)φ}`, so the angular rule acts entrywise.
pub fn ensemble_average_by_quadrature(
    params: &ChannelParams,
    t: f64,
    dim: usize,
    radial_nodes: usize,
    phases: usize,
) -> DensityMatrix {
    let nodes = gauss_laguerre(radial_nodes);
    let phase_factor: Vec<Complex64> = (0..2 * dim)
        .map(|k| {
            let d = k as f64 - dim as f64;
            (0..phases)
                .map(|j| {
                    Complex64::from_polar(
                        1.0,
                        d * 2.0 * std::f64::consts::PI * j as f64 / phases as f64,
                    )
                })
                .sum::<Complex64>()
                / phases as f64
        })
        .collect();
    let mut acc = CMatrix::zeros(dim, dim);
    for &(u, w) in &nodes {
        let r = (params.n_bar * u).sqrt();
        let state = evolve_coherent_analytic(Complex64::new(r, 0.0), params, t).unwrap();
        let rho = to_density_matrix_unchecked(&state, dim).unwrap();
        for n in 0..dim {
            for m in 0..dim {
                acc[(m, n)] += rho.matrix()[(m, n)] * phase_factor[m + dim - n] * w;
            }
        }
    }
    DensityMatrix::from_matrix(acc).unwrap()
}
