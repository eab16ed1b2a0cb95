//! Truncated Fock-space linear algebra.
//!
//! States live on the span of `|0⟩ .. |dim-1⟩`. Operators are dense
//! `dim x dim` complex matrices; the ladder operators are the exact matrix
//! elements of `a` and `a⁺` restricted to that span, so the canonical
//! commutator only fails in the last diagonal entry.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Hermiticity bound every returned density matrix must satisfy.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Default unit-trace bound for constructed states.
pub const TRACE_TOL: f64 = 1e-9;
/// Most negative eigenvalue still accepted as numerical noise.
pub const PSD_TOL: f64 = 1e-9;
/// Eigenvalues at or below this contribute nothing to the entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-14;
/// Coherent-state truncation loss above which a warning is emitted.
pub const COHERENT_LOSS_WARN: f64 = 1e-6;

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::InvalidDimension {
            dim,
            reason: "need at least two Fock levels",
        })
    } else {
        Ok(())
    }
}

/// `x log₂ x` with the continuous extension `0 log 0 = 0`.
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Annihilation and creation matrices on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub annihilation: CMatrix,
    pub creation: CMatrix,
}

/// `⟨n-1|a|n⟩ = √n`, and `a⁺` as its conjugate transpose.
pub fn ladder_operators(dim: usize) -> Result<Ladder> {
    check_dim(dim)?;
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let creation = a.adjoint();
    Ok(Ladder {
        annihilation: a,
        creation,
    })
}

type LadderSlot = Arc<OnceLock<Arc<Ladder>>>;

static LADDER_CACHE: OnceLock<Mutex<HashMap<usize, LadderSlot>>> = OnceLock::new();

/// Shared ladder operators for `dim`, built at most once per process.
pub fn cached_ladder(dim: usize) -> Result<Arc<Ladder>> {
    check_dim(dim)?;
    let slot = {
        let mut map = LADDER_CACHE
            .get_or_init(Default::default)
            .lock()
            .unwrap_or_else(|e| e.into_inner());
        Arc::clone(map.entry(dim).or_default())
    };
    Ok(Arc::clone(slot.get_or_init(|| {
        Arc::new(ladder_operators(dim).expect("dimension already checked"))
    })))
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Number operator `a⁺a` (exact on the truncated space).
pub fn number_operator(dim: usize) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_fn(dim, |n, _| Complex64::new(n as f64, 0.0)))
}

/// Smallest `dim` the truncation heuristic allows for a state with photon
/// number mean `mean` and variance `variance`: `mean + 8√(variance+1) + 10`.
pub fn required_dim(mean: f64, variance: f64) -> usize {
    (mean + 8.0 * (variance.max(0.0) + 1.0).sqrt() + 10.0).ceil() as usize
}

/// Weight a thermal distribution of mean `n_th` places on levels `>= dim`.
pub fn thermal_tail_weight(n_th: f64, dim: usize) -> f64 {
    if n_th <= 0.0 {
        return 0.0;
    }
    (n_th / (1.0 + n_th)).powi(dim as i32)
}

/// Smallest `dim` whose thermal tail weight is at most `tol`.
pub fn thermal_required_dim(n_th: f64, tol: f64) -> usize {
    if n_th <= 0.0 {
        return 2;
    }
    let ratio = n_th / (1.0 + n_th);
    ((tol.ln() / ratio.ln()).ceil() as usize).max(2)
}

/// Pure state on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
    truncation_loss: f64,
}

impl StateVector {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        check_dim(amplitudes.len())?;
        Ok(Self {
            amplitudes,
            truncation_loss: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `1 - Σ|c_n|²` of the exact state that was projected onto this space.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub fn is_truncation_sufficient(&self) -> bool {
        self.truncation_loss <= COHERENT_LOSS_WARN
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn projector(&self) -> DensityMatrix {
        let norm = self.norm_sqr();
        let m = &self.amplitudes * self.amplitudes.adjoint() / Complex64::new(norm, 0.0);
        DensityMatrix::from_raw(m)
    }
}

/// Coherent state `|η⟩` with amplitudes `e^{-|η|²/2} ηⁿ/√(n!)` for `n < dim`.
///
/// The amplitudes are not renormalised; the missing weight is reported
/// through [`StateVector::truncation_loss`] and logged when it exceeds
/// [`COHERENT_LOSS_WARN`].
pub fn coherent_state(eta: Complex64, dim: usize) -> Result<StateVector> {
    check_dim(dim)?;
    let mut amps = CVector::zeros(dim);
    let mut c = Complex64::new((-0.5 * eta.norm_sqr()).exp(), 0.0);
    amps[0] = c;
    for n in 1..dim {
        c = c * eta / (n as f64).sqrt();
        amps[n] = c;
    }
    let loss = (1.0 - amps.norm_squared()).max(0.0);
    if loss > COHERENT_LOSS_WARN {
        log::warn!("coherent state |{eta}⟩ loses {loss:.3e} of its norm at dim {dim}");
    }
    Ok(StateVector {
        amplitudes: amps,
        truncation_loss: loss,
    })
}

/// `D(α) = exp(α a⁺ − α* a)` by dense scaling-and-squaring exponential.
pub fn displacement_operator(alpha: Complex64, dim: usize) -> Result<CMatrix> {
    let ladder = cached_ladder(dim)?;
    let generator = &ladder.creation * alpha - &ladder.annihilation * alpha.conj();
    Ok(generator.exp())
}

/// Thermal state of mean occupation `n_th`, renormalised after truncation.
pub fn thermal_state(n_th: f64, dim: usize) -> Result<DensityMatrix> {
    check_dim(dim)?;
    if !(n_th.is_finite() && n_th >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "n_th",
            value: n_th,
            reason: "thermal occupation must be finite and nonnegative",
        });
    }
    let ratio = n_th / (1.0 + n_th);
    let mut weights = Vec::with_capacity(dim);
    let mut p = 1.0 / (1.0 + n_th);
    for _ in 0..dim {
        weights.push(p);
        p *= ratio;
    }
    let total: f64 = weights.iter().sum();
    let diag = CVector::from_iterator(
        dim,
        weights.into_iter().map(|w| Complex64::new(w / total, 0.0)),
    );
    Ok(DensityMatrix::from_raw(CMatrix::from_diagonal(&diag)))
}

/// Density matrix on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix after checking it is square, Hermitian, unit trace and
    /// positive semidefinite (all to the module tolerances).
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(entries.nrows(), entries.ncols()));
        }
        check_dim(entries.nrows())?;
        let rho = Self { entries };
        rho.validate(TRACE_TOL)?;
        Ok(rho)
    }

    pub(crate) fn from_raw(entries: CMatrix) -> Self {
        debug_assert_eq!(entries.nrows(), entries.ncols());
        Self { entries }
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut m = CMatrix::zeros(dim, dim);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        Ok(Self::from_raw(m))
    }

    /// Projector on the Fock state `|n⟩`.
    pub fn number_state(n: usize, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if n >= dim {
            return Err(Error::InvalidDimension {
                dim,
                reason: "number state lies outside the truncated space",
            });
        }
        let mut m = CMatrix::zeros(dim, dim);
        m[(n, n)] = Complex64::new(1.0, 0.0);
        Ok(Self::from_raw(m))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::from_raw(
            CMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0),
        ))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `‖ρ − ρ⁺‖_max`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// `Tr(ρ O)`.
    pub fn expectation(&self, op: &CMatrix) -> Result<Complex64> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), op.nrows()));
        }
        Ok((&self.entries * op).trace())
    }

    pub fn mean_photon_number(&self) -> f64 {
        (0..self.dim())
            .map(|n| n as f64 * self.entries[(n, n)].re)
            .sum()
    }

    /// `⟨a⟩ = Tr(ρ a) = Σ √(n+1) ρ_{n+1,n}`.
    pub fn mean_annihilation(&self) -> Complex64 {
        (0..self.dim() - 1)
            .map(|n| self.entries[(n + 1, n)] * ((n + 1) as f64).sqrt())
            .sum()
    }

    /// `U ρ U⁺`.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), unitary.nrows()));
        }
        Ok(Self::from_raw(unitary * &self.entries * unitary.adjoint()))
    }

    /// Divides by the real part of the trace.
    pub fn renormalized(mut self) -> Self {
        let tr = self.trace().re;
        self.entries /= Complex64::new(tr, 0.0);
        self
    }

    /// `(ρ + ρ⁺)/2`.
    pub fn hermitized(mut self) -> Self {
        let adj = self.entries.adjoint();
        self.entries = (&self.entries + adj) * Complex64::new(0.5, 0.0);
        self
    }

    /// Checks Hermiticity, `|Tr ρ − 1| <= trace_tol` and positivity.
    pub fn validate(&self, trace_tol: f64) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NotAState(format!("Hermiticity error {herm:.3e}")));
        }
        let tr = self.trace();
        if (tr - 1.0).norm() > trace_tol {
            return Err(Error::NotAState(format!("trace {tr} differs from 1")));
        }
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::NotAState(format!("min eigenvalue {min:.3e}")));
        }
        Ok(())
    }
}

fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `S(ρ) = −Σ λ log₂ λ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ev = rho.eigenvalues();
    if let Some(&min) = ev.first() {
        if min < -PSD_TOL {
            return Err(Error::NotAState(format!("min eigenvalue {min:.3e}")));
        }
    }
    Ok(ev
        .into_iter()
        .filter(|&l| l > ENTROPY_CUTOFF)
        .map(|l| -xlog2x(l))
        .sum())
}

/// `F(η) = ⟨η|ρ|η⟩` against the coherent state projected onto `rho`'s space.
pub fn fidelity_with_coherent(rho: &DensityMatrix, eta: Complex64) -> f64 {
    let ket = coherent_state(eta, rho.dim()).expect("density matrices have dim >= 2");
    let v = ket.amplitudes();
    let overlap = (v.adjoint() * rho.matrix() * v)[(0, 0)];
    debug_assert!(
        overlap.im.abs() <= 1e-10,
        "⟨η|ρ|η⟩ has imaginary part {}",
        overlap.im
    );
    overlap.re
}

/// `½ Σ |λ_i(ρ₁ − ρ₂)|`.
pub fn trace_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch(rho1.dim(), rho2.dim()));
    }
    let diff = rho1.matrix() - rho2.matrix();
    Ok(0.5
        * hermitian_eigenvalues(&diff)
            .iter()
            .map(|l| l.abs())
            .sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ladder_dim2() {
        let l = ladder_operators(2).unwrap();
        assert_eq!(l.annihilation[(0, 1)], c(1.0, 0.0));
        assert_eq!(l.annihilation[(0, 0)], c(0.0, 0.0));
        assert_eq!(l.annihilation[(1, 0)], c(0.0, 0.0));
        assert_eq!(l.annihilation[(1, 1)], c(0.0, 0.0));
        assert_eq!(l.creation, l.annihilation.adjoint());
    }

    #[test]
    fn ladder_dim3_element() {
        let l = ladder_operators(3).unwrap();
        assert_abs_diff_eq!(l.annihilation[(1, 2)].re, 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn ladder_rejects_small_dim() {
        assert!(matches!(
            ladder_operators(1),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(matches!(
            ladder_operators(0),
            Err(Error::InvalidDimension { .. })
        ));
    }

    #[test]
    fn commutator_identity_below_edge() {
        for dim in [2, 5, 17] {
            let l = ladder_operators(dim).unwrap();
            let comm = &l.annihilation * &l.creation - &l.creation * &l.annihilation;
            for i in 0..dim {
                for j in 0..dim {
                    let expect = if i == j && i < dim - 1 {
                        1.0
                    } else if i == j {
                        1.0 - dim as f64
                    } else {
                        0.0
                    };
                    assert_abs_diff_eq!(comm[(i, j)].re, expect, epsilon = 1e-12);
                    assert_abs_diff_eq!(comm[(i, j)].im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn cached_ladder_matches_fresh() {
        let cached = cached_ladder(7).unwrap();
        assert_eq!(*cached, ladder_operators(7).unwrap());
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| cached_ladder(9).unwrap()))
            .collect();
        for h in handles {
            assert_eq!(*h.join().unwrap(), ladder_operators(9).unwrap());
        }
    }

    #[test]
    fn vacuum_coherent() {
        let s = coherent_state(c(0.0, 0.0), 10).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
        assert!(s.amplitudes().iter().skip(1).all(|a| *a == c(0.0, 0.0)));
        assert_eq!(s.truncation_loss(), 0.0);
    }

    #[test]
    fn coherent_moments_by_direct_summation() {
        let s = coherent_state(c(1.0, 0.0), 30).unwrap();
        let mean: f64 = s
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum();
        assert_abs_diff_eq!(mean, 1.0, epsilon = 1e-9);

        let s = coherent_state(c(2.0, 0.0), 40).unwrap();
        let norm: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-9);
        assert!(s.is_truncation_sufficient());
    }

    #[test]
    fn coherent_reports_truncation_loss() {
        let s = coherent_state(c(2.0, 0.0), 5).unwrap();
        assert!(s.truncation_loss() > 1e-2);
        assert!(!s.is_truncation_sufficient());
    }

    #[test]
    fn displacement_zero_is_identity() {
        let d = displacement_operator(c(0.0, 0.0), 8).unwrap();
        assert_abs_diff_eq!(
            max_abs(&(d - CMatrix::identity(8, 8))),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn displaced_vacuum_is_coherent() {
        let dim = 45;
        let alpha = c(0.8, -0.6);
        let d = displacement_operator(alpha, dim).unwrap();
        let col = d.column(0);
        let coh = coherent_state(alpha, dim).unwrap();
        for n in 0..(2 * dim / 3) {
            assert_abs_diff_eq!((col[n] - coh.amplitudes()[n]).norm(), 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn displacement_inverse_and_unitarity() {
        let dim = 45;
        let alpha = c(1.1, 0.4);
        let d = displacement_operator(alpha, dim).unwrap();
        let dm = displacement_operator(-alpha, dim).unwrap();
        let prod = &d * &dm;
        let ddag = &d * d.adjoint();
        let k = 2 * dim / 3;
        for i in 0..k {
            for j in 0..k {
                let id = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!((prod[(i, j)] - id).norm(), 0.0, epsilon = 1e-8);
                assert_abs_diff_eq!((ddag[(i, j)] - id).norm(), 0.0, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn thermal_examples() {
        let vac = thermal_state(0.0, 6).unwrap();
        assert_eq!(vac, DensityMatrix::vacuum(6).unwrap());

        let th = thermal_state(1.0, 60).unwrap();
        assert_abs_diff_eq!(th.matrix()[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(th.matrix()[(1, 1)].re, 0.25, epsilon = 1e-15);

        let th = thermal_state(0.5, 60).unwrap();
        let mean: f64 = (0..60).map(|n| n as f64 * th.matrix()[(n, n)].re).sum();
        assert_abs_diff_eq!(mean, 0.5, epsilon = 1e-9);
        th.validate(TRACE_TOL).unwrap();
    }

    #[test]
    fn thermal_rejects_negative() {
        assert!(matches!(
            thermal_state(-0.1, 10),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn entropy_examples() {
        let pure = coherent_state(c(0.7, 0.2), 30).unwrap().projector();
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-9);

        // g(1) = 2 log₂ 2 − 1 log₂ 1
        let g1 = 2.0 * 2f64.log2() - 1f64.log2();
        assert_abs_diff_eq!(
            von_neumann_entropy(&thermal_state(1.0, 60).unwrap()).unwrap(),
            g1,
            epsilon = 1e-8
        );

        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_rejects_negative_eigenvalue() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.1, 0.0);
        m[(1, 1)] = c(-0.1, 0.0);
        let rho = DensityMatrix::from_raw(m);
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::NotAState(_))
        ));
        assert!(DensityMatrix::from_matrix(rho.into_matrix()).is_err());
    }

    #[test]
    fn entropy_clips_tiny_negative_noise() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0 + 5e-10, 0.0);
        m[(1, 1)] = c(-5e-10, 0.0);
        let s = von_neumann_entropy(&DensityMatrix::from_raw(m)).unwrap();
        assert!(s.is_finite());
        assert_abs_diff_eq!(s, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn fidelity_examples() {
        let eta = c(0.9, 0.3);
        let proj = coherent_state(eta, 40).unwrap().projector();
        assert_abs_diff_eq!(fidelity_with_coherent(&proj, eta), 1.0, epsilon = 1e-12);

        let vac = DensityMatrix::vacuum(30).unwrap();
        assert_abs_diff_eq!(
            fidelity_with_coherent(&vac, c(1.0, 0.0)),
            (-1.0f64).exp(),
            epsilon = 1e-12
        );

        let th = thermal_state(0.5, 60).unwrap();
        // ⟨0|ρ_th|0⟩ = 1/(1+n_th)
        assert_abs_diff_eq!(th.matrix()[(0, 0)].re, 1.0 / 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(
            fidelity_with_coherent(&th, c(0.0, 0.0)),
            1.0 / 1.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn trace_distance_examples() {
        let a = thermal_state(0.3, 20).unwrap();
        assert_abs_diff_eq!(trace_distance(&a, &a).unwrap(), 0.0, epsilon = 1e-14);

        let p0 = DensityMatrix::number_state(0, 5).unwrap();
        let p3 = DensityMatrix::number_state(3, 5).unwrap();
        assert_abs_diff_eq!(trace_distance(&p0, &p3).unwrap(), 1.0, epsilon = 1e-14);

        let vac = DensityMatrix::vacuum(40).unwrap();
        let th = thermal_state(0.1, 40).unwrap();
        let third = coherent_state(c(0.3, 0.1), 40).unwrap().projector();
        let d_vt = trace_distance(&vac, &th).unwrap();
        assert!(d_vt > 0.0 && d_vt < 1.0);
        assert_abs_diff_eq!(d_vt, trace_distance(&th, &vac).unwrap(), epsilon = 1e-14);
        let d_v3 = trace_distance(&vac, &third).unwrap();
        let d_t3 = trace_distance(&th, &third).unwrap();
        assert!(d_vt <= d_v3 + d_t3 + 1e-14);
    }

    #[test]
    fn trace_distance_dimension_mismatch() {
        let a = DensityMatrix::vacuum(3).unwrap();
        let b = DensityMatrix::vacuum(4).unwrap();
        assert_eq!(trace_distance(&a, &b), Err(Error::DimensionMismatch(3, 4)));
    }

    #[test]
    fn truncation_helpers() {
        assert_eq!(required_dim(0.0, 0.0), 18);
        assert!(thermal_tail_weight(5.0, thermal_required_dim(5.0, 1e-9)) <= 1e-9);
        assert!(thermal_tail_weight(5.0, thermal_required_dim(5.0, 1e-9) - 1) > 1e-9);
    }
}
