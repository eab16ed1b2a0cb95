use thiserror::Error;

/// Errors produced by the channel library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Fock dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid time {0}: must be finite and nonnegative")]
    InvalidTime(f64),

    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error("not a density matrix: {0}")]
    NotAState(String),

    #[error("truncation insufficient at dim {dim}: {detail} (suggested dim >= {suggested})")]
    TruncationInsufficient {
        dim: usize,
        suggested: usize,
        detail: String,
    },

    #[error("step size underflow at t = {t:.6e} (h = {step:.3e}); problem too stiff for the explicit integrator")]
    Stiffness { t: f64, step: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTime(t))
    }
}
