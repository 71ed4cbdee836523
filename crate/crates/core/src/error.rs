use thiserror::Error;

/// Errors shared by every evaluation path in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter left its admissible range. The message names the violated
    /// constraint.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma evaluated at a nonpositive integer.
    #[error("gamma pole at x = {0}")]
    Pole(f64),

    /// No available method reached the requested tolerance.
    #[error("accuracy error: achieved {achieved:.3e}, requested {requested:.3e}")]
    Accuracy { achieved: f64, requested: f64 },

    /// Two poles of a Mellin-Barnes kernel (numerically) coincide; the residue
    /// series refuses and the caller must fall back to contour quadrature.
    #[error("pole collision near s = {location}")]
    Collision { location: f64 },

    /// The operation does not apply to this parameter combination.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// alpha = beta = 2: the Green function is the distribution
    /// [delta(x+t) + delta(x-t)] / 2 and has no pointwise values.
    #[error("wave case: G(x,t) = [delta(x+t) + delta(x-t)] / 2 (no pointwise values)")]
    WaveCase,
}

pub type Result<T> = std::result::Result<T, Error>;
