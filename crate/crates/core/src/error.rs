use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polarization state has zero norm")]
    ZeroVector,

    /// Pre- and post-selection (possibly after fiber rotation) are orthogonal
    /// within tolerance, so the weak value diverges.
    #[error("pre- and post-selection are orthogonal (|overlap| = {overlap:e} <= {tolerance:e})")]
    OrthogonalSelection { overlap: f64, tolerance: f64 },

    #[error("weak value {re} + {im}i cannot be reached from this pre-selection")]
    UnreachableWeakValue { re: f64, im: f64 },

    #[error("medium fully extinguishes light at ω = {omega:e} rad/s")]
    FullExtinction { omega: f64 },

    #[error("group velocity is infinite (t_f + <t> = {denominator:e} s)")]
    InfiniteVelocity { denominator: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("sampling grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("negative intensity {value:e} at sample {index} exceeds noise floor {floor:e}")]
    NegativeIntensity { index: usize, value: f64, floor: f64 },

    #[error("{fraction:e} of the pulse energy wraps around the time window (limit {limit:e}); enlarge the window")]
    WrapAround { fraction: f64, limit: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("signal has zero energy")]
    ZeroEnergy,

    #[error("intensity never crosses threshold {threshold:e}")]
    NeverCrosses { threshold: f64 },

    #[error("fit residual is flat across the weak-value range (spread {spread:e})")]
    NoMinimum { spread: f64 },

    #[error("signal file: {0}")]
    SignalFile(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
