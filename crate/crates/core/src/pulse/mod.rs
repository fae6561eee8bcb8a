//! Sampled pulse envelopes, propagation through the effective medium and
//! pulse metrology.
//!
//! Signals are complex baseband envelopes on a uniform grid plus the carrier
//! they ride on; what a detector sees is the intensity `|envelope|²`.

mod metrics;
mod oracle;
mod shapes;
mod signal;
mod spectral;

pub mod csv;

pub use metrics::{center_of_mass, front_arrival, peak_time};
pub use oracle::propagate_oracle;
pub use shapes::{gaussian_pulse, square_pulse};
pub(crate) use signal::check_grid;
pub use signal::{amplitude_from_intensity, IntensityTrace, SampledSignal, NOISE_FLOOR};
pub use spectral::{propagate_free, propagate_spectral, wrap_fraction, PropagationOptions, SpectralGrid};

/// Grid size used when a scenario does not ask for one.
pub const DEFAULT_SAMPLES: usize = 1 << 14;

/// Front threshold, as a fraction of the input peak, for signal-velocity runs.
pub const DEFAULT_FRONT_THRESHOLD: f64 = 1e-3;
