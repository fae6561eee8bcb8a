//! Simulation of fast and slow light in a birefringent fiber placed between
//! two polarizers.
//!
//! The polarizer–fiber–polarizer stack behaves as an effective linear medium
//! whose response is controlled by a weak value built from the input
//! (pre-selection) and output (post-selection) polarization states. The crate
//! covers:
//!
//! * [`polarization`]: two-mode Jones states, fiber birefringence and weak values,
//! * [`medium`]: the response function and derived absorption, refraction,
//!   group index, group velocity and mean arrival-time shift,
//! * [`pulse`]: sampled envelopes, spectral propagation, a two-replica
//!   time-domain oracle and pulse metrology,
//! * [`estimation`]: recovering the weak value from a reference and a
//!   measured intensity trace.
//!
//! Conventions used throughout: plane waves evolve as `e^{-iωt}`, so a
//! spectral factor `e^{+iωΔ}` delays a signal by `Δ`. `H` is the slow fiber
//! eigenmode and `V` the fast one.

pub mod error;
pub mod estimation;
pub mod medium;
pub mod polarization;
pub mod pulse;

pub use error::{Error, Result};
pub use estimation::{fit_weak_value, fit_weak_value_with, simulate_with_w, FitOptions, FitResult, ReferenceTrace};
pub use medium::{EffectiveMedium, FiberMedium, SweepPoint};
pub use polarization::{PolarizationState, WeakValue};
pub use pulse::{IntensityTrace, PropagationOptions, SampledSignal};

pub use num_complex::Complex64;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Telecom carrier wavelength used by default, m.
pub const DEFAULT_WAVELENGTH: f64 = 1.55e-6;

/// Angular carrier frequency `2πc/λ` for a vacuum wavelength in meters.
pub fn carrier_omega(wavelength: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / wavelength
}
