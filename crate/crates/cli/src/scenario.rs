//! Turning a parsed config into media, an input pulse and sweep frequencies.

use fastlight_core::pulse::{gaussian_pulse, square_pulse};
use fastlight_core::{EffectiveMedium, PolarizationState, PropagationOptions, SampledSignal, WeakValue};

use crate::config::{PostSpec, PulseShape, ScenarioConfig};
use crate::error::CliError;

/// One post-selection realized as a medium.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub label: String,
    pub medium: EffectiveMedium,
}

pub fn geometries(config: &ScenarioConfig) -> Result<Vec<Geometry>, CliError> {
    let omega0 = config.carrier_omega();
    config
        .posts
        .iter()
        .map(|spec| {
            let place = |post: PolarizationState| {
                if config.align_to_carrier {
                    EffectiveMedium::aligned_to_carrier(config.fiber, config.pre, post, omega0)
                } else {
                    EffectiveMedium::new(config.fiber, config.pre, post)
                }
            };
            let medium = match *spec {
                PostSpec::Angle { angle, phase } => place(PolarizationState::linear_with_phase(angle, phase)),
                PostSpec::State(state) => place(state),
                PostSpec::Target(w) => {
                    EffectiveMedium::for_carrier_weak_value(config.fiber, config.pre, WeakValue::real(w), omega0)
                        .map_err(|e| CliError::field("target_weak_values", None, e.to_string()))?
                }
            };
            Ok(Geometry {
                label: spec.label(),
                medium,
            })
        })
        .collect()
}

pub fn propagation_options(config: &ScenarioConfig) -> PropagationOptions {
    PropagationOptions {
        remove_free_delay: config.remove_free_delay,
        ..PropagationOptions::default()
    }
}

/// Builds the input pulse. Unset grid parameters follow the window policy:
/// the pulse plus twice the largest expected shift plus, when retained, the
/// free delay; Gaussians get 12 widths, square pulses 3 durations.
pub fn input_pulse(config: &ScenarioConfig, geometries: &[Geometry]) -> Result<SampledSignal, CliError> {
    let spec = &config.pulse;
    let omega0 = config.carrier_omega();
    let max_shift = geometries
        .iter()
        .filter_map(|g| g.medium.mean_arrival_shift(omega0).ok())
        .fold(0.5 * config.fiber.dgd(), |m, s| m.max(s.abs()));
    let free = if config.remove_free_delay { 0.0 } else { config.fiber.free_delay() };
    let n = spec.samples;
    let span = match spec.shape {
        PulseShape::Gaussian => 12.0 * spec.width,
        PulseShape::Square => 3.0 * spec.width,
    };
    let dt = spec.dt.unwrap_or((span + 2.0 * max_shift + free) / n as f64);
    let window = dt * n as f64;
    let grid_error = |e: fastlight_core::Error| CliError::Scenario(format!("{e}; adjust `width`, `dt` or `samples`"));
    match spec.shape {
        PulseShape::Gaussian => {
            let center = spec.center.unwrap_or(0.5 * (window - free));
            gaussian_pulse(center, spec.width, dt, n, omega0).map_err(grid_error)
        }
        PulseShape::Square => {
            let start = spec.center.unwrap_or(0.5 * (window - free - spec.width));
            let rise = spec.rise.unwrap_or(20.0 * dt);
            square_pulse(start, spec.width, rise, dt, n, omega0).map_err(grid_error)
        }
    }
}

/// Sweep frequencies `ω₀ + 2π·Δν`, evenly spaced in detuning.
pub fn sweep_detunings(config: &ScenarioConfig) -> Vec<f64> {
    let (lo, hi) = config.detuning;
    let n = config.sweep_points;
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}
