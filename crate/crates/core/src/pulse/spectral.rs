use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::SampledSignal;
use crate::error::{Error, Result};
use crate::medium::{EffectiveMedium, FiberMedium};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationOptions {
    /// Drop `e^{i n_f ωL/c}` so outputs are referenced to free propagation.
    pub remove_free_delay: bool,
    /// Largest fraction of the input energy allowed to wrap around the
    /// periodic time window.
    pub wrap_tolerance: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            remove_free_delay: false,
            wrap_tolerance: 1e-6,
        }
    }
}

impl PropagationOptions {
    pub fn relative_to_free_propagation() -> Self {
        Self {
            remove_free_delay: true,
            ..Self::default()
        }
    }

    /// Delays of the slow (`H`) and fast (`V`) replicas.
    pub fn arm_delays(&self, em: &EffectiveMedium) -> (f64, f64) {
        let base = if self.remove_free_delay {
            0.0
        } else {
            em.fiber().free_delay()
        };
        let half = 0.5 * em.fiber().dgd();
        (base + half, base - half)
    }
}

/// Planned transforms for one grid size.
///
/// Bin `k` holds detuning `Ω_k = −2π·m_k/(N·dt)` with `m_k` the signed
/// frequency index. The sign follows from the forward DFT kernel
/// `e^{−2πikn/N}` standing in for `∫ s(t)·e^{+iΩt} dt`, so that multiplying
/// bin `k` by `e^{iΩ_kΔ}` delays the signal by `Δ`.
pub struct SpectralGrid {
    dt: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    detunings: Vec<f64>,
}

impl SpectralGrid {
    pub fn new(len: usize, dt: f64) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let span = len as f64 * dt;
        let detunings = (0..len)
            .map(|k| {
                let m = if k < len.div_ceil(2) { k as f64 } else { k as f64 - len as f64 };
                -2.0 * std::f64::consts::PI * m / span
            })
            .collect();
        Self {
            dt,
            forward,
            inverse,
            detunings,
        }
    }

    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn detunings(&self) -> &[f64] {
        &self.detunings
    }

    pub fn forward(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward.process(&mut buf);
        buf
    }

    /// Inverse transform including the `1/N` normalization.
    pub fn inverse(&self, mut spectrum: Vec<Complex64>) -> Vec<Complex64> {
        self.inverse.process(&mut spectrum);
        let scale = 1.0 / self.len() as f64;
        spectrum.iter_mut().for_each(|s| *s *= scale);
        spectrum
    }

    /// Multiplies every bin of an already transformed signal by
    /// `response(Ω_k)` and transforms back.
    pub fn apply(&self, spectrum: &[Complex64], response: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        let filtered = spectrum
            .iter()
            .zip(&self.detunings)
            .map(|(s, &omega)| s * response(omega))
            .collect();
        self.inverse(filtered)
    }

    pub fn filter(&self, samples: &[Complex64], response: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        self.apply(&self.forward(samples), response)
    }
}

/// Fraction of the signal energy that a circular shift by each of `delays`
/// carries across the window boundary.
pub fn wrap_fraction(signal: &SampledSignal, delays: &[f64]) -> f64 {
    let intensity = signal.intensity();
    let total: f64 = intensity.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let n = intensity.len();
    let edge = |delay: f64| ((delay.abs() / signal.dt()) - 1e-9).ceil().max(0.0) as usize;
    let tail = delays.iter().filter(|d| **d > 0.0).map(|&d| edge(d)).max().unwrap_or(0).min(n);
    let head = delays.iter().filter(|d| **d < 0.0).map(|&d| edge(d)).max().unwrap_or(0).min(n);
    let leaked: f64 = intensity[n - tail..].iter().sum::<f64>() + intensity[..head].iter().sum::<f64>();
    leaked / total
}

/// Propagates an envelope through the medium in the frequency domain:
/// transform, multiply bin `Ω` by `G(ω₀ + Ω)`, transform back.
pub fn propagate_spectral(
    input: &SampledSignal,
    em: &EffectiveMedium,
    options: &PropagationOptions,
) -> Result<SampledSignal> {
    let (slow, fast) = options.arm_delays(em);
    let fraction = wrap_fraction(input, &[slow, fast]);
    if fraction > options.wrap_tolerance {
        return Err(Error::WrapAround {
            fraction,
            limit: options.wrap_tolerance,
        });
    }

    let grid = SpectralGrid::new(input.len(), input.dt());
    let omega0 = input.carrier_omega();
    let t_f = em.fiber().free_delay();
    // Carrier and per-bin parts of the free phase are kept apart: n_f·ω₀·L/c
    // is ~1e7 rad and adding Ω·t_f to it would cost nine digits.
    let carrier_free = em.free_phase(omega0);
    let remove = options.remove_free_delay;
    let out = grid.filter(input.samples(), |detuning| {
        let pol = em.polarization_factor(omega0 + detuning);
        if remove {
            pol
        } else {
            carrier_free * Complex64::from_polar(1.0, detuning * t_f) * pol
        }
    });
    Ok(input.with_samples(out))
}

/// The input after the bare fiber with both modes in step, i.e. delayed by
/// `t_f` with the carrier phase `e^{i n_f ω₀L/c}`. With the free delay removed
/// this is the input itself. Measured traces are compared against it.
pub fn propagate_free(input: &SampledSignal, fiber: &FiberMedium, options: &PropagationOptions) -> Result<SampledSignal> {
    if options.remove_free_delay {
        return Ok(input.clone());
    }
    let t_f = fiber.free_delay();
    let fraction = wrap_fraction(input, &[t_f]);
    if fraction > options.wrap_tolerance {
        return Err(Error::WrapAround {
            fraction,
            limit: options.wrap_tolerance,
        });
    }
    let carrier = Complex64::from_polar(1.0, input.carrier_omega() * t_f);
    let grid = SpectralGrid::new(input.len(), input.dt());
    let out = grid.filter(input.samples(), |detuning| carrier * Complex64::from_polar(1.0, detuning * t_f));
    Ok(input.with_samples(out))
}
