use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::SampledSignal;
use crate::error::{Error, Result};

/// Unit-energy Gaussian envelope whose *intensity* has full width at half
/// maximum `fwhm`, on the grid `k·dt`, `k < n_samples`.
pub fn gaussian_pulse(
    center: f64,
    fwhm: f64,
    dt: f64,
    n_samples: usize,
    carrier_omega: f64,
) -> Result<SampledSignal> {
    if !(fwhm > 4.0 * dt) {
        return Err(Error::GridTooCoarse(format!(
            "fwhm {fwhm:e} s needs more than 4 samples of {dt:e} s"
        )));
    }
    let window = dt * n_samples as f64;
    if window < 6.0 * fwhm || center - 3.0 * fwhm < 0.0 || center + 3.0 * fwhm > window - dt {
        return Err(Error::GridTooCoarse(format!(
            "window [0, {window:e}] s must hold ±3 fwhm around {center:e} s"
        )));
    }
    // |a|² = exp(−4 ln2 (t−c)²/fwhm²)
    let k = 2.0 * std::f64::consts::LN_2 / (fwhm * fwhm);
    let mut samples: Vec<Complex64> = (0..n_samples)
        .map(|i| {
            let x = i as f64 * dt - center;
            Complex64::new((-k * x * x).exp(), 0.0)
        })
        .collect();
    let energy: f64 = samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * dt;
    let scale = energy.sqrt().recip();
    samples.iter_mut().for_each(|s| *s *= scale);
    SampledSignal::new(0.0, dt, samples, carrier_omega)
}

/// Flat-top pulse of unit peak amplitude. The envelope rises as
/// `sin(π/2·u)` over `rise` starting at `start`, so the intensity is
/// `sin²` shaped and crosses one half at `start + rise/2`; the falling edge
/// mirrors it `duration` later. `duration` is the intensity FWHM.
pub fn square_pulse(
    start: f64,
    duration: f64,
    rise: f64,
    dt: f64,
    n_samples: usize,
    carrier_omega: f64,
) -> Result<SampledSignal> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::invalid("duration", format!("must be > 0, got {duration}")));
    }
    if !(rise >= 2.0 * dt) {
        return Err(Error::GridTooCoarse(format!(
            "rise {rise:e} s must span at least 2 samples of {dt:e} s"
        )));
    }
    let end = start + duration + rise;
    if start < 0.0 || end > dt * (n_samples as f64 - 1.0) {
        return Err(Error::GridTooCoarse(format!(
            "window [0, {:e}] s does not hold the pulse [{start:e}, {end:e}] s",
            dt * (n_samples as f64 - 1.0)
        )));
    }
    let edge = |u: f64| {
        if u <= 0.0 {
            0.0
        } else if u >= 1.0 {
            1.0
        } else {
            (FRAC_PI_2 * u).sin()
        }
    };
    let samples = (0..n_samples)
        .map(|i| {
            let t = i as f64 * dt;
            let up = edge((t - start) / rise);
            let down = edge((start + duration + rise - t) / rise);
            Complex64::new(up.min(down), 0.0)
        })
        .collect();
    SampledSignal::new(0.0, dt, samples, carrier_omega)
}
