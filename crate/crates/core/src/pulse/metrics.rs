use super::SampledSignal;
use crate::error::{Error, Result};

/// `Σ t·|s|² / Σ |s|²`.
pub fn center_of_mass(signal: &SampledSignal) -> Result<f64> {
    let mut weight = 0.0;
    let mut moment = 0.0;
    for (k, s) in signal.samples().iter().enumerate() {
        let i = s.norm_sqr();
        weight += i;
        moment += k as f64 * i;
    }
    if weight == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    // moment in sample units keeps the origin out of the sum
    Ok(signal.t_start() + signal.dt() * moment / weight)
}

/// Earliest time the intensity exceeds `fraction × reference_peak`, linearly
/// interpolated between the bracketing samples. `reference_peak` defaults to
/// the signal's own peak intensity.
pub fn front_arrival(signal: &SampledSignal, fraction: f64, reference_peak: Option<f64>) -> Result<f64> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid("threshold_fraction", format!("must lie in (0, 1), got {fraction}")));
    }
    let reference = match reference_peak {
        Some(p) if !(p > 0.0 && p.is_finite()) => {
            return Err(Error::invalid("reference_peak", format!("must be > 0, got {p}")));
        }
        Some(p) => p,
        None => signal.peak_intensity(),
    };
    let threshold = fraction * reference;
    let intensity = signal.intensity();
    let k = intensity
        .iter()
        .position(|&i| i > threshold)
        .ok_or(Error::NeverCrosses { threshold })?;
    if k == 0 {
        return Ok(signal.t_start());
    }
    let (before, after) = (intensity[k - 1], intensity[k]);
    let offset = (threshold - before) / (after - before);
    Ok(signal.time(k - 1) + offset * signal.dt())
}

/// Time of maximum intensity. Ties go to the earliest sample; a strict local
/// maximum is refined by a parabola through it and its two neighbors.
pub fn peak_time(signal: &SampledSignal) -> Result<f64> {
    let intensity = signal.intensity();
    let mut best = 0;
    for (k, &i) in intensity.iter().enumerate() {
        if i > intensity[best] {
            best = k;
        }
    }
    if intensity[best] == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let mut t = signal.time(best);
    if best > 0 && best + 1 < intensity.len() {
        let (lo, mid, hi) = (intensity[best - 1], intensity[best], intensity[best + 1]);
        if mid > lo && mid > hi {
            t += 0.5 * (lo - hi) / (lo - 2.0 * mid + hi) * signal.dt();
        }
    }
    Ok(t)
}
