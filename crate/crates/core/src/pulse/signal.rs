use num_complex::Complex64;

use crate::error::{Error, Result};

/// Negative intensities within this fraction of the peak are clamped to zero.
pub const NOISE_FLOOR: f64 = 1e-9;

/// Complex envelope sampled at `t_start + k·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    t_start: f64,
    dt: f64,
    samples: Vec<Complex64>,
    carrier_omega: f64,
}

impl SampledSignal {
    pub fn new(t_start: f64, dt: f64, samples: Vec<Complex64>, carrier_omega: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid("dt", format!("must be > 0, got {dt}")));
        }
        if samples.len() < 8 {
            return Err(Error::invalid(
                "samples",
                format!("need at least 8 samples, got {}", samples.len()),
            ));
        }
        if !t_start.is_finite() || !carrier_omega.is_finite() {
            return Err(Error::invalid("t_start", "time origin and carrier must be finite"));
        }
        if samples.iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(Error::invalid("samples", "non-finite envelope value"));
        }
        Ok(Self {
            t_start,
            dt,
            samples,
            carrier_omega,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn carrier_omega(&self) -> f64 {
        self.carrier_omega
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, index: usize) -> f64 {
        self.t_start + index as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|k| self.time(k))
    }

    /// Same grid and carrier, new samples.
    pub(crate) fn with_samples(&self, samples: Vec<Complex64>) -> Self {
        Self {
            samples,
            ..*self
        }
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_sqr()).collect()
    }

    pub fn peak_intensity(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).fold(0.0, f64::max)
    }

    /// `Σ|s|²·dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.dt
    }

    pub fn intensity_trace(&self) -> IntensityTrace {
        IntensityTrace {
            t_start: self.t_start,
            dt: self.dt,
            values: self.intensity(),
            carrier_omega: self.carrier_omega,
        }
    }

    /// Errors unless both signals share length, origin and spacing.
    pub fn check_same_grid(&self, other: &SampledSignal) -> Result<()> {
        check_grid(
            (self.t_start, self.dt, self.len()),
            (other.t_start, other.dt, other.len()),
        )
    }
}

pub(crate) fn check_grid(a: (f64, f64, usize), b: (f64, f64, usize)) -> Result<()> {
    if a.2 != b.2 {
        return Err(Error::GridMismatch(format!("{} vs {} samples", a.2, b.2)));
    }
    if (a.1 - b.1).abs() > 1e-9 * a.1 {
        return Err(Error::GridMismatch(format!("dt {:e} vs {:e}", a.1, b.1)));
    }
    if (a.0 - b.0).abs() > 1e-6 * a.1 {
        return Err(Error::GridMismatch(format!("t_start {:e} vs {:e}", a.0, b.0)));
    }
    Ok(())
}

/// Detected intensity on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityTrace {
    pub t_start: f64,
    pub dt: f64,
    pub values: Vec<f64>,
    pub carrier_omega: f64,
}

impl IntensityTrace {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn check_same_grid(&self, other: &IntensityTrace) -> Result<()> {
        check_grid(
            (self.t_start, self.dt, self.len()),
            (other.t_start, other.dt, other.len()),
        )
    }
}

/// Pointwise `√I`, treating the pulse as transform limited (flat phase).
pub fn amplitude_from_intensity(trace: &IntensityTrace) -> Result<SampledSignal> {
    let floor = NOISE_FLOOR * trace.peak();
    let mut samples = Vec::with_capacity(trace.len());
    for (index, &value) in trace.values.iter().enumerate() {
        if value < 0.0 && -value > floor {
            return Err(Error::NegativeIntensity { index, value, floor });
        }
        samples.push(Complex64::new(value.max(0.0).sqrt(), 0.0));
    }
    SampledSignal::new(trace.t_start, trace.dt, samples, trace.carrier_omega)
}
