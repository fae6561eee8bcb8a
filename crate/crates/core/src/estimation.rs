//! Recovering a real weak value from a reference pulse and a measured output
//! intensity.
//!
//! The model is `s·F(Ω, w)` with `F(Ω, w) = cos(Ωδτ/2) + i·w·sin(Ωδτ/2)`,
//! evaluated in the frame where the carrier sits at `Ω = 0`. The scalar `s`
//! absorbs the post-selection transmission and is solved for in closed form,
//! leaving `w` as the only shape parameter.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::medium::FiberMedium;
use crate::pulse::{amplitude_from_intensity, wrap_fraction, IntensityTrace, SampledSignal, SpectralGrid};

/// Reference pulse as recorded: either a detector intensity (turned into an
/// amplitude assuming a flat phase) or a known complex envelope.
#[derive(Debug, Clone, Copy)]
pub enum ReferenceTrace<'a> {
    Intensity(&'a IntensityTrace),
    Amplitude(&'a SampledSignal),
}

impl ReferenceTrace<'_> {
    pub fn to_amplitude(&self) -> Result<SampledSignal> {
        match self {
            ReferenceTrace::Intensity(trace) => amplitude_from_intensity(trace),
            ReferenceTrace::Amplitude(signal) => Ok((*signal).clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub grid_points: usize,
    /// Refinement stops once the bracket is narrower than this fraction of
    /// the search range.
    pub refine_tolerance: f64,
    /// Largest fraction of the reference energy the ±δτ/2 shifts may wrap.
    pub wrap_tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            grid_points: 201,
            refine_tolerance: 1e-7,
            wrap_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub w_estimate: f64,
    /// Amplitude factor `s` with `I_measured ≈ s²·|model(w)|²`.
    pub amplitude_scale: f64,
    /// `‖m − c·p‖ / ‖m‖` on peak-normalized intensities.
    pub residual: f64,
    /// Number of model evaluations.
    pub iterations: usize,
}

impl FitResult {
    /// Mean arrival shift `(δτ/2)·w` implied by the estimate.
    pub fn implied_shift(&self, fiber: &FiberMedium) -> f64 {
        0.5 * fiber.dgd() * self.w_estimate
    }
}

/// Spectral model shared by every evaluation of a fit.
struct Model {
    t_start: f64,
    dt: f64,
    carrier_omega: f64,
    grid: SpectralGrid,
    spectrum: Vec<Complex64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl Model {
    fn new(reference: &ReferenceTrace, fiber: &FiberMedium, wrap_tolerance: f64) -> Result<Self> {
        let amplitude = reference.to_amplitude()?;
        let half = 0.5 * fiber.dgd();
        let fraction = wrap_fraction(&amplitude, &[half, -half]);
        if fraction > wrap_tolerance {
            return Err(Error::WrapAround {
                fraction,
                limit: wrap_tolerance,
            });
        }
        let grid = SpectralGrid::new(amplitude.len(), amplitude.dt());
        let spectrum = grid.forward(amplitude.samples());
        let (sin, cos) = grid.detunings().iter().map(|&w| (w * half).sin_cos()).unzip();
        Ok(Self {
            t_start: amplitude.t_start(),
            dt: amplitude.dt(),
            carrier_omega: amplitude.carrier_omega(),
            grid,
            spectrum,
            cos,
            sin,
        })
    }

    fn envelope(&self, w: f64) -> Vec<Complex64> {
        let filtered = self
            .spectrum
            .iter()
            .zip(self.cos.iter().zip(&self.sin))
            .map(|(s, (&c, &si))| s * Complex64::new(c, w * si))
            .collect();
        self.grid.inverse(filtered)
    }

    fn intensity(&self, w: f64) -> Vec<f64> {
        self.envelope(w).iter().map(|s| s.norm_sqr()).collect()
    }
}

/// Propagates the reference through the fit model with unit amplitude.
pub fn simulate_with_w(reference: ReferenceTrace, w: f64, fiber: &FiberMedium) -> Result<SampledSignal> {
    let model = Model::new(&reference, fiber, FitOptions::default().wrap_tolerance)?;
    SampledSignal::new(model.t_start, model.dt, model.envelope(w), model.carrier_omega)
}

/// Peak-normalized measured intensity and its norm.
struct Target {
    normalized: Vec<f64>,
    norm: f64,
    peak: f64,
}

struct Evaluation {
    residual: f64,
    scale: f64,
}

impl Target {
    fn evaluate(&self, model: &[f64]) -> Evaluation {
        let mp: f64 = self.normalized.iter().zip(model).map(|(m, p)| m * p).sum();
        let pp: f64 = model.iter().map(|p| p * p).sum();
        let c = if pp > 0.0 { (mp / pp).max(0.0) } else { 0.0 };
        let err: f64 = self
            .normalized
            .iter()
            .zip(model)
            .map(|(m, p)| (m - c * p).powi(2))
            .sum();
        Evaluation {
            residual: err.sqrt() / self.norm,
            scale: (c * self.peak).sqrt(),
        }
    }
}

pub fn fit_weak_value(
    reference: ReferenceTrace,
    measured: &IntensityTrace,
    fiber: &FiberMedium,
    w_range: (f64, f64),
) -> Result<FitResult> {
    fit_weak_value_with(reference, measured, fiber, w_range, &FitOptions::default())
}

pub fn fit_weak_value_with(
    reference: ReferenceTrace,
    measured: &IntensityTrace,
    fiber: &FiberMedium,
    w_range: (f64, f64),
    options: &FitOptions,
) -> Result<FitResult> {
    let (lo, hi) = w_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid("w_range", format!("need finite w_min < w_max, got [{lo}, {hi}]")));
    }
    if options.grid_points < 3 {
        return Err(Error::invalid("grid_points", "need at least 3"));
    }
    let model = Model::new(&reference, fiber, options.wrap_tolerance)?;
    crate::pulse::check_grid(
        (model.t_start, model.dt, model.spectrum.len()),
        (measured.t_start, measured.dt, measured.len()),
    )?;
    let peak = measured.peak();
    if !(peak > 0.0) {
        return Err(Error::ZeroEnergy);
    }
    let normalized: Vec<f64> = measured.values.iter().map(|v| v / peak).collect();
    let norm = normalized.iter().map(|m| m * m).sum::<f64>().sqrt();
    let target = Target { normalized, norm, peak };
    let eval = |w: f64| target.evaluate(&model.intensity(w));

    let n = options.grid_points;
    let step = (hi - lo) / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|k| lo + k as f64 * step).collect();
    let scan: Vec<f64> = grid.par_iter().map(|&w| eval(w).residual).collect();
    let (best, &best_residual) = scan
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    let worst = scan.iter().copied().fold(f64::MIN, f64::max);
    let spread = worst - best_residual;
    if !(spread > 1e-12 * worst.max(1.0)) {
        return Err(Error::NoMinimum { spread });
    }

    // golden-section search on the bracket around the best grid point
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(n - 1)];
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = eval(x1).residual;
    let mut f2 = eval(x2).residual;
    let mut iterations = n + 2;
    let tolerance = options.refine_tolerance * (hi - lo);
    while b - a > tolerance {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = eval(x1).residual;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = eval(x2).residual;
        }
        iterations += 1;
    }
    let refined = 0.5 * (a + b);
    let at_refined = eval(refined);
    iterations += 1;
    let (w_estimate, fit) = if at_refined.residual <= best_residual {
        (refined, at_refined)
    } else {
        (grid[best], eval(grid[best]))
    };
    Ok(FitResult {
        w_estimate,
        amplitude_scale: fit.scale,
        residual: fit.residual,
        iterations,
    })
}
