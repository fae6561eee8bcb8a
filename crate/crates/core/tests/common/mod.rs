#![allow(dead_code)]

use fastlight_core::{carrier_omega, Complex64, FiberMedium, PolarizationState, DEFAULT_WAVELENGTH, SPEED_OF_LIGHT};
use rand::Rng;

pub fn omega0() -> f64 {
    carrier_omega(DEFAULT_WAVELENGTH)
}

/// Reference-index, reference-dgd fiber whose free delay is exactly
/// `samples` steps of `dt` (up to rounding).
pub fn aligned_fiber(dt: f64, samples: usize) -> FiberMedium {
    let reference = FiberMedium::reference();
    let length = samples as f64 * dt * SPEED_OF_LIGHT / reference.index();
    FiberMedium::new(length, reference.index(), reference.dgd()).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R) -> PolarizationState {
    loop {
        let h = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if h.norm() + v.norm() > 1e-2 {
            return PolarizationState::new(h, v).unwrap();
        }
    }
}

/// `‖a − b‖ / ‖b‖`.
pub fn relative_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Centroid shift of a real Gaussian envelope (intensity FWHM `fwhm`) behind
/// the filter `cos x + iW sin x`, `x = Ωδτ/2`, from spectral moments.
///
/// The centroid shift is `⟨∂_Ω arg H⟩` weighted by `|A(Ω)H(Ω)|²`. For this
/// filter the weighted phase slope is `(δτ/2)·W` everywhere, so the shift is
/// `(δτ/2)·W / ⟨|H|²⟩` with `⟨|H|²⟩ = 1 + (W² − 1)⟨sin²x⟩`, and the power
/// spectrum `e^{−2σ²Ω²}` of an intensity with std `σ` gives
/// `⟨sin²x⟩ = (1 − e^{−δτ²/(8σ²)})/2`.
pub fn com_shift_oracle(w: f64, dgd: f64, fwhm: f64) -> f64 {
    let sigma = fwhm / (8.0 * std::f64::consts::LN_2).sqrt();
    let sin2 = 0.5 * (1.0 - (-dgd * dgd / (8.0 * sigma * sigma)).exp());
    0.5 * dgd * w / (1.0 + (w * w - 1.0) * sin2)
}
