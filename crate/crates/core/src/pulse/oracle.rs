use num_complex::Complex64;

use super::{PropagationOptions, SampledSignal};
use crate::error::{Error, Result};
use crate::medium::EffectiveMedium;

/// Time-domain propagation as two delayed replicas:
///
/// `out(t) = e^{i n_f ω₀L/c}·[A·e^{+iω₀δτ/2}·in(t − t_f − δτ/2) + B·e^{−iω₀δτ/2}·in(t − t_f + δτ/2)]`
///
/// Both delays must be whole numbers of samples, so no interpolation (and
/// no spectral machinery) is involved. Samples shifted in from outside the
/// window are zero.
pub fn propagate_oracle(
    input: &SampledSignal,
    em: &EffectiveMedium,
    options: &PropagationOptions,
) -> Result<SampledSignal> {
    let (slow, fast) = options.arm_delays(em);
    let slow_shift = sample_shift(slow, input.dt())?;
    let fast_shift = sample_shift(fast, input.dt())?;

    let omega0 = input.carrier_omega();
    let half_phase = 0.5 * omega0 * em.fiber().dgd();
    let free = if options.remove_free_delay {
        Complex64::new(1.0, 0.0)
    } else {
        em.free_phase(omega0)
    };
    let slow_weight = free * em.a() * Complex64::from_polar(1.0, half_phase);
    let fast_weight = free * em.b() * Complex64::from_polar(1.0, -half_phase);

    let src = input.samples();
    let at = |k: usize, shift: i64| -> Complex64 {
        let j = k as i64 - shift;
        if j >= 0 && (j as usize) < src.len() {
            src[j as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let out = (0..src.len())
        .map(|k| slow_weight * at(k, slow_shift) + fast_weight * at(k, fast_shift))
        .collect();
    Ok(input.with_samples(out))
}

fn sample_shift(delay: f64, dt: f64) -> Result<i64> {
    let samples = delay / dt;
    let rounded = samples.round();
    if (samples - rounded).abs() > 1e-6 {
        return Err(Error::GridMismatch(format!(
            "delay {delay:e} s is not a whole number of {dt:e} s samples"
        )));
    }
    Ok(rounded as i64)
}
