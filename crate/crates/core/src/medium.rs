//! The polarizer–fiber–polarizer stack as an effective linear medium.
//!
//! A plane wave `e^{−iωt}` leaves the stack as `G(ω)·e^{−iωt}` with
//!
//! `G(ω) = e^{i n_f ωL/c} · (A + B) · F(ω, W₀)`,
//! `F(ω, W₀) = cos(ωδτ/2) + i·W₀·sin(ωδτ/2)`,
//!
//! and absorption and refraction follow from `G = e^{−κL}·e^{i n ωL/c}`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polarization::{
    self, fiber_rotation, mode_overlaps, post_selection_for, PolarizationState, WeakValue,
    DEFAULT_ORTHOGONALITY_TOLERANCE,
};
use crate::SPEED_OF_LIGHT;

/// Geometry of the birefringent fiber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberMedium {
    length: f64,
    index: f64,
    dgd: f64,
}

impl FiberMedium {
    /// `length` in meters, `index` the local refractive index `n_f`, `dgd`
    /// the differential group delay `δτ` in seconds.
    pub fn new(length: f64, index: f64, dgd: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid("length", format!("must be > 0, got {length}")));
        }
        if !(index >= 1.0 && index.is_finite()) {
            return Err(Error::invalid("index", format!("must be >= 1, got {index}")));
        }
        if !(dgd >= 0.0 && dgd.is_finite()) {
            return Err(Error::invalid("dgd", format!("must be >= 0, got {dgd}")));
        }
        Ok(Self { length, index, dgd })
    }

    /// The polarization-maintaining fiber of the reference experiment:
    /// 1.5 m, n_f = 1.5, δτ = 2.66 ps.
    pub fn reference() -> Self {
        Self {
            length: 1.5,
            index: 1.5,
            dgd: 2.66e-12,
        }
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn index(&self) -> f64 {
        self.index
    }

    pub fn dgd(&self) -> f64 {
        self.dgd
    }

    /// Free propagation time `t_f = n_f·L/c`.
    pub fn free_delay(&self) -> f64 {
        self.index * self.length / SPEED_OF_LIGHT
    }

    /// Magnitude of the (negative) `Re W` below which `n_g < 1`:
    /// `2(n_f − 1)·L/(cδτ)`, i.e. `L/(cδτ)` for `n_f = 1.5`.
    pub fn superluminal_threshold(&self) -> f64 {
        2.0 * (self.index - 1.0) * self.length / (SPEED_OF_LIGHT * self.dgd)
    }

    /// Magnitude of the (negative) `Re W` below which `n_g < 0`:
    /// `2n_f·L/(cδτ)`, i.e. `3L/(cδτ)` for `n_f = 1.5`.
    pub fn negative_velocity_threshold(&self) -> f64 {
        2.0 * self.index * self.length / (SPEED_OF_LIGHT * self.dgd)
    }

    /// Period of the response in angular frequency, `2π/δτ`.
    pub fn free_spectral_range(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.dgd
    }
}

/// `F(ω, W₀) = cos(ωδτ/2) + i·W₀·sin(ωδτ/2)`.
pub fn structure_factor(omega: f64, w0: WeakValue, dgd: f64) -> Complex64 {
    let (s, c) = (0.5 * omega * dgd).sin_cos();
    Complex64::new(c, 0.0) + Complex64::i() * w0.as_complex() * s
}

/// Amplitudes at or below this are round-off from cancelling unit-norm
/// terms and are treated as exactly zero.
pub const ROUNDOFF_FLOOR: f64 = 1e-15;

/// Fiber plus pre- and post-selection.
///
/// The post-selection carries a global phase chosen so that `A + B` is real
/// and non-negative; `κ` then follows from `ln(A + B) + ln|F|` directly.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveMedium {
    fiber: FiberMedium,
    pre: PolarizationState,
    post: PolarizationState,
    a: Complex64,
    b: Complex64,
    transmission_sum: f64,
    w0: Option<WeakValue>,
    tolerance: f64,
}

impl EffectiveMedium {
    pub fn new(fiber: FiberMedium, pre: PolarizationState, post: PolarizationState) -> Self {
        Self::with_tolerance(fiber, pre, post, DEFAULT_ORTHOGONALITY_TOLERANCE)
    }

    pub fn with_tolerance(
        fiber: FiberMedium,
        pre: PolarizationState,
        post: PolarizationState,
        tolerance: f64,
    ) -> Self {
        let (a, b) = mode_overlaps(&post, &pre);
        let sum = a + b;
        let post = if sum.norm() > ROUNDOFF_FLOOR {
            post.with_global_phase(sum.arg())
        } else {
            post
        };
        let (a, b) = mode_overlaps(&post, &pre);
        let transmission_sum = (a + b).re.max(0.0);
        let w0 = polarization::weak_value_static(&pre, &post, tolerance).ok();
        Self {
            fiber,
            pre,
            post,
            a,
            b,
            transmission_sum,
            w0,
            tolerance,
        }
    }

    /// Interprets `post` relative to the state the fiber delivers at the
    /// carrier: the post-selection is co-rotated by the fiber's birefringent
    /// phase at `carrier_omega`, so the weak value seen at the carrier equals
    /// the static weak value of the unrotated pair. This is what adjusting
    /// the fiber length by a fraction of a beat length achieves on the bench.
    pub fn aligned_to_carrier(
        fiber: FiberMedium,
        pre: PolarizationState,
        post: PolarizationState,
        carrier_omega: f64,
    ) -> Self {
        let post = fiber_rotation(&post, carrier_omega, fiber.dgd);
        Self::new(fiber, pre, post)
    }

    /// Chooses the post-selection so that the weak value at `carrier_omega`
    /// equals `target`.
    pub fn for_carrier_weak_value(
        fiber: FiberMedium,
        pre: PolarizationState,
        target: WeakValue,
        carrier_omega: f64,
    ) -> Result<Self> {
        let at_carrier = fiber_rotation(&pre, carrier_omega, fiber.dgd);
        let post = post_selection_for(&at_carrier, target)?;
        Ok(Self::new(fiber, pre, post))
    }

    pub fn fiber(&self) -> &FiberMedium {
        &self.fiber
    }

    pub fn pre_selection(&self) -> &PolarizationState {
        &self.pre
    }

    /// Post-selection after the global-phase convention was applied.
    pub fn post_selection(&self) -> &PolarizationState {
        &self.post
    }

    /// `A = a₁*·a₀`.
    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// `B = b₁*·b₀`.
    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// `A + B`, real and in `[0, 1]`.
    pub fn transmission_sum(&self) -> f64 {
        self.transmission_sum
    }

    /// Static weak value `W₀`; `None` when the selections are orthogonal.
    pub fn w0(&self) -> Option<WeakValue> {
        self.w0
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `e^{i n_f ωL/c}`.
    pub fn free_phase(&self, omega: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.fiber.index * omega * self.fiber.length / SPEED_OF_LIGHT)
    }

    /// `(A + B)·F(ω, W₀)`, written as `(A+B)cos(ωδτ/2) + i(A−B)sin(ωδτ/2)`
    /// so it stays defined for orthogonal selections.
    pub fn polarization_factor(&self, omega: f64) -> Complex64 {
        let (s, c) = (0.5 * omega * self.fiber.dgd).sin_cos();
        (self.a + self.b) * c + Complex64::i() * (self.a - self.b) * s
    }

    /// Response function `G(ω)`.
    pub fn response(&self, omega: f64) -> Complex64 {
        self.free_phase(omega) * self.polarization_factor(omega)
    }

    /// Power transmission `|G(ω)|²`.
    pub fn transmission(&self, omega: f64) -> f64 {
        self.polarization_factor(omega).norm_sqr()
    }

    /// Absorption coefficient per meter, `κ = −[ln(A+B) + ln|F(ω, W₀)|]/L`.
    pub fn absorption_coeff(&self, omega: f64) -> Result<f64> {
        let magnitude = self.polarization_factor(omega).norm();
        if magnitude <= ROUNDOFF_FLOOR {
            return Err(Error::FullExtinction { omega });
        }
        Ok(-magnitude.ln() / self.fiber.length)
    }

    /// Phase of `F(ω, W₀)` on the branch that is continuous in `ω` and zero
    /// at `ω = 0`.
    ///
    /// With `x = ωδτ/2`, `(A+B)F = A·e^{ix} + B·e^{−ix}`. When `|A| > |B|`
    /// (equivalently `W_R > 0`) this is `A·e^{ix}·(1 + (B/A)e^{−2ix})` and the
    /// last factor never leaves the right half-plane, so its principal
    /// argument is continuous; symmetrically for `|B| > |A|`. For `W_R = 0`
    /// the factor is real up to a constant and the phase is taken as zero.
    pub fn dispersive_phase(&self, omega: f64) -> f64 {
        let x = 0.5 * omega * self.fiber.dgd;
        let one = Complex64::new(1.0, 0.0);
        let (ma, mb) = (self.a.norm(), self.b.norm());
        if (ma - mb).abs() <= ROUNDOFF_FLOOR {
            0.0
        } else if ma > mb {
            let r = self.b / self.a;
            self.a.arg() + x + (one + r * Complex64::from_polar(1.0, -2.0 * x)).arg()
        } else {
            let r = self.a / self.b;
            self.b.arg() - x + (one + r * Complex64::from_polar(1.0, 2.0 * x)).arg()
        }
    }

    /// Refractive index `n(ω) = n_f + (c/(Lω))·arg F(ω, W₀)`, `ω > 0`.
    pub fn refractive_index(&self, omega: f64) -> f64 {
        debug_assert!(omega > 0.0, "refractive index needs ω > 0");
        self.fiber.index
            + SPEED_OF_LIGHT / (self.fiber.length * omega) * self.dispersive_phase(omega)
    }

    /// Weak value of the fiber-rotated pre-selection at `ω`.
    pub fn weak_value(&self, omega: f64) -> Result<WeakValue> {
        polarization::weak_value_dynamic(&self.pre, &self.post, omega, self.fiber.dgd, self.tolerance)
    }

    /// Group index `n_g = n_f + c·(δτ/2L)·Re W(ω)`.
    pub fn group_index(&self, omega: f64) -> Result<f64> {
        let w = self.weak_value(omega)?;
        Ok(group_index_for(&self.fiber, w.re))
    }

    /// Mean arrival-time shift `⟨t⟩ = (δτ/2)·Re W(ω)`; negative means fast light.
    pub fn mean_arrival_shift(&self, omega: f64) -> Result<f64> {
        let w = self.weak_value(omega)?;
        Ok(0.5 * self.fiber.dgd * w.re)
    }

    /// Group velocity `v_g = L/(t_f + ⟨t⟩)` in m/s.
    pub fn group_velocity(&self, omega: f64) -> Result<f64> {
        let shift = self.mean_arrival_shift(omega)?;
        group_velocity_for(&self.fiber, shift)
    }

    /// Evaluates every derived quantity at each angular frequency.
    pub fn sweep(&self, omegas: &[f64]) -> Vec<SweepPoint> {
        omegas.par_iter().map(|&omega| self.sweep_point(omega)).collect()
    }

    pub fn sweep_point(&self, omega: f64) -> SweepPoint {
        let weak_value = self.weak_value(omega).ok();
        SweepPoint {
            omega,
            kappa: self.absorption_coeff(omega).ok(),
            n: self.refractive_index(omega),
            n_g: weak_value.map(|w| group_index_for(&self.fiber, w.re)),
            weak_value,
            transmission: self.transmission(omega),
        }
    }
}

/// `n_g = n_f + c·(δτ/2L)·Re W` for a given real part of the weak value.
pub fn group_index_for(fiber: &FiberMedium, re_w: f64) -> f64 {
    fiber.index + SPEED_OF_LIGHT * fiber.dgd / (2.0 * fiber.length) * re_w
}

/// `v_g = L/(t_f + ⟨t⟩)`.
pub fn group_velocity_for(fiber: &FiberMedium, mean_shift: f64) -> Result<f64> {
    let t_f = fiber.free_delay();
    let denominator = t_f + mean_shift;
    if denominator.abs() <= 1e-12 * t_f {
        return Err(Error::InfiniteVelocity { denominator });
    }
    Ok(fiber.length / denominator)
}

/// One frequency bin of a sweep. `None` entries mark bins where the medium
/// is fully extinguishing (`kappa`) or the weak value diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub omega: f64,
    pub kappa: Option<f64>,
    pub n: f64,
    pub n_g: Option<f64>,
    pub weak_value: Option<WeakValue>,
    pub transmission: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{carrier_omega, DEFAULT_WAVELENGTH};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn fiber() -> FiberMedium {
        FiberMedium::reference()
    }

    fn h() -> PolarizationState {
        PolarizationState::horizontal()
    }

    /// Medium with static weak value `−cot ε` (θ = 3π/4 − ε) or `+cot ε`
    /// (θ = −π/4 + ε) for a diagonal pre-selection.
    fn static_medium(w0: f64) -> EffectiveMedium {
        let eps = (1.0 / w0.abs()).atan();
        let angle = if w0 < 0.0 { 3.0 * FRAC_PI_4 - eps } else { -FRAC_PI_4 + eps };
        EffectiveMedium::new(fiber(), PolarizationState::diagonal(), PolarizationState::linear(angle))
    }

    #[test]
    fn fiber_validation() {
        assert!(FiberMedium::new(0.0, 1.5, 1e-12).is_err());
        assert!(FiberMedium::new(1.0, 0.9, 1e-12).is_err());
        assert!(FiberMedium::new(1.0, 1.5, -1e-12).is_err());
        assert!(FiberMedium::new(1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn thresholds_for_reference_fiber() {
        let f = fiber();
        assert!((f.superluminal_threshold() - 1881.0005).abs() < 1e-3);
        assert!((f.negative_velocity_threshold() - 3.0 * f.superluminal_threshold()).abs() < 1e-9);
        assert!((f.free_delay() - 7.5052e-9).abs() < 1e-12);
    }

    #[test]
    fn structure_factor_examples() {
        let dgd = 2.66e-12;
        let f = structure_factor(0.0, WeakValue::new(-37.0, 2.0), dgd);
        assert_eq!(f, Complex64::new(1.0, 0.0));
        for omega in [1e9, 7.7e11, 1.2e15] {
            let f = structure_factor(omega, WeakValue::real(1.0), dgd);
            let euler = Complex64::from_polar(1.0, 0.5 * omega * dgd);
            assert!((f - euler).norm() < 1e-15);
            assert!((f.norm() - 1.0).abs() < 1e-15);
        }
        let f = structure_factor(PI / dgd, WeakValue::real(0.0), dgd);
        assert!(f.norm() < 1e-15);
    }

    #[test]
    fn response_examples() {
        let em = EffectiveMedium::new(fiber(), h(), h());
        for omega in [0.0, 1e12, 1.2e15] {
            let expected = em.free_phase(omega) * Complex64::from_polar(1.0, 0.5 * omega * 2.66e-12);
            assert!((em.response(omega) - expected).norm() < 1e-12);
            assert!((em.response(omega).norm() - 1.0).abs() < 1e-12);
        }

        let d = PolarizationState::diagonal();
        let orth = EffectiveMedium::new(fiber(), d, PolarizationState::linear(-FRAC_PI_4));
        assert_eq!(orth.w0(), None);
        assert!(orth.response(0.0).norm() < 1e-15);
    }

    /// Oracle: Jones matrix product `⟨φ| · diag(e^{iωδτ/2}, e^{−iωδτ/2}) · |ψ₀⟩`
    /// times the free-propagation phase, without the phase convention.
    fn jones_oracle(fiber: &FiberMedium, pre: &PolarizationState, post: &PolarizationState, omega: f64) -> Complex64 {
        let x = 0.5 * omega * fiber.dgd();
        let m = [
            [Complex64::from_polar(1.0, x), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, -x)],
        ];
        let v = [pre.amp_h(), pre.amp_v()];
        let out = [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
        let row = [post.amp_h().conj(), post.amp_v().conj()];
        let free = Complex64::from_polar(1.0, fiber.index() * omega * fiber.length() / SPEED_OF_LIGHT);
        free * (row[0] * out[0] + row[1] * out[1])
    }

    #[test]
    fn absorption_examples() {
        let em = EffectiveMedium::new(fiber(), h(), h());
        for omega in [1e9, 1e12, 1.2e15] {
            assert!(em.absorption_coeff(omega).unwrap().abs() < 1e-15);
        }
        let em = static_medium(60.0);
        let k0 = em.absorption_coeff(0.0).unwrap();
        assert!((k0 + em.transmission_sum().ln() / 1.5).abs() < 1e-12);
    }

    #[test]
    fn full_extinction_is_reported() {
        let d = PolarizationState::diagonal();
        let orth = EffectiveMedium::new(fiber(), d, PolarizationState::linear(-FRAC_PI_4));
        assert_eq!(orth.absorption_coeff(0.0), Err(Error::FullExtinction { omega: 0.0 }));
    }

    #[test]
    fn absorption_profile_for_w0_60() {
        // κ is smallest where |F| = 1 (ωδτ = 2πk) and peaks where cos(ωδτ/2) = 0
        let em = static_medium(60.0);
        let dgd = fiber().dgd();
        let at_min = em.absorption_coeff(2.0 * PI / dgd).unwrap();
        let at_peak = em.absorption_coeff(PI / dgd).unwrap();
        let at_zero = em.absorption_coeff(0.0).unwrap();
        assert!((at_min - at_zero).abs() < 1e-9);
        // |F| = 60 there, so κ drops by ln(60)/L below the ω = 0 value
        assert!((at_peak - (at_zero - 60f64.ln() / 1.5)).abs() < 1e-9);
    }

    #[test]
    fn refractive_index_examples() {
        let d = PolarizationState::diagonal();
        let flat = EffectiveMedium::new(fiber(), d, d);
        for omega in [1e10, 3e12, 1.2e15] {
            assert_eq!(flat.refractive_index(omega), 1.5);
        }

        let eigen = EffectiveMedium::new(fiber(), h(), h());
        let expected = 1.5 + SPEED_OF_LIGHT * 2.66e-12 / 3.0;
        for omega in [1e10, 3e12, 1.2e15] {
            assert!((eigen.refractive_index(omega) - expected).abs() < 1e-14);
            assert!((eigen.group_index(omega).unwrap() - expected).abs() < 1e-14);
        }

        let plus = static_medium(60.0);
        let minus = static_medium(-60.0);
        for k in 1..200 {
            let omega = k as f64 * 1.3e10 + 1.2e15;
            let dp = plus.refractive_index(omega) - 1.5;
            let dm = minus.refractive_index(omega) - 1.5;
            assert!((dp + dm).abs() < 1e-12);
        }
    }

    #[test]
    fn group_index_examples() {
        let f = fiber();
        assert_eq!(group_index_for(&f, 0.0), 1.5);
        let ng = group_index_for(&f, -3500.0);
        assert!((ng - 0.569).abs() < 1e-3 && ng > 0.0 && ng < 1.0);
    }

    #[test]
    fn mean_arrival_examples() {
        let eigen = EffectiveMedium::new(fiber(), h(), h());
        assert!((eigen.mean_arrival_shift(1e12).unwrap() - 1.33e-12).abs() < 1e-24);

        let omega0 = carrier_omega(DEFAULT_WAVELENGTH);
        let fast = EffectiveMedium::for_carrier_weak_value(
            fiber(),
            PolarizationState::diagonal(),
            WeakValue::real(-3500.0),
            omega0,
        )
        .unwrap();
        assert!((fast.mean_arrival_shift(omega0).unwrap() + 4.655e-9).abs() < 1e-15);

        let d = PolarizationState::diagonal();
        let flat = EffectiveMedium::new(fiber(), d, d);
        assert!(flat.mean_arrival_shift(0.0).unwrap().abs() < 1e-26);
    }

    #[test]
    fn group_velocity_examples() {
        let f = fiber();
        let v = group_velocity_for(&f, 0.0).unwrap();
        assert!((v - SPEED_OF_LIGHT / 1.5).abs() < 1e-6);

        let thr = f.superluminal_threshold();
        let v = group_velocity_for(&f, 0.5 * f.dgd() * -(thr * 1.01)).unwrap();
        assert!(v > SPEED_OF_LIGHT);
        let v = group_velocity_for(&f, 0.5 * f.dgd() * -(thr * 0.99)).unwrap();
        assert!(v < SPEED_OF_LIGHT);

        let neg = f.negative_velocity_threshold();
        assert!((neg - 5643.0).abs() < 1.0);
        assert!(group_velocity_for(&f, 0.5 * f.dgd() * -(neg * 1.01)).unwrap() < 0.0);
        assert!(matches!(
            group_velocity_for(&f, -f.free_delay()),
            Err(Error::InfiniteVelocity { .. })
        ));
    }

    #[test]
    fn carrier_alignment_reproduces_static_weak_value() {
        let omega0 = carrier_omega(DEFAULT_WAVELENGTH);
        let post = PolarizationState::linear(3.0 * FRAC_PI_4 - 0.01);
        let em = EffectiveMedium::aligned_to_carrier(fiber(), PolarizationState::diagonal(), post, omega0);
        let w = em.weak_value(omega0).unwrap();
        let expected = polarization::weak_value_static(&PolarizationState::diagonal(), &post, 1e-9).unwrap();
        assert!((w.as_complex() - expected.as_complex()).norm() < 1e-8 * expected.as_complex().norm());
    }

    fn arb_state() -> impl Strategy<Value = PolarizationState> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("non-zero", |(a, b, c, d)| a.abs() + b.abs() + c.abs() + d.abs() > 1e-3)
            .prop_map(|(a, b, c, d)| {
                PolarizationState::new(Complex64::new(a, b), Complex64::new(c, d)).unwrap()
            })
    }

    proptest! {
        #[test]
        fn passivity(pre in arb_state(), post in arb_state(), omega in 0.0..2e15f64) {
            let em = EffectiveMedium::new(fiber(), pre, post);
            prop_assert!(em.response(omega).norm() <= 1.0 + 1e-12);
            prop_assert!(em.transmission_sum() <= 1.0 + 1e-12);
            if let Some(w0) = em.w0() {
                let ratio = (em.a() - em.b()) / (em.a() + em.b());
                prop_assert!((ratio - w0.as_complex()).norm() <= 1e-12 * (1.0 + ratio.norm()));
            }
        }

        #[test]
        fn response_matches_jones_product(pre in arb_state(), post in arb_state(), omega in 0.0..2e15f64) {
            let em = EffectiveMedium::new(fiber(), pre, post);
            let oracle = jones_oracle(&fiber(), &pre, &post, omega);
            // Same up to the global phase put on the post-selection
            prop_assert!((em.response(omega).norm() - oracle.norm()).abs() < 1e-12);
            let s = mode_overlaps(&post, &pre);
            let phase = Complex64::from_polar(1.0, -(s.0 + s.1).arg());
            if (s.0 + s.1).norm() > 0.0 {
                prop_assert!((em.response(omega) - phase * oracle).norm() < 1e-9);
            }
        }

        #[test]
        fn kappa_and_index_rebuild_response(pre in arb_state(), post in arb_state(), omega in 1e9..2e15f64) {
            let em = EffectiveMedium::new(fiber(), pre, post);
            let g = em.response(omega);
            prop_assume!(g.norm() > 1e-12);
            let kappa = em.absorption_coeff(omega).unwrap();
            let n = em.refractive_index(omega);
            let l = fiber().length();
            // n·ω·L/c carries a ~1e7 rad phase; split off n_f to keep precision.
            // n itself holds ~16 digits, so (n − n_f)·ωL/c is good to ~1e-9 rad.
            let rebuilt = Complex64::from_polar((-kappa * l).exp(), (n - 1.5) * omega * l / SPEED_OF_LIGHT)
                * em.free_phase(omega);
            prop_assert!((rebuilt - g).norm() < 1e-8, "{rebuilt} vs {g}");
            let direct = Complex64::from_polar((-kappa * l).exp(), em.dispersive_phase(omega)) * em.free_phase(omega);
            prop_assert!((direct - g).norm() < 1e-12, "{direct} vs {g}");
        }

        #[test]
        fn kappa_matches_log_form(pre in arb_state(), post in arb_state(), omega in 0.0..2e15f64) {
            let em = EffectiveMedium::new(fiber(), pre, post);
            let Some(w0) = em.w0() else { return Ok(()) };
            let f = structure_factor(omega, w0, fiber().dgd());
            prop_assume!(f.norm() > 1e-9);
            let paper_form = -(em.transmission_sum().ln() + f.norm().ln()) / fiber().length();
            let kappa = em.absorption_coeff(omega).unwrap();
            prop_assert!((kappa - paper_form).abs() < 1e-9 * (1.0 + kappa.abs()));
        }

        #[test]
        fn kappa_is_periodic(pre in arb_state(), post in arb_state(), omega in 0.0..2e15f64) {
            let em = EffectiveMedium::new(fiber(), pre, post);
            let period = fiber().free_spectral_range();
            let (Ok(k1), Ok(k2)) = (em.absorption_coeff(omega), em.absorption_coeff(omega + period)) else {
                return Ok(());
            };
            prop_assume!(k1.abs() < 10.0);
            prop_assert!((k1 - k2).abs() < 1e-6 * (1.0 + k1.abs()));
        }

        /// `ω·(n − n_f)·L/c` advances by `±π` per period: periodic up to the
        /// winding of `F` around the origin.
        #[test]
        fn dispersive_phase_winds_once_per_period(pre in arb_state(), post in arb_state(), omega in 1e9..2e15f64) {
            let em = EffectiveMedium::new(fiber(), pre, post);
            let period = fiber().free_spectral_range();
            let step = em.dispersive_phase(omega + period) - em.dispersive_phase(omega);
            let winding = if em.a().norm() > em.b().norm() { PI } else if em.a().norm() < em.b().norm() { -PI } else { 0.0 };
            prop_assert!((step - winding).abs() < 1e-6, "{step} vs {winding}");
        }
    }
}
