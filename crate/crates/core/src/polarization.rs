//! Two-mode polarization algebra in the fiber eigenbasis `{H, V}`.
//!
//! `H` is the slow eigenmode (σ_z = +1) and `V` the fast one (σ_z = −1).
//! Birefringence acts as the rotation `e^{iωδτσ_z/2}` about the z axis of the
//! Poincaré sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default bound on `|⟨φ|ψ⟩|` below which a weak value is treated as divergent.
pub const DEFAULT_ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

/// A normalized Jones vector `amp_h |H⟩ + amp_v |V⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationState {
    amp_h: Complex64,
    amp_v: Complex64,
}

impl PolarizationState {
    /// Builds a normalized state, keeping the relative phase of the inputs.
    pub fn new(amp_h: Complex64, amp_v: Complex64) -> Result<Self> {
        let norm = amp_h.norm().hypot(amp_v.norm());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amp_h: amp_h / norm,
            amp_v: amp_v / norm,
        })
    }

    pub fn horizontal() -> Self {
        Self {
            amp_h: Complex64::new(1.0, 0.0),
            amp_v: Complex64::new(0.0, 0.0),
        }
    }

    pub fn vertical() -> Self {
        Self {
            amp_h: Complex64::new(0.0, 0.0),
            amp_v: Complex64::new(1.0, 0.0),
        }
    }

    /// Linear polarization at 45° to the fiber axes.
    pub fn diagonal() -> Self {
        Self::linear(std::f64::consts::FRAC_PI_4)
    }

    /// Linear polarizer transmission axis at `angle` radians from `H`:
    /// `(cos θ, sin θ)`.
    pub fn linear(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            amp_h: Complex64::new(c, 0.0),
            amp_v: Complex64::new(s, 0.0),
        }
    }

    /// Linear state at `angle` with an extra relative phase between the two
    /// eigenmodes, `(cos θ·e^{iϕ/2}, sin θ·e^{−iϕ/2})`. This is the same
    /// z-rotation a short extra length of fiber would apply.
    pub fn linear_with_phase(angle: f64, relative_phase: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let half = Complex64::from_polar(1.0, 0.5 * relative_phase);
        Self {
            amp_h: half * c,
            amp_v: half.conj() * s,
        }
    }

    pub fn amp_h(&self) -> Complex64 {
        self.amp_h
    }

    pub fn amp_v(&self) -> Complex64 {
        self.amp_v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_h.norm_sqr() + self.amp_v.norm_sqr()
    }

    /// `⟨ψ|σ_z|ψ⟩`.
    pub fn sigma_z_expectation(&self) -> f64 {
        self.amp_h.norm_sqr() - self.amp_v.norm_sqr()
    }

    /// Multiplies both amplitudes by `e^{iα}`.
    pub fn with_global_phase(self, phase: f64) -> Self {
        let p = Complex64::from_polar(1.0, phase);
        Self {
            amp_h: self.amp_h * p,
            amp_v: self.amp_v * p,
        }
    }
}

/// Weak value `W = W_R + i·W_I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValue {
    pub re: f64,
    pub im: f64,
}

impl WeakValue {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    fn from_complex(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// `⟨φ|ψ⟩ = a₁*·a₀ + b₁*·b₀`.
pub fn overlap(phi: &PolarizationState, psi: &PolarizationState) -> Complex64 {
    phi.amp_h.conj() * psi.amp_h + phi.amp_v.conj() * psi.amp_v
}

/// The per-mode overlaps `(A, B) = (a₁*a₀, b₁*b₀)`.
pub fn mode_overlaps(phi: &PolarizationState, psi: &PolarizationState) -> (Complex64, Complex64) {
    (phi.amp_h.conj() * psi.amp_h, phi.amp_v.conj() * psi.amp_v)
}

/// Polarization after the fiber: `(a₀·e^{+iωδτ/2}, b₀·e^{−iωδτ/2})`.
pub fn fiber_rotation(psi0: &PolarizationState, omega: f64, dgd: f64) -> PolarizationState {
    debug_assert!(dgd >= 0.0, "differential group delay must be non-negative");
    let phase = Complex64::from_polar(1.0, 0.5 * omega * dgd);
    PolarizationState {
        amp_h: psi0.amp_h * phase,
        amp_v: psi0.amp_v * phase.conj(),
    }
}

/// Static weak value `W₀ = (A − B)/(A + B) = ⟨φ|σ_z|ψ₀⟩/⟨φ|ψ₀⟩`.
pub fn weak_value_static(
    psi0: &PolarizationState,
    phi: &PolarizationState,
    tolerance: f64,
) -> Result<WeakValue> {
    let (a, b) = mode_overlaps(phi, psi0);
    let sum = a + b;
    if sum.norm() <= tolerance {
        return Err(Error::OrthogonalSelection {
            overlap: sum.norm(),
            tolerance,
        });
    }
    Ok(WeakValue::from_complex((a - b) / sum))
}

/// Weak value of the fiber-rotated state, `⟨φ|σ_z|ψ(ω)⟩/⟨φ|ψ(ω)⟩`, in closed form:
///
/// `W = [W_R + i(W_I cos ωδτ + ½(1 − |W₀|²) sin ωδτ)] / |F(ω, W₀)|²`.
///
/// Numerator and denominator are both scaled by `|A + B|²`, so the expression
/// stays finite when the static selection is orthogonal but the rotated one
/// is not.
pub fn weak_value_dynamic(
    psi0: &PolarizationState,
    phi: &PolarizationState,
    omega: f64,
    dgd: f64,
    tolerance: f64,
) -> Result<WeakValue> {
    let (a, b) = mode_overlaps(phi, psi0);
    let sum = a + b;
    let diff = a - b;
    let (sx, cx) = (0.5 * omega * dgd).sin_cos();
    let (s2, c2) = (omega * dgd).sin_cos();

    // |A+B|·F(ω, W₀) = ⟨φ|ψ(ω)⟩ up to a unit phase
    let scaled_f = sum * cx + Complex64::i() * diff * sx;
    let magnitude = scaled_f.norm();
    if magnitude <= tolerance {
        return Err(Error::OrthogonalSelection {
            overlap: magnitude,
            tolerance,
        });
    }
    let cross = diff * sum.conj(); // |A+B|²·W₀
    let re = cross.re;
    let im = cross.im * c2 + 0.5 * (sum.norm_sqr() - diff.norm_sqr()) * s2;
    let denom = magnitude * magnitude;
    Ok(WeakValue::new(re / denom, im / denom))
}

/// Finds a post-selection `φ` with `⟨φ|σ_z|ψ⟩/⟨φ|ψ⟩ = target`.
///
/// Fails when `ψ` is an eigenmode, whose weak value is pinned to ±1.
pub fn post_selection_for(psi: &PolarizationState, target: WeakValue) -> Result<PolarizationState> {
    let w = target.as_complex();
    let unreachable = Error::UnreachableWeakValue {
        re: target.re,
        im: target.im,
    };
    if psi.amp_h.norm() < 1e-12 || psi.amp_v.norm() < 1e-12 {
        return Err(unreachable);
    }
    let one = Complex64::new(1.0, 0.0);
    let a1 = ((one + w) / (psi.amp_h * 2.0)).conj();
    let b1 = ((one - w) / (psi.amp_v * 2.0)).conj();
    PolarizationState::new(a1, b1).map_err(|_| unreachable)
}
