//! Physical constants and the dimensionless oscillator parameterization used
//! by every other module.
//!
//! Everything is Gaussian-cgs internally; SI appears nowhere. Downstream
//! physics depends only on the two dimensionless numbers s = a/(ω₀c) and
//! g = γω₀, so dimensional quantities enter only at construction time.

use crate::error::{Error, Result};

/// Fundamental constants in Gaussian-cgs units.
///
/// Defaults are the CODATA values for the electron. Other charged particles
/// are modeled by overriding `e` and `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge e (esu).
    pub e: f64,
    /// Rest mass m (g).
    pub m: f64,
    /// Speed of light c (cm/s).
    pub c: f64,
    /// Reduced Planck constant ħ (erg·s).
    pub hbar: f64,
    /// Boltzmann constant k_B (erg/K).
    pub kb: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            e: 4.803_204_25e-10,
            m: 9.109_383_7e-28,
            c: 2.997_924_58e10,
            hbar: 1.054_571_817e-27,
            kb: 1.380_649e-16,
        }
    }
}

impl PhysicalConstants {
    /// Builds a constant set, rejecting non-positive or non-finite entries.
    pub fn new(e: f64, m: f64, c: f64, hbar: f64, kb: f64) -> Result<Self> {
        for (name, v) in [("e", e), ("m", m), ("c", c), ("hbar", hbar), ("kb", kb)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!(
                    "constant {name} must be finite and positive, got {v:e}"
                )));
            }
        }
        Ok(Self { e, m, c, hbar, kb })
    }

    /// Radiation damping time γ = 2e²/(3mc³), in seconds.
    pub fn damping_time(&self) -> f64 {
        2.0 * self.e * self.e / (3.0 * self.m * self.c.powi(3))
    }

    /// Classical charge radius r₀ = e²/(mc²), in cm. Note γ = 2r₀/(3c).
    pub fn classical_radius(&self) -> f64 {
        self.e * self.e / (self.m * self.c * self.c)
    }
}

/// One oscillator configuration: resonance frequency, proper acceleration,
/// and the derived damping time plus dimensionless combinations.
///
/// Invariants kept by the constructors: `s = accel/(omega0·c)` and
/// `g = gamma·omega0` exactly as stored; `omega0 > 0`, `accel ≥ 0`,
/// `gamma > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Resonance angular frequency ω₀ (rad/s).
    pub omega0: f64,
    /// Uniform proper acceleration a (cm/s²).
    pub accel: f64,
    /// Damping time γ (s).
    pub gamma: f64,
    /// a/(ω₀c), dimensionless.
    pub s: f64,
    /// γω₀, dimensionless.
    pub g: f64,
}

impl OscillatorParams {
    /// Builds parameters from dimensional inputs; γ comes from `constants`.
    pub fn new(omega0: f64, accel: f64, constants: &PhysicalConstants) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::Domain(format!(
                "omega0 must be finite and positive, got {omega0:e}"
            )));
        }
        if !(accel.is_finite() && accel >= 0.0) {
            return Err(Error::Domain(format!(
                "accel must be finite and non-negative, got {accel:e}"
            )));
        }
        let gamma = constants.damping_time();
        Ok(Self {
            omega0,
            accel,
            gamma,
            s: accel / (omega0 * constants.c),
            g: gamma * omega0,
        })
    }

    /// Builds parameters from the dimensionless pair (s, g), overriding the
    /// physical damping time with γ = g/ω₀ and setting a = s·ω₀·c.
    pub fn from_dimensionless(
        omega0: f64,
        s: f64,
        g: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::Domain(format!(
                "omega0 must be finite and positive, got {omega0:e}"
            )));
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::Domain(format!(
                "s must be finite and non-negative, got {s:e}"
            )));
        }
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::Domain(format!(
                "g must be finite and positive, got {g:e}"
            )));
        }
        Ok(Self {
            omega0,
            accel: s * omega0 * constants.c,
            gamma: g / omega0,
            s,
            g,
        })
    }

    /// a²/c² = (s·ω₀)², the squared acceleration frequency (rad²/s²).
    pub fn accel_freq_sq(&self) -> f64 {
        (self.s * self.omega0).powi(2)
    }

    /// Effective damping rate Γ = γ(ω₀² + a²/c²) = g·ω₀·(1+s²) (rad/s).
    pub fn damping_rate(&self) -> f64 {
        self.g * self.omega0 * (1.0 + self.s * self.s)
    }
}
