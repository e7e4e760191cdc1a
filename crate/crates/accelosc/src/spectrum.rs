//! Spectral density of the zero-point field seen by a uniformly accelerated
//! charge: the thermal coth enhancement and the Unruh–Davies temperature.

use crate::error::{Error, Result};
use crate::model::PhysicalConstants;
use std::f64::consts::PI;

/// coth(π/s) − 1 = 2/(e^{2π/s} − 1), the excess of the thermal factor over
/// its vacuum value. Exactly 0 at s = 0.
///
/// Evaluated through `exp_m1`, which is accurate for every s > 0: for small s
/// the exponential overflows and the excess underflows to 0, and for large s
/// the denominator is ≈ 2π/s with no cancellation.
pub(crate) fn coth_excess(s: f64) -> f64 {
    if s == 0.0 {
        0.0
    } else {
        2.0 / (2.0 * PI / s).exp_m1()
    }
}

/// coth(π/s) for dimensionless acceleration s = a/(ωc); exactly 1 at s = 0.
///
/// This is both the thermal weight of the field spectrum and, evaluated at
/// s = a/(ω₀c), the closed-form commutator enhancement.
pub fn coth_factor(s: f64) -> Result<f64> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::Domain(format!(
            "s must be finite and non-negative, got {s:e}"
        )));
    }
    Ok(1.0 + coth_excess(s))
}

/// Unruh–Davies temperature T = ħa/(2πck_B) in kelvin.
pub fn unruh_temperature(accel: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(accel.is_finite() && accel >= 0.0) {
        return Err(Error::Domain(format!(
            "accel must be finite and non-negative, got {accel:e}"
        )));
    }
    Ok(constants.hbar * accel / (2.0 * PI * constants.c * constants.kb))
}

/// Inverse of [`unruh_temperature`]: the proper acceleration a = 2πck_B·T/ħ
/// producing a given temperature.
pub fn acceleration_for_temperature(temp_k: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(temp_k.is_finite() && temp_k >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be finite and non-negative, got {temp_k:e}"
        )));
    }
    Ok(2.0 * PI * constants.c * constants.kb * temp_k / constants.hbar)
}

/// One sample of the field spectral density seen by the accelerated charge.
///
/// `density = vacuum_part + thermal_part` holds exactly by construction, and
/// `density = (4ħω³/3c³)·[1 + (a/cω)²]·coth(πcω/a)` up to rounding. The same
/// value can be written as (8π²/3c)·[1 + (a/cω)²]·ρ(ω)·coth(πcω/a) with
/// ρ(ω) = ħω³/(2π²c²); the two forms agree identically, and the tests pin the
/// identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    /// Angular frequency ω (rad/s).
    pub omega: f64,
    /// Full vacuum-plus-thermal density.
    pub density: f64,
    /// Density with the thermal factor replaced by 1.
    pub vacuum_part: f64,
    /// density − vacuum_part.
    pub thermal_part: f64,
}

/// Evaluates the field spectral density at frequency ω for proper
/// acceleration a. The a = 0 limit takes an explicit branch (coth → 1), never
/// an overflowing exponential.
pub fn spectral_density(
    omega: f64,
    accel: f64,
    constants: &PhysicalConstants,
) -> Result<SpectralPoint> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::Domain(format!(
            "omega must be finite and positive, got {omega:e}"
        )));
    }
    if !(accel.is_finite() && accel >= 0.0) {
        return Err(Error::Domain(format!(
            "accel must be finite and non-negative, got {accel:e}"
        )));
    }
    let c = constants.c;
    // Dimensionless acceleration at this frequency: a/(cω).
    let s_omega = accel / (c * omega);
    let correction = 1.0 + s_omega * s_omega;
    let vacuum_part = 4.0 * constants.hbar * omega.powi(3) / (3.0 * c.powi(3)) * correction;
    let thermal_part = vacuum_part * coth_excess(s_omega);
    Ok(SpectralPoint {
        omega,
        density: vacuum_part + thermal_part,
        vacuum_part,
        thermal_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn coth_factor_limits_and_pinned_values() {
        assert_eq!(coth_factor(0.0).unwrap(), 1.0);
        assert_eq!(coth_factor(1e-3).unwrap(), 1.0);
        assert_eq!(coth_factor(0.1).unwrap(), 1.0);
        assert!(rel_err(coth_factor(0.5).unwrap(), 1.000_006_974_709_035_6) < 1e-14);
        assert!(rel_err(coth_factor(1.0).unwrap(), 1.003_741_873_197_321_3) < 1e-14);
        assert!(rel_err(coth_factor(2.0).unwrap(), 1.090_331_410_727_368_2) < 1e-14);
        assert!(rel_err(coth_factor(10.0).unwrap(), 3.287_136_001_903_377) < 1e-14);
        assert!(rel_err(coth_factor(100.0).unwrap(), 31.841_459_904_927_422) < 1e-14);
        assert!(rel_err(coth_factor(1e3).unwrap(), 318.310_933_380_652_84) < 1e-14);
        assert!(coth_factor(-0.1).is_err());
        assert!(coth_factor(f64::INFINITY).is_err());
        assert!(coth_factor(f64::NAN).is_err());
    }

    #[test]
    fn coth_factor_agrees_with_hyperbolic_ratio_in_conditioned_range() {
        // Direct cosh/sinh evaluation is reliable for moderate arguments;
        // the exp_m1 form must match it there.
        let mut s = 0.3;
        while s < 50.0 {
            let x = std::f64::consts::PI / s;
            let direct = x.cosh() / x.sinh();
            assert!(
                rel_err(coth_factor(s).unwrap(), direct) < 1e-14,
                "mismatch at s = {s}"
            );
            s *= 1.37;
        }
    }

    #[test]
    fn coth_factor_is_monotone_and_at_least_one() {
        let mut prev = coth_factor(1e-4).unwrap();
        assert!(prev >= 1.0);
        for k in 1..=80 {
            let s = 1e-4 * 10f64.powf(k as f64 * 0.1);
            let v = coth_factor(s).unwrap();
            assert!(v >= 1.0);
            assert!(v >= prev, "coth factor decreased at s = {s}");
            prev = v;
        }
    }

    #[test]
    fn unruh_temperature_values() {
        let c = PhysicalConstants::default();
        assert_eq!(unruh_temperature(0.0, &c).unwrap(), 0.0);
        let t_g = unruh_temperature(980.665, &c).unwrap();
        assert!(rel_err(t_g, 3.976_609_836_282_950_8e-20) < 1e-14);
        // Within 0.5% of the coarser reference value.
        assert!(rel_err(t_g, 3.98e-20) < 5e-3);
        assert!(unruh_temperature(-1.0, &c).is_err());
    }

    #[test]
    fn unruh_round_trip_is_tight() {
        let c = PhysicalConstants::default();
        for accel in [1.0, 980.665, 1e10, 2.466e22, 1e25] {
            let t = unruh_temperature(accel, &c).unwrap();
            let back = acceleration_for_temperature(t, &c).unwrap();
            assert!(rel_err(back, accel) < 1e-12);
        }
        // One kelvin corresponds to ~2.47e22 cm/s².
        let a_1k = acceleration_for_temperature(1.0, &c).unwrap();
        assert!(rel_err(a_1k, 2.466_083_021_402_610_6e22) < 1e-14);
    }

    #[test]
    fn spectral_density_vacuum_limit_and_correction() {
        let c = PhysicalConstants::default();
        let p = spectral_density(1e15, 0.0, &c).unwrap();
        let expected = 4.0 * c.hbar * 1e15f64.powi(3) / (3.0 * c.c.powi(3));
        assert!(rel_err(p.density, expected) < 1e-14);
        assert_eq!(p.thermal_part, 0.0);
        assert_eq!(p.density, p.vacuum_part);

        // At ω = a/c the relativistic correction factor is exactly 2.
        let accel = 1e15 * c.c;
        let q = spectral_density(1e15, accel, &c).unwrap();
        let vac_no_corr = 4.0 * c.hbar * 1e15f64.powi(3) / (3.0 * c.c.powi(3));
        assert!(rel_err(q.vacuum_part, 2.0 * vac_no_corr) < 1e-14);

        assert!(spectral_density(0.0, 1.0, &c).is_err());
        assert!(spectral_density(-1.0, 1.0, &c).is_err());
    }

    #[test]
    fn spectral_density_internal_identities() {
        let c = PhysicalConstants::default();
        for &(omega, accel) in &[
            (1e15, 0.0),
            (1e15, 1e24),
            (1e12, 1e22),
            (3.7e16, 5e27),
            (1e10, 1e20),
        ] {
            let p = spectral_density(omega, accel, &c).unwrap();
            // Splitting is exact by construction.
            assert_eq!(p.density, p.vacuum_part + p.thermal_part);
            assert!(p.density >= p.vacuum_part);
            assert!(p.vacuum_part > 0.0);

            // Product form with the explicit coth factor.
            let s_omega = accel / (c.c * omega);
            let coth = coth_factor(s_omega).unwrap();
            assert!(rel_err(p.density, p.vacuum_part * coth) < 1e-14);

            // Equivalent mode-density form: (8π²/3c)·[1+(a/cω)²]·ρ(ω)·coth
            // with ρ(ω) = ħω³/(2π²c²).
            let rho = c.hbar * omega.powi(3) / (2.0 * PI * PI * c.c * c.c);
            let alt = 8.0 * PI * PI / (3.0 * c.c) * (1.0 + s_omega * s_omega) * rho * coth;
            assert!(rel_err(p.density, alt) < 1e-14);
        }
    }

    #[test]
    fn thermal_part_decays_monotonically_with_acceleration() {
        let c = PhysicalConstants::default();
        let omega = 1e15;
        let mut prev = f64::INFINITY;
        let mut accel = 1e28;
        while accel > 1e20 {
            let p = spectral_density(omega, accel, &c).unwrap();
            assert!(p.thermal_part >= 0.0);
            assert!(p.thermal_part <= prev);
            prev = p.thermal_part;
            accel /= 3.0;
        }
        let tiny = spectral_density(omega, 1e18, &c).unwrap();
        assert!(tiny.thermal_part < 1e-6 * tiny.vacuum_part);
    }
}
