//! Frequency- and time-domain response of the damped oscillator.
//!
//! The frequency side evaluates the complex denominator
//! D(ω) = (ω² − ω₀²) + iγ(ω³ + a²ω/c²) and the steady-state amplitude of one
//! driven Fourier mode. The time side integrates the runaway-free
//! reduced-order equation
//!
//! ẍ + γ(ω₀² + a²/c²)ẋ + ω₀²x = (e/m)(E + γĖ)
//!
//! with a fixed-step RK4 scheme, so the two routes can be cross-checked: at
//! resonance their amplitudes agree to O(g²).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{OscillatorParams, PhysicalConstants};

/// Complex response denominator D(ω) in dimensional form, rad²/s².
///
/// Accepts any real ω; D(−ω) = conj(D(ω)), so negative frequencies give the
/// mirror-mode denominator.
pub fn denominator(omega: f64, params: &OscillatorParams) -> Complex64 {
    let real = omega * omega - params.omega0 * params.omega0;
    let imag = params.gamma * (omega * omega * omega + params.accel_freq_sq() * omega);
    Complex64::new(real, imag)
}

/// Dimensionless denominator (u² − 1) + i·g·u(u² + s²) with u = ω/ω₀; equals
/// `denominator` divided by ω₀².
pub fn denominator_dimensionless(u: f64, s: f64, g: f64) -> Complex64 {
    Complex64::new(u * u - 1.0, g * u * (u * u + s * s))
}

/// One monochromatic drive component E(t) = E₀·cos(ωt + φ), Gaussian units
/// (statvolt/cm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub amplitude: f64,
    pub omega_drive: f64,
    pub phase: f64,
}

impl DriveSpec {
    pub fn new(amplitude: f64, omega_drive: f64, phase: f64) -> Result<Self> {
        let spec = Self {
            amplitude,
            omega_drive,
            phase,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(Error::Domain(format!(
                "drive amplitude must be finite and non-negative, got {:e}",
                self.amplitude
            )));
        }
        if !(self.omega_drive.is_finite() && self.omega_drive > 0.0) {
            return Err(Error::Domain(format!(
                "drive frequency must be finite and positive, got {:e}",
                self.omega_drive
            )));
        }
        if !self.phase.is_finite() {
            return Err(Error::Domain(format!(
                "drive phase must be finite, got {:e}",
                self.phase
            )));
        }
        Ok(())
    }
}

/// Complex steady-state displacement x₁ = −(e/m)·E₀·e^{iφ}/D(ω) in cm for
/// the x(t) = Re[x₁·e^{−iωt}] convention.
pub fn steady_amplitude(
    drive: &DriveSpec,
    params: &OscillatorParams,
    constants: &PhysicalConstants,
) -> Complex64 {
    let charge_accel = constants.e / constants.m * drive.amplitude;
    let numerator = -charge_accel * Complex64::from_polar(1.0, drive.phase);
    numerator / denominator(drive.omega_drive, params)
}

/// Uniformly sampled trajectory (t, x, ẋ) in seconds, cm, cm/s.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub velocities: Vec<f64>,
}

impl TrajectoryRecord {
    pub fn new(times: Vec<f64>, positions: Vec<f64>, velocities: Vec<f64>) -> Result<Self> {
        if times.len() != positions.len() || times.len() != velocities.len() {
            return Err(Error::Domain(format!(
                "trajectory columns must have equal lengths, got {}, {}, {}",
                times.len(),
                positions.len(),
                velocities.len()
            )));
        }
        if times
            .windows(2)
            .any(|w| w[0].is_nan() || w[1].is_nan() || w[1] <= w[0])
        {
            return Err(Error::Domain(
                "trajectory times must be strictly increasing".to_string(),
            ));
        }
        Ok(Self {
            times,
            positions,
            velocities,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Fits the trailing 20% of the record to A·cos(ωt + δ) by linear least
    /// squares and returns A.
    ///
    /// `damping_rate` is the Γ of the equation that produced the record; the
    /// record must cover at least 10 amplitude-decay times 2/Γ so that the
    /// fitted window is transient-free.
    pub fn steady_state_amplitude(&self, omega_drive: f64, damping_rate: f64) -> Result<f64> {
        if !(omega_drive.is_finite() && omega_drive > 0.0) {
            return Err(Error::Domain(format!(
                "fit frequency must be finite and positive, got {omega_drive:e}"
            )));
        }
        if !(damping_rate.is_finite() && damping_rate > 0.0) {
            return Err(Error::Domain(format!(
                "damping rate must be finite and positive, got {damping_rate:e}"
            )));
        }
        if self.len() < 16 {
            return Err(Error::Domain(format!(
                "record too short to fit: {} samples",
                self.len()
            )));
        }
        let duration = self.times[self.len() - 1] - self.times[0];
        let needed = 10.0 * 2.0 / damping_rate;
        if duration < needed {
            return Err(Error::Domain(format!(
                "record covers {duration:e} s but steady-state extraction needs at least {needed:e} s"
            )));
        }

        let start = self.len() - self.len() / 5;
        let (mut scc, mut scs, mut sss) = (0.0, 0.0, 0.0);
        let (mut bc, mut bs) = (0.0, 0.0);
        for i in start..self.len() {
            let (c, s) = {
                let ph = omega_drive * self.times[i];
                (ph.cos(), ph.sin())
            };
            scc += c * c;
            scs += c * s;
            sss += s * s;
            bc += self.positions[i] * c;
            bs += self.positions[i] * s;
        }
        let det = scc * sss - scs * scs;
        if det.is_nan() || det <= 1e-9 * scc * sss {
            return Err(Error::Resolution(
                "fit window covers too little of a drive period to separate quadratures"
                    .to_string(),
            ));
        }
        let a_cos = (sss * bc - scs * bs) / det;
        let a_sin = (scc * bs - scs * bc) / det;
        Ok(a_cos.hypot(a_sin))
    }
}

const MAX_STEPS: usize = 10_000_000;

/// Integrates the reduced-order equation of motion from rest (x = ẋ = 0).
///
/// Requires dt < 0.05/ω₀ so the oscillation is resolved. The grid is
/// t_i = i·dt for i = 0..=⌈duration/dt⌉, so the record always covers the
/// requested duration.
pub fn integrate_time_domain(
    drive: &DriveSpec,
    params: &OscillatorParams,
    constants: &PhysicalConstants,
    duration: f64,
    dt: f64,
) -> Result<TrajectoryRecord> {
    integrate_time_domain_from(drive, params, constants, duration, dt, 0.0, 0.0)
}

/// Same integrator with explicit initial conditions, for free-decay studies.
pub fn integrate_time_domain_from(
    drive: &DriveSpec,
    params: &OscillatorParams,
    constants: &PhysicalConstants,
    duration: f64,
    dt: f64,
    x0: f64,
    v0: f64,
) -> Result<TrajectoryRecord> {
    drive.validate()?;
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::Domain(format!(
            "duration must be finite and positive, got {duration:e}"
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Domain(format!(
            "dt must be finite and positive, got {dt:e}"
        )));
    }
    if dt * params.omega0 >= 0.05 {
        return Err(Error::Resolution(format!(
            "dt = {dt:e} s does not resolve the oscillation: need dt < {:e} s",
            0.05 / params.omega0
        )));
    }
    if !(x0.is_finite() && v0.is_finite()) {
        return Err(Error::Domain(
            "initial conditions must be finite".to_string(),
        ));
    }
    let n_steps = (duration / dt).ceil() as usize;
    if n_steps > MAX_STEPS {
        return Err(Error::Resolution(format!(
            "requested {n_steps} steps exceeds the {MAX_STEPS} step limit"
        )));
    }

    let omega0_sq = params.omega0 * params.omega0;
    let damping = params.damping_rate();
    let kick = constants.e / constants.m * drive.amplitude;
    let (wd, phi, gamma) = (drive.omega_drive, drive.phase, params.gamma);
    let force = |t: f64| {
        let ph = wd * t + phi;
        kick * (ph.cos() - gamma * wd * ph.sin())
    };
    let accel = |t: f64, x: f64, v: f64| force(t) - omega0_sq * x - damping * v;

    let mut times = Vec::with_capacity(n_steps + 1);
    let mut positions = Vec::with_capacity(n_steps + 1);
    let mut velocities = Vec::with_capacity(n_steps + 1);
    let (mut x, mut v) = (x0, v0);
    times.push(0.0);
    positions.push(x);
    velocities.push(v);
    for i in 0..n_steps {
        let t = i as f64 * dt;
        let (k1x, k1v) = (v, accel(t, x, v));
        let (k2x, k2v) = (
            v + 0.5 * dt * k1v,
            accel(t + 0.5 * dt, x + 0.5 * dt * k1x, v + 0.5 * dt * k1v),
        );
        let (k3x, k3v) = (
            v + 0.5 * dt * k2v,
            accel(t + 0.5 * dt, x + 0.5 * dt * k2x, v + 0.5 * dt * k2v),
        );
        let (k4x, k4v) = (
            v + dt * k3v,
            accel(t + dt, x + dt * k3x, v + dt * k3v),
        );
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if !(x.is_finite() && v.is_finite()) {
            return Err(Error::NonFiniteEvaluation {
                abscissa: (i + 1) as f64 * dt,
            });
        }
        times.push((i + 1) as f64 * dt);
        positions.push(x);
        velocities.push(v);
    }
    Ok(TrajectoryRecord {
        times,
        positions,
        velocities,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::model::OscillatorParams;

    fn unit_params(s: f64, g: f64) -> OscillatorParams {
        OscillatorParams::from_dimensionless(1.0, s, g, &PhysicalConstants::default()).unwrap()
    }

    #[test]
    fn dimensionless_denominator_special_points() {
        let d = denominator_dimensionless(1.0, 0.7, 1e-3);
        assert_eq!(d.re, 0.0);
        assert!((d.im - 1e-3 * 1.49).abs() < 1e-18);

        let d = denominator_dimensionless(2.0, 1.0, 1e-3);
        assert_eq!(d.re, 3.0);
        assert_eq!(d.im, 1e-2);

        let d = denominator_dimensionless(0.5, 0.0, 0.0);
        assert_eq!(d, Complex64::new(-0.75, 0.0));
    }

    #[test]
    fn dimensional_denominator_matches_dimensionless() {
        let constants = PhysicalConstants::default();
        let params = OscillatorParams::from_dimensionless(1e15, 0.8, 1e-4, &constants).unwrap();
        for u in [0.3, 0.9, 1.0, 1.7, 4.2] {
            let d_dim = denominator(u * params.omega0, &params);
            let d_red = denominator_dimensionless(u, params.s, params.g)
                * (params.omega0 * params.omega0);
            assert!((d_dim - d_red).norm() <= 1e-12 * d_red.norm());
        }
    }

    #[test]
    fn mirror_frequency_gives_conjugate() {
        let params = unit_params(0.6, 1e-3);
        for omega in [0.2, 1.0, 3.7, 11.0] {
            let d = denominator(omega, &params);
            let m = denominator(-omega, &params);
            assert_eq!(m.re.to_bits(), d.re.to_bits());
            assert_eq!(m.im.to_bits(), (-d.im).to_bits());
            assert!(d.im > 0.0);
        }
    }

    #[test]
    fn steady_amplitude_limits() {
        let constants = PhysicalConstants::default();
        let params = OscillatorParams::new(1e15, 0.0, &constants).unwrap();

        let silent = DriveSpec::new(0.0, 1e15, 0.3).unwrap();
        assert_eq!(steady_amplitude(&silent, &params, &constants).norm(), 0.0);

        let resonant = DriveSpec::new(1.0, 1e15, 0.0).unwrap();
        let amp = steady_amplitude(&resonant, &params, &constants).norm();
        assert!((amp - 8.4143837160497566e-5).abs() < 1e-12 * amp);

        let weak = OscillatorParams::from_dimensionless(1e15, 0.0, 1e-12, &constants).unwrap();
        let off = DriveSpec::new(1.0, 2e15, 0.0).unwrap();
        let amp = steady_amplitude(&off, &weak, &constants).norm();
        let lorentz = constants.e / constants.m / (4e30 - 1e30);
        assert!((amp - lorentz).abs() < 1e-10 * lorentz);
    }

    #[test]
    fn zero_drive_from_rest_stays_at_rest() {
        let constants = PhysicalConstants::default();
        let params = unit_params(0.0, 1e-2);
        let drive = DriveSpec::new(0.0, 1.0, 0.0).unwrap();
        let record = integrate_time_domain(&drive, &params, &constants, 10.0, 0.01).unwrap();
        assert!(record.positions.iter().all(|&x| x == 0.0));
        assert!(record.velocities.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        let constants = PhysicalConstants::default();
        let params = unit_params(0.0, 1e-2);
        let damping = params.damping_rate();
        let omega_free = (1.0 - 0.25 * damping * damping).sqrt();
        let drive = DriveSpec::new(0.0, 1.0, 0.0).unwrap();

        let exact = |t: f64| {
            (-(0.5 * damping * t)).exp()
                * ((omega_free * t).cos() + 0.5 * damping / omega_free * (omega_free * t).sin())
        };

        let mut errors = Vec::new();
        for dt in [0.04, 0.02, 0.01] {
            let record = integrate_time_domain_from(
                &drive, &params, &constants, 64.0, dt, 1.0, 0.0,
            )
            .unwrap();
            let i = record.len() - 1;
            errors.push((record.positions[i] - exact(record.times[i])).abs());
        }
        let order1 = (errors[0] / errors[1]).log2();
        let order2 = (errors[1] / errors[2]).log2();
        assert!(order1 > 3.5, "observed order {order1}");
        assert!(order2 > 3.5, "observed order {order2}");
    }

    #[test]
    fn fitted_amplitude_matches_reduced_order_analytic() {
        let constants = PhysicalConstants::default();
        let params = unit_params(0.0, 1e-2);
        let damping = params.damping_rate();
        let drive = DriveSpec::new(1e-18, 1.0, 0.0).unwrap();
        // Long enough that the residual transient (decaying at Γ/2) sits well
        // below the fit tolerance inside the trailing fit window.
        let duration = 40.0 / damping;
        let record =
            integrate_time_domain(&drive, &params, &constants, duration, 0.01).unwrap();
        let fitted = record.steady_state_amplitude(1.0, damping).unwrap();
        let kick = constants.e / constants.m * drive.amplitude;
        let analytic = kick * (1.0 + params.g * params.g).sqrt() / damping;
        assert!(
            (fitted - analytic).abs() < 1e-5 * analytic,
            "fitted {fitted:e} vs analytic {analytic:e}"
        );
    }

    #[test]
    fn steady_state_balances_drive_power_against_dissipation() {
        let constants = PhysicalConstants::default();
        let params = unit_params(0.0, 1e-2);
        let damping = params.damping_rate();
        let drive = DriveSpec::new(1e-18, 1.0, 0.0).unwrap();
        let record =
            integrate_time_domain(&drive, &params, &constants, 20.0 / damping, 0.01).unwrap();

        let kick = constants.e / constants.m * drive.amplitude;
        let start = record.len() - record.len() / 5;
        let (mut drive_power, mut dissipation) = (0.0, 0.0);
        for i in start..record.len() {
            let t = record.times[i];
            let f = kick * ((t).cos() - params.gamma * (t).sin());
            let v = record.velocities[i];
            drive_power += f * v;
            dissipation += damping * v * v;
        }
        assert!(
            (drive_power - dissipation).abs() < 0.01 * dissipation,
            "drive {drive_power:e} vs dissipation {dissipation:e}"
        );
    }

    #[test]
    fn free_decay_envelope_rate_is_half_damping_rate() {
        let constants = PhysicalConstants::default();
        let params = unit_params(0.0, 1e-2);
        let damping = params.damping_rate();
        let drive = DriveSpec::new(0.0, 1.0, 0.0).unwrap();
        let record = integrate_time_domain_from(
            &drive,
            &params,
            &constants,
            200.0,
            0.01,
            1.0,
            0.0,
        )
        .unwrap();

        let mut peaks = Vec::new();
        for i in 1..record.len() - 1 {
            let (a, b, c) = (
                record.positions[i - 1],
                record.positions[i],
                record.positions[i + 1],
            );
            if b > a && b > c && b > 0.0 {
                peaks.push((record.times[i], b.ln()));
            }
        }
        assert!(peaks.len() > 20);
        let n = peaks.len() as f64;
        let st: f64 = peaks.iter().map(|p| p.0).sum();
        let sl: f64 = peaks.iter().map(|p| p.1).sum();
        let stt: f64 = peaks.iter().map(|p| p.0 * p.0).sum();
        let stl: f64 = peaks.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * stl - st * sl) / (n * stt - st * st);
        let rate = -slope;
        assert!(
            (rate - 0.5 * damping).abs() < 0.01 * (0.5 * damping),
            "fitted rate {rate:e} vs {:e}",
            0.5 * damping
        );
    }

    #[test]
    fn guards_reject_bad_inputs() {
        let constants = PhysicalConstants::default();
        let params = unit_params(0.0, 1e-2);
        let drive = DriveSpec::new(1.0, 1.0, 0.0).unwrap();

        assert!(DriveSpec::new(-1.0, 1.0, 0.0).is_err());
        assert!(DriveSpec::new(1.0, 0.0, 0.0).is_err());
        assert!(DriveSpec::new(1.0, 1.0, f64::NAN).is_err());

        let err =
            integrate_time_domain(&drive, &params, &constants, 10.0, 0.06).unwrap_err();
        assert!(matches!(err, Error::Resolution(_)));
        assert!(integrate_time_domain(&drive, &params, &constants, 0.0, 0.01).is_err());
        assert!(integrate_time_domain(&drive, &params, &constants, 1e9, 1e-4).is_err());

        let record = integrate_time_domain(&drive, &params, &constants, 10.0, 0.01).unwrap();
        assert!(record.steady_state_amplitude(1.0, params.damping_rate()).is_err());
    }

    #[test]
    fn record_constructor_enforces_invariants() {
        assert!(TrajectoryRecord::new(vec![0.0, 1.0], vec![0.0], vec![0.0, 0.0]).is_err());
        assert!(
            TrajectoryRecord::new(vec![0.0, 0.0], vec![0.0, 0.0], vec![0.0, 0.0]).is_err()
        );
        assert!(
            TrajectoryRecord::new(vec![0.0, 1.0], vec![0.0, 0.0], vec![0.0, 0.0]).is_ok()
        );
    }
}
