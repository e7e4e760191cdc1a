//! Relativistic kinematics and the radiation-reaction self-force split.
//!
//! A worldline supplies x^μ(τ) with derivatives up to third order, either
//! analytically or by Richardson-extrapolated central differences. The
//! self-force per unit mass splits into the Schott term γ·x⃛_ν and the
//! velocity-proportional drag γ·(ẍ·ẍ)ẋ_ν/c², the piece with the
//! Poynting–Robertson form −Rv/c². On hyperbolic motion the two cancel
//! identically because x⃛^ν = (a²/c²)ẋ^ν.
//!
//! Metric signature is (+,−,−,−), so ẋ·ẋ = c² and ẍ·ẍ = −a² (spacelike
//! acceleration).

use crate::error::{Error, Result};
use crate::model::PhysicalConstants;
use crate::response::TrajectoryRecord;

/// Contravariant four-vector (x⁰ = ct first), Gaussian-cgs components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self([t, x, y, z])
    }

    pub fn zero() -> Self {
        Self([0.0; 4])
    }

    /// Minkowski inner product with signature (+,−,−,−).
    pub fn minkowski_dot(&self, other: &Self) -> f64 {
        self.0[0] * other.0[0] - self.0[1] * other.0[1] - self.0[2] * other.0[2]
            - self.0[3] * other.0[3]
    }

    pub fn scale(&self, k: f64) -> Self {
        Self([k * self.0[0], k * self.0[1], k * self.0[2], k * self.0[3]])
    }

    /// Euclidean norm of the components; a size measure for residuals, not a
    /// Lorentz invariant.
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

type VectorFn = Box<dyn Fn(f64) -> FourVector + Send + Sync>;

/// Closed-form derivative suite for a worldline.
///
/// `acc_square` is the constant value of ẍ·ẍ when it is known analytically;
/// forming the Minkowski dot numerically loses ~cosh²(aτ/c) of precision on
/// hyperbolic motion, so the exact constant is what makes the self-force
/// cancellation testable at 1e−12.
pub struct AnalyticDerivatives {
    pub velocity: VectorFn,
    pub acceleration: VectorFn,
    pub jerk: VectorFn,
    pub acc_square: Option<f64>,
}

pub enum DerivativeSource {
    Analytic(AnalyticDerivatives),
    /// Central differences with the given proper-time step; 4th-order
    /// stencils evaluated at h and h/2 and Richardson-combined.
    FiniteDifference { step: f64 },
}

/// Parameterized worldline x^μ(τ) with derivative access.
pub struct Worldline {
    position: VectorFn,
    source: DerivativeSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Order {
    First,
    Second,
    Third,
}

impl Worldline {
    pub fn new(position: VectorFn, source: DerivativeSource) -> Result<Self> {
        if let DerivativeSource::FiniteDifference { step } = source {
            if !(step.is_finite() && step > 0.0) {
                return Err(Error::Domain(format!(
                    "finite-difference step must be finite and positive, got {step:e}"
                )));
            }
        }
        Ok(Self { position, source })
    }

    pub fn position(&self, tau: f64) -> FourVector {
        (self.position)(tau)
    }

    pub fn velocity(&self, tau: f64) -> Result<FourVector> {
        self.derivative(tau, Order::First).map(|d| d.0)
    }

    pub fn acceleration(&self, tau: f64) -> Result<FourVector> {
        self.derivative(tau, Order::Second).map(|d| d.0)
    }

    pub fn jerk(&self, tau: f64) -> Result<FourVector> {
        self.derivative(tau, Order::Third).map(|d| d.0)
    }

    /// Richardson error estimates for the three derivative orders at τ;
    /// zeros for analytic worldlines.
    pub fn derivative_error_estimates(&self, tau: f64) -> Result<[f64; 3]> {
        match &self.source {
            DerivativeSource::Analytic(_) => Ok([0.0; 3]),
            DerivativeSource::FiniteDifference { .. } => Ok([
                self.derivative(tau, Order::First)?.1,
                self.derivative(tau, Order::Second)?.1,
                self.derivative(tau, Order::Third)?.1,
            ]),
        }
    }

    /// The invariant ẍ·ẍ at τ, taken from the analytic constant when the
    /// worldline carries one.
    pub fn acceleration_square(&self, tau: f64) -> Result<f64> {
        if let DerivativeSource::Analytic(d) = &self.source {
            if let Some(sq) = d.acc_square {
                return Ok(sq);
            }
        }
        let acc = self.acceleration(tau)?;
        Ok(acc.minkowski_dot(&acc))
    }

    fn derivative(&self, tau: f64, order: Order) -> Result<(FourVector, f64)> {
        if !tau.is_finite() {
            return Err(Error::Domain(format!(
                "proper time must be finite, got {tau:e}"
            )));
        }
        let value = match &self.source {
            DerivativeSource::Analytic(d) => {
                let v = match order {
                    Order::First => (d.velocity)(tau),
                    Order::Second => (d.acceleration)(tau),
                    Order::Third => (d.jerk)(tau),
                };
                (v, 0.0)
            }
            DerivativeSource::FiniteDifference { step } => {
                let coarse = self.stencil(tau, *step, order);
                let fine = self.stencil(tau, 0.5 * step, order);
                let improved = (fine.scale(16.0) + coarse.scale(-1.0)).scale(1.0 / 15.0);
                let estimate = (fine - coarse).euclidean_norm() / 15.0;
                (improved, estimate)
            }
        };
        if !value.0.is_finite() {
            return Err(Error::NonFiniteEvaluation { abscissa: tau });
        }
        Ok(value)
    }

    fn stencil(&self, tau: f64, h: f64, order: Order) -> FourVector {
        let f = |k: f64| (self.position)(tau + k * h);
        match order {
            Order::First => {
                (f(-2.0) + f(-1.0).scale(-8.0) + f(1.0).scale(8.0) + f(2.0).scale(-1.0))
                    .scale(1.0 / (12.0 * h))
            }
            Order::Second => (f(-2.0).scale(-1.0)
                + f(-1.0).scale(16.0)
                + f(0.0).scale(-30.0)
                + f(1.0).scale(16.0)
                + f(2.0).scale(-1.0))
            .scale(1.0 / (12.0 * h * h)),
            Order::Third => (f(-3.0)
                + f(-2.0).scale(-8.0)
                + f(-1.0).scale(13.0)
                + f(1.0).scale(-13.0)
                + f(2.0).scale(8.0)
                + f(3.0).scale(-1.0))
            .scale(1.0 / (8.0 * h * h * h)),
        }
    }
}

/// Worldline of constant proper acceleration `a` along z:
/// x⁰ = (c²/a)·sinh(aτ/c), z = (c²/a)·cosh(aτ/c).
pub fn hyperbolic_worldline(accel: f64, constants: &PhysicalConstants) -> Result<Worldline> {
    if !(accel.is_finite() && accel > 0.0) {
        return Err(Error::Domain(format!(
            "proper acceleration must be finite and positive, got {accel:e}"
        )));
    }
    let c = constants.c;
    let position = Box::new(move |tau: f64| {
        let phi = accel * tau / c;
        FourVector::new(c * c / accel * phi.sinh(), 0.0, 0.0, c * c / accel * phi.cosh())
    });
    let velocity = Box::new(move |tau: f64| {
        let phi = accel * tau / c;
        FourVector::new(c * phi.cosh(), 0.0, 0.0, c * phi.sinh())
    });
    let acceleration = Box::new(move |tau: f64| {
        let phi = accel * tau / c;
        FourVector::new(accel * phi.sinh(), 0.0, 0.0, accel * phi.cosh())
    });
    let jerk = Box::new(move |tau: f64| {
        let phi = accel * tau / c;
        FourVector::new(
            accel * accel / c * phi.cosh(),
            0.0,
            0.0,
            accel * accel / c * phi.sinh(),
        )
    });
    Worldline::new(
        position,
        DerivativeSource::Analytic(AnalyticDerivatives {
            velocity,
            acceleration,
            jerk,
            acc_square: Some(-accel * accel),
        }),
    )
}

/// Unaccelerated worldline at speed βc along x.
pub fn inertial_worldline(beta: f64, constants: &PhysicalConstants) -> Result<Worldline> {
    if !(beta.is_finite() && beta.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "speed ratio must satisfy |β| < 1, got {beta:e}"
        )));
    }
    let c = constants.c;
    let lorentz = 1.0 / (1.0 - beta * beta).sqrt();
    let position =
        Box::new(move |tau: f64| FourVector::new(c * lorentz * tau, c * lorentz * beta * tau, 0.0, 0.0));
    let velocity = Box::new(move |_| FourVector::new(c * lorentz, c * lorentz * beta, 0.0, 0.0));
    let acceleration = Box::new(|_| FourVector::zero());
    let jerk = Box::new(|_| FourVector::zero());
    Worldline::new(
        position,
        DerivativeSource::Analytic(AnalyticDerivatives {
            velocity,
            acceleration,
            jerk,
            acc_square: Some(0.0),
        }),
    )
}

/// Circular motion at speed βc and lab radius r in the x–y plane,
/// parameterized by proper time.
pub fn circular_worldline(
    beta: f64,
    radius: f64,
    constants: &PhysicalConstants,
) -> Result<Worldline> {
    if !(beta.is_finite() && beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!(
            "speed ratio must satisfy 0 < β < 1, got {beta:e}"
        )));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain(format!(
            "radius must be finite and positive, got {radius:e}"
        )));
    }
    let c = constants.c;
    let lorentz = 1.0 / (1.0 - beta * beta).sqrt();
    // Proper-time angular rate: phase advances as Ωτ with Ω = γβc/r.
    let omega = lorentz * beta * c / radius;
    let position = Box::new(move |tau: f64| {
        FourVector::new(
            c * lorentz * tau,
            radius * (omega * tau).cos(),
            radius * (omega * tau).sin(),
            0.0,
        )
    });
    let velocity = Box::new(move |tau: f64| {
        FourVector::new(
            c * lorentz,
            -radius * omega * (omega * tau).sin(),
            radius * omega * (omega * tau).cos(),
            0.0,
        )
    });
    let acceleration = Box::new(move |tau: f64| {
        let a = radius * omega * omega;
        FourVector::new(0.0, -a * (omega * tau).cos(), -a * (omega * tau).sin(), 0.0)
    });
    let jerk = Box::new(move |tau: f64| {
        let j = radius * omega * omega * omega;
        FourVector::new(0.0, j * (omega * tau).sin(), -j * (omega * tau).cos(), 0.0)
    });
    let acc_square = -(radius * omega * omega) * (radius * omega * omega);
    Worldline::new(
        position,
        DerivativeSource::Analytic(AnalyticDerivatives {
            velocity,
            acceleration,
            jerk,
            acc_square: Some(acc_square),
        }),
    )
}

/// Self-force bracket per unit mass, split into its two terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadDecomposition {
    /// γ·x⃛_ν, the Schott (acceleration-energy) term.
    pub schott: FourVector,
    /// γ·(ẍ·ẍ)ẋ_ν/c², the Poynting–Robertson-form drag.
    pub drag: FourVector,
    /// Componentwise sum of the two.
    pub total_self: FourVector,
}

/// Evaluates both self-force terms at proper time τ. `damping_time` is the
/// radiation-reaction timescale 2e²/(3mc³) of the charge.
pub fn lad_self_force(
    worldline: &Worldline,
    tau: f64,
    damping_time: f64,
    constants: &PhysicalConstants,
) -> Result<LadDecomposition> {
    if !(damping_time.is_finite() && damping_time > 0.0) {
        return Err(Error::Domain(format!(
            "damping time must be finite and positive, got {damping_time:e}"
        )));
    }
    let jerk = worldline.jerk(tau)?;
    let velocity = worldline.velocity(tau)?;
    let acc_square = worldline.acceleration_square(tau)?;
    let schott = jerk.scale(damping_time);
    let drag = velocity.scale(damping_time * acc_square / (constants.c * constants.c));
    Ok(LadDecomposition {
        schott,
        drag,
        total_self: schott + drag,
    })
}

/// Total power 2e²a²/(3c³) radiated by a charge with proper acceleration a
/// (erg/s). Even in a, so signed input is accepted.
pub fn larmor_power(accel: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !accel.is_finite() {
        return Err(Error::Domain(format!(
            "acceleration must be finite, got {accel:e}"
        )));
    }
    Ok(2.0 * constants.e * constants.e * accel * accel / (3.0 * constants.c.powi(3)))
}

/// Drag force −R·v/c² (dyn) on a body moving at v while exchanging radiation
/// of power R.
pub fn pr_drag_force(v: f64, radiated_power: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(v.is_finite() && v.abs() < constants.c) {
        return Err(Error::Domain(format!(
            "speed must satisfy |v| < c, got {v:e}"
        )));
    }
    if !(radiated_power.is_finite() && radiated_power >= 0.0) {
        return Err(Error::Domain(format!(
            "radiated power must be finite and non-negative, got {radiated_power:e}"
        )));
    }
    Ok(-radiated_power * v / (constants.c * constants.c))
}

/// Pointwise residual of the nonrelativistic equation
/// ẍ − γx⃛ = (e/m)·E_total on a sampled trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualRecord {
    pub times: Vec<f64>,
    pub residuals: Vec<f64>,
}

impl ResidualRecord {
    pub fn max_abs(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Computes ẍ − γx⃛ − (e/m)·E_total on the interior of a uniform trajectory
/// grid, with 4th-order central stencils for the derivatives.
///
/// `field` holds the total external force per unit charge at each sample.
/// For an oscillator the caller folds the restoring force in as
/// E(t) − (mω₀²/e)·x(t); the residual then measures how far the trajectory
/// is from solving the a = 0 equation of motion.
///
/// The stencils need three neighbors on each side, so the residual covers
/// samples 3..n−3.
pub fn lorentz_nonrel_residual(
    record: &TrajectoryRecord,
    damping_time: f64,
    field: &[f64],
    constants: &PhysicalConstants,
) -> Result<ResidualRecord> {
    if !(damping_time.is_finite() && damping_time > 0.0) {
        return Err(Error::Domain(format!(
            "damping time must be finite and positive, got {damping_time:e}"
        )));
    }
    let n = record.len();
    if field.len() != n {
        return Err(Error::Domain(format!(
            "field record has {} samples but trajectory has {n}",
            field.len()
        )));
    }
    if n < 7 {
        return Err(Error::Resolution(format!(
            "third-derivative stencils need at least 7 samples, got {n}"
        )));
    }
    let dt = record.times[1] - record.times[0];
    for w in record.times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt {
            return Err(Error::Domain(
                "trajectory grid must be uniform".to_string(),
            ));
        }
    }
    let sum_x2: f64 = record.positions.iter().map(|x| x * x).sum();
    let sum_v2: f64 = record.velocities.iter().map(|v| v * v).sum();
    if sum_x2 > 0.0 {
        let omega_est = (sum_v2 / sum_x2).sqrt();
        if dt * omega_est > 0.5 {
            return Err(Error::Resolution(format!(
                "grid step {dt:e} too coarse for the sampled oscillation (ω ≈ {omega_est:e})"
            )));
        }
    }

    let x = &record.positions;
    let charge_per_mass = constants.e / constants.m;
    let mut times = Vec::with_capacity(n - 6);
    let mut residuals = Vec::with_capacity(n - 6);
    for i in 3..n - 3 {
        let acc = (-x[i - 2] + 16.0 * x[i - 1] - 30.0 * x[i] + 16.0 * x[i + 1] - x[i + 2])
            / (12.0 * dt * dt);
        let jerk = (x[i - 3] - 8.0 * x[i - 2] + 13.0 * x[i - 1] - 13.0 * x[i + 1]
            + 8.0 * x[i + 2]
            - x[i + 3])
            / (8.0 * dt * dt * dt);
        times.push(record.times[i]);
        residuals.push(acc - damping_time * jerk - charge_per_mass * field[i]);
    }
    Ok(ResidualRecord { times, residuals })
}
