//! Numerical toolkit for a charged harmonic oscillator undergoing uniform
//! proper acceleration.
//!
//! An accelerated charge radiates, and the radiation reacts back on the
//! motion.  This crate works out the consequences for a harmonically bound
//! charge along several independent routes and cross-checks them against
//! each other:
//!
//! - [`worldline`]: relativistic kinematics and the radiation-reaction
//!   self-force split into its Schott (reversible) and drag (irreversible,
//!   Poynting-Robertson-like) pieces.  On the hyperbolic worldline of uniform
//!   acceleration the two cancel exactly.
//! - [`response`]: the driven oscillator's frequency-domain response with
//!   radiation damping, including the acceleration-induced stiffening of the
//!   damping term, plus a time-domain integrator for the reduced-order
//!   equation of motion.
//! - [`spectrum`]: the vacuum field correlation spectrum seen by the
//!   accelerated charge, which acquires a thermal factor coth(πcω/a); the
//!   associated Unruh-Davies temperature maps.
//! - [`commutator`]: the position-momentum commutator recovered as a
//!   spectral integral over the response function.  Acceleration scales both
//!   the noise spectrum and the damping so the integral lands on
//!   coth(πcω₀/a) times the vacuum value while the canonical commutator is
//!   preserved; the uncertainty product saturates at the same factor.
//! - [`thermofield`]: the same coth factor recovered a third way, from
//!   operator algebra in a truncated two-mode Fock space where the thermal
//!   vacuum appears as a two-mode squeezed state.
//! - [`quadrature`]: the adaptive Gauss-Kronrod engine the spectral
//!   integrals run on, tuned for extremely narrow resonances on a
//!   half-infinite axis.
//! - [`model`]: physical constants (Gaussian cgs) and the oscillator's
//!   dimensionless parameters s = a/(cω₀) and g = γω₀.
//!
//! All numerical claims are guarded: domain violations, unresolved grids,
//! Fock-space truncation, and non-converged quadrature surface as typed
//! errors rather than quietly wrong numbers.

pub mod commutator;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod response;
pub mod spectrum;
pub mod thermofield;
pub mod worldline;

pub use error::{Error, Result};
