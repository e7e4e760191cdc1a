//! End-to-end acceptance gate: every headline identity and tolerance the
//! toolkit promises, checked one test per claim against frozen oracle values
//! and independent in-test computations.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use accelosc::commutator::{
    commutator_closed_form, commutator_numeric, uncertainty_product, DimensionlessParams,
    WindowSpec,
};
use accelosc::model::{OscillatorParams, PhysicalConstants};
use accelosc::quadrature::{integrate, QuadratureSpec};
use accelosc::response::{integrate_time_domain, integrate_time_domain_from, steady_amplitude, DriveSpec};
use accelosc::spectrum::{acceleration_for_temperature, coth_factor, unruh_temperature};
use accelosc::thermofield::{bogoliubov_conjugate, build_fock, thermal_expectations};
use accelosc::worldline::{hyperbolic_worldline, lad_self_force};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

#[test]
fn closed_form_commutator_matches_coth() {
    // Frozen high-precision values of coth(pi/s).
    let cases = [
        (1e-3, 1.0),
        (0.1, 1.0),
        (1.0, 1.003_741_873_197_321_3),
        (10.0, 3.287_136_001_903_377),
        (1e3, 318.310_933_380_652_84),
    ];
    let mut worst: f64 = 0.0;
    for (s, reference) in cases {
        let value = commutator_closed_form(s).unwrap();
        let err = rel_err(value, reference);
        assert!(err < 1e-12, "s = {s}: {value:e} vs {reference:e}");
        worst = worst.max(err);
    }
    assert_eq!(commutator_closed_form(0.0).unwrap(), 1.0);
    println!("PASS closed-form commutator: coth values to 1e-12 (worst rel err {worst:.2e})");
}

#[test]
fn frozen_window_quadrature_matches_closed_form() {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for s in [0.0, 0.5, 1.0, 2.0, 10.0] {
        for g in [1e-8, 1e-6, 1e-4] {
            let params = DimensionlessParams::new(s, g).unwrap();
            let numeric = commutator_numeric(params, WindowSpec::FrozenHalfResonance, &spec)
                .unwrap()
                .value;
            let closed = commutator_closed_form(s).unwrap();
            let err = rel_err(numeric, closed);
            assert!(err < 1e-8, "s = {s}, g = {g:e}: {numeric} vs {closed}");
            worst = worst.max(err);
        }
    }
    println!(
        "PASS frozen-window quadrature: 15-point (s, g) grid matches closed form \
         to 1e-8 (worst rel err {worst:.2e})"
    );
}

/// Independent brute-force oracle for the symmetric resonance window at
/// s = 0: composite Simpson on z = u² − 1 = g·tan(φ), which flattens the
/// Lorentzian peak completely.
fn symmetric_window_oracle_s0(g: f64, half_width: f64, intervals: usize) -> f64 {
    let phi_max = (half_width / g).atan();
    let h = 2.0 * phi_max / intervals as f64;
    let integrand = |phi: f64| {
        let z = g * phi.tan();
        let u = (1.0 + z).sqrt();
        let u2 = u * u;
        let denom = z * z + g * g * u2 * u2 * u2;
        let du_dphi = g / phi.cos().powi(2);
        (4.0 / PI) * g * u2 * u2 / denom * du_dphi / (2.0 * u)
    };
    let mut sum = integrand(-phi_max) + integrand(phi_max);
    for i in 1..intervals {
        let phi = -phi_max + h * i as f64;
        sum += integrand(phi) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

#[test]
fn symmetric_window_doubles_the_half_resonance_weight() {
    let spec = QuadratureSpec::default();
    let params = DimensionlessParams::new(0.0, 1e-6).unwrap();
    let window = WindowSpec::SymmetricResonance { half_width: 1e-2 };
    let symmetric = commutator_numeric(params, window, &spec).unwrap().value;

    let oracle = symmetric_window_oracle_s0(1e-6, 1e-2, 40_000);
    assert!(
        rel_err(symmetric, oracle) < 1e-8,
        "library {symmetric} vs Simpson oracle {oracle}"
    );
    let frozen = 1.999_872_680_81;
    assert!(rel_err(symmetric, frozen) < 2e-9);
    assert!(
        (symmetric - 2.0).abs() < 0.01 * 2.0,
        "symmetric window should give twice the half-resonance weight, got {symmetric}"
    );

    let full = commutator_numeric(params, WindowSpec::FullAxis { cutoff: 1e3 }, &spec)
        .unwrap()
        .value;
    let excess = full - symmetric;
    assert!(excess > 0.0);
    println!(
        "PASS window exposure: symmetric window = {symmetric:.9} (2.000 within 1%, \
         Simpson oracle agrees); full-axis excess over it = {excess:.3e} (recorded)"
    );
}

#[test]
fn uncertainty_product_saturates_at_the_thermal_factor() {
    let spec = QuadratureSpec::default();
    let g = 1e-6;
    let mut worst: f64 = 0.0;
    for s in [0.0, 0.5, 1.0, 2.0, 10.0] {
        let params = DimensionlessParams::new(s, g).unwrap();
        let window = WindowSpec::FrozenHalfResonance;
        let product = uncertainty_product(params, window, &spec).unwrap();
        let commutator = commutator_numeric(params, window, &spec).unwrap().value;
        let coth = commutator_closed_form(s).unwrap();
        let err_coth = rel_err(product, coth);
        let err_sat = rel_err(product, commutator);
        assert!(err_coth < 1e-6, "s = {s}: product {product} vs coth {coth}");
        assert!(err_sat < 1e-6, "s = {s}: saturation identity violated");
        worst = worst.max(err_coth).max(err_sat);
    }
    println!(
        "PASS uncertainty product: saturates at coth(pi/s) on the s grid to 1e-6 \
         (worst rel err {worst:.2e})"
    );
}

#[test]
fn unruh_temperature_value_and_round_trip() {
    let constants = PhysicalConstants::default();
    let g_n = 980.665;
    let temp = unruh_temperature(g_n, &constants).unwrap();
    let frozen = 3.976_609_836_282_950_8e-20;
    assert!(rel_err(temp, frozen) < 1e-12);
    assert!(rel_err(temp, 3.98e-20) < 0.005);

    let mut worst: f64 = 0.0;
    for accel in [1.0, g_n, 2.466_083_021_402_610_6e22] {
        let back = acceleration_for_temperature(unruh_temperature(accel, &constants).unwrap(), &constants)
            .unwrap();
        worst = worst.max(rel_err(back, accel));
    }
    assert!(worst < 1e-12, "round-trip worst rel err {worst:e}");
    println!(
        "PASS Unruh temperature: T(g_n) = {temp:.6e} K (3.98e-20 within 0.5%), \
         round trip to 1e-12 (worst {worst:.2e})"
    );
}

#[test]
fn electron_damping_time_matches_codata_arithmetic() {
    let constants = PhysicalConstants::default();
    let gamma = constants.damping_time();
    let frozen = 6.266_423_558_870_010_3e-24;
    assert!(rel_err(gamma, frozen) < 1e-12);
    assert!(rel_err(gamma, 6.266e-24) < 1e-3);
    println!("PASS electron damping time: 2e^2/(3mc^3) = {gamma:.6e} s (6.266e-24 within 0.1%)");
}

#[test]
fn hyperbolic_self_force_cancellation() {
    let constants = PhysicalConstants::default();
    let damping = constants.damping_time();
    let mut worst: f64 = 0.0;
    for accel in [1.0, 1e10, 1e20] {
        let worldline = hyperbolic_worldline(accel, &constants).unwrap();
        let tau_unit = constants.c / accel;
        for i in 0..100 {
            let tau = (-10.0 + 20.0 * i as f64 / 99.0) * tau_unit;
            let lad = lad_self_force(&worldline, tau, damping, &constants).unwrap();
            let ratio = lad.total_self.euclidean_norm() / lad.schott.euclidean_norm();
            assert!(
                ratio < 1e-12,
                "a = {accel:e}, tau = {tau:e}: |schott + drag| / |schott| = {ratio:e}"
            );
            worst = worst.max(ratio);
        }
    }
    println!(
        "PASS hyperbolic self-force: Schott and drag cancel below 1e-12 of Schott \
         at 300 samples (worst ratio {worst:.2e})"
    );
}

#[test]
fn time_domain_matches_frequency_domain_response() {
    let constants = PhysicalConstants::default();
    let mut worst: f64 = 0.0;
    for s in [0.0, 1.0] {
        for g in [1e-2, 1e-3] {
            let params = OscillatorParams::from_dimensionless(1.0, s, g, &constants).unwrap();
            let damping = params.damping_rate();
            let drive = DriveSpec::new(1e-18, 1.0, 0.0).unwrap();
            let record =
                integrate_time_domain(&drive, &params, &constants, 30.0 / damping, 0.01).unwrap();
            let fitted = record.steady_state_amplitude(1.0, damping).unwrap();
            let predicted = steady_amplitude(&drive, &params, &constants).norm();
            let err = rel_err(fitted, predicted);
            assert!(
                err < 1e-3,
                "s = {s}, g = {g:e}: fitted {fitted:e} vs frequency-domain {predicted:e}"
            );
            worst = worst.max(err);
        }
    }

    // Undriven decay envelope: ln of successive peaks falls at damping/2.
    let params = OscillatorParams::from_dimensionless(1.0, 1.0, 1e-2, &constants).unwrap();
    let damping = params.damping_rate();
    let silent = DriveSpec::new(0.0, 1.0, 0.0).unwrap();
    let record =
        integrate_time_domain_from(&silent, &params, &constants, 200.0, 0.01, 1e-8, 0.0).unwrap();
    let mut t_peaks = Vec::new();
    let mut ln_peaks = Vec::new();
    for i in 1..record.len() - 1 {
        let (a, b, c) = (
            record.positions[i - 1],
            record.positions[i],
            record.positions[i + 1],
        );
        if b > 0.0 && b >= a && b > c {
            let refined = b - (a - c) * (a - c) / (8.0 * (a - 2.0 * b + c));
            t_peaks.push(record.times[i]);
            ln_peaks.push(refined.ln());
        }
    }
    let n = t_peaks.len() as f64;
    let mean_t = t_peaks.iter().sum::<f64>() / n;
    let mean_ln = ln_peaks.iter().sum::<f64>() / n;
    let slope = t_peaks
        .iter()
        .zip(&ln_peaks)
        .map(|(t, l)| (t - mean_t) * (l - mean_ln))
        .sum::<f64>()
        / t_peaks.iter().map(|t| (t - mean_t) * (t - mean_t)).sum::<f64>();
    let decay_err = rel_err(-slope, damping / 2.0);
    assert!(decay_err < 0.01, "decay rate {slope:e} vs -{:e}", damping / 2.0);

    println!(
        "PASS time vs frequency domain: fitted resonance amplitudes match to 1e-3 \
         (worst rel err {worst:.2e}); undriven decay rate within 1% (err {decay_err:.2e})"
    );
}

#[test]
fn thermofield_expectations_and_bogoliubov_conjugation() {
    let fock = build_fock(40).unwrap();

    let ex = thermal_expectations(&fock, PI).unwrap();
    let frozen_number = 1.870_936_598_660_644_1e-3;
    let frozen_coth = 1.003_741_873_197_321_3;
    let err_n = rel_err(ex.number, frozen_number);
    let err_c = rel_err(ex.commutator, frozen_coth);
    assert!(err_n < 1e-8, "occupation {} vs {frozen_number}", ex.number);
    assert!(err_c < 1e-8, "commutator {} vs {frozen_coth}", ex.commutator);

    let pair = bogoliubov_conjugate(&fock, 0.3).unwrap();
    assert!(
        pair.conjugation_residual < 1e-8,
        "conjugation residual {:e}",
        pair.conjugation_residual
    );

    let mut worst: f64 = err_n.max(err_c);
    for s in [0.5, 1.0, 2.0] {
        let ex = thermal_expectations(&fock, PI / s).unwrap();
        let expected = coth_factor(s).unwrap();
        let err = rel_err(ex.commutator, expected);
        assert!(err < 1e-8, "s = {s}: {} vs {expected}", ex.commutator);
        worst = worst.max(err);
    }
    println!(
        "PASS thermofield: occupation and commutator at alpha = pi to 1e-8, \
         conjugation residual {:.2e}, coth cross-check worst rel err {worst:.2e}",
        pair.conjugation_residual
    );
}

#[test]
fn quadrature_lorentzian_identity_and_property_suites() {
    // Lorentzian identity over 25 decades of width.
    let mut width = 1e-12;
    let mut worst: f64 = 0.0;
    while width <= 1e12 {
        let spec = QuadratureSpec::with_peak(0.0, width);
        let a = width;
        let r = integrate(|z| a / (z * z + a * a), 0.0, f64::INFINITY, &spec).unwrap();
        assert!(r.converged);
        let err = rel_err(r.value, PI / 2.0);
        assert!(err < 1e-10, "A = {a:e}: {} vs pi/2", r.value);
        worst = worst.max(err);
        width *= 1e3;
    }

    // Additivity: splitting an interval must reproduce the whole within the
    // reported error estimates.
    let mut rng = StdRng::seed_from_u64(0x0acc_e55e);
    let spec = QuadratureSpec::default();
    for case in 0..1000 {
        let center: f64 = rng.random_range(1.0..9.0);
        let width = 10f64.powf(rng.random_range(-6.0..0.0));
        let amp_lorentz: f64 = rng.random_range(0.5..2.0);
        let amp_exp: f64 = rng.random_range(0.5..2.0);
        let rate: f64 = rng.random_range(0.1..2.0);
        let f = |z: f64| {
            amp_lorentz * width / ((z - center) * (z - center) + width * width)
                + amp_exp * (-rate * z).exp()
        };
        let hinted = spec.peaked_at(center, width);
        let split: f64 = rng.random_range(0.5..9.5);
        let whole = integrate(f, 0.0, 10.0, &hinted).unwrap();
        let left = integrate(f, 0.0, split, &hinted).unwrap();
        let right = integrate(f, split, 10.0, &hinted).unwrap();
        let disagreement = (left.value + right.value - whole.value).abs();
        let budget =
            5.0 * (left.error_estimate + right.error_estimate + whole.error_estimate) + 5e-13;
        assert!(
            disagreement <= budget,
            "case {case}: additivity violated by {disagreement:e} (budget {budget:e})"
        );
    }

    // Tolerance monotonicity: tightening rel_tol must not worsen the true
    // error against the analytic antiderivative.
    for case in 0..1000 {
        let a = 10f64.powf(rng.random_range(-6.0..3.0));
        let upper = a * 10f64.powf(rng.random_range(1.0..6.0));
        let analytic = (upper / a).atan();
        let mut previous = f64::INFINITY;
        for rel_tol in [1e-4, 1e-7, 1e-10] {
            let spec = QuadratureSpec {
                rel_tol,
                abs_tol: 1e-300,
                ..QuadratureSpec::default()
            }
            .peaked_at(0.0, a);
            let r = integrate(|z| a / (z * z + a * a), 0.0, upper, &spec).unwrap();
            let err = (r.value - analytic).abs();
            assert!(
                err <= previous.max(5e-13),
                "case {case}, rel_tol {rel_tol:e}: error {err:e} after {previous:e}"
            );
            previous = err;
        }
    }

    println!(
        "PASS quadrature engine: Lorentzian identity over [1e-12, 1e12] to 1e-10 \
         (worst rel err {worst:.2e}); 1000-case additivity and tolerance-monotonicity \
         suites hold"
    );
}
