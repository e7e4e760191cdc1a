//! Truncated two-mode Fock-space model of the thermal vacuum seen by a
//! uniformly accelerated observer.
//!
//! The thermal state is represented as a two-mode squeezed vacuum
//! T(θ)|0,0̃⟩ with T(θ) = exp[θ(a†ã† − aã)], where the squeeze angle is tied
//! to the dimensionless ratio α = πcω₀/a through tanh θ = e^(−α).  Mode
//! operators transform by conjugation, a → T a T†, whose closed form is the
//! Bogoliubov combination a cosh θ − ã† sinh θ; this module computes the
//! conjugation three independent ways (closed form, matrix exponentials,
//! nested-commutator series) and reports the disagreement so truncation
//! artifacts stay visible.
//!
//! Expectation values in the squeezed vacuum reproduce the Bose occupation
//! 1/(e^(2α) − 1), and the sum of the two operator orderings
//! ⟨a_T a_T† + a_T† a_T⟩ reproduces coth α, the same factor that scales the
//! commutator spectral integral.  Everything lives in a finite Fock space
//! with occupation cutoff `n_max` per mode, so every entry point guards
//! against truncation error leaking into results.

mod sparse;

pub use sparse::{expm, expm_mul, SparseOp};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// ln(10^−12): truncation guards require the discarded amplitude or Boltzmann
/// weight to fall below 10^−12.
const TRUNCATION_LOG_TOL: f64 = -27.631_021_115_928_547;

const MAX_N_MAX: usize = 200;
const MAX_BCH_ORDER: usize = 60;

/// Ladder operators for two bosonic modes (the physical mode and its tilde
/// partner), truncated at occupation `n_max` per mode.
///
/// Basis ordering is row-major in (n, m): index(n, m) = n·(n_max+1) + m.
#[derive(Debug, Clone)]
pub struct TwoModeFock {
    n_max: usize,
    pub a: SparseOp,
    pub a_dag: SparseOp,
    pub a_tilde: SparseOp,
    pub a_tilde_dag: SparseOp,
}

/// Builds the truncated two-mode ladder algebra; `n_max` must lie in [2, 200].
pub fn build_fock(n_max: usize) -> Result<TwoModeFock> {
    if !(2..=MAX_N_MAX).contains(&n_max) {
        return Err(Error::Domain(format!(
            "n_max must lie in [2, {MAX_N_MAX}], got {n_max}"
        )));
    }
    let side = n_max + 1;
    let dim = side * side;
    let idx = |n: usize, m: usize| n * side + m;
    let mut a_entries = Vec::with_capacity(n_max * side);
    let mut tilde_entries = Vec::with_capacity(n_max * side);
    for n in 1..=n_max {
        let root = (n as f64).sqrt();
        for m in 0..=n_max {
            a_entries.push((idx(n - 1, m), idx(n, m), Complex64::new(root, 0.0)));
            tilde_entries.push((idx(m, n - 1), idx(m, n), Complex64::new(root, 0.0)));
        }
    }
    let a = SparseOp::from_entries(dim, a_entries);
    let a_tilde = SparseOp::from_entries(dim, tilde_entries);
    Ok(TwoModeFock {
        n_max,
        a_dag: a.adjoint(),
        a_tilde_dag: a_tilde.adjoint(),
        a,
        a_tilde,
    })
}

impl TwoModeFock {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 1)
    }

    /// Flat index of the basis state |n, m̃⟩.
    pub fn index(&self, n: usize, m: usize) -> usize {
        assert!(n <= self.n_max && m <= self.n_max);
        n * (self.n_max + 1) + m
    }

    /// The state |0, 0̃⟩.
    pub fn vacuum(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::ZERO; self.dim()];
        v[0] = Complex64::ONE;
        v
    }

    /// Marks the low-occupation block n + m ≤ n_max/2 where truncation
    /// artifacts are negligible; comparisons against closed forms are
    /// restricted to this block.
    pub fn safe_block_mask(&self) -> Vec<bool> {
        let side = self.n_max + 1;
        let mut mask = vec![false; self.dim()];
        for n in 0..side {
            for m in 0..side {
                mask[n * side + m] = n + m <= self.n_max / 2;
            }
        }
        mask
    }

    /// Squeeze generator θ(a†ã† − aã), the anti-Hermitian generator of T(θ).
    pub fn generator(&self, theta: f64) -> SparseOp {
        let pump = self.a_dag.matmul(&self.a_tilde_dag);
        let drain = self.a.matmul(&self.a_tilde);
        pump.add_scaled(&drain, -Complex64::ONE)
            .scale(Complex64::new(theta, 0.0))
    }
}

fn validate_theta(theta: f64, n_max: usize, what: &str) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!(
            "{what}: squeeze angle must be finite, got {theta}"
        )));
    }
    let limit = (1.0 - 1e-6f64).atanh();
    if theta.abs() > limit {
        return Err(Error::Domain(format!(
            "{what}: |theta| = {} exceeds the representable limit {limit:.6}",
            theta.abs()
        )));
    }
    let t = theta.abs().tanh();
    if t > 0.0 && (n_max as f64) * t.ln() >= TRUNCATION_LOG_TOL {
        let required = (TRUNCATION_LOG_TOL / t.ln()).ceil() as usize;
        return Err(Error::Truncation(format!(
            "{what}: tanh(|theta|)^n_max = {:.3e} leaves more than 1e-12 of the \
             state above the cutoff; n_max = {required} or larger is needed \
             (got {n_max})",
            t.powi(n_max as i32)
        )));
    }
    Ok(())
}

/// Two-mode squeezed vacuum with its squeeze angle and, for θ > 0, the
/// equivalent thermal parameter α = −ln tanh θ.
#[derive(Debug, Clone)]
pub struct ThermofieldState {
    pub theta: f64,
    pub alpha: Option<f64>,
    pub amplitudes: Vec<Complex64>,
}

/// Applies T(θ) to |0, 0̃⟩.  The result populates only the paired states
/// |n, ñ⟩ with amplitudes tanh^n θ / cosh θ.
///
/// Fails with a truncation error when tanh(|θ|)^n_max ≥ 10^−12, naming the
/// cutoff that would suffice.
pub fn thermofield_vacuum(fock: &TwoModeFock, theta: f64) -> Result<ThermofieldState> {
    validate_theta(theta, fock.n_max, "thermofield_vacuum")?;
    let amplitudes = expm_mul(&fock.generator(theta), &fock.vacuum());
    let alpha = (theta > 0.0).then(|| -theta.tanh().ln());
    Ok(ThermofieldState {
        theta,
        alpha,
        amplitudes,
    })
}

/// Bogoliubov-transformed mode operators in closed form, with the measured
/// disagreement between the closed form and the conjugation computed by
/// matrix exponentials.
#[derive(Debug, Clone)]
pub struct BogoliubovPair {
    /// a cosh θ − ã† sinh θ
    pub annihilator: SparseOp,
    /// a† cosh θ − ã sinh θ
    pub creator: SparseOp,
    /// Larger of the two safe-block Frobenius distances between T X T†
    /// (computed with matrix exponentials) and the closed forms.
    pub conjugation_residual: f64,
}

/// Conjugates the mode operators by the squeeze unitary, a → T(θ) a T†(θ).
///
/// The returned operators are the closed forms; the residual records how far
/// the explicit exponential route lands from them on the safe block.
pub fn bogoliubov_conjugate(fock: &TwoModeFock, theta: f64) -> Result<BogoliubovPair> {
    validate_theta(theta, fock.n_max, "bogoliubov_conjugate")?;
    let (ch, sh) = (
        Complex64::new(theta.cosh(), 0.0),
        Complex64::new(theta.sinh(), 0.0),
    );
    let annihilator = fock.a.scale(ch).add_scaled(&fock.a_tilde_dag, -sh);
    let creator = fock.a_dag.scale(ch).add_scaled(&fock.a_tilde, -sh);

    let t = expm(&fock.generator(theta));
    let t_dag = t.adjoint();
    let mask = fock.safe_block_mask();
    let residual_a = t
        .matmul(&fock.a.matmul(&t_dag))
        .frobenius_distance_on(&annihilator, &mask);
    let residual_a_dag = t
        .matmul(&fock.a_dag.matmul(&t_dag))
        .frobenius_distance_on(&creator, &mask);
    Ok(BogoliubovPair {
        annihilator,
        creator,
        conjugation_residual: residual_a.max(residual_a_dag),
    })
}

/// Result of summing the nested-commutator (Hadamard) series for
/// T a T† = Σ_k ad_G^k(a) / k! up to a finite order.
#[derive(Debug, Clone)]
pub struct BchConjugation {
    pub operator: SparseOp,
    /// Safe-block Frobenius norm of the first omitted series term.
    pub remainder_estimate: f64,
}

/// Sums the nested-commutator series for the conjugated annihilator through
/// the given order (1 ≤ order ≤ 60).
pub fn bch_series_operator(fock: &TwoModeFock, theta: f64, order: usize) -> Result<BchConjugation> {
    validate_theta(theta, fock.n_max, "bch_series_operator")?;
    if !(1..=MAX_BCH_ORDER).contains(&order) {
        return Err(Error::Domain(format!(
            "bch_series_operator: order must lie in [1, {MAX_BCH_ORDER}], got {order}"
        )));
    }
    let g = fock.generator(theta);
    let mut operator = fock.a.clone();
    let mut term = fock.a.clone();
    for k in 1..=order {
        term = g
            .commutator_with(&term)
            .scale(Complex64::new(1.0 / k as f64, 0.0));
        operator = operator.add_scaled(&term, Complex64::ONE);
    }
    let next = g
        .commutator_with(&term)
        .scale(Complex64::new(1.0 / (order + 1) as f64, 0.0));
    Ok(BchConjugation {
        operator,
        remainder_estimate: next.frobenius_norm_on(&fock.safe_block_mask()),
    })
}

/// Thermal expectation values in the two-mode squeezed vacuum, alongside
/// their closed forms.
#[derive(Debug, Clone, Copy)]
pub struct ThermalExpectations {
    /// Squeeze angle artanh(e^−α) used for the state.
    pub theta: f64,
    /// ⟨a_T† a_T⟩, numerically; Bose occupation.
    pub number: f64,
    /// ⟨a_T a_T† + a_T† a_T⟩, numerically; the ordering-symmetric sum whose
    /// closed form is coth α.
    pub commutator: f64,
    /// 1/(e^(2α) − 1)
    pub closed_number: f64,
    /// coth α
    pub closed_commutator: f64,
}

/// Computes thermal occupation and the ordering-symmetric commutator sum at
/// thermal parameter α > 0, via the state-vector path (no operator
/// exponentials are formed).
///
/// Fails with a truncation error when e^(−α·n_max) ≥ 10^−12.
pub fn thermal_expectations(fock: &TwoModeFock, alpha: f64) -> Result<ThermalExpectations> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "thermal_expectations: alpha must be finite and positive, got {alpha}"
        )));
    }
    if -(fock.n_max as f64) * alpha >= TRUNCATION_LOG_TOL {
        let required = (-TRUNCATION_LOG_TOL / alpha).ceil() as usize;
        return Err(Error::Truncation(format!(
            "thermal_expectations: exp(-alpha*n_max) = {:.3e} leaves more than \
             1e-12 of the Boltzmann weight above the cutoff; n_max = {required} \
             or larger is needed (got {})",
            (-alpha * fock.n_max as f64).exp(),
            fock.n_max
        )));
    }
    let theta = (-alpha).exp().atanh();
    let forward = fock.generator(theta);
    let backward = forward.scale(-Complex64::ONE);

    let rotated = expm_mul(&backward, &fock.vacuum());
    let norm_sqr = |v: &[Complex64]| v.iter().map(Complex64::norm_sqr).sum::<f64>();
    let number = norm_sqr(&expm_mul(&forward, &fock.a.mul_vec(&rotated)));
    let anti = norm_sqr(&expm_mul(&forward, &fock.a_dag.mul_vec(&rotated)));

    let expm1_2a = (2.0 * alpha).exp_m1();
    Ok(ThermalExpectations {
        theta,
        number,
        commutator: number + anti,
        closed_number: 1.0 / expm1_2a,
        closed_commutator: 1.0 + 2.0 / expm1_2a,
    })
}
