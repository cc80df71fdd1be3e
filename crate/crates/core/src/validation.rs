//! Oracle-equivalence suites: every closed form against its brute-force
//! counterpart, reported as max deviation against a fixed tolerance.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{decay_coefficients, lossless_amplitudes, AmplitudeSet, DecayConfig, SystemConfig};
use crate::numeric_oracle::{bath_trajectory, evolve_amplitudes_numeric, BathDiscretization};
use crate::qubit_oracle::{
    bell_operator, bell_operator_closed_form, ckw_residual_tangle, encode_qubit_state, expectation, ghz_state,
    tangle_oracle,
};
use crate::witnesses::{aligned_phase, bell_expectation, fidelity, tau, threshold, ExcitonMetric, QubitContext};

pub const WITNESS_TOL: f64 = 1e-10;
pub const CKW_TOL: f64 = 1e-8;
pub const AMPLITUDE_TOL: f64 = 1e-10;
pub const RECURSION_TOL: f64 = 1e-12;
pub const BATH_TOL: f64 = 0.05;
pub const BELL_ROOT_REF: f64 = 1.601;
pub const BELL_ROOT_TOL: f64 = 0.01;
pub const FIDELITY_ROOT_REF: f64 = 1.228;
pub const FIDELITY_ROOT_TOL: f64 = 0.015;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub seed: u64,
    pub samples: usize,
    /// Added to every closed-form value before comparison.
    pub perturbation: f64,
    pub bath_modes: usize,
    pub band_halfwidth: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { seed: 2024, samples: 20, perturbation: 0.0, bath_modes: 2000, band_halfwidth: 20.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(name: impl Into<String>, samples: usize, max_deviation: f64, tolerance: f64) -> Self {
        SuiteResult {
            name: name.into(),
            samples,
            max_deviation,
            tolerance,
            passed: max_deviation.is_finite() && max_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub suites: Vec<SuiteResult>,
    pub bell_root: f64,
    pub fidelity_root: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Random admissible config with unequal couplings in `[0.5, 1.5)`.
fn random_config(rng: &mut ChaCha8Rng, n: usize) -> Result<SystemConfig> {
    let couplings = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    let alpha_sq: f64 = rng.random_range(0.3..4.0);
    let phase: f64 = rng.random_range(0.0..TAU);
    let theta = rng.random_range(0.0..TAU);
    let omega = rng.random_range(-2.0..2.0);
    SystemConfig::new(couplings, omega, Complex64::from_polar(alpha_sq.sqrt(), phase), theta)
}

/// Draws until the encoded state is non-degenerate; returns the closed-form
/// and numerically propagated amplitude sets.
fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Result<(SystemConfig, AmplitudeSet, AmplitudeSet)> {
    let ctx = QubitContext::cavity_and_excitons(n);
    for _ in 0..1000 {
        let cfg = random_config(rng, n)?;
        let t = rng.random_range(0.0..TAU);
        let closed = lossless_amplitudes(&cfg, t);
        let numeric = evolve_amplitudes_numeric(&cfg, t)?;
        match encode_qubit_state(&numeric, cfg.theta(), &ctx) {
            Ok(_) => return Ok((cfg, closed, numeric)),
            Err(Error::DegenerateEncoding { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Domain("no non-degenerate sample found".into()))
}

/// Closed-form `⟨𝓑⟩`, `𝓕` and `τ` against the dense encoded state for each N.
pub fn witness_suites(ns: &[usize], opts: &ValidationOptions) -> Result<Vec<SuiteResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut bell_dev, mut fid_dev, mut tau_dev) = (0f64, 0f64, 0f64);
    let mut count = 0;
    for &n in ns {
        let ctx = QubitContext::cavity_and_excitons(n);
        let m = ctx.m_qubits();
        let op = bell_operator(m)?;
        for _ in 0..opts.samples {
            let (cfg, closed, numeric) = random_state(&mut rng, n)?;
            let theta = cfg.theta();
            let gamma = rng.random_range(0.0..TAU);
            let psi = encode_qubit_state(&numeric, theta, &ctx)?;

            let b = bell_expectation(&closed, theta, aligned_phase(m), &ctx)? + opts.perturbation;
            bell_dev = bell_dev.max((b - expectation(&op, &psi)?).abs());

            let f = fidelity(&closed, theta, gamma, &ctx)? + opts.perturbation;
            fid_dev = fid_dev.max((f - ghz_state(m, gamma)?.fidelity(&psi)?).abs());

            let tc = tau(&closed, theta, &ctx)? + opts.perturbation;
            tau_dev = tau_dev.max((tc - tangle_oracle(&psi)?).abs());
            count += 1;
        }
    }
    Ok(vec![
        SuiteResult::new("bell_expectation", count, bell_dev, WITNESS_TOL),
        SuiteResult::new("fidelity", count, fid_dev, WITNESS_TOL),
        SuiteResult::new("tau", count, tau_dev, WITNESS_TOL),
    ])
}

/// `τ` for N = 2 against the residual tangle from reduced density matrices.
pub fn ckw_suite(opts: &ValidationOptions) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xC0FFEE);
    let ctx = QubitContext::cavity_and_excitons(2);
    let mut dev = 0f64;
    for _ in 0..opts.samples {
        let (cfg, closed, numeric) = random_state(&mut rng, 2)?;
        let psi = encode_qubit_state(&numeric, cfg.theta(), &ctx)?;
        let tc = tau(&closed, cfg.theta(), &ctx)? + opts.perturbation;
        dev = dev.max((tc - ckw_residual_tangle(&psi)?).abs());
    }
    Ok(SuiteResult::new("ckw_n2", opts.samples, dev, CKW_TOL))
}

/// Closed-form amplitudes against coupling-matrix propagation, N = 1..6.
pub fn amplitude_suite(opts: &ValidationOptions) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xA11CE);
    let mut dev = 0f64;
    let mut count = 0;
    for n in 1..=6 {
        for _ in 0..opts.samples {
            let cfg = random_config(&mut rng, n)?;
            let t = rng.random_range(0.0..4.0 * PI);
            let closed = lossless_amplitudes(&cfg, t);
            let numeric = evolve_amplitudes_numeric(&cfg, t)?;
            for (a, b) in closed.amps.iter().zip(&numeric.amps) {
                dev = dev.max((a + opts.perturbation - b).norm());
            }
            count += 1;
        }
    }
    Ok(SuiteResult::new("amplitudes", count, dev, AMPLITUDE_TOL))
}

/// σ_x/σ_y recursion against the `2^{(M+1)/2}`-scaled σ_+ closed form, M = 1..6.
pub fn recursion_suite(opts: &ValidationOptions) -> Result<SuiteResult> {
    let mut dev = 0f64;
    for m in 1..=6 {
        let rec = bell_operator(m)?;
        let closed = bell_operator_closed_form(m, aligned_phase(m))?;
        dev = dev.max(rec.max_abs_diff(&closed) + opts.perturbation);
        dev = dev.max(rec.hermitian_defect());
    }
    Ok(SuiteResult::new("bell_recursion", 6, dev, RECURSION_TOL))
}

/// Max over `t ∈ [0, 5]` of `|u_num − u|` and `|v_num − v|` for Γ = 0.5, g = 1, N = 2.
pub fn bath_deviation(k_modes: usize, band_halfwidth: f64, perturbation: f64) -> Result<f64> {
    let dc = DecayConfig::new(0.5, 1.0, 2, 0.0)?;
    let bath = BathDiscretization::flat(dc.gamma, dc.omega, band_halfwidth, k_modes)?;
    let times: Vec<f64> = (0..=100).map(|i| 0.05 * i as f64).collect();
    let mut dev = 0f64;
    for s in bath_trajectory(&dc, &bath, &times)? {
        let c = decay_coefficients(&dc, s.t)?;
        dev = dev.max((c.u + perturbation - s.u).norm());
        dev = dev.max((c.v + perturbation - s.v).norm());
    }
    Ok(dev)
}

pub fn bath_suite(opts: &ValidationOptions) -> Result<SuiteResult> {
    let dev = bath_deviation(opts.bath_modes, opts.band_halfwidth, opts.perturbation)?;
    Ok(SuiteResult::new("wigner_weisskopf", 101, dev, BATH_TOL))
}

/// Bell and fidelity roots of the N = 5 exciton state.
pub fn exciton_roots() -> Result<(f64, f64)> {
    Ok((
        threshold(ExcitonMetric::Bell, 5, 1.0, 2.5, 1e-10)?,
        threshold(ExcitonMetric::Fidelity, 5, 1.0, 2.5, 1e-10)?,
    ))
}

pub fn run_validation(opts: &ValidationOptions) -> Result<ValidationReport> {
    let mut suites = witness_suites(&[2, 3, 5], opts)?;
    suites.push(ckw_suite(opts)?);
    suites.push(amplitude_suite(opts)?);
    suites.push(recursion_suite(opts)?);
    suites.push(bath_suite(opts)?);
    let (bell_root, fidelity_root) = exciton_roots()?;
    suites.push(SuiteResult::new("bell_threshold", 1, (bell_root - BELL_ROOT_REF).abs(), BELL_ROOT_TOL));
    suites.push(SuiteResult::new(
        "fidelity_threshold",
        1,
        (fidelity_root - FIDELITY_ROOT_REF).abs(),
        FIDELITY_ROOT_TOL,
    ));
    Ok(ValidationReport { suites, bell_root, fidelity_root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let r = run_validation(&ValidationOptions::default()).unwrap();
        for s in &r.suites {
            assert!(s.passed, "{s:?}");
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let opts = ValidationOptions { perturbation: 1e-6, samples: 3, ..Default::default() };
        let suites = witness_suites(&[2], &opts).unwrap();
        assert!(suites.iter().all(|s| !s.passed));
        assert!(!amplitude_suite(&opts).unwrap().passed);
    }
}
