//! Closed-form entanglement indicators for the encoded cat state.
//!
//! After encoding each mode onto the orthonormal pair
//! `{|α_k⟩, (|−α_k⟩ − p_k|α_k⟩)/M_k}` the state is
//! `𝒩(|0…0⟩ + e^{iθ} ⊗_k (p_k|0⟩ + M_k|1⟩))`, so every indicator is a
//! function of `P = Π p_k` and `Q = Π M_k` over the modes in scope.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::ops::Range;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{one_plus_cos_overlap, AmplitudeSet, DecayCoefficients, SystemConfig};

/// Which modes are encoded as qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSet {
    /// Cavity plus all excitons, `M = N + 1`.
    CavityAndExcitons,
    /// Excitons only, `M = N` (the decoupled state at `t = π/(2G)`).
    ExcitonsOnly,
}

/// Qubit-count bookkeeping carried by every witness call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitContext {
    modes: ModeSet,
    n_excitons: usize,
}

impl QubitContext {
    pub fn new(modes: ModeSet, n_excitons: usize) -> Self {
        QubitContext { modes, n_excitons }
    }

    pub fn cavity_and_excitons(n_excitons: usize) -> Self {
        Self::new(ModeSet::CavityAndExcitons, n_excitons)
    }

    pub fn excitons_only(n_excitons: usize) -> Self {
        Self::new(ModeSet::ExcitonsOnly, n_excitons)
    }

    pub fn modes(&self) -> ModeSet {
        self.modes
    }

    pub fn m_qubits(&self) -> usize {
        match self.modes {
            ModeSet::CavityAndExcitons => self.n_excitons + 1,
            ModeSet::ExcitonsOnly => self.n_excitons,
        }
    }

    /// Indices into an `AmplitudeSet` (mode 0 = cavity).
    pub fn mode_range(&self) -> Range<usize> {
        match self.modes {
            ModeSet::CavityAndExcitons => 0..self.n_excitons + 1,
            ModeSet::ExcitonsOnly => 1..self.n_excitons + 1,
        }
    }

    fn check(&self, aset: &AmplitudeSet) -> Result<Range<usize>> {
        if aset.len() != self.n_excitons + 1 {
            return Err(Error::DimensionMismatch { expected: self.n_excitons + 1, got: aset.len() });
        }
        if self.m_qubits() < 2 {
            return Err(Error::Domain(format!("{} qubit cannot carry multipartite entanglement", self.m_qubits())));
        }
        Ok(self.mode_range())
    }
}

/// `P`, `Q` and the selected-mode energy `Σ|α_k|²`.
#[derive(Debug, Clone, Copy)]
struct Products {
    energy: f64,
    overlap: f64,
    m_product: f64,
    m_sq_product: f64,
}

fn products(aset: &AmplitudeSet, ctx: &QubitContext) -> Result<Products> {
    let range = ctx.check(aset)?;
    let energy: f64 = aset.amps[range.clone()].iter().map(|a| a.norm_sqr()).sum();
    let m_product = aset.m_factors[range.clone()].iter().product();
    let m_sq_product = aset.amps[range].iter().map(|a| -(-4.0 * a.norm_sqr()).exp_m1()).product();
    Ok(Products { energy, overlap: (-2.0 * energy).exp(), m_product, m_sq_product })
}

fn cat_denominator(cos_theta: f64, energy: f64) -> Result<f64> {
    let d = one_plus_cos_overlap(cos_theta, energy);
    if d <= 0.0 {
        return Err(Error::DegenerateState);
    }
    Ok(d)
}

/// Bell-operator phase `β_M = π(M − 1)/4` produced by the σ_x/σ_y recursion.
pub fn aligned_phase(m_qubits: usize) -> f64 {
    (m_qubits as f64 - 1.0) * FRAC_PI_4
}

fn bell_scale(m: usize) -> f64 {
    2f64.powf((m as f64 + 1.0) / 2.0)
}

/// `⟨𝓑_M⟩` for cat phase θ and Bell phase β.
pub fn bell_expectation(aset: &AmplitudeSet, theta: f64, beta: f64, ctx: &QubitContext) -> Result<f64> {
    let pr = products(aset, ctx)?;
    let den = cat_denominator(theta.cos(), pr.energy)?;
    Ok(bell_scale(ctx.m_qubits()) / den
        * ((theta - beta).cos() + beta.cos() * pr.overlap)
        * pr.m_product)
}

/// `⟨𝓑_M⟩ = 2^{(M+1)/2} Π M_k`, the value at θ = β_M.
pub fn bell_expectation_aligned(aset: &AmplitudeSet, ctx: &QubitContext) -> Result<f64> {
    let pr = products(aset, ctx)?;
    Ok(bell_scale(ctx.m_qubits()) * pr.m_product)
}

/// Mermin-Klyshko quantity `B`; positive values certify genuine M-partite entanglement.
pub fn bell_quantity(expectation: f64, ctx: &QubitContext) -> f64 {
    bell_quantity_m(expectation, ctx.m_qubits())
}

fn bell_quantity_m(expectation: f64, m: usize) -> f64 {
    let lo = 2f64.powf(m as f64 / 2.0);
    (expectation.abs() - lo) / (bell_scale(m) - lo)
}

/// State-preparation fidelity against `(|0…0⟩ + e^{iγ}|1…1⟩)/√2`.
pub fn fidelity(aset: &AmplitudeSet, theta: f64, gamma: f64, ctx: &QubitContext) -> Result<f64> {
    let pr = products(aset, ctx)?;
    let (c, p, q) = (theta.cos(), pr.overlap, pr.m_product);
    let den = cat_denominator(c, pr.energy)?;
    let bracket = 1.0
        + pr.m_sq_product
        + p * p
        + 2.0 * c * p
        + 2.0 * (theta - gamma).cos() * q
        + 2.0 * gamma.cos() * p * q;
    Ok(bracket / (4.0 * den))
}

/// Fidelity at θ = γ = π/2: `(1 + Π M_k)²/4 + P²/4`.
pub fn fidelity_aligned(aset: &AmplitudeSet, ctx: &QubitContext) -> Result<f64> {
    let pr = products(aset, ctx)?;
    let one_q = 1.0 + pr.m_product;
    Ok((one_q * one_q + pr.overlap * pr.overlap) / 4.0)
}

/// `F = 2𝓕 − 1`; positive values certify genuine M-partite entanglement.
pub fn fidelity_f(fidelity: f64) -> f64 {
    2.0 * fidelity - 1.0
}

/// Squared multiqubit concurrence `τ = Π(1 − p_k²)/(1 + cos θ P)²`.
pub fn tau(aset: &AmplitudeSet, theta: f64, ctx: &QubitContext) -> Result<f64> {
    let pr = products(aset, ctx)?;
    let den = cat_denominator(theta.cos(), pr.energy)?;
    Ok(pr.m_sq_product / (den * den))
}

/// One row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessReport {
    pub time: f64,
    pub bell_q: f64,
    pub fidelity_f: f64,
    pub tau: f64,
    pub mean_photon: f64,
}

/// All indicators of the (N+1)-qubit state at time `t`, using the config's θ
/// for the state, `β_{N+1}` for the Bell operator and γ = θ for the GHZ reference.
pub fn witness_report(cfg: &SystemConfig, t: f64) -> Result<WitnessReport> {
    let aset = crate::model::lossless_amplitudes(cfg, t);
    let ctx = QubitContext::cavity_and_excitons(cfg.n_excitons());
    let theta = cfg.theta();
    let bell = bell_expectation(&aset, theta, aligned_phase(ctx.m_qubits()), &ctx)?;
    Ok(WitnessReport {
        time: t,
        bell_q: bell_quantity(bell, &ctx),
        fidelity_f: fidelity_f(fidelity(&aset, theta, theta, &ctx)?),
        tau: tau(&aset, theta, &ctx)?,
        mean_photon: crate::model::mean_photon(cfg)?,
    })
}

/// `1 − exp(−4|α|²/N)`, the squared M factor of each exciton at full transfer.
fn exciton_m_sq(alpha_sq: f64, n: usize) -> f64 {
    -(-4.0 * alpha_sq / n as f64).exp_m1()
}

/// Indicators of the exciton-only entangled coherent state left at
/// `t = π/(2G)`, when the cavity has emptied into N equally coupled excitons.
///
/// `B` is evaluated at the aligned Bell phase and `F` at θ = γ = π/2, as in
/// the threshold analysis; `τ` and the photon number use the given θ.
pub fn exciton_witnesses(alpha: Complex64, n: usize, theta: f64) -> Result<WitnessReport> {
    if n < 2 {
        return Err(Error::Domain(format!("exciton state needs N ≥ 2, got {n}")));
    }
    let x = alpha.norm_sqr();
    let m_sq = exciton_m_sq(x, n);
    let q = m_sq.powf(n as f64 / 2.0);
    let bell = bell_scale(n) * q;
    let fid = ((1.0 + q) * (1.0 + q) + (-4.0 * x).exp()) / 4.0;
    let den = cat_denominator(theta.cos(), x)?;
    let tau = m_sq.powi(n as i32) / (den * den);
    let cfg = SystemConfig::new(vec![1.0], 0.0, alpha, theta)?;
    Ok(WitnessReport {
        time: FRAC_PI_2,
        bell_q: bell_quantity_m(bell, n),
        fidelity_f: fidelity_f(fid),
        tau,
        mean_photon: crate::model::mean_photon(&cfg)?,
    })
}

/// Indicator selected for threshold searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcitonMetric {
    Bell,
    Fidelity,
}

/// `B` or `F` of the exciton state as a function of real `|α|`.
pub fn exciton_metric(metric: ExcitonMetric, alpha_abs: f64, n: usize) -> Result<f64> {
    let r = exciton_witnesses(Complex64::new(alpha_abs, 0.0), n, FRAC_PI_2)?;
    Ok(match metric {
        ExcitonMetric::Bell => r.bell_q,
        ExcitonMetric::Fidelity => r.fidelity_f,
    })
}

/// Bisection root of `f` on `[lo, hi]` to absolute tolerance `tol`.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) || !(lo < hi) {
        return Err(Error::Domain(format!("bad bisection setup lo={lo} hi={hi} tol={tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Smallest `|α|` in `[lo, hi]` at which the selected exciton indicator crosses zero.
pub fn threshold(metric: ExcitonMetric, n: usize, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    bisect(|a| exciton_metric(metric, a, n), lo, hi, tol)
}

/// Fidelity of the decaying odd-cat state against the GHZ state built on
/// `|α_u⟩ ⊗ |α_v⟩^{⊗N}`, with the bath traced out.
///
/// `p_u^{−1} p_v^{−N} e^{−2|α|²}` is the bath-branch overlap and is evaluated
/// as a single exponent of the energy that reached the bath.
pub fn dissipative_fidelity(alpha: Complex64, coeffs: &DecayCoefficients, n: usize) -> Result<f64> {
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return Err(Error::DegenerateState);
    }
    let xu = (alpha * coeffs.u.conj()).norm_sqr();
    let xv = (alpha * coeffs.v.conj()).norm_sqr();
    let m_u = (-(-4.0 * xu).exp_m1()).sqrt();
    let m_v = (-(-4.0 * xv).exp_m1()).sqrt();
    let q = m_u * m_v.powi(n as i32);
    let system_energy = xu + n as f64 * xv;
    let p_sys = (-2.0 * system_energy).exp();
    let e = (-2.0 * x).exp();
    let bath_overlap = (-2.0 * (x - system_energy).max(0.0)).exp();
    let bracket = 1.0 + 2.0 * (bath_overlap * q - e) + (q - p_sys) * (q - p_sys);
    Ok(bracket / (-4.0 * (-2.0 * x).exp_m1()))
}
