//! Closed-form dynamics of N bosonic excitons resonantly coupled to one
//! cavity mode (ħ = 1).
//!
//! The Hamiltonian is a quadratic beam-splitter network, so a product of
//! coherent states stays a product of coherent states. A cat input
//! `|α⟩ + e^{iθ}|−α⟩` in the cavity therefore evolves into a two-branch
//! entangled coherent state whose every entanglement property depends only on
//! the per-mode overlaps `p_k = ⟨−α_k|α_k⟩ = exp(−2|α_k|²)`.
//!
//! Mode 0 is the cavity, modes `1..=N` are excitons.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `1 + c·exp(−2s)` without cancellation when `c → −1` and `s → 0`.
pub(crate) fn one_plus_cos_overlap(cos_theta: f64, energy: f64) -> f64 {
    (1.0 + cos_theta) + cos_theta * (-2.0 * energy).exp_m1()
}

/// Parameters of the lossless cavity/exciton model and the initial cat state.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    couplings: Vec<f64>,
    omega: f64,
    alpha: Complex64,
    theta: f64,
}

impl SystemConfig {
    /// Arbitrary nonnegative couplings `g_1..g_N`.
    pub fn new(couplings: Vec<f64>, omega: f64, alpha: Complex64, theta: f64) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidConfig("at least one exciton is required".into()));
        }
        if couplings.iter().any(|g| !g.is_finite() || *g < 0.0) {
            return Err(Error::InvalidConfig("couplings must be finite and nonnegative".into()));
        }
        if couplings.iter().all(|g| *g == 0.0) {
            return Err(Error::InvalidConfig("total coupling G must be positive".into()));
        }
        if !omega.is_finite() || !theta.is_finite() || !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        if one_plus_cos_overlap(theta.cos(), alpha.norm_sqr()) <= 0.0 {
            return Err(Error::DegenerateState);
        }
        Ok(SystemConfig { couplings, omega, alpha, theta })
    }

    /// `N` equally coupled excitons with total coupling `big_g`, i.e. `g_n = G/√N`, and ω = 0.
    pub fn equal_couplings(n: usize, big_g: f64, alpha: Complex64, theta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("at least one exciton is required".into()));
        }
        if !(big_g > 0.0) {
            return Err(Error::InvalidConfig("total coupling G must be positive".into()));
        }
        let g = big_g / (n as f64).sqrt();
        Self::new(vec![g; n], 0.0, alpha, theta)
    }

    /// Real initial amplitude with `|α|² = alpha_sq`.
    pub fn equal_couplings_real(n: usize, big_g: f64, alpha_sq: f64, theta: f64) -> Result<Self> {
        if !(alpha_sq >= 0.0) {
            return Err(Error::InvalidConfig("|α|² must be nonnegative".into()));
        }
        Self::equal_couplings(n, big_g, Complex64::new(alpha_sq.sqrt(), 0.0), theta)
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        Self::new(self.couplings, self.omega, self.alpha, theta)
    }

    pub fn n_excitons(&self) -> usize {
        self.couplings.len()
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// `G = sqrt(Σ g_n²)`.
    pub fn big_g(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).sum::<f64>().sqrt()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Couplings written in generalized spherical coordinates:
/// `g_1 = G cos φ_1`, `g_2 = G sin φ_1 cos φ_2`, …, `g_N = G sin φ_1 ⋯ sin φ_{N−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCoupling {
    pub big_g: f64,
    pub angles: Vec<f64>,
}

pub fn spherical_from_couplings(couplings: &[f64]) -> Result<SphericalCoupling> {
    if couplings.is_empty() {
        return Err(Error::InvalidConfig("empty coupling list".into()));
    }
    if couplings.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(Error::InvalidConfig("couplings must be finite and nonnegative".into()));
    }
    let big_g = couplings.iter().map(|g| g * g).sum::<f64>().sqrt();
    if big_g == 0.0 {
        return Err(Error::InvalidConfig("all couplings are zero".into()));
    }
    // tail[i] = sqrt(Σ_{j ≥ i} g_j²)
    let mut tail = vec![0.0f64; couplings.len() + 1];
    for i in (0..couplings.len()).rev() {
        tail[i] = tail[i + 1].hypot(couplings[i]);
    }
    let angles = (0..couplings.len() - 1)
        .map(|i| tail[i + 1].atan2(couplings[i]))
        .collect();
    Ok(SphericalCoupling { big_g, angles })
}

pub fn couplings_from_spherical(sc: &SphericalCoupling, n: usize) -> Result<Vec<f64>> {
    if n == 0 || sc.angles.len() + 1 != n {
        return Err(Error::InvalidConfig(format!(
            "{} angles cannot describe {} couplings",
            sc.angles.len(),
            n
        )));
    }
    let mut out = Vec::with_capacity(n);
    let mut sines = sc.big_g;
    for phi in &sc.angles {
        out.push(sines * phi.cos());
        sines *= phi.sin();
    }
    out.push(sines);
    Ok(out)
}

/// Coherent amplitudes of every mode at one instant, with the derived
/// overlaps `p_k = exp(−2|α_k|²)` and `M_k = sqrt(1 − p_k²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    pub time: f64,
    pub amps: Vec<Complex64>,
    pub overlaps: Vec<f64>,
    pub m_factors: Vec<f64>,
}

impl AmplitudeSet {
    pub fn from_amplitudes(time: f64, amps: Vec<Complex64>) -> Self {
        let overlaps = amps.iter().map(|a| (-2.0 * a.norm_sqr()).exp()).collect();
        let m_factors = amps.iter().map(|a| (-(-4.0 * a.norm_sqr()).exp_m1()).sqrt()).collect();
        AmplitudeSet { time, amps, overlaps, m_factors }
    }

    /// `Σ |α_k|²` over all modes.
    pub fn energy(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }
}

/// `α_0(t) = α cos(Gt) e^{−iωt}`, `α_n(t) = −iα sin(Gt) (g_n/G) e^{−iωt}`.
pub fn lossless_amplitudes(cfg: &SystemConfig, t: f64) -> AmplitudeSet {
    let big_g = cfg.big_g();
    let (s, c) = (big_g * t).sin_cos();
    let phase = Complex64::from_polar(1.0, -cfg.omega * t);
    let a = cfg.alpha * phase;
    let mut amps = Vec::with_capacity(cfg.n_excitons() + 1);
    amps.push(a * c);
    amps.extend(cfg.couplings.iter().map(|g| -I * a * (s * g / big_g)));
    AmplitudeSet::from_amplitudes(t, amps)
}

/// `𝒩 = [2 + 2 cos θ Π_k p_k]^{−1/2}` for the full (N+1)-mode cat state.
pub fn cat_normalization(cfg: &SystemConfig, aset: &AmplitudeSet) -> Result<f64> {
    let d = one_plus_cos_overlap(cfg.theta.cos(), aset.energy());
    if d <= 0.0 {
        return Err(Error::DegenerateState);
    }
    Ok((2.0 * d).sqrt().recip())
}

/// Mean photon number of the initial cavity cat state.
pub fn mean_photon(cfg: &SystemConfig) -> Result<f64> {
    let c = cfg.theta.cos();
    let x = cfg.alpha_sq();
    let den = one_plus_cos_overlap(c, x);
    if den <= 0.0 {
        return Err(Error::DegenerateState);
    }
    let num = (1.0 - c) - c * (-2.0 * x).exp_m1();
    Ok(num / den * x)
}

/// Dissipative model: N equally coupled excitons, each leaking into a
/// zero-temperature flat bath at rate Γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayConfig {
    pub gamma: f64,
    pub g: f64,
    pub n_excitons: usize,
    pub omega: f64,
}

impl DecayConfig {
    pub fn new(gamma: f64, g: f64, n_excitons: usize, omega: f64) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidConfig("per-exciton coupling g must be positive".into()));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidConfig("decay rate Γ must be nonnegative".into()));
        }
        if n_excitons == 0 {
            return Err(Error::InvalidConfig("at least one exciton is required".into()));
        }
        if !omega.is_finite() {
            return Err(Error::InvalidConfig("non-finite ω".into()));
        }
        Ok(DecayConfig { gamma, g, n_excitons, omega })
    }

    /// Amplitude decay rate `NΓ/4` of the coupled cavity/collective-exciton pair.
    pub fn envelope_rate(&self) -> f64 {
        self.n_excitons as f64 * self.gamma / 4.0
    }

    /// `Δ_N = sqrt(N g² − N² Γ²/16)`, imaginary when overdamped.
    pub fn delta_n(&self) -> Complex64 {
        let n = self.n_excitons as f64;
        let d2 = n * self.g * self.g - n * n * self.gamma * self.gamma / 16.0;
        Complex64::new(d2, 0.0).sqrt()
    }
}

/// Heisenberg-picture coefficients: `b_0(t) = u b_0(0) + v Σ_n b_n(0) + (bath)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCoefficients {
    pub u: Complex64,
    pub v: Complex64,
    pub delta_n: Complex64,
}

impl DecayCoefficients {
    /// Fraction of the initial energy left in cavity plus excitons, `|u|² + N|v|²`.
    pub fn retained(&self, n: usize) -> f64 {
        self.u.norm_sqr() + n as f64 * self.v.norm_sqr()
    }
}

/// Wigner-Weisskopf solution for the cavity operator coefficients.
///
/// Both damping regimes share one expression through complex `Δ_N`:
/// `e^{−at}cos(Δt)` and `e^{−at}sin(Δt)/Δ` are assembled from
/// `exp((−a ± iΔ)t)`, which stays bounded on the overdamped side too.
pub fn decay_coefficients(dc: &DecayConfig, t: f64) -> Result<DecayCoefficients> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    let a = dc.envelope_rate();
    let delta = dc.delta_n();
    let dt = delta * t;
    let plus = ((-a + I * delta) * t).exp();
    let minus = ((-a - I * delta) * t).exp();
    let damped_cos = (plus + minus) * 0.5;
    let damped_sinc = if dt.norm() < 1e-4 {
        let x2 = dt * dt;
        (1.0 - x2 / 6.0 + x2 * x2 / 120.0) * t * (-a * t).exp()
    } else {
        (plus - minus) / (2.0 * I * delta)
    };
    let rot = Complex64::from_polar(1.0, dc.omega * t);
    Ok(DecayCoefficients {
        u: (damped_cos + a * damped_sinc) * rot,
        v: I * dc.g * damped_sinc * rot,
        delta_n: delta,
    })
}
