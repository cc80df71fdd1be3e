//! Independent dynamics: matrix-exponential transport of coherent amplitudes
//! and direct integration of the cavity/exciton/bath linear system.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{AmplitudeSet, DecayConfig, SystemConfig};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-excitation Hamiltonian: ω on the diagonal, `g_n` between the
/// cavity (row/column 0) and exciton n, nothing between excitons.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    entries: DMatrix<f64>,
}

impl CouplingMatrix {
    pub fn from_config(cfg: &SystemConfig) -> Self {
        let dim = cfg.n_excitons() + 1;
        let mut entries = DMatrix::from_diagonal_element(dim, dim, cfg.omega());
        for (n, g) in cfg.couplings().iter().enumerate() {
            entries[(0, n + 1)] = *g;
            entries[(n + 1, 0)] = *g;
        }
        CouplingMatrix { entries }
    }

    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `exp(−i h t)` via the real spectral decomposition of `h`.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let eig = self.entries.clone().symmetric_eigen();
        let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t)));
        &v * phases * v.transpose()
    }
}

/// Coherent amplitudes at time t from `α(t) = exp(−iht)(α, 0, …, 0)`.
pub fn evolve_amplitudes_numeric(cfg: &SystemConfig, t: f64) -> Result<AmplitudeSet> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    let u = CouplingMatrix::from_config(cfg).propagator(t);
    let mut initial = DVector::from_element(cfg.n_excitons() + 1, Complex64::new(0.0, 0.0));
    initial[0] = cfg.alpha();
    let out = u * initial;
    Ok(AmplitudeSet::from_amplitudes(t, out.iter().copied().collect()))
}

/// Flat bath band: K modes on the midpoints of `[ω − W, ω + W]`, each with
/// coupling `λ = sqrt(Γ Δω / 2π)` so that `2π ε λ² = Γ` and the level shift vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct BathDiscretization {
    pub k_modes: usize,
    pub band_halfwidth: f64,
    pub frequencies: Vec<f64>,
    pub couplings: Vec<f64>,
}

pub const MIN_BATH_MODES: usize = 100;

impl BathDiscretization {
    pub fn flat(gamma: f64, omega: f64, band_halfwidth: f64, k_modes: usize) -> Result<Self> {
        if k_modes < MIN_BATH_MODES {
            return Err(Error::InvalidConfig(format!("need at least {MIN_BATH_MODES} bath modes, got {k_modes}")));
        }
        if !(band_halfwidth > 0.0) || !(gamma >= 0.0) {
            return Err(Error::InvalidConfig("band half-width must be positive and Γ nonnegative".into()));
        }
        let spacing = 2.0 * band_halfwidth / k_modes as f64;
        let frequencies = (0..k_modes)
            .map(|k| omega - band_halfwidth + (k as f64 + 0.5) * spacing)
            .collect();
        let lambda = (gamma * spacing / (2.0 * std::f64::consts::PI)).sqrt();
        Ok(BathDiscretization { k_modes, band_halfwidth, frequencies, couplings: vec![lambda; k_modes] })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.band_halfwidth / self.k_modes as f64
    }

    /// Latest time before the discrete bath can echo energy back.
    pub fn recurrence_horizon(&self) -> f64 {
        self.k_modes as f64 * std::f64::consts::PI / (2.0 * self.band_halfwidth)
    }
}

/// Both runs of the bath integration at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSample {
    pub t: f64,
    /// `b_0(t)` coefficient of `b_0(0)` (lab frame).
    pub u: Complex64,
    /// `b_0(t)` coefficient of each `b_n(0)` (lab frame).
    pub v: Complex64,
    /// `|B_0|² + |B_c|² + Σ|A_k|²` of the run started from `B_0 = 1`.
    pub norm_u_run: f64,
    /// Same for the run started from `B_c = 1`.
    pub norm_v_run: f64,
}

/// Rotating-frame linear system for `(B_0, B_c, A_1..A_K)`.
struct BathSystem {
    g_collective: f64,
    detunings: Vec<f64>,
    lambdas: Vec<f64>,
}

impl BathSystem {
    fn new(dc: &DecayConfig, bath: &BathDiscretization) -> Self {
        let root_n = (dc.n_excitons as f64).sqrt();
        BathSystem {
            g_collective: dc.g * root_n,
            detunings: bath.frequencies.iter().map(|w| w - dc.omega).collect(),
            lambdas: bath.couplings.iter().map(|l| l * root_n).collect(),
        }
    }

    fn derivative(&self, y: &[Complex64], dy: &mut [Complex64]) {
        let (b0, bc) = (y[0], y[1]);
        let bath_drive: Complex64 = self.lambdas.iter().zip(&y[2..]).map(|(l, a)| a * *l).sum();
        dy[0] = I * self.g_collective * bc;
        dy[1] = I * (self.g_collective * b0 + bath_drive);
        for (k, (d, l)) in self.detunings.iter().zip(&self.lambdas).enumerate() {
            dy[k + 2] = I * (d * y[k + 2] + l * bc);
        }
    }

    fn max_rate(&self) -> f64 {
        self.detunings.iter().fold(self.g_collective, |m, d| m.max(d.abs()))
    }
}

struct Rk4 {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
}

impl Rk4 {
    fn new(dim: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); dim];
        Rk4 { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    fn step(&mut self, sys: &BathSystem, y: &mut [Complex64], h: f64) {
        sys.derivative(y, &mut self.k1);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + self.k1[i] * (0.5 * h);
        }
        sys.derivative(&self.tmp, &mut self.k2);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + self.k2[i] * (0.5 * h);
        }
        sys.derivative(&self.tmp, &mut self.k3);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + self.k3[i] * h;
        }
        sys.derivative(&self.tmp, &mut self.k4);
        for i in 0..y.len() {
            y[i] += (self.k1[i] + 2.0 * (self.k2[i] + self.k3[i]) + self.k4[i]) * (h / 6.0);
        }
    }
}

fn norm_sqr(y: &[Complex64]) -> f64 {
    y.iter().map(|z| z.norm_sqr()).sum()
}

/// Integrates the discretized-bath system and samples `u`, `v` at each
/// requested time (nondecreasing, all within the recurrence horizon).
///
/// Fixed-step RK4 with `h ≤ 1/(50 · max(|Δ_N|, W))`, shortened so every
/// sample time is hit exactly.
pub fn bath_trajectory(dc: &DecayConfig, bath: &BathDiscretization, times: &[f64]) -> Result<Vec<BathSample>> {
    let horizon = bath.recurrence_horizon();
    for (i, &t) in times.iter().enumerate() {
        if !(t >= 0.0) || (i > 0 && t < times[i - 1]) {
            return Err(Error::Domain("sample times must be nonnegative and nondecreasing".into()));
        }
        if t > horizon {
            return Err(Error::Horizon { t, horizon });
        }
    }
    let sys = BathSystem::new(dc, bath);
    let rate = sys.max_rate().max(dc.delta_n().norm()).max(bath.band_halfwidth);
    let h_max = 1.0 / (50.0 * rate);
    let dim = bath.k_modes + 2;
    let mut y_u = vec![Complex64::new(0.0, 0.0); dim];
    let mut y_v = y_u.clone();
    y_u[0] = Complex64::new(1.0, 0.0);
    y_v[1] = Complex64::new(1.0, 0.0);
    let mut rk = Rk4::new(dim);
    let root_n = (dc.n_excitons as f64).sqrt();

    let mut out = Vec::with_capacity(times.len());
    let mut now = 0.0;
    for &t in times {
        let span = t - now;
        if span > 0.0 {
            let steps = (span / h_max).ceil() as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                rk.step(&sys, &mut y_u, h);
                rk.step(&sys, &mut y_v, h);
            }
            now = t;
        }
        let rot = Complex64::from_polar(1.0, dc.omega * t);
        out.push(BathSample {
            t,
            u: y_u[0] * rot,
            v: y_v[0] * rot / root_n,
            norm_u_run: norm_sqr(&y_u),
            norm_v_run: norm_sqr(&y_v),
        });
    }
    Ok(out)
}

/// `(u_num, v_num)` at a single time.
pub fn evolve_with_bath(dc: &DecayConfig, bath: &BathDiscretization, t: f64) -> Result<(Complex64, Complex64)> {
    let s = bath_trajectory(dc, bath, &[t])?;
    Ok((s[0].u, s[0].v))
}
