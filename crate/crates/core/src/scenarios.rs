//! Tables behind the four figures plus a generic time sweep.
//!
//! Every table is evaluated point-wise (in parallel with the `parallel`
//! feature) and assembled in grid order, so output is deterministic.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{decay_coefficients, lossless_amplitudes, DecayConfig, SystemConfig};
use crate::witnesses::{
    aligned_phase, bell_expectation_aligned, bell_quantity, dissipative_fidelity, exciton_witnesses,
    fidelity_aligned, fidelity_f, tau, witness_report, QubitContext, WitnessReport,
};

/// Inclusive uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        if points < 2 || !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "grid needs start < stop and at least 2 points, got [{start}, {stop}] × {points}"
            )));
        }
        Ok(Grid { start, stop, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.stop } else { self.start + i as f64 * step })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub params: Vec<(String, String)>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

fn eval_rows<F>(xs: &[f64], f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        xs.par_iter().map(|&x| f(x)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        xs.iter().map(|&x| f(x)).collect()
    }
}

fn param(name: &str, value: impl ToString) -> (String, String) {
    (name.to_string(), value.to_string())
}

/// `B` (aligned Bell phase) and `F` (θ = γ = π/2) of the (N+1)-qubit state over time.
pub fn fig1(n: usize, alpha_sq: f64, grid: Grid) -> Result<Table> {
    let cfg = SystemConfig::equal_couplings_real(n, 1.0, alpha_sq, FRAC_PI_2)?;
    let ctx = QubitContext::cavity_and_excitons(n);
    let rows = eval_rows(&grid.values(), |t| {
        let a = lossless_amplitudes(&cfg, t);
        let b = bell_quantity(bell_expectation_aligned(&a, &ctx)?, &ctx);
        let f = fidelity_f(fidelity_aligned(&a, &ctx)?);
        Ok(vec![t, b, f])
    })?;
    Ok(Table {
        columns: vec!["t".into(), "B".into(), "F".into()],
        params: vec![
            param("n", n),
            param("alpha2", alpha_sq),
            param("G", 1.0),
            param("theta_B", aligned_phase(n + 1)),
            param("theta_F", FRAC_PI_2),
            param("gamma_F", FRAC_PI_2),
        ],
        rows,
    })
}

/// `τ(t)` of the (N+1)-qubit state for each N.
pub fn fig2(ns: &[usize], alpha_sq: f64, theta: f64, grid: Grid) -> Result<Table> {
    let cfgs = ns
        .iter()
        .map(|&n| SystemConfig::equal_couplings_real(n, 1.0, alpha_sq, theta))
        .collect::<Result<Vec<_>>>()?;
    let rows = eval_rows(&grid.values(), |t| {
        let mut row = vec![t];
        for cfg in &cfgs {
            let ctx = QubitContext::cavity_and_excitons(cfg.n_excitons());
            row.push(tau(&lossless_amplitudes(cfg, t), theta, &ctx)?);
        }
        Ok(row)
    })?;
    let mut columns = vec!["t".to_string()];
    columns.extend(ns.iter().map(|n| format!("tau_N{n}")));
    Ok(Table {
        columns,
        params: vec![
            param("n", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")),
            param("alpha2", alpha_sq),
            param("theta", theta),
            param("G", 1.0),
        ],
        rows,
    })
}

/// `B`, `F` and `τ` of the exciton-only state at `t = π/(2G)` against `|α|`.
pub fn fig3(n: usize, theta: f64, grid: Grid) -> Result<Table> {
    let rows = eval_rows(&grid.values(), |a| {
        let r = exciton_witnesses(Complex64::new(a, 0.0), n, theta)?;
        Ok(vec![a, r.bell_q, r.fidelity_f, r.tau])
    })?;
    Ok(Table {
        columns: vec!["alpha".into(), "B".into(), "F".into(), "tau".into()],
        params: vec![param("n", n), param("theta_tau", theta)],
        rows,
    })
}

/// `F(t)` of the decaying odd-cat state for each N.
pub fn fig4(ns: &[usize], alpha_sq: f64, g: f64, gamma: f64, grid: Grid) -> Result<Table> {
    let dcs = ns
        .iter()
        .map(|&n| DecayConfig::new(gamma, g, n, 0.0))
        .collect::<Result<Vec<_>>>()?;
    let alpha = Complex64::new(alpha_sq.sqrt(), 0.0);
    let rows = eval_rows(&grid.values(), |t| {
        let mut row = vec![t];
        for dc in &dcs {
            let c = decay_coefficients(dc, t)?;
            row.push(fidelity_f(dissipative_fidelity(alpha, &c, dc.n_excitons)?));
        }
        Ok(row)
    })?;
    let mut columns = vec!["t".to_string()];
    columns.extend(ns.iter().map(|n| format!("F_N{n}")));
    Ok(Table {
        columns,
        params: vec![
            param("n", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")),
            param("alpha2", alpha_sq),
            param("g", g),
            param("gamma_rate", gamma),
            param("theta", PI),
        ],
        rows,
    })
}

/// Full witness rows for an arbitrary configuration.
pub fn sweep(cfg: &SystemConfig, grid: Grid) -> Result<Vec<WitnessReport>> {
    let rows = eval_rows(&grid.values(), |t| {
        let r = witness_report(cfg, t)?;
        Ok(vec![r.time, r.bell_q, r.fidelity_f, r.tau, r.mean_photon])
    })?;
    Ok(rows
        .into_iter()
        .map(|r| WitnessReport { time: r[0], bell_q: r[1], fidelity_f: r[2], tau: r[3], mean_photon: r[4] })
        .collect())
}

pub fn sweep_table(cfg: &SystemConfig, grid: Grid) -> Result<Table> {
    let rows = sweep(cfg, grid)?
        .into_iter()
        .map(|r| vec![r.time, r.bell_q, r.fidelity_f, r.tau, r.mean_photon])
        .collect();
    Ok(Table {
        columns: ["t", "B", "F", "tau", "mean_photon"].iter().map(|s| s.to_string()).collect(),
        params: vec![
            param("n", cfg.n_excitons()),
            param("alpha2", cfg.alpha_sq()),
            param("theta", cfg.theta()),
            param("G", cfg.big_g()),
            param("omega", cfg.omega()),
        ],
        rows,
    })
}

/// Interior local maxima of a sampled curve (plateaus count once).
pub fn local_maxima(ys: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < ys.len() {
        if ys[i] > ys[i - 1] {
            let mut j = i;
            while j + 1 < ys.len() && ys[j + 1] == ys[i] {
                j += 1;
            }
            if j + 1 < ys.len() && ys[j + 1] < ys[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}
