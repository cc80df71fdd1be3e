//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every function returns a flat row-major `Float64Array`; the column count is
//! documented per function. Errors come back as JS exceptions with the message.

use std::f64::consts::PI;

use cavity_ecs::scenarios::{self, Grid, Table};
use cavity_ecs::witnesses::{threshold, ExcitonMetric};
use cavity_ecs::SystemConfig;
use wasm_bindgen::prelude::*;

fn flatten(t: Table) -> Vec<f64> {
    t.rows.into_iter().flatten().collect()
}

fn js_err(e: cavity_ecs::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Columns `t, B, F, τ` over one full period `[0, 2π]` of the lossless state
/// with `G = 1`; the Bell operator is aligned and the GHZ phase equals θ.
#[wasm_bindgen]
pub fn witness_curve(n: usize, alpha2: f64, theta: f64, points: usize) -> Result<Vec<f64>, JsError> {
    let cfg = SystemConfig::equal_couplings_real(n, 1.0, alpha2, theta).map_err(js_err)?;
    let grid = Grid::new(0.0, 2.0 * PI, points).map_err(js_err)?;
    let rows = scenarios::sweep(&cfg, grid).map_err(js_err)?;
    Ok(rows.into_iter().flat_map(|r| [r.time, r.bell_q, r.fidelity_f, r.tau]).collect())
}

/// Columns `|α|, B, F, τ` of the exciton state for `|α| ∈ [0, alpha_max]`.
#[wasm_bindgen]
pub fn exciton_curve(n: usize, theta: f64, alpha_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    let grid = Grid::new(0.0, alpha_max, points).map_err(js_err)?;
    scenarios::fig3(n, theta, grid).map(flatten).map_err(js_err)
}

/// `[bell_root, fidelity_root]` of the exciton state, `NaN` when no crossing lies in `(0, 10]`.
#[wasm_bindgen]
pub fn exciton_thresholds(n: usize) -> Vec<f64> {
    [ExcitonMetric::Bell, ExcitonMetric::Fidelity]
        .iter()
        .map(|&m| threshold(m, n, 1e-3, 10.0, 1e-8).unwrap_or(f64::NAN))
        .collect()
}

/// Columns `t, F` of the decaying odd-cat state.
#[wasm_bindgen]
pub fn dissipative_curve(n: usize, alpha2: f64, gamma: f64, tmax: f64, points: usize) -> Result<Vec<f64>, JsError> {
    let grid = Grid::new(0.0, tmax, points).map_err(js_err)?;
    scenarios::fig4(&[n], alpha2, 1.0, gamma, grid).map(flatten).map_err(js_err)
}
