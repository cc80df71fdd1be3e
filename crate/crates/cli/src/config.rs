use std::path::{Path, PathBuf};

use cavity_ecs::scenarios::Grid;
use clap::Args;
use serde::Deserialize;

use crate::output::Format;

/// Flags shared by every subcommand. Each one overrides the JSON config file.
#[derive(Args, Debug, Default)]
pub struct Params {
    /// JSON file with any of: n, alpha2, theta, gamma_rate, g, grid, tmax, out, format.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Exciton number, or a comma list for fig2/fig4.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Initial cavity |α|².
    #[arg(long)]
    pub alpha2: Option<f64>,
    /// Cat phase θ.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Bath decay rate Γ (fig4).
    #[arg(long)]
    pub gamma_rate: Option<f64>,
    /// Coupling: per-exciton g for fig4, collective G for sweep.
    #[arg(long)]
    pub g: Option<f64>,
    /// Axis as start,stop,points.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Replaces the grid end point.
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<OneOrMany>,
    alpha2: Option<f64>,
    theta: Option<f64>,
    gamma_rate: Option<f64>,
    g: Option<f64>,
    grid: Option<FileGrid>,
    tmax: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Deserialize, Debug, Clone, Copy)]
#[serde(deny_unknown_fields)]
struct FileGrid {
    start: f64,
    stop: f64,
    points: usize,
}

/// Fully merged parameters.
#[derive(Debug, Default)]
pub struct Settings {
    pub n: Option<Vec<usize>>,
    pub alpha2: Option<f64>,
    pub theta: Option<f64>,
    pub gamma_rate: Option<f64>,
    pub g: Option<f64>,
    pub grid: Option<Grid>,
    pub tmax: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("expected start,stop,points, got {s:?}"));
    };
    let start = a.parse::<f64>().map_err(|e| format!("start: {e}"))?;
    let stop = b.parse::<f64>().map_err(|e| format!("stop: {e}"))?;
    let points = n.parse::<usize>().map_err(|e| format!("points: {e}"))?;
    Grid::new(start, stop, points).map_err(|e| e.to_string())
}

fn read_file(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

impl Params {
    pub fn resolve(&self) -> Result<Settings, String> {
        let file = match &self.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let file_grid = match file.grid {
            Some(g) => Some(Grid::new(g.start, g.stop, g.points).map_err(|e| e.to_string())?),
            None => None,
        };
        let file_n = file.n.map(|n| match n {
            OneOrMany::One(n) => vec![n],
            OneOrMany::Many(ns) => ns,
        });
        Ok(Settings {
            n: self.n.clone().or(file_n),
            alpha2: self.alpha2.or(file.alpha2),
            theta: self.theta.or(file.theta),
            gamma_rate: self.gamma_rate.or(file.gamma_rate),
            g: self.g.or(file.g),
            grid: self.grid.or(file_grid),
            tmax: self.tmax.or(file.tmax),
            out: self.out.clone().or(file.out),
            format: self.format.or(file.format),
        })
    }
}
