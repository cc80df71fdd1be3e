use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The two cat branches cancel (θ = π with vanishing amplitude).
    #[error("degenerate state: cat superposition has zero norm")]
    DegenerateState,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate encoding: mode {mode} has M = {m_factor:e}, below cutoff")]
    DegenerateEncoding { mode: usize, m_factor: f64 },

    #[error("interval [{lo}, {hi}] does not bracket a root (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("t = {t} exceeds the bath recurrence horizon {horizon}")]
    Horizon { t: f64, horizon: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
