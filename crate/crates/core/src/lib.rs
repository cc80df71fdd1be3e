//! Multipartite entangled coherent states of N excitons coupled to a single
//! cavity mode.
//!
//! * [`model`]: closed-form lossless and dissipative dynamics.
//! * [`witnesses`]: Mermin-Klyshko quantity, GHZ fidelity and squared
//!   multiqubit concurrence, plus zero-crossing searches.
//! * [`qubit_oracle`], [`numeric_oracle`]: brute-force references used to
//!   validate the closed forms.
//! * [`scenarios`], [`validation`]: figure tables and the validation report.

pub mod error;
pub mod model;
pub mod numeric_oracle;
pub mod qubit_oracle;
pub mod scenarios;
pub mod validation;
pub mod witnesses;

pub use error::{Error, Result};
pub use model::{
    cat_normalization, couplings_from_spherical, decay_coefficients, lossless_amplitudes, mean_photon,
    spherical_from_couplings, AmplitudeSet, DecayCoefficients, DecayConfig, SphericalCoupling, SystemConfig,
};
pub use witnesses::{ExcitonMetric, ModeSet, QubitContext, WitnessReport};
