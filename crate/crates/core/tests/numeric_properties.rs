use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use cavity_ecs::model::{decay_coefficients, lossless_amplitudes, DecayConfig, SystemConfig};
use cavity_ecs::numeric_oracle::{bath_trajectory, evolve_amplitudes_numeric, BathDiscretization};
use cavity_ecs::validation::bath_deviation;
use cavity_ecs::witnesses::{fidelity, tau, QubitContext};
use num_complex::Complex64;

fn sample_times() -> Vec<f64> {
    (0..=50).map(|i| 0.1 * i as f64).collect()
}

#[test]
fn bath_norm_is_conserved() {
    let dc = DecayConfig::new(0.5, 1.0, 2, 0.0).unwrap();
    let bath = BathDiscretization::flat(0.5, 0.0, 20.0, 2000).unwrap();
    for s in bath_trajectory(&dc, &bath, &sample_times()).unwrap() {
        assert!((s.norm_u_run - 1.0).abs() < 1e-10, "t = {}", s.t);
        assert!((s.norm_v_run - 1.0).abs() < 1e-10, "t = {}", s.t);
    }
}

#[test]
fn flat_band_normalization() {
    let bath = BathDiscretization::flat(0.5, 1.3, 20.0, 2000).unwrap();
    let sum: f64 = bath.couplings.iter().map(|l| l * l).sum();
    assert_abs_diff_eq!(sum, 0.5 * 20.0 / PI, epsilon = 1e-12);
}

#[test]
fn bath_oracle_is_frame_independent() {
    let omega = 2.3;
    let base = DecayConfig::new(0.5, 1.0, 3, 0.0).unwrap();
    let shifted = DecayConfig::new(0.5, 1.0, 3, omega).unwrap();
    let b0 = BathDiscretization::flat(0.5, 0.0, 20.0, 500).unwrap();
    let b1 = BathDiscretization::flat(0.5, omega, 20.0, 500).unwrap();
    let s0 = bath_trajectory(&base, &b0, &sample_times()).unwrap();
    let s1 = bath_trajectory(&shifted, &b1, &sample_times()).unwrap();
    for (a, b) in s0.iter().zip(&s1) {
        let back = Complex64::from_polar(1.0, -omega * a.t);
        assert!((a.u - b.u * back).norm() < 1e-12);
        assert!((a.v - b.v * back).norm() < 1e-12);
    }
}

#[test]
fn decay_coefficients_are_frame_independent() {
    let omega = -1.7;
    let base = DecayConfig::new(0.5, 1.0, 4, 0.0).unwrap();
    let shifted = DecayConfig::new(0.5, 1.0, 4, omega).unwrap();
    for t in sample_times() {
        let a = decay_coefficients(&base, t).unwrap();
        let b = decay_coefficients(&shifted, t).unwrap();
        assert_abs_diff_eq!(a.u.norm(), b.u.norm(), epsilon = 1e-12);
        assert_abs_diff_eq!(a.v.norm(), b.v.norm(), epsilon = 1e-12);
    }
}

#[test]
fn witnesses_are_frame_independent() {
    let ctx = QubitContext::cavity_and_excitons(3);
    let cfg = SystemConfig::new(vec![0.6, 1.1, 0.8], 0.0, Complex64::new(1.2, 0.4), 2.0).unwrap();
    let rot = cfg.clone().with_omega(3.1);
    for t in sample_times() {
        let a = evolve_amplitudes_numeric(&cfg, t).unwrap();
        let b = evolve_amplitudes_numeric(&rot, t).unwrap();
        assert_abs_diff_eq!(fidelity(&a, 2.0, 0.4, &ctx).unwrap(), fidelity(&b, 2.0, 0.4, &ctx).unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(tau(&a, 2.0, &ctx).unwrap(), tau(&b, 2.0, &ctx).unwrap(), epsilon = 1e-12);
    }
}

#[test]
fn lossless_transport_is_unitary() {
    let cfg = SystemConfig::new(vec![0.3, 1.9, 0.7, 1.2], 0.4, Complex64::new(0.9, -1.1), 1.0).unwrap();
    for t in sample_times() {
        assert_abs_diff_eq!(evolve_amplitudes_numeric(&cfg, t).unwrap().energy(), cfg.alpha_sq(), epsilon = 1e-12);
        assert_abs_diff_eq!(lossless_amplitudes(&cfg, t).energy(), cfg.alpha_sq(), epsilon = 1e-12);
    }
}

fn deviation_at(gamma: f64) -> f64 {
    let dc = DecayConfig::new(gamma, 1.0, 2, 0.0).unwrap();
    let bath = BathDiscretization::flat(gamma, 0.0, 20.0, 1000).unwrap();
    bath_trajectory(&dc, &bath, &sample_times())
        .unwrap()
        .iter()
        .map(|s| (s.u - decay_coefficients(&dc, s.t).unwrap().u).norm())
        .fold(0.0, f64::max)
}

#[test]
fn markov_error_shrinks_with_weaker_damping() {
    let devs: Vec<f64> = [0.5, 0.25, 0.125].iter().map(|&g| deviation_at(g)).collect();
    assert!(devs[0] > devs[1] && devs[1] > devs[2], "{devs:?}");
}

#[test]
fn bath_deviation_is_insensitive_to_mode_count() {
    let d500 = bath_deviation(500, 20.0, 0.0).unwrap();
    let d2000 = bath_deviation(2000, 20.0, 0.0).unwrap();
    assert!(d2000 < 0.05);
    assert!((d500 - d2000).abs() < 1e-6);
}
