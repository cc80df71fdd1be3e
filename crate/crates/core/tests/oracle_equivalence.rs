use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use approx::assert_abs_diff_eq;
use cavity_ecs::model::{lossless_amplitudes, SystemConfig};
use cavity_ecs::numeric_oracle::evolve_amplitudes_numeric;
use cavity_ecs::qubit_oracle::{
    bell_operator, ckw_residual_tangle, encode_qubit_state, expectation, ghz_state, wootters_pairwise,
    bipartite_concurrence_sq,
};
use cavity_ecs::validation::{recursion_suite, run_validation, ValidationOptions};
use cavity_ecs::witnesses::{aligned_phase, bell_expectation, fidelity, tau, QubitContext};

#[test]
fn bell_at_quarter_period_matches_dense_operator() {
    let cfg = SystemConfig::equal_couplings_real(3, 1.0, 3.0, aligned_phase(4)).unwrap();
    let ctx = QubitContext::cavity_and_excitons(3);
    let a = lossless_amplitudes(&cfg, FRAC_PI_4);
    let psi = encode_qubit_state(&a, cfg.theta(), &ctx).unwrap();
    let closed = bell_expectation(&a, cfg.theta(), aligned_phase(4), &ctx).unwrap();
    assert_abs_diff_eq!(closed, expectation(&bell_operator(4).unwrap(), &psi).unwrap(), epsilon = 1e-10);
}

#[test]
fn ghz_overlap_at_quarter_period() {
    let cfg = SystemConfig::equal_couplings_real(3, 1.0, 3.0, FRAC_PI_2).unwrap();
    let ctx = QubitContext::cavity_and_excitons(3);
    let a = lossless_amplitudes(&cfg, FRAC_PI_4);
    let psi = encode_qubit_state(&a, FRAC_PI_2, &ctx).unwrap();
    let overlap = ghz_state(4, FRAC_PI_2).unwrap().fidelity(&psi).unwrap();
    assert_abs_diff_eq!(fidelity(&a, FRAC_PI_2, FRAC_PI_2, &ctx).unwrap(), overlap, epsilon = 1e-10);
}

#[test]
fn three_qubit_tau_is_residual_tangle() {
    let cfg = SystemConfig::equal_couplings_real(2, 1.0, 0.9, PI).unwrap();
    let ctx = QubitContext::cavity_and_excitons(2);
    let a = lossless_amplitudes(&cfg, 0.8);
    let psi = encode_qubit_state(&a, PI, &ctx).unwrap();
    let by_hand = bipartite_concurrence_sq(&psi, 0).unwrap()
        - wootters_pairwise(&psi, 0, 1).unwrap().powi(2)
        - wootters_pairwise(&psi, 0, 2).unwrap().powi(2);
    assert_abs_diff_eq!(by_hand, ckw_residual_tangle(&psi).unwrap(), epsilon = 1e-12);
    assert_abs_diff_eq!(tau(&a, PI, &ctx).unwrap(), by_hand, epsilon = 1e-8);
}

#[test]
fn expm_matches_closed_form_on_spec_times() {
    let cfg = SystemConfig::equal_couplings_real(3, 1.0, 3.0, 0.0).unwrap().with_omega(0.7);
    for t in [0.3, 0.9, FRAC_PI_2] {
        let a = lossless_amplitudes(&cfg, t);
        let b = evolve_amplitudes_numeric(&cfg, t).unwrap();
        for (x, y) in a.amps.iter().zip(&b.amps) {
            assert!((x - y).norm() < 1e-10);
        }
        assert_abs_diff_eq!(b.energy(), 3.0, epsilon = 1e-12);
    }
}

#[test]
fn recursion_matches_closed_form_operator() {
    assert!(recursion_suite(&ValidationOptions::default()).unwrap().passed);
}

#[test]
fn report_is_deterministic_and_sensitive() {
    let opts = ValidationOptions::default();
    assert_eq!(run_validation(&opts).unwrap(), run_validation(&opts).unwrap());
    let bad = run_validation(&ValidationOptions { perturbation: 1e-6, ..opts }).unwrap();
    assert!(!bad.passed());
    for name in ["bell_expectation", "fidelity", "tau", "amplitudes"] {
        assert!(!bad.suite(name).unwrap().passed, "{name}");
    }
}
