//! Ensemble sweeps: the quantum values of the witnesses are the same for
//! every two-qubit state, pure or mixed.

use ctxlab_core::pm_square::Line;
use ctxlab_core::seeding::derive_seed;
use ctxlab_core::states::{random_state, Ensemble, RandomStateConfig};
use ctxlab_core::ProductObservable;

fn chi_expectation(rho: &ctxlab_core::DensityMatrix) -> f64 {
    rho.expectation_line(Line::R1)
        + rho.expectation_line(Line::R2)
        + rho.expectation_line(Line::R3)
        + rho.expectation_line(Line::C1)
        + rho.expectation_line(Line::C2)
        - rho.expectation_line(Line::C3)
}

fn gamma_expectation(rho: &ctxlab_core::DensityMatrix) -> f64 {
    1.0 + rho.expectation_line(Line::R3) - rho.expectation_line(Line::C3)
}

#[test]
fn witness_values_over_both_ensembles() {
    let base_seed = 42;
    for (offset, ensemble) in [
        (0u64, Ensemble::HaarPure),
        (1_000_000, Ensemble::GinibreMixed),
    ] {
        for index in 0..1000u64 {
            let seed = derive_seed(base_seed, offset + index);
            let rho = random_state(&RandomStateConfig::new(seed, ensemble).unwrap());
            let chi = chi_expectation(&rho);
            let gamma = gamma_expectation(&rho);
            assert!(
                (chi - 6.0).abs() <= 1e-9,
                "chi = {chi} for {ensemble} state {index}"
            );
            assert!(
                (gamma - 3.0).abs() <= 1e-9,
                "gamma = {gamma} for {ensemble} state {index}"
            );
        }
    }
}

#[test]
fn expectation_bound_over_one_thousand_states() {
    let base_seed = 7;
    for index in 0..1000u64 {
        let ensemble = if index % 2 == 0 {
            Ensemble::HaarPure
        } else {
            Ensemble::GinibreMixed
        };
        let rho =
            random_state(&RandomStateConfig::new(derive_seed(base_seed, index), ensemble).unwrap());
        for o in ProductObservable::all() {
            assert!(rho.expectation(o).abs() <= 1.0 + 1e-9);
        }
    }
}
