//! Shot-level simulation of the two-setup sequential-measurement
//! experiment.
//!
//! A setup measures a commuting triple of product observables in sequence
//! with the Lueders update after each outcome, records the three signs, and
//! reports their product. The R3 setup runs the third row of the square,
//! the C3 setup the third column; together they touch only five distinct
//! observables.
//!
//! Noise is modeled as independent classical flips of the recorded
//! outcomes, not as depolarization of the input state: the line operators
//! equal +-identity on every state, so no amount of initial-state mixing
//! can move the product away from +-1. Only per-measurement imperfection
//! can, and a flip probability q attenuates the mean product by
//! (1 - 2q)^3.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator_algebra::{commutator, ComplexMatrix4, ProductObservable};
use crate::pm_square::{Line, PeresMerminSquare};
use crate::seeding::derive_seed;
use crate::sign::Sign;
use crate::states::DensityMatrix;

/// Branch probabilities below this are treated as exactly zero, so the
/// third measurement of a setup is deterministic instead of being decided
/// by 1e-16-scale rounding residue.
pub const BRANCH_EPS: f64 = 1e-12;

/// Which commuting triple a setup measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetupLabel {
    R3Setup,
    C3Setup,
}

impl SetupLabel {
    pub fn line(self) -> Line {
        match self {
            SetupLabel::R3Setup => Line::R3,
            SetupLabel::C3Setup => Line::C3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SetupLabel::R3Setup => "R3_setup",
            SetupLabel::C3Setup => "C3_setup",
        }
    }
}

impl std::fmt::Display for SetupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered, pairwise-commuting triple of product observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementSetup {
    label: SetupLabel,
    sequence: [ProductObservable; 3],
}

impl MeasurementSetup {
    /// The R3 setup: cells (3,1), (3,2), (3,3) of the canonical square.
    pub fn r3() -> Self {
        Self::for_label(SetupLabel::R3Setup)
    }

    /// The C3 setup: cells (1,3), (2,3), (3,3).
    pub fn c3() -> Self {
        Self::for_label(SetupLabel::C3Setup)
    }

    pub fn for_label(label: SetupLabel) -> Self {
        let square = PeresMerminSquare::canonical();
        let positions = label.line().positions();
        Self {
            label,
            sequence: [
                square.cell(positions[0]),
                square.cell(positions[1]),
                square.cell(positions[2]),
            ],
        }
    }

    /// Custom sequence; rejects triples that do not pairwise commute.
    pub fn with_sequence(label: SetupLabel, sequence: [ProductObservable; 3]) -> Result<Self> {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let c = commutator(&sequence[i].to_matrix(), &sequence[j].to_matrix());
                worst = worst.max(c.max_abs());
            }
        }
        if worst > crate::operator_algebra::EPS_OP {
            return Err(Error::NonCommutingSequence { deviation: worst });
        }
        Ok(Self { label, sequence })
    }

    /// Same triple measured in a different order.
    pub fn permuted(&self, order: [usize; 3]) -> Self {
        let mut seen = [false; 3];
        for &i in &order {
            seen[i] = true;
        }
        assert!(
            seen.iter().all(|&s| s),
            "order must be a permutation of 0..3"
        );
        Self {
            label: self.label,
            sequence: [
                self.sequence[order[0]],
                self.sequence[order[1]],
                self.sequence[order[2]],
            ],
        }
    }

    pub fn label(&self) -> SetupLabel {
        self.label
    }

    pub fn sequence(&self) -> &[ProductObservable; 3] {
        &self.sequence
    }
}

/// Independent flip probability applied to each recorded outcome.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NoiseModel {
    flip_probability: f64,
}

impl NoiseModel {
    /// `flip_probability` must lie in [0, 1/2].
    pub fn new(flip_probability: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&flip_probability) || flip_probability.is_nan() {
            return Err(Error::BadFlipProbability {
                value: flip_probability,
            });
        }
        Ok(Self { flip_probability })
    }

    pub fn noiseless() -> Self {
        Self {
            flip_probability: 0.0,
        }
    }

    pub fn flip_probability(&self) -> f64 {
        self.flip_probability
    }

    /// Expected attenuation of a three-outcome product: (1 - 2q)^3.
    pub fn product_attenuation(&self) -> f64 {
        let f = 1.0 - 2.0 * self.flip_probability;
        f * f * f
    }
}

/// Outcomes of one sequential run of a setup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MeasurementRecord {
    pub setup: SetupLabel,
    pub outcomes: [Sign; 3],
    pub product: Sign,
}

/// Mean and standard error of the record product over many shots.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EstimateReport {
    pub setup: SetupLabel,
    pub shots: u64,
    pub mean_product: f64,
    pub standard_error: f64,
}

/// Projectively measure one product observable. `u` is a single uniform
/// draw in [0, 1); the +1 branch is selected iff `u` falls below the +1
/// branch probability (inverse CDF). The returned state is the normalized
/// Lueders update P rho P / tr(P rho P) of the realized branch.
pub fn measure_once(
    state: &DensityMatrix,
    observable: ProductObservable,
    u: f64,
) -> (Sign, DensityMatrix) {
    let m = observable.to_matrix();
    let half = num_complex::Complex64::new(0.5, 0.0);
    let p_plus = (ComplexMatrix4::identity() + m).scale(half);
    let p_minus = (ComplexMatrix4::identity() - m).scale(half);

    let prob_plus = state.matrix().trace_product(&p_plus).re;
    assert!(
        (-BRANCH_EPS..=1.0 + BRANCH_EPS).contains(&prob_plus),
        "branch probability {prob_plus} outside [0, 1]"
    );
    let prob_minus = 1.0 - prob_plus;

    let outcome = if prob_plus < BRANCH_EPS {
        Sign::Minus
    } else if prob_minus < BRANCH_EPS || u < prob_plus {
        Sign::Plus
    } else {
        Sign::Minus
    };

    let projector = match outcome {
        Sign::Plus => &p_plus,
        Sign::Minus => &p_minus,
    };
    let unnormalized = projector.matmul(state.matrix()).matmul(projector);
    let weight = unnormalized.trace().re;
    assert!(weight > 0.0, "selected branch has zero weight");
    let post = unnormalized.scale(num_complex::Complex64::new(1.0 / weight, 0.0));
    (outcome, DensityMatrix::from_trusted(post))
}

/// One sequential shot: measure the three observables in order with
/// Lueders updates, then flip each recorded outcome independently with the
/// noise model's probability. The product is recomputed from the recorded
/// (possibly flipped) outcomes.
///
/// Draw order from `rng`: one uniform per measurement in sequence order,
/// then one uniform per outcome for the flip decisions.
pub fn run_setup<R: Rng>(
    state: &DensityMatrix,
    setup: &MeasurementSetup,
    noise: NoiseModel,
    rng: &mut R,
) -> MeasurementRecord {
    let mut current = *state;
    let mut outcomes = [Sign::Plus; 3];
    for (slot, &observable) in setup.sequence.iter().enumerate() {
        let u: f64 = rng.gen();
        let (outcome, post) = measure_once(&current, observable, u);
        outcomes[slot] = outcome;
        current = post;
    }
    let q = noise.flip_probability();
    for outcome in outcomes.iter_mut() {
        let u: f64 = rng.gen();
        if u < q {
            *outcome = outcome.flip();
        }
    }
    let product = outcomes.iter().fold(Sign::Plus, |acc, &s| acc * s);
    MeasurementRecord {
        setup: setup.label,
        outcomes,
        product,
    }
}

/// Mean and standard error of the shot product over `shots` independent
/// runs, each starting from a fresh copy of `state`. Shot `i` uses its own
/// ChaCha8 stream seeded with `derive_seed(seed, i)`, so the result is
/// identical however shots are partitioned across tasks.
pub fn estimate(
    state: &DensityMatrix,
    setup: &MeasurementSetup,
    noise: NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<EstimateReport> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for shot in 0..shots {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, shot));
        let record = run_setup(state, setup, noise, &mut rng);
        let x = record.product.value() as f64;
        sum += x;
        sum_sq += x * x;
    }
    let n = shots as f64;
    let mean_product = sum / n;
    let standard_error = if shots > 1 {
        // Unbiased sample variance; exactly zero when all products agree.
        let variance = ((sum_sq - n * mean_product * mean_product) / (n - 1.0)).max(0.0);
        (variance / n).sqrt()
    } else {
        0.0
    };
    Ok(EstimateReport {
        setup: setup.label,
        shots,
        mean_product,
        standard_error,
    })
}

/// The gamma witness with its propagated uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GammaEstimate {
    /// 1 + <R3 product> - <C3 product>.
    pub gamma: f64,
    /// Independent-error quadrature of the two standard errors.
    pub sigma: f64,
}

/// Combine the two setups' estimates into the gamma witness.
pub fn gamma_from_estimates(r3: &EstimateReport, c3: &EstimateReport) -> GammaEstimate {
    assert_eq!(
        r3.setup,
        SetupLabel::R3Setup,
        "first report must come from the R3 setup"
    );
    assert_eq!(
        c3.setup,
        SetupLabel::C3Setup,
        "second report must come from the C3 setup"
    );
    GammaEstimate {
        gamma: 1.0 + r3.mean_product - c3.mean_product,
        sigma: (r3.standard_error * r3.standard_error + c3.standard_error * c3.standard_error)
            .sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_algebra::PauliLabel::{I, X, Z};
    use crate::states::{random_state, Ensemble, PureState, RandomStateConfig};

    #[test]
    fn setups_match_square_lines() {
        let r3 = MeasurementSetup::r3();
        assert_eq!(r3.label(), SetupLabel::R3Setup);
        assert_eq!(r3.sequence()[0], ProductObservable::new(Z, X));
        assert_eq!(r3.sequence()[1], ProductObservable::new(X, Z));
        assert_eq!(
            r3.sequence()[2],
            ProductObservable::new(
                crate::operator_algebra::PauliLabel::Y,
                crate::operator_algebra::PauliLabel::Y
            )
        );
        let c3 = MeasurementSetup::c3();
        assert_eq!(c3.sequence()[0], ProductObservable::new(Z, Z));
        assert_eq!(c3.sequence()[1], ProductObservable::new(X, X));
        // five distinct observables across the two setups
        let mut all: Vec<_> = r3.sequence().to_vec();
        all.extend_from_slice(c3.sequence());
        all.sort_by_key(|o| format!("{o}"));
        all.dedup();
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn non_commuting_sequence_rejected() {
        let err = MeasurementSetup::with_sequence(
            SetupLabel::R3Setup,
            [
                ProductObservable::new(Z, I),
                ProductObservable::new(X, I),
                ProductObservable::new(Z, Z),
            ],
        );
        assert!(matches!(err, Err(Error::NonCommutingSequence { .. })));
    }

    #[test]
    fn eigenstate_measurement_is_deterministic() {
        let state = PureState::computational_basis(0).to_density();
        let (outcome, post) = measure_once(&state, ProductObservable::new(Z, I), 0.999_999);
        assert_eq!(outcome, Sign::Plus);
        assert!(post.matrix().approx_eq(state.matrix(), 1e-12));
    }

    #[test]
    fn maximally_mixed_splits_evenly() {
        let state = DensityMatrix::maximally_mixed();
        let (plus, _) = measure_once(&state, ProductObservable::new(Z, Z), 0.49);
        let (minus, _) = measure_once(&state, ProductObservable::new(Z, Z), 0.51);
        assert_eq!(plus, Sign::Plus);
        assert_eq!(minus, Sign::Minus);
    }

    #[test]
    fn singlet_zz_is_always_minus() {
        let state = PureState::singlet().to_density();
        for u in [0.0, 0.3, 0.999_999_9] {
            let (outcome, _) = measure_once(&state, ProductObservable::new(Z, Z), u);
            assert_eq!(outcome, Sign::Minus);
        }
    }

    #[test]
    fn noiseless_products_are_deterministic() {
        let noise = NoiseModel::noiseless();
        for seed in 0..20u64 {
            let state = random_state(
                &RandomStateConfig::new(
                    seed,
                    if seed % 2 == 0 {
                        Ensemble::HaarPure
                    } else {
                        Ensemble::GinibreMixed
                    },
                )
                .unwrap(),
            );
            for shot in 0..50u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, shot));
                let r = run_setup(&state, &MeasurementSetup::r3(), noise, &mut rng);
                assert_eq!(r.product, Sign::Plus);
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed ^ 0xAB, shot));
                let c = run_setup(&state, &MeasurementSetup::c3(), noise, &mut rng);
                assert_eq!(c.product, Sign::Minus);
            }
        }
    }

    #[test]
    fn record_product_matches_outcomes() {
        let state = PureState::singlet().to_density();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let noise = NoiseModel::new(0.3).unwrap();
        for _ in 0..200 {
            let record = run_setup(&state, &MeasurementSetup::c3(), noise, &mut rng);
            let expected = record.outcomes.iter().fold(Sign::Plus, |acc, &s| acc * s);
            assert_eq!(record.product, expected);
        }
    }

    #[test]
    fn estimate_zero_noise_exact() {
        let state = PureState::singlet().to_density();
        let report = estimate(
            &state,
            &MeasurementSetup::r3(),
            NoiseModel::noiseless(),
            1000,
            42,
        )
        .unwrap();
        assert_eq!(report.mean_product, 1.0);
        assert_eq!(report.standard_error, 0.0);
        assert_eq!(report.shots, 1000);
    }

    #[test]
    fn estimate_rejects_zero_shots() {
        let state = PureState::singlet().to_density();
        let err = estimate(
            &state,
            &MeasurementSetup::r3(),
            NoiseModel::noiseless(),
            0,
            42,
        );
        assert!(matches!(err, Err(Error::ZeroShots)));
    }

    #[test]
    fn estimate_is_seed_reproducible() {
        let state = random_state(&RandomStateConfig::new(5, Ensemble::GinibreMixed).unwrap());
        let noise = NoiseModel::new(0.05).unwrap();
        let a = estimate(&state, &MeasurementSetup::c3(), noise, 2000, 99).unwrap();
        let b = estimate(&state, &MeasurementSetup::c3(), noise, 2000, 99).unwrap();
        assert_eq!(a, b);
        // distinct seeds give distinct record streams
        let stream = |seed: u64| -> Vec<MeasurementRecord> {
            (0..50)
                .map(|shot| {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, shot));
                    run_setup(&state, &MeasurementSetup::c3(), noise, &mut rng)
                })
                .collect()
        };
        assert_ne!(stream(99), stream(100));
    }

    #[test]
    fn half_flip_noise_randomizes() {
        let state = PureState::singlet().to_density();
        let noise = NoiseModel::new(0.5).unwrap();
        let report = estimate(&state, &MeasurementSetup::r3(), noise, 20_000, 42).unwrap();
        assert!(report.mean_product.abs() <= 4.0 * report.standard_error);
    }

    #[test]
    fn attenuation_matches_flip_model() {
        let state = PureState::singlet().to_density();
        let noise = NoiseModel::new(0.1).unwrap();
        let expected = noise.product_attenuation(); // 0.8^3 = 0.512
        assert!((expected - 0.512).abs() < 1e-15);
        let report = estimate(&state, &MeasurementSetup::r3(), noise, 50_000, 42).unwrap();
        assert!(
            (report.mean_product - expected).abs() <= 4.0 * report.standard_error,
            "mean {} vs expected {expected} (se {})",
            report.mean_product,
            report.standard_error
        );
    }

    #[test]
    fn marginal_outcomes_match_expectations() {
        // With q = 0 the empirical mean of each individual outcome converges
        // to the state's expectation of that observable.
        let state = random_state(&RandomStateConfig::new(11, Ensemble::HaarPure).unwrap());
        let setup = MeasurementSetup::r3();
        let shots = 100_000u64;
        let mut sums = [0.0f64; 3];
        for shot in 0..shots {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(4242, shot));
            let record = run_setup(&state, &setup, NoiseModel::noiseless(), &mut rng);
            for (slot, outcome) in record.outcomes.iter().enumerate() {
                sums[slot] += outcome.value() as f64;
            }
        }
        for (slot, &observable) in setup.sequence().iter().enumerate() {
            let mean = sums[slot] / shots as f64;
            let expected = state.expectation(observable);
            let se = ((1.0 - expected * expected).max(1e-12) / shots as f64).sqrt();
            assert!(
                (mean - expected).abs() <= 4.0 * se,
                "outcome {slot}: mean {mean} vs expectation {expected}"
            );
        }
    }

    #[test]
    fn permuted_setup_keeps_deterministic_product() {
        let state = random_state(&RandomStateConfig::new(17, Ensemble::GinibreMixed).unwrap());
        let base = MeasurementSetup::r3();
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]] {
            let permuted = base.permuted(order);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..50 {
                let record = run_setup(&state, &permuted, NoiseModel::noiseless(), &mut rng);
                assert_eq!(record.product, Sign::Plus);
            }
        }
    }

    #[test]
    fn gamma_combines_estimates() {
        let r3 = EstimateReport {
            setup: SetupLabel::R3Setup,
            shots: 10,
            mean_product: 1.0,
            standard_error: 0.0,
        };
        let c3 = EstimateReport {
            setup: SetupLabel::C3Setup,
            shots: 10,
            mean_product: -1.0,
            standard_error: 0.0,
        };
        let g = gamma_from_estimates(&r3, &c3);
        assert_eq!(g.gamma, 3.0);
        assert_eq!(g.sigma, 0.0);

        let r3 = EstimateReport {
            mean_product: 0.90,
            standard_error: 0.01,
            ..r3
        };
        let c3 = EstimateReport {
            mean_product: -0.91,
            standard_error: 0.01,
            ..c3
        };
        let g = gamma_from_estimates(&r3, &c3);
        assert!((g.gamma - 2.81).abs() <= 1e-12);
        assert!((g.sigma - (2.0f64).sqrt() * 0.01).abs() <= 1e-12);

        let r3 = EstimateReport {
            mean_product: 0.0,
            standard_error: 0.0,
            ..r3
        };
        let c3 = EstimateReport {
            mean_product: 0.0,
            standard_error: 0.0,
            ..c3
        };
        assert_eq!(gamma_from_estimates(&r3, &c3).gamma, 1.0);
    }

    #[test]
    fn bad_flip_probability_rejected() {
        assert!(matches!(
            NoiseModel::new(-0.01),
            Err(Error::BadFlipProbability { .. })
        ));
        assert!(matches!(
            NoiseModel::new(0.51),
            Err(Error::BadFlipProbability { .. })
        ));
        assert!(NoiseModel::new(0.5).is_ok());
        assert!(NoiseModel::new(0.0).is_ok());
    }
}
