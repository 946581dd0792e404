//! Two-qubit quantum states, expectation values, and reproducible random
//! state generation.
//!
//! Pure states are unit-norm amplitude 4-vectors in the computational basis
//! |00>, |01>, |10>, |11> (qubit 1 most significant, matching the tensor
//! order of [`crate::operator_algebra`]). Mixed states are validated 4x4
//! density matrices. Random states come from seeded ChaCha8 streams so every
//! sweep replays bit-for-bit; generator identity is [`RNG_ALGORITHM`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::eigen::min_hermitian_eigenvalue;
use crate::error::{Error, Result};
use crate::operator_algebra::{ComplexMatrix4, ProductObservable};
use crate::pm_square::{Line, PeresMerminSquare};

/// Tolerance for state-validity checks (norm, Hermiticity, trace,
/// positivity).
pub const EPS_STATE: f64 = 1e-10;

/// The random generator behind [`random_state`], recorded in reports so
/// sweeps can be reproduced externally.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha::ChaCha8Rng, seed_from_u64)";

/// A normalized two-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amplitudes: [Complex64; 4],
}

impl PureState {
    /// Amplitudes must satisfy | sum |a_i|^2 - 1 | <= [`EPS_STATE`].
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > EPS_STATE {
            return Err(Error::NotNormalized {
                deviation,
                tolerance: EPS_STATE,
            });
        }
        Ok(Self { amplitudes })
    }

    /// Normalize arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized {
                deviation: 1.0,
                tolerance: EPS_STATE,
            });
        }
        let scale = 1.0 / norm;
        let mut out = amplitudes;
        for a in out.iter_mut() {
            *a *= scale;
        }
        Self::new(out)
    }

    /// The singlet (|01> - |10>)/sqrt(2).
    pub fn singlet() -> Self {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: [
                Complex64::new(0.0, 0.0),
                Complex64::new(inv, 0.0),
                Complex64::new(-inv, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        }
    }

    /// Basis state |index> for index in 0..4 (|00>, |01>, |10>, |11>).
    pub fn computational_basis(index: usize) -> Self {
        assert!(index < 4, "basis index out of range");
        let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rank-1 projector |psi><psi|.
    pub fn to_density(&self) -> DensityMatrix {
        let mut rho = ComplexMatrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                rho.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        DensityMatrix::from_trusted(rho)
    }
}

/// A validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite (all to [`EPS_STATE`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    rho: ComplexMatrix4,
}

impl DensityMatrix {
    pub fn new(rho: ComplexMatrix4) -> Result<Self> {
        let hermiticity = rho.max_abs_diff(&rho.adjoint());
        if hermiticity > EPS_STATE {
            return Err(Error::NotHermitian {
                deviation: hermiticity,
            });
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > EPS_STATE || trace.im.abs() > EPS_STATE {
            return Err(Error::BadTrace {
                trace: (trace.re, trace.im),
            });
        }
        let min_eigenvalue = min_hermitian_eigenvalue(&rho);
        if min_eigenvalue < -EPS_STATE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { rho })
    }

    /// Construction path for matrices that are valid by construction
    /// (projections, normalized mixtures); skips the eigenvalue check.
    pub(crate) fn from_trusted(rho: ComplexMatrix4) -> Self {
        Self { rho }
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.rho
    }

    /// I/4.
    pub fn maximally_mixed() -> Self {
        Self::from_trusted(ComplexMatrix4::identity().scale(Complex64::new(0.25, 0.0)))
    }

    /// tr(rho^2); 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.rho.trace_product(&self.rho).re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_hermitian_eigenvalue(&self.rho)
    }

    /// Convex mixture `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, other: &Self, alpha: f64) -> Self {
        assert!((0.0..=1.0).contains(&alpha), "mixture weight out of range");
        let a = Complex64::new(alpha, 0.0);
        let b = Complex64::new(1.0 - alpha, 0.0);
        Self::from_trusted(self.rho.scale(a) + other.rho.scale(b))
    }

    /// Re tr(rho * O) for a product observable. The imaginary part of the
    /// trace vanishes for Hermitian inputs; it is asserted below 1e-10, and
    /// the result is asserted inside [-1 - 1e-9, 1 + 1e-9].
    pub fn expectation(&self, observable: ProductObservable) -> f64 {
        let value = self.expectation_of(&observable.to_matrix());
        assert!(
            (-1.0 - 1e-9..=1.0 + 1e-9).contains(&value),
            "expectation {value} outside [-1, 1] for {observable}"
        );
        value
    }

    /// Re tr(rho * m) for an arbitrary Hermitian operator.
    pub fn expectation_of(&self, m: &ComplexMatrix4) -> f64 {
        let t = self.rho.trace_product(m);
        assert!(
            t.im.abs() <= 1e-10,
            "expectation trace has imaginary part {}",
            t.im
        );
        t.re
    }

    /// Re tr(rho * line_product) on the canonical square.
    pub fn expectation_line(&self, line: Line) -> f64 {
        self.expectation_of(&PeresMerminSquare::canonical().line_product(line))
    }
}

/// Which random-state ensemble to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    /// Pure states uniform under the Haar measure (normalized complex
    /// Gaussian amplitudes).
    HaarPure,
    /// Full-rank mixed states under the Hilbert-Schmidt measure,
    /// rho = G G^dag / tr(G G^dag) with G a 4x4 complex Gaussian matrix.
    GinibreMixed,
    /// Ginibre construction with a 4xk factor, giving rank <= k.
    RankLimited(u8),
}

impl std::fmt::Display for Ensemble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ensemble::HaarPure => write!(f, "haar_pure"),
            Ensemble::GinibreMixed => write!(f, "ginibre_mixed"),
            Ensemble::RankLimited(k) => write!(f, "rank_limited({k})"),
        }
    }
}

/// Seed plus ensemble choice; same config always yields the same state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RandomStateConfig {
    pub seed: u64,
    pub ensemble: Ensemble,
}

impl RandomStateConfig {
    pub fn new(seed: u64, ensemble: Ensemble) -> Result<Self> {
        if let Ensemble::RankLimited(rank) = ensemble {
            if !(1..=4).contains(&rank) {
                return Err(Error::BadRank { rank });
            }
        }
        Ok(Self { seed, ensemble })
    }
}

fn standard_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Draw one state. Deterministic for a fixed config: the ChaCha8 stream is
/// consumed in a fixed order (amplitudes, or Ginibre entries row-major,
/// real part before imaginary part).
pub fn random_state(cfg: &RandomStateConfig) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.ensemble {
        Ensemble::HaarPure => {
            let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
            for a in amplitudes.iter_mut() {
                *a = standard_complex(&mut rng);
            }
            PureState::normalized(amplitudes)
                .expect("Gaussian amplitudes are nonzero with probability 1")
                .to_density()
        }
        Ensemble::GinibreMixed => ginibre(&mut rng, 4),
        Ensemble::RankLimited(rank) => {
            assert!((1..=4).contains(&rank), "rank out of range");
            ginibre(&mut rng, rank as usize)
        }
    }
}

fn ginibre<R: Rng>(rng: &mut R, rank: usize) -> DensityMatrix {
    let mut g = [[Complex64::new(0.0, 0.0); 4]; 4];
    for row in g.iter_mut() {
        for entry in row.iter_mut().take(rank) {
            *entry = standard_complex(rng);
        }
    }
    // rho = G G^dag, normalized by its trace.
    let mut rho = ComplexMatrix4::zero();
    let mut trace = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut s = Complex64::new(0.0, 0.0);
            for (gi, gj) in g[i].iter().zip(g[j].iter()).take(rank) {
                s += gi * gj.conj();
            }
            rho.set(i, j, s);
            if i == j {
                trace += s.re;
            }
        }
    }
    DensityMatrix::from_trusted(rho.scale(Complex64::new(1.0 / trace, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_algebra::PauliLabel::{self, I, X, Y, Z};
    use crate::seeding::derive_seed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn singlet_is_normalized_and_anticorrelated() {
        let s = PureState::singlet();
        assert!((s.norm() - 1.0).abs() <= EPS_STATE);
        let rho = s.to_density();
        assert!((rho.expectation(ProductObservable::new(Z, Z)) + 1.0).abs() <= 1e-12);
        assert!((rho.expectation(ProductObservable::new(X, X)) + 1.0).abs() <= 1e-12);
        assert!((rho.expectation(ProductObservable::new(Y, Y)) + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn singlet_density_entries() {
        let rho = PureState::singlet().to_density();
        let m = rho.matrix();
        assert!((m.get(1, 1) - c(0.5, 0.0)).norm() <= 1e-12);
        assert!((m.get(2, 2) - c(0.5, 0.0)).norm() <= 1e-12);
        assert!((m.get(1, 2) - c(-0.5, 0.0)).norm() <= 1e-12);
        assert!((m.get(2, 1) - c(-0.5, 0.0)).norm() <= 1e-12);
        assert!(m.get(0, 0).norm() <= 1e-12);
        assert!(m.get(3, 3).norm() <= 1e-12);
    }

    #[test]
    fn basis_state_density_is_projector() {
        let rho = PureState::computational_basis(0).to_density();
        let expected = ComplexMatrix4::diag([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(rho.matrix().approx_eq(&expected, 1e-12));
        assert!((rho.purity() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn non_normalized_state_rejected() {
        let err = PureState::new([c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn pure_states_have_unit_purity() {
        for seed in 0..20 {
            let cfg = RandomStateConfig::new(seed, Ensemble::HaarPure).unwrap();
            let rho = random_state(&cfg);
            assert!((rho.purity() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn maximally_mixed_kills_nonidentity_observables() {
        let rho = DensityMatrix::maximally_mixed();
        for o in ProductObservable::all() {
            let expected = if o == ProductObservable::new(I, I) {
                1.0
            } else {
                0.0
            };
            assert!((rho.expectation(o) - expected).abs() <= 1e-12, "{o}");
        }
        // line operators are +-I, so even I/4 sees the full signal
        assert!((rho.expectation_line(Line::R1) - 1.0).abs() <= 1e-12);
        assert!((rho.expectation_line(Line::C3) + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn singlet_mixed_term_expectation_vanishes() {
        // Frozen from the direct trace: tr(rho_singlet * Z(x)X) = 0.
        let rho = PureState::singlet().to_density();
        assert!(rho.expectation(ProductObservable::new(Z, X)).abs() <= 1e-12);
    }

    #[test]
    fn identity_expectation_is_one_for_any_state() {
        for seed in 0..10 {
            let cfg = RandomStateConfig::new(seed, Ensemble::GinibreMixed).unwrap();
            let rho = random_state(&cfg);
            assert!((rho.expectation(ProductObservable::new(I, I)) - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn line_expectations_are_state_independent() {
        for seed in 0..25 {
            for ensemble in [
                Ensemble::HaarPure,
                Ensemble::GinibreMixed,
                Ensemble::RankLimited(2),
            ] {
                let rho = random_state(&RandomStateConfig::new(seed, ensemble).unwrap());
                for line in Line::ALL {
                    let expected = line.expected_sign() as f64;
                    assert!(
                        (rho.expectation_line(line) - expected).abs() <= 1e-9,
                        "line {line} for {ensemble} seed {seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn ginibre_states_are_valid() {
        for seed in 0..50 {
            let rho = random_state(&RandomStateConfig::new(seed, Ensemble::GinibreMixed).unwrap());
            let trace = rho.matrix().trace();
            assert!((trace.re - 1.0).abs() <= 1e-12 && trace.im.abs() <= 1e-12);
            assert!(rho.min_eigenvalue() >= -1e-10);
            // revalidate through the checked constructor
            assert!(DensityMatrix::new(*rho.matrix()).is_ok());
        }
    }

    #[test]
    fn rank_limited_spectrum() {
        let rho = random_state(&RandomStateConfig::new(3, Ensemble::RankLimited(1)).unwrap());
        assert!(
            (rho.purity() - 1.0).abs() <= 1e-10,
            "rank-1 Ginibre is pure"
        );
        let rho2 = random_state(&RandomStateConfig::new(3, Ensemble::RankLimited(2)).unwrap());
        let eigs = crate::eigen::hermitian_eigenvalues(rho2.matrix());
        assert!(
            eigs[0].abs() <= 1e-10 && eigs[1].abs() <= 1e-10,
            "rank-2 has two null directions"
        );
    }

    #[test]
    fn same_seed_same_state_bitwise() {
        let cfg = RandomStateConfig::new(12345, Ensemble::GinibreMixed).unwrap();
        let a = random_state(&cfg);
        let b = random_state(&cfg);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn derived_seeds_give_distinct_states() {
        let a =
            random_state(&RandomStateConfig::new(derive_seed(42, 0), Ensemble::HaarPure).unwrap());
        let b =
            random_state(&RandomStateConfig::new(derive_seed(42, 1), Ensemble::HaarPure).unwrap());
        assert!(a.matrix().max_abs_diff(b.matrix()) > 1e-3);
    }

    #[test]
    fn expectation_is_linear_in_the_state() {
        for seed in 0..10u64 {
            let rho1 = random_state(&RandomStateConfig::new(seed, Ensemble::HaarPure).unwrap());
            let rho2 =
                random_state(&RandomStateConfig::new(seed + 100, Ensemble::GinibreMixed).unwrap());
            let alpha = 0.3125;
            let mixed = rho1.mix(&rho2, alpha);
            for o in [
                ProductObservable::new(Z, X),
                ProductObservable::new(Y, Y),
                ProductObservable::new(PauliLabel::X, I),
            ] {
                let lhs = mixed.expectation(o);
                let rhs = alpha * rho1.expectation(o) + (1.0 - alpha) * rho2.expectation(o);
                assert!((lhs - rhs).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn invalid_density_matrices_rejected() {
        // trace 2
        let double = ComplexMatrix4::identity()
            .scale(c(0.5, 0.0))
            .scale(c(2.0, 0.0));
        assert!(matches!(
            DensityMatrix::new(double),
            Err(Error::BadTrace { .. })
        ));
        // non-Hermitian
        let mut skew = ComplexMatrix4::identity().scale(c(0.25, 0.0));
        skew.set(0, 1, c(0.1, 0.0));
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NotHermitian { .. })
        ));
        // Hermitian, trace 1, but indefinite
        let indefinite =
            ComplexMatrix4::diag([c(1.5, 0.0), c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(indefinite),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn bad_rank_rejected() {
        assert!(matches!(
            RandomStateConfig::new(1, Ensemble::RankLimited(0)),
            Err(Error::BadRank { rank: 0 })
        ));
        assert!(matches!(
            RandomStateConfig::new(1, Ensemble::RankLimited(5)),
            Err(Error::BadRank { rank: 5 })
        ));
    }
}
