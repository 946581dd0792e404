//! Exact complex linear algebra for 2x2 and 4x4 matrices, Pauli operators,
//! and tensor products.
//!
//! Everything downstream reduces to this module: two-qubit observables are
//! Kronecker products of single-qubit Paulis, states are 4x4 density
//! matrices, and every identity check is a max-entry-norm comparison at
//! [`EPS_OP`]. All entries of the operators built here are exact `0`, `+-1`
//! or `+-i` products, so the tolerance only absorbs representation rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Tolerance for operator-identity comparisons (max-entry-magnitude norm).
pub const EPS_OP: f64 = 1e-12;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

    pub fn symbol(self) -> char {
        match self {
            PauliLabel::I => 'I',
            PauliLabel::X => 'X',
            PauliLabel::Y => 'Y',
            PauliLabel::Z => 'Z',
        }
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const NEG_ONE: Complex64 = Complex64::new(-1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);
const NEG_IM: Complex64 = Complex64::new(0.0, -1.0);

/// Dense 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2 {
    entries: [[Complex64; 2]; 2],
}

impl ComplexMatrix2 {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..2)
                    .map(|k| self.entries[i][k] * other.entries[k][j])
                    .sum();
            }
        }
        Self::new(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut max = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                max = max.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        max
    }
}

/// Dense 4x4 complex matrix, the numeric realization of every two-qubit
/// observable and state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex64; 4]; 4],
}

impl ComplexMatrix4 {
    pub fn new(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, value) in d.into_iter().enumerate() {
            m.entries[i][i] = value;
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row][col] = value;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4)
                    .map(|k| self.entries[i][k] * other.entries[k][j])
                    .sum();
            }
        }
        Self::new(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.entries[j][i].conj();
            }
        }
        Self::new(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for entry in row.iter_mut() {
                *entry *= factor;
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        let mut max = 0.0f64;
        for row in &self.entries {
            for entry in row {
                max = max.max(entry.norm());
            }
        }
        max
    }

    /// Max-entry-magnitude distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Equality up to `tol` in max-entry norm.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// `trace(self * other)` without forming the product matrix.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let mut t = ZERO;
        for i in 0..4 {
            for k in 0..4 {
                t += self.entries[i][k] * other.entries[k][i];
            }
        }
        t
    }
}

impl Add for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }
}

impl Sub for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] -= rhs.entries[i][j];
            }
        }
        out
    }
}

impl Neg for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn neg(self) -> Self {
        self.scale(NEG_ONE)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs)
    }
}

/// Standard Pauli matrices. The sign convention is fixed here and inherited
/// by every other module: X = [[0,1],[1,0]], Y = [[0,-i],[i,0]],
/// Z = [[1,0],[0,-1]].
pub fn pauli_matrix(label: PauliLabel) -> ComplexMatrix2 {
    match label {
        PauliLabel::I => ComplexMatrix2::new([[ONE, ZERO], [ZERO, ONE]]),
        PauliLabel::X => ComplexMatrix2::new([[ZERO, ONE], [ONE, ZERO]]),
        PauliLabel::Y => ComplexMatrix2::new([[ZERO, NEG_IM], [IM, ZERO]]),
        PauliLabel::Z => ComplexMatrix2::new([[ONE, ZERO], [ZERO, NEG_ONE]]),
    }
}

/// Kronecker product with `a` (qubit 1) as the outer-block factor, so the
/// computational basis is ordered |00>, |01>, |10>, |11> with qubit 1 most
/// significant.
pub fn tensor(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[2 * i + k][2 * j + l] = a.get(i, j) * b.get(k, l);
                }
            }
        }
    }
    out
}

/// `a*b - b*a`.
pub fn commutator(a: &ComplexMatrix4, b: &ComplexMatrix4) -> ComplexMatrix4 {
    a.matmul(b) - b.matmul(a)
}

/// True iff `a` equals its adjoint within [`EPS_OP`].
pub fn is_hermitian(a: &ComplexMatrix4) -> bool {
    a.max_abs_diff(&a.adjoint()) <= EPS_OP
}

/// True iff `a*a` equals the identity within [`EPS_OP`].
pub fn is_involution(a: &ComplexMatrix4) -> bool {
    a.matmul(a).max_abs_diff(&ComplexMatrix4::identity()) <= EPS_OP
}

/// A two-qubit observable given as an ordered pair of single-qubit Pauli
/// factors. Every such observable is Hermitian with `O*O = I`, hence has
/// eigenvalues +-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ProductObservable {
    /// Qubit 1 factor (left Kronecker factor).
    pub first: PauliLabel,
    /// Qubit 2 factor (right Kronecker factor).
    pub second: PauliLabel,
}

impl ProductObservable {
    pub const fn new(first: PauliLabel, second: PauliLabel) -> Self {
        Self { first, second }
    }

    pub fn to_matrix(&self) -> ComplexMatrix4 {
        tensor(&pauli_matrix(self.first), &pauli_matrix(self.second))
    }

    /// All 16 Pauli pairs, row-major over (first, second).
    pub fn all() -> impl Iterator<Item = ProductObservable> {
        PauliLabel::ALL.into_iter().flat_map(|a| {
            PauliLabel::ALL
                .into_iter()
                .map(move |b| ProductObservable::new(a, b))
        })
    }
}

impl fmt::Display for ProductObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x){}", self.first, self.second)
    }
}

/// Single-qubit Pauli product with phase: `a * b = phase * label`.
///
/// Used by tests as an independent route to 4x4 products via the
/// mixed-product law.
pub fn pauli_product(a: PauliLabel, b: PauliLabel) -> (Complex64, PauliLabel) {
    use PauliLabel::{I, X, Y, Z};
    match (a, b) {
        (I, p) | (p, I) => (ONE, p),
        (X, X) | (Y, Y) | (Z, Z) => (ONE, I),
        (X, Y) => (IM, Z),
        (Y, X) => (NEG_IM, Z),
        (Y, Z) => (IM, X),
        (Z, Y) => (NEG_IM, X),
        (Z, X) => (IM, Y),
        (X, Z) => (NEG_IM, Y),
    }
}
