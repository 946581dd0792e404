//! The 3x3 Peres-Mermin array of two-qubit product observables, its row and
//! column operator products, and the six eigenvalue identities those
//! products satisfy.
//!
//! The canonical layout is
//!
//! ```text
//!   Z(x)I   I(x)Z   Z(x)Z
//!   I(x)X   X(x)I   X(x)X
//!   Z(x)X   X(x)Z   Y(x)Y
//! ```
//!
//! Within every row and column the three observables pairwise commute; the
//! ordered product along each row and the first two columns is +I, while the
//! third column's product is -I. Multiplying the six expected signs gives -1
//! even though every cell appears in exactly two lines, which is the parity
//! obstruction the rest of the crate probes.

use crate::operator_algebra::{commutator, ComplexMatrix4, PauliLabel, ProductObservable, EPS_OP};

/// Position in the 3x3 array, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SquarePosition {
    row: u8,
    col: u8,
}

impl SquarePosition {
    /// Both indices must lie in 1..=3.
    pub fn new(row: u8, col: u8) -> Option<Self> {
        if (1..=3).contains(&row) && (1..=3).contains(&col) {
            Some(Self { row, col })
        } else {
            None
        }
    }

    pub fn row(self) -> u8 {
        self.row
    }

    pub fn col(self) -> u8 {
        self.col
    }

    /// Row-major index in 0..9.
    pub fn flat_index(self) -> usize {
        (self.row as usize - 1) * 3 + (self.col as usize - 1)
    }

    pub fn all() -> impl Iterator<Item = SquarePosition> {
        (1..=3).flat_map(|row| (1..=3).map(move |col| SquarePosition { row, col }))
    }
}

/// A row or column of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Line {
    R1,
    R2,
    R3,
    C1,
    C2,
    C3,
}

impl Line {
    pub const ALL: [Line; 6] = [Line::R1, Line::R2, Line::R3, Line::C1, Line::C2, Line::C3];

    /// Cell positions along the line, in the order the operator product is
    /// taken.
    pub fn positions(self) -> [SquarePosition; 3] {
        let (row, col) = match self {
            Line::R1 => (Some(1), None),
            Line::R2 => (Some(2), None),
            Line::R3 => (Some(3), None),
            Line::C1 => (None, Some(1)),
            Line::C2 => (None, Some(2)),
            Line::C3 => (None, Some(3)),
        };
        let mut out = [SquarePosition { row: 1, col: 1 }; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let k = k as u8 + 1;
            *slot = match (row, col) {
                (Some(r), None) => SquarePosition { row: r, col: k },
                (None, Some(c)) => SquarePosition { row: k, col: c },
                _ => unreachable!(),
            };
        }
        out
    }

    /// Sign of the line's operator product: +1 everywhere except C3.
    pub fn expected_sign(self) -> i8 {
        match self {
            Line::C3 => -1,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Line::R1 => "R1",
            Line::R2 => "R2",
            Line::R3 => "R3",
            Line::C1 => "C1",
            Line::C2 => "C2",
            Line::C3 => "C3",
        }
    }
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of checking one line's operator identity.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LineIdentityReport {
    pub line: Line,
    pub expected_sign: i8,
    pub max_deviation: f64,
    pub passed: bool,
}

/// The 3x3 array of product observables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeresMerminSquare {
    cells: [[ProductObservable; 3]; 3],
}

/// The canonical square. Deterministic; cells are fixed constants.
pub fn build_square() -> PeresMerminSquare {
    PeresMerminSquare::canonical()
}

impl PeresMerminSquare {
    /// The canonical cell layout.
    pub fn canonical() -> Self {
        use PauliLabel::{I, X, Y, Z};
        let o = ProductObservable::new;
        Self {
            cells: [
                [o(Z, I), o(I, Z), o(Z, Z)],
                [o(I, X), o(X, I), o(X, X)],
                [o(Z, X), o(X, Z), o(Y, Y)],
            ],
        }
    }

    /// Arbitrary cell layout; exists for negative tests. No commutation or
    /// identity structure is implied.
    pub fn with_cells(cells: [[ProductObservable; 3]; 3]) -> Self {
        Self { cells }
    }

    /// The canonical square with one cell replaced.
    pub fn with_replaced_cell(pos: SquarePosition, observable: ProductObservable) -> Self {
        let mut square = Self::canonical();
        square.cells[pos.row() as usize - 1][pos.col() as usize - 1] = observable;
        square
    }

    pub fn cell(&self, pos: SquarePosition) -> ProductObservable {
        self.cells[pos.row() as usize - 1][pos.col() as usize - 1]
    }

    /// Ordered matrix product of the three cells along `line`. Along the
    /// canonical square's lines the factors commute, so the order is
    /// observationally irrelevant; it is fixed left-to-right (rows) and
    /// top-to-bottom (columns) for bit-reproducibility.
    pub fn line_product(&self, line: Line) -> ComplexMatrix4 {
        let [p1, p2, p3] = line.positions();
        self.cell(p1)
            .to_matrix()
            .matmul(&self.cell(p2).to_matrix())
            .matmul(&self.cell(p3).to_matrix())
    }

    /// One report per line comparing the line product against
    /// `expected_sign * I` in max-entry norm.
    pub fn verify_eigen_relations(&self) -> Vec<LineIdentityReport> {
        Line::ALL
            .iter()
            .map(|&line| {
                let expected_sign = line.expected_sign();
                let target = ComplexMatrix4::identity()
                    .scale(num_complex::Complex64::new(expected_sign as f64, 0.0));
                let max_deviation = self.line_product(line).max_abs_diff(&target);
                LineIdentityReport {
                    line,
                    expected_sign,
                    max_deviation,
                    passed: max_deviation <= EPS_OP,
                }
            })
            .collect()
    }

    /// Max commutator entry for each unordered pair of cells within each
    /// line: 3 pairs per line, 18 in total.
    pub fn compatibility_deviations(&self) -> Vec<((SquarePosition, SquarePosition), f64)> {
        let mut out = Vec::with_capacity(18);
        for line in Line::ALL {
            let [p1, p2, p3] = line.positions();
            for (a, b) in [(p1, p2), (p1, p3), (p2, p3)] {
                let comm = commutator(&self.cell(a).to_matrix(), &self.cell(b).to_matrix());
                out.push(((a, b), comm.max_abs()));
            }
        }
        out
    }

    /// True iff all 18 within-line commutators vanish within [`EPS_OP`].
    pub fn verify_compatibility(&self) -> bool {
        self.compatibility_deviations()
            .iter()
            .all(|(_, deviation)| *deviation <= EPS_OP)
    }
}

impl Default for PeresMerminSquare {
    fn default() -> Self {
        Self::canonical()
    }
}
