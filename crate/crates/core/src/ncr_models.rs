//! Exhaustive noncontextual-realist (NCR) hidden-variable machinery.
//!
//! An NCR model predetermines every measured value, and for commuting
//! observables the value of a product is the product of the values. That
//! rule can be applied at two levels:
//!
//! * nine-value scheme: one sign per square cell, the line value being the
//!   product of its three cell values;
//! * six-value scheme: one sign per single-qubit symbol (two qubits, three
//!   axes), a cell value being the product of its non-identity factors.
//!
//! Both schemes are small enough to scan exhaustively (2^9 = 512 and
//! 2^6 = 64 assignments), which turns the classical bounds into checked
//! facts: the chi witness never exceeds 4, no nine-value assignment matches
//! all six quantum line signs, and the gamma witness equals 1 identically.
//! Everything here is integer arithmetic; no floats.

use crate::operator_algebra::PauliLabel;
use crate::pm_square::{Line, PeresMerminSquare, SquarePosition};
use crate::sign::Sign;

/// One sign per square cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NineValueAssignment {
    /// Row-major over cells (1,1)..(3,3).
    values: [Sign; 9],
}

impl NineValueAssignment {
    pub fn new(values: [Sign; 9]) -> Self {
        Self { values }
    }

    /// Assignment number `index` in 0..512: bit k (row-major cell k) set
    /// means -1, so index 0 is all +1.
    pub fn from_index(index: u16) -> Self {
        assert!(index < 512, "nine-value index out of range");
        let mut values = [Sign::Plus; 9];
        for (k, v) in values.iter_mut().enumerate() {
            *v = Sign::from_bit(index >> k & 1 == 1);
        }
        Self { values }
    }

    pub fn value_at(&self, pos: SquarePosition) -> Sign {
        self.values[pos.flat_index()]
    }

    /// Product of the three cell values along `line`.
    pub fn line_value(&self, line: Line) -> Sign {
        line.positions()
            .iter()
            .map(|&p| self.value_at(p))
            .fold(Sign::Plus, |acc, s| acc * s)
    }
}

/// All 512 nine-value assignments in ascending index order.
pub fn enumerate_nine() -> impl Iterator<Item = NineValueAssignment> {
    (0u16..512).map(NineValueAssignment::from_index)
}

/// The chi witness: R1 + R2 + R3 + C1 + C2 - C3 under the nine-value
/// scheme. An even integer in [-4, 4]; the upper bound is what the
/// exhaustive scan certifies.
pub fn chi_of(a: &NineValueAssignment) -> i32 {
    let line = |l| a.line_value(l).value();
    line(Line::R1) + line(Line::R2) + line(Line::R3) + line(Line::C1) + line(Line::C2)
        - line(Line::C3)
}

/// Qubit slot of a single-qubit symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    One,
    Two,
}

/// One sign per single-qubit Pauli symbol: (qubit 1 or 2) x (x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SixValueAssignment {
    /// Index = 3 * qubit + axis with axes ordered x, y, z.
    values: [Sign; 6],
}

impl SixValueAssignment {
    pub fn new(values: [Sign; 6]) -> Self {
        Self { values }
    }

    /// Assignment number `index` in 0..64; bit layout mirrors
    /// [`NineValueAssignment::from_index`].
    pub fn from_index(index: u8) -> Self {
        assert!(index < 64, "six-value index out of range");
        let mut values = [Sign::Plus; 6];
        for (k, v) in values.iter_mut().enumerate() {
            *v = Sign::from_bit(index >> k & 1 == 1);
        }
        Self { values }
    }

    /// Value of one single-qubit symbol; the identity carries no symbol and
    /// contributes +1.
    pub fn single_value(&self, qubit: Qubit, label: PauliLabel) -> Sign {
        let axis = match label {
            PauliLabel::I => return Sign::Plus,
            PauliLabel::X => 0,
            PauliLabel::Y => 1,
            PauliLabel::Z => 2,
        };
        let slot = match qubit {
            Qubit::One => 0,
            Qubit::Two => 3,
        };
        self.values[slot + axis]
    }

    /// Value induced on one cell: the product of the values of its
    /// non-identity factors.
    pub fn cell_value(&self, cell: crate::operator_algebra::ProductObservable) -> Sign {
        self.single_value(Qubit::One, cell.first) * self.single_value(Qubit::Two, cell.second)
    }

    /// Line value on an arbitrary square under the fully factorized scheme.
    pub fn line_value_on(&self, square: &PeresMerminSquare, line: Line) -> Sign {
        line.positions()
            .iter()
            .map(|&p| self.cell_value(square.cell(p)))
            .fold(Sign::Plus, |acc, s| acc * s)
    }

    /// Line value on the canonical square.
    pub fn line_value(&self, line: Line) -> Sign {
        self.line_value_on(&PeresMerminSquare::canonical(), line)
    }

    /// The nine-value assignment this six-value assignment induces on the
    /// canonical square (cellwise products).
    pub fn induced_nine(&self) -> NineValueAssignment {
        self.induced_nine_on(&PeresMerminSquare::canonical())
    }

    pub fn induced_nine_on(&self, square: &PeresMerminSquare) -> NineValueAssignment {
        let mut values = [Sign::Plus; 9];
        for pos in SquarePosition::all() {
            values[pos.flat_index()] = self.cell_value(square.cell(pos));
        }
        NineValueAssignment::new(values)
    }
}

/// All 64 six-value assignments in ascending index order.
pub fn enumerate_six() -> impl Iterator<Item = SixValueAssignment> {
    (0u8..64).map(SixValueAssignment::from_index)
}

/// The gamma witness: 1 + v(R3) - v(C3) under the six-value scheme. Under
/// that scheme both line values expand to the same product of all six
/// single-qubit values, so gamma is 1 for every assignment.
pub fn gamma_of(a: &SixValueAssignment) -> i32 {
    1 + a.line_value(Line::R3).value() - a.line_value(Line::C3).value()
}

/// Negative control: gamma evaluated on hypothetical decoupled line values,
/// not derived from any assignment. Shows the gamma = 1 identity comes from
/// the product rule, not from the arithmetic form (e.g. (+1, -1) gives 3).
pub fn gamma_decoupled(v_r3: Sign, v_c3: Sign) -> i32 {
    1 + v_r3.value() - v_c3.value()
}

/// True iff every six-value assignment forces +1 on R1, R2, C1 and C2 of
/// the given square, the lines that hold in both quantum mechanics and the
/// factorized NCR scheme and therefore need no experimental test.
pub fn check_untested_lines_for(square: &PeresMerminSquare) -> bool {
    enumerate_six().all(|a| {
        [Line::R1, Line::R2, Line::C1, Line::C2]
            .iter()
            .all(|&line| a.line_value_on(square, line) == Sign::Plus)
    })
}

/// [`check_untested_lines_for`] on the canonical square.
pub fn check_untested_lines() -> bool {
    check_untested_lines_for(&PeresMerminSquare::canonical())
}

/// Which witness a scan bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Chi,
    Gamma,
}

/// Which assignment scheme a scan ran over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    NineValue,
    SixValue,
}

/// Result of one exhaustive scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct NcrBoundReport {
    pub witness: Witness,
    pub scheme: Scheme,
    pub assignments_scanned: usize,
    pub max_value: i32,
    pub min_value: i32,
    /// Number of assignments attaining `max_value`.
    pub attaining_assignments: usize,
}

/// The chi and gamma scans together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct NcrBounds {
    pub chi: NcrBoundReport,
    pub gamma: NcrBoundReport,
}

fn scan<I: Iterator<Item = i32>>(witness: Witness, scheme: Scheme, values: I) -> NcrBoundReport {
    let mut max_value = i32::MIN;
    let mut min_value = i32::MAX;
    let mut attaining = 0usize;
    let mut scanned = 0usize;
    for v in values {
        scanned += 1;
        if v > max_value {
            max_value = v;
            attaining = 1;
        } else if v == max_value {
            attaining += 1;
        }
        min_value = min_value.min(v);
    }
    NcrBoundReport {
        witness,
        scheme,
        assignments_scanned: scanned,
        max_value,
        min_value,
        attaining_assignments: attaining,
    }
}

/// Brute-force classical bounds: chi over all 512 nine-value assignments
/// and gamma over all 64 six-value assignments.
pub fn ncr_bounds() -> NcrBounds {
    NcrBounds {
        chi: scan(
            Witness::Chi,
            Scheme::NineValue,
            enumerate_nine().map(|a| chi_of(&a)),
        ),
        gamma: scan(
            Witness::Gamma,
            Scheme::SixValue,
            enumerate_six().map(|a| gamma_of(&a)),
        ),
    }
}

/// Chi scanned over the 64 nine-value assignments induced by six-value
/// assignments: the factorized product rule pins chi to exactly 4.
pub fn induced_chi_bounds() -> NcrBoundReport {
    scan(
        Witness::Chi,
        Scheme::SixValue,
        enumerate_six().map(|a| chi_of(&a.induced_nine())),
    )
}

/// Number of nine-value assignments reproducing all six quantum line signs
/// simultaneously. The parity obstruction forces this to zero.
pub fn count_satisfying_all_lines() -> usize {
    enumerate_nine()
        .filter(|a| {
            Line::ALL
                .iter()
                .all(|&line| a.line_value(line).value() == line.expected_sign() as i32)
        })
        .count()
}
