//! Eigenvalues of 4x4 Hermitian matrices by cyclic Jacobi rotations.
//!
//! Used for the positive-semidefiniteness check on density matrices. The
//! input is Hermitized first, so the result is the spectrum of the Hermitian
//! part `(A + A^dag)/2`.

use num_complex::Complex64;

use crate::operator_algebra::ComplexMatrix4;

const OFF_DIAG_TOL: f64 = 1e-28;
const MAX_SWEEPS: usize = 50;

/// Eigenvalues of the Hermitian part of `m`, sorted ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix4) -> [f64; 4] {
    // Hermitize; for a valid density matrix this changes entries by at most
    // the caller's Hermiticity tolerance.
    let mut a = m.adjoint();
    for i in 0..4 {
        for j in 0..4 {
            let sym = (a.get(i, j) + m.get(i, j)) * Complex64::new(0.5, 0.0);
            a.set(i, j, sym);
        }
    }

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(&a) < OFF_DIAG_TOL {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut eigs = [0.0f64; 4];
    for (i, e) in eigs.iter_mut().enumerate() {
        *e = a.get(i, i).re;
    }
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    eigs
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_hermitian_eigenvalue(m: &ComplexMatrix4) -> f64 {
    hermitian_eigenvalues(m)[0]
}

fn off_diagonal_sq(a: &ComplexMatrix4) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum
}

/// Zero the (p, q) entry with a unitary plane rotation, A <- R^dag A R.
///
/// The complex pivot a_pq = beta * e^{i phi} is first made real by a phase
/// on column q; the remaining real 2x2 block is zeroed by the classic
/// Jacobi angle with tan(2 theta) = 2 beta / (a_pp - a_qq).
fn rotate(a: &mut ComplexMatrix4, p: usize, q: usize) {
    let apq = a.get(p, q);
    let beta = apq.norm();
    if beta == 0.0 {
        return;
    }
    let phase = apq / Complex64::new(beta, 0.0);
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    let tau = (app - aqq) / (2.0 * beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // R differs from identity only in rows/columns p, q:
    //   R[p][p] = c            R[p][q] = -s
    //   R[q][p] = s * e^{-i phi}   R[q][q] = c * e^{-i phi}
    let mut r = ComplexMatrix4::identity();
    let phase_conj = phase.conj();
    r.set(p, p, Complex64::new(c, 0.0));
    r.set(p, q, Complex64::new(-s, 0.0));
    r.set(q, p, phase_conj * Complex64::new(s, 0.0));
    r.set(q, q, phase_conj * Complex64::new(c, 0.0));

    *a = r.adjoint().matmul(a).matmul(&r);
}
