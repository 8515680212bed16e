//! Ground-truth Drazin inverse through the core-nilpotent decomposition.
//!
//! In finite dimension the generalized Drazin inverse is the Drazin inverse:
//! the unique `X` with `XAX = X`, `AX = XA` and `A - A²X` nilpotent. Every
//! formula elsewhere in the crate is checked against [`drazin`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::ConditionReport;

/// Drazin inverse, index and spectral idempotent `I - AA^d` of a square matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrazinTriple {
    pub inverse: Matrix,
    pub index: usize,
    pub idempotent: Matrix,
}

fn require_square(a: &Matrix, op: &'static str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare { op, rows: a.rows(), cols: a.cols() })
    }
}

/// Least `k` with `rank(A^k) = rank(A^{k+1})`.
pub fn index(a: &Matrix) -> Result<usize> {
    require_square(a, "index")?;
    let n = a.rows();
    let mut power = Matrix::identity(n);
    let mut rank = n;
    for k in 0..=n {
        let next = &power * a;
        let next_rank = next.rank();
        if next_rank == rank {
            return Ok(k);
        }
        power = next;
        rank = next_rank;
    }
    Err(Error::OracleIntegrity(format!("rank sequence of a {n}x{n} matrix did not stabilise")))
}

/// `A^n = 0` for an `n x n` matrix. Non-square input is never nilpotent.
pub fn is_nilpotent(a: &Matrix) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.rows();
    let mut p = a.clone();
    let mut exp = 1;
    // A^m = 0 for some m >= n iff A^n = 0, so squaring until m >= n suffices.
    while exp < n {
        if p.is_zero() {
            return true;
        }
        p = &p * &p;
        exp *= 2;
    }
    p.is_zero()
}

/// Checks the three Drazin axioms for the candidate `x`.
pub fn verify_axioms(a: &Matrix, x: &Matrix) -> Result<ConditionReport> {
    require_square(a, "verify_axioms")?;
    if a.shape() != x.shape() {
        return Err(Error::DimensionMismatch { op: "verify_axioms", left: a.shape(), right: x.shape() });
    }
    let ax = a * x;
    let xa = x * a;
    let defect = a - &(a * &ax);
    let mut report = ConditionReport::new("drazin-axioms");
    report.require_zero("XAX=X", &(x * &ax) - x);
    report.require_zero("AX=XA", &ax - &xa);
    let n = a.rows();
    report.require_zero("A-A^2X nilpotent", defect.pow(n as u32)?);
    Ok(report)
}

/// Drazin inverse by core-nilpotent decomposition. With `k = max(index, 1)`,
/// `P = [basis of range(A^k) | basis of null(A^k)]` block-diagonalises `A`
/// into an invertible core and a nilpotent part; the inverse is
/// `P diag(core⁻¹, 0) P⁻¹`. The axioms are re-checked before returning.
pub fn drazin(a: &Matrix) -> Result<DrazinTriple> {
    require_square(a, "drazin")?;
    let n = a.rows();
    let k = index(a)?;
    // k >= 1 keeps one code path; invertible input gets a 0x0 nilpotent block.
    let ak = a.pow(k.max(1) as u32)?;
    let range = ak.column_space_basis();
    let kernel = ak.null_space_basis();
    let r = range.cols();
    let p = Matrix::hstack(&[&range, &kernel])?;
    let p_inv = p.inverse().map_err(|_| {
        Error::OracleIntegrity("range and null space of A^k do not span the space".into())
    })?;
    let t = Matrix::product(&[&p_inv, a, &p]);
    let off_diagonal_zero = t.submatrix(0, r, r, n - r).is_zero() && t.submatrix(r, 0, n - r, r).is_zero();
    if !off_diagonal_zero {
        return Err(Error::OracleIntegrity("core-nilpotent split is not block diagonal".into()));
    }
    let core_inv = t.submatrix(0, 0, r, r).inverse().map_err(|_| Error::OracleIntegrity("core block is singular".into()))?;
    let inverse = Matrix::product(&[&p, &Matrix::direct_sum(&core_inv, &Matrix::zeros(n - r, n - r)), &p_inv]);

    let report = verify_axioms(a, &inverse)?;
    if let Some(failed) = report.first_failure() {
        return Err(Error::OracleIntegrity(format!("computed inverse violates {}", failed.name)));
    }
    let idempotent = &Matrix::identity(n) - &(a * &inverse);
    Ok(DrazinTriple { inverse, index: k, idempotent })
}

/// Shorthand for `drazin(a)?.inverse`.
pub fn drazin_inverse(a: &Matrix) -> Result<Matrix> {
    Ok(drazin(a)?.inverse)
}
