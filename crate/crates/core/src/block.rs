//! Drazin inverses of 2x2 block matrices `M = (A B; C D)`.
//!
//! Each case splits `M = p + q` so that `pq² = 0`, `p²qp = 0` and
//! `(qp)² = 0`, computes `p^d` and `q^d` from smaller pieces, and hands the
//! pair to [`sum_thm25_with`]. The splittings, condition lists and the way the
//! pieces are inverted live in one table keyed by [`Case`].

use serde::{Deserialize, Serialize};

use crate::additive::sum_thm25_with;
use crate::case::{Case, Family};
use crate::drazin::{drazin_inverse, verify_axioms};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::ConditionReport;

/// The blocks `A` (n×n), `B` (n×m), `C` (m×n), `D` (m×m).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlockDoc", into = "BlockDoc")]
pub struct BlockSpec {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    #[serde(rename = "A")]
    a: Matrix,
    #[serde(rename = "B")]
    b: Matrix,
    #[serde(rename = "C")]
    c: Matrix,
    #[serde(rename = "D")]
    d: Matrix,
}

impl TryFrom<BlockDoc> for BlockSpec {
    type Error = Error;

    fn try_from(doc: BlockDoc) -> Result<Self> {
        BlockSpec::new(doc.a, doc.b, doc.c, doc.d)
    }
}

impl From<BlockSpec> for BlockDoc {
    fn from(s: BlockSpec) -> Self {
        BlockDoc { a: s.a, b: s.b, c: s.c, d: s.d }
    }
}

impl BlockSpec {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<Self> {
        let (n, m) = (a.rows(), d.rows());
        if !a.is_square() {
            return Err(Error::NotSquare { op: "BlockSpec", rows: a.rows(), cols: a.cols() });
        }
        if !d.is_square() {
            return Err(Error::NotSquare { op: "BlockSpec", rows: d.rows(), cols: d.cols() });
        }
        if b.shape() != (n, m) {
            return Err(Error::DimensionMismatch { op: "BlockSpec B", left: (n, m), right: b.shape() });
        }
        if c.shape() != (m, n) {
            return Err(Error::DimensionMismatch { op: "BlockSpec C", left: (m, n), right: c.shape() });
        }
        Ok(BlockSpec { a, b, c, d })
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        BlockSpec { a: Matrix::zeros(n, n), b: Matrix::zeros(n, m), c: Matrix::zeros(m, n), d: Matrix::zeros(m, m) }
    }

    /// Size of `A`.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Size of `D`.
    pub fn m(&self) -> usize {
        self.d.rows()
    }

    /// The assembled `(n + m) x (n + m)` matrix.
    pub fn assemble(&self) -> Matrix {
        Matrix::block2(&self.a, &self.b, &self.c, &self.d).expect("BlockSpec blocks are conformable")
    }

    /// Cuts a square matrix into blocks with `A` of size `n`.
    pub fn extract(m: &Matrix, n: usize) -> Result<BlockSpec> {
        if !m.is_square() {
            return Err(Error::NotSquare { op: "BlockSpec::extract", rows: m.rows(), cols: m.cols() });
        }
        let total = m.rows();
        if n > total {
            return Err(Error::DimensionMismatch { op: "BlockSpec::extract", left: (n, n), right: m.shape() });
        }
        let k = total - n;
        Ok(BlockSpec {
            a: m.submatrix(0, 0, n, n),
            b: m.submatrix(0, n, n, k),
            c: m.submatrix(n, 0, k, n),
            d: m.submatrix(n, n, k, k),
        })
    }

    /// The product of the blocks named by `letters`, e.g. `"CBCA"`.
    pub fn word(&self, letters: &str) -> Matrix {
        let factors: Vec<&Matrix> = letters
            .chars()
            .map(|c| match c {
                'A' => &self.a,
                'B' => &self.b,
                'C' => &self.c,
                'D' => &self.d,
                _ => panic!("block word letters are A, B, C, D; got {c:?}"),
            })
            .collect();
        Matrix::product(&factors)
    }
}

/// How a case splits `M` into `p + q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Split {
    /// `p = (A B; 0 D)`, `q = (0 0; C 0)`.
    UpperTriangular,
    /// `p = (A 0; C D)`, `q = (0 B; 0 0)`.
    LowerTriangular,
    /// `A = D = 0`: `p = (0 B; 0 0)`, `q = (0 0; C 0)`.
    AntiDiagonal,
    /// `D = 0`: `p = (A 0; 0 0)`, `q = (0 B; C 0)`.
    CornerA,
    /// `A = 0`: `p = (0 0; 0 D)`, `q = (0 B; C 0)`.
    CornerD,
    /// `p = (0 0; 0 D)`, `q = (A B; C 0)` inverted as a [`Split::CornerA`] case.
    DiagonalD,
    /// `p = (A 0; 0 0)`, `q = (0 B; C D)` inverted as a [`Split::CornerD`] case.
    DiagonalA,
}

struct CaseRow {
    words: &'static [(&'static str, &'static str)],
    split: Split,
}

fn row(case: Case) -> Option<CaseRow> {
    let (words, split): (&'static [(&'static str, &'static str)], Split) = match case {
        Case::T31 => (
            &[("ABC=0", "ABC"), ("DCA=0", "DCA"), ("DCB=0", "DCB"), ("CBCA=0", "CBCA"), ("CBCB=0", "CBCB")],
            Split::UpperTriangular,
        ),
        Case::C32 => (&[("BC=0", "BC"), ("DC=0", "DC")], Split::UpperTriangular),
        Case::T33 => (
            &[("ABC=0", "ABC"), ("ABD=0", "ABD"), ("DCB=0", "DCB"), ("BCBC=0", "BCBC"), ("BCBD=0", "BCBD")],
            Split::LowerTriangular,
        ),
        Case::C34 => (&[("ABC=0", "ABC"), ("ABD=0", "ABD"), ("BCB=0", "BCB"), ("DCB=0", "DCB")], Split::LowerTriangular),
        Case::L36 => (&[("A=0", "A"), ("D=0", "D"), ("CBCB=0", "CBCB")], Split::AntiDiagonal),
        Case::L37 => (&[("D=0", "D"), ("ABC=0", "ABC"), ("CBCB=0", "CBCB")], Split::CornerA),
        Case::T38 => (&[("ABC=0", "ABC"), ("DCA=0", "DCA"), ("DCB=0", "DCB"), ("CBCB=0", "CBCB")], Split::DiagonalD),
        Case::C39 => (&[("ABC=0", "ABC"), ("CBC=0", "CBC"), ("DCA=0", "DCA"), ("DCB=0", "DCB")], Split::DiagonalD),
        Case::L310 => (&[("A=0", "A"), ("DCB=0", "DCB"), ("CBCB=0", "CBCB")], Split::CornerD),
        Case::T311 => (&[("ABC=0", "ABC"), ("ABD=0", "ABD"), ("DCB=0", "DCB"), ("CBCB=0", "CBCB")], Split::DiagonalA),
        Case::C312 => (&[("ABC=0", "ABC"), ("ABD=0", "ABD"), ("BCB=0", "BCB"), ("DCB=0", "DCB")], Split::DiagonalA),
        _ => return None,
    };
    Some(CaseRow { words, split })
}

fn block_row(case: Case) -> Result<CaseRow> {
    row(case).ok_or_else(|| Error::WrongInstance { case: case.id().to_string(), kind: "block" })
}

/// The block words of a case's hypotheses as `(name, word)` pairs.
pub fn case_words(case: Case) -> &'static [(&'static str, &'static str)] {
    row(case).map_or(&[], |r| r.words)
}

/// Evaluates a block case's hypotheses. The lemma cases also list the block
/// they require to vanish (`A = 0` and/or `D = 0`).
pub fn check_case(case: Case, s: &BlockSpec) -> Result<ConditionReport> {
    let row = block_row(case)?;
    let mut report = ConditionReport::new(case.id());
    for (name, letters) in row.words {
        report.require_zero(*name, s.word(letters));
    }
    Ok(report)
}

/// `(A B; 0 D)^d = (A^d S; 0 D^d)` with
/// `S = Σ (A^d)^{i+2} B D^i D^π + Σ A^π A^i B (D^d)^{i+2} - A^d B D^d`,
/// both sums over `i = 0..=n+m`. The result is checked against the axioms.
pub fn upper_triangular_drazin(a: &Matrix, b: &Matrix, d: &Matrix) -> Result<Matrix> {
    let spec = BlockSpec::new(a.clone(), b.clone(), Matrix::zeros(d.rows(), a.rows()), d.clone())?;
    let a_d = drazin_inverse(a)?;
    let d_d = drazin_inverse(d)?;
    let p = spec.assemble();
    let result = triangular_with(a, &a_d, b, d, &d_d);
    let report = verify_axioms(&p, &result)?;
    if let Some(failed) = report.first_failure() {
        return Err(Error::OracleIntegrity(format!("triangular block inverse violates {}", failed.name)));
    }
    Ok(result)
}

/// `(A 0; C D)^d`, by transposing [`upper_triangular_drazin`].
pub fn lower_triangular_drazin(a: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
    Ok(upper_triangular_drazin(&a.transpose(), &c.transpose(), &d.transpose())?.transpose())
}

fn triangular_with(a: &Matrix, a_d: &Matrix, b: &Matrix, d: &Matrix, d_d: &Matrix) -> Matrix {
    let (n, m) = (a.rows(), d.rows());
    let terms = n + m + 1;
    let a_pi = &Matrix::identity(n) - &(a * a_d);
    let d_pi = &Matrix::identity(m) - &(d * d_d);

    let mut s = -&Matrix::product(&[a_d, b, d_d]);
    let mut left = a_d * a_d;
    let mut right = d_pi;
    for _ in 0..terms {
        if left.is_zero() || right.is_zero() {
            break;
        }
        s = &s + &Matrix::product(&[&left, b, &right]);
        left = &left * a_d;
        right = d * &right;
    }
    let mut left = a_pi;
    let mut right = d_d * d_d;
    for _ in 0..terms {
        if left.is_zero() || right.is_zero() {
            break;
        }
        s = &s + &Matrix::product(&[&left, b, &right]);
        left = &left * a;
        right = &right * d_d;
    }
    Matrix::block2(a_d, &s, &Matrix::zeros(m, n), d_d).expect("blocks are conformable")
}

/// `(0 B; C 0)^d` under `CBCB = 0`, split as `(0 B; 0 0) + (0 0; C 0)`.
pub fn antidiag_drazin(b: &Matrix, c: &Matrix) -> Result<Matrix> {
    let (n, m) = (b.rows(), b.cols());
    let s = BlockSpec::new(Matrix::zeros(n, n), b.clone(), c.clone(), Matrix::zeros(m, m))?;
    gdrazin_block(Case::L36, &s)
}

/// The pair `(p, q)` with their Drazin inverses for a split.
struct Pieces {
    p: Matrix,
    p_d: Matrix,
    q: Matrix,
    q_d: Matrix,
}

fn zero_blocks(n: usize, m: usize) -> (Matrix, Matrix, Matrix, Matrix) {
    (Matrix::zeros(n, n), Matrix::zeros(n, m), Matrix::zeros(m, n), Matrix::zeros(m, m))
}

fn assemble(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    Matrix::block2(a, b, c, d).expect("blocks are conformable")
}

// A sub-case inside a proof must hold by the outer hypotheses; if it does not,
// that is a failed proof step rather than bad input.
fn sub_case(outer: Case, inner: Case, s: &BlockSpec) -> Result<Matrix> {
    gdrazin_block(inner, s).map_err(|e| match e {
        Error::HypothesisViolation { condition, residual } => Error::ProofObligation {
            context: outer.id().to_string(),
            obligation: format!("{inner} {condition}"),
            residual,
        },
        other => other,
    })
}

fn pieces(case: Case, split: Split, s: &BlockSpec) -> Result<Pieces> {
    let (n, m) = (s.n(), s.m());
    let (z_nn, z_nm, z_mn, z_mm) = zero_blocks(n, m);
    let zero = Matrix::zeros(n + m, n + m);
    Ok(match split {
        Split::UpperTriangular => Pieces {
            p: assemble(&s.a, &s.b, &z_mn, &s.d),
            p_d: upper_triangular_drazin(&s.a, &s.b, &s.d)?,
            q: assemble(&z_nn, &z_nm, &s.c, &z_mm),
            q_d: zero,
        },
        Split::LowerTriangular => Pieces {
            p: assemble(&s.a, &z_nm, &s.c, &s.d),
            p_d: lower_triangular_drazin(&s.a, &s.c, &s.d)?,
            q: assemble(&z_nn, &s.b, &z_mn, &z_mm),
            q_d: zero,
        },
        Split::AntiDiagonal => Pieces {
            p: assemble(&z_nn, &s.b, &z_mn, &z_mm),
            p_d: zero.clone(),
            q: assemble(&z_nn, &z_nm, &s.c, &z_mm),
            q_d: zero,
        },
        Split::CornerA => Pieces {
            p: assemble(&s.a, &z_nm, &z_mn, &z_mm),
            p_d: Matrix::direct_sum(&drazin_inverse(&s.a)?, &z_mm),
            q: assemble(&z_nn, &s.b, &s.c, &z_mm),
            q_d: sub_case(case, Case::L36, &BlockSpec::new(z_nn, s.b.clone(), s.c.clone(), z_mm)?)?,
        },
        Split::CornerD => Pieces {
            p: assemble(&z_nn, &z_nm, &z_mn, &s.d),
            p_d: Matrix::direct_sum(&z_nn, &drazin_inverse(&s.d)?),
            q: assemble(&z_nn, &s.b, &s.c, &z_mm),
            q_d: sub_case(case, Case::L36, &BlockSpec::new(z_nn, s.b.clone(), s.c.clone(), z_mm)?)?,
        },
        Split::DiagonalD => Pieces {
            p: assemble(&z_nn, &z_nm, &z_mn, &s.d),
            p_d: Matrix::direct_sum(&z_nn, &drazin_inverse(&s.d)?),
            q: assemble(&s.a, &s.b, &s.c, &z_mm),
            q_d: sub_case(case, Case::L37, &BlockSpec::new(s.a.clone(), s.b.clone(), s.c.clone(), z_mm)?)?,
        },
        Split::DiagonalA => Pieces {
            p: assemble(&s.a, &z_nm, &z_mn, &z_mm),
            p_d: Matrix::direct_sum(&drazin_inverse(&s.a)?, &z_mm),
            q: assemble(&z_nn, &s.b, &s.c, &s.d),
            q_d: sub_case(case, Case::L310, &BlockSpec::new(z_nn, s.b.clone(), s.c.clone(), s.d.clone())?)?,
        },
    })
}

/// The split of `M` used by a case, with the three conditions the sum
/// formula needs evaluated on it.
pub fn split_obligations(case: Case, s: &BlockSpec) -> Result<(Matrix, Matrix, ConditionReport)> {
    let row = block_row(case)?;
    let pieces = pieces(case, row.split, s)?;
    let report = obligations(case, &pieces.p, &pieces.q);
    Ok((pieces.p, pieces.q, report))
}

fn obligations(case: Case, p: &Matrix, q: &Matrix) -> ConditionReport {
    let mut report = ConditionReport::new(case.id());
    report.require_zero("pq^2=0", Matrix::product(&[p, q, q]));
    report.require_zero("p^2qp=0", Matrix::product(&[p, p, q, p]));
    let qp = q * p;
    report.require_zero("(qp)^2=0", &qp * &qp);
    report
}

/// `M^d` through the case's split, with the split's proof conditions.
pub fn gdrazin_block_traced(case: Case, s: &BlockSpec) -> Result<(Matrix, ConditionReport)> {
    check_case(case, s)?.into_hypothesis()?;
    let row = block_row(case)?;
    let pieces = pieces(case, row.split, s)?;
    let report = obligations(case, &pieces.p, &pieces.q);
    report.clone().into_obligation(case.id())?;
    let (result, _) = sum_thm25_with(&pieces.p, &pieces.p_d, &pieces.q, &pieces.q_d).map_err(|e| match e {
        Error::HypothesisViolation { condition, residual } => {
            Error::ProofObligation { context: case.id().to_string(), obligation: condition, residual }
        }
        other => other,
    })?;
    Ok((result, report))
}

/// `M^d` for `M = (A B; C D)` under the hypotheses of a block case.
pub fn gdrazin_block(case: Case, s: &BlockSpec) -> Result<Matrix> {
    if case.family() != Family::Block {
        return Err(Error::WrongInstance { case: case.id().to_string(), kind: "block" });
    }
    gdrazin_block_traced(case, s).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drazin::drazin_inverse;
    use crate::fixtures;

    fn m<const C: usize>(rows: &[[i64; C]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    #[test]
    fn example_3_5_conditions() {
        let s = fixtures::example_3_5();
        assert_eq!(
            s.assemble(),
            m(&[[0, 0, 0, 1], [0, 0, 0, 1], [1, 0, 1, -1], [1, 0, 1, 0]])
        );
        let report = check_case(Case::C34, &s).unwrap();
        assert_eq!(report.conditions.len(), 4);
        assert!(report.all_hold());
        // The printed blocks give AB = 0 and CB = 0, so the example does not
        // separate the case from the AB = CB = 0 one.
        assert!(s.word("AB").is_zero());
        assert!(s.word("CB").is_zero());

        let r = gdrazin_block(Case::C34, &s).unwrap();
        assert_eq!(r, drazin_inverse(&s.assemble()).unwrap());
    }

    #[test]
    fn example_3_5_fails_bc_zero() {
        let report = check_case(Case::C32, &fixtures::example_3_5()).unwrap();
        let bc = report.get("BC=0").unwrap();
        assert!(!bc.holds);
        assert_eq!(bc.residual.shape(), (3, 3));
    }

    #[test]
    fn zero_blocks_pass_every_case() {
        let s = BlockSpec::zeros(2, 2);
        for case in Case::BLOCK {
            assert!(check_case(case, &s).unwrap().all_hold(), "{case}");
            assert!(gdrazin_block(case, &s).unwrap().is_zero(), "{case}");
        }
    }

    #[test]
    fn triangular_matches_oracle() {
        let a = m(&[[1, 1], [0, 0]]);
        let b = m(&[[1], [2]]);
        let d = m(&[[0]]);
        let p = Matrix::block2(&a, &b, &Matrix::zeros(1, 2), &d).unwrap();
        assert_eq!(upper_triangular_drazin(&a, &b, &d).unwrap(), drazin_inverse(&p).unwrap());

        let a = m(&[[0, 1, 0], [0, 0, 0], [0, 0, 2]]);
        let c = m(&[[1, -1, 1], [0, 1, 1]]);
        let d = m(&[[1, 1], [0, 1]]);
        let p = Matrix::block2(&a, &Matrix::zeros(3, 2), &c, &d).unwrap();
        assert_eq!(lower_triangular_drazin(&a, &c, &d).unwrap(), drazin_inverse(&p).unwrap());
    }

    #[test]
    fn antidiagonal() {
        let b = m(&[[1], [0]]);
        let c = m(&[[0, 1]]);
        let r = antidiag_drazin(&b, &c).unwrap();
        let full = m(&[[0, 0, 1], [0, 0, 0], [0, 1, 0]]);
        assert_eq!(r, drazin_inverse(&full).unwrap());
        assert!(antidiag_drazin(&Matrix::zeros(2, 1), &c).unwrap().is_zero());
        assert!(antidiag_drazin(&b, &Matrix::zeros(1, 2)).unwrap().is_zero());
    }

    // With p = (0 0; C 0) and q = (0 B; 0 0) this instance has (qp)² = (BC)²
    // nonzero; the split (0 B; 0 0) + (0 0; C 0) needs only (CB)² = 0.
    #[test]
    fn antidiagonal_split_order() {
        let b = m(&[[1, 0], [0, 0], [0, 1]]);
        let c = m(&[[0, -1, 0], [-1, 0, 0]]);
        let s = BlockSpec::new(Matrix::zeros(3, 3), b.clone(), c.clone(), Matrix::zeros(2, 2)).unwrap();
        assert!(check_case(Case::L36, &s).unwrap().all_hold());
        let bc = &b * &c;
        assert!(!(&bc * &bc).is_zero());
        let (_, _, report) = split_obligations(Case::L36, &s).unwrap();
        assert!(report.all_hold());
        assert_eq!(antidiag_drazin(&b, &c).unwrap(), drazin_inverse(&s.assemble()).unwrap());
    }

    #[test]
    fn violation_names_condition() {
        let s = BlockSpec::new(m(&[[1]]), m(&[[1]]), m(&[[1]]), m(&[[0]])).unwrap();
        match gdrazin_block(Case::T31, &s) {
            Err(Error::HypothesisViolation { condition, .. }) => assert_eq!(condition, "ABC=0"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(gdrazin_block(Case::T22, &s), Err(Error::WrongInstance { .. })));
    }

    #[test]
    fn json_shape() {
        let s = fixtures::example_3_5();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with("{\"A\":"));
        let back: BlockSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = text.replace("\"D\":{\"rows\":1,\"cols\":1", "\"D\":{\"rows\":1,\"cols\":1,\"x\":0");
        assert!(serde_json::from_str::<BlockSpec>(&bad).is_err());
        let wrong = r#"{"A":{"rows":1,"cols":1,"entries":[["1"]]},"B":{"rows":1,"cols":1,"entries":[["1"]]},"C":{"rows":1,"cols":2,"entries":[["1","1"]]},"D":{"rows":1,"cols":1,"entries":[["1"]]}}"#;
        assert!(serde_json::from_str::<BlockSpec>(wrong).is_err());
    }
}
