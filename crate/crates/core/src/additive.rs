//! Drazin inverses of sums `a + b` under annihilation hypotheses.
//!
//! The two main constructions ([`sum_thm22`], [`sum_thm25`]) lift the sum to
//! `N = (a; 1)(1, b)`, a `2n x 2n` matrix with `(1, b)(a; 1) = a + b`, work
//! with `M = N³` split as `G + F` (`G` nilpotent) and `F = H + K` (`HK = 0`),
//! and come back down with Cline's formula. Every intermediate is kept in a
//! [`DerivationTrace`] so the proof steps can be checked one by one.
//!
//! Two transcription fixes relative to the usual statement of these results:
//! `K^d` is computed from the factorisation `K = (0; 1)(b² + ab, b³)`, and the
//! final step multiplies `(1, b) M^d (a; 1)` by `a + b`, since that product
//! alone is `((a + b)^d)²`.

use crate::case::Case;
use crate::drazin::drazin_inverse;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::ConditionReport;

/// Labelled intermediates of a derivation, in the order they were produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DerivationTrace {
    steps: Vec<(&'static str, Matrix)>,
}

impl DerivationTrace {
    fn push(&mut self, label: &'static str, m: &Matrix) {
        self.steps.push((label, m.clone()));
    }

    pub fn get(&self, label: &str) -> Option<&Matrix> {
        self.steps.iter().find(|(l, _)| *l == label).map(|(_, m)| m)
    }

    /// Like [`get`](Self::get), panicking on an unknown label.
    pub fn expect(&self, label: &str) -> &Matrix {
        self.get(label).unwrap_or_else(|| panic!("trace has no step {label:?}"))
    }

    pub fn labels(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.steps.iter().map(|(l, _)| *l)
    }
}

/// Hypothesis words for the pair cases; each word must multiply to zero.
pub(crate) fn pair_words(case: Case) -> &'static [(&'static str, &'static str)] {
    match case {
        Case::AbZero => &[("ab=0", "ab")],
        Case::T22 => &[("aba=0", "aba"), ("bab=0", "bab"), ("a^2b^2=0", "aabb"), ("ab^3=0", "abbb")],
        Case::T22Dual => &[("aba=0", "aba"), ("bab=0", "bab"), ("a^2b^2=0", "aabb"), ("a^3b=0", "aaab")],
        Case::C23 => &[("a^2b=0", "aab"), ("ab^2=0", "abb")],
        Case::L24 => &[("aba=0", "aba"), ("ab^2=0", "abb")],
        Case::T25 => &[("ab^2=0", "abb"), ("a^2ba=0", "aaba"), ("(ba)^2=0", "baba")],
        Case::T25Dual => &[("a^2b=0", "aab"), ("aba^2=0", "abaa"), ("(ba)^2=0", "baba")],
        _ => &[],
    }
}

fn word(a: &Matrix, b: &Matrix, letters: &str) -> Matrix {
    let factors: Vec<&Matrix> = letters
        .chars()
        .map(|c| match c {
            'a' => a,
            'b' => b,
            _ => unreachable!("word letters are a and b"),
        })
        .collect();
    Matrix::product(&factors)
}

fn require_pair(a: &Matrix, b: &Matrix, op: &'static str) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { op, rows: a.rows(), cols: a.cols() });
    }
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { op, left: a.shape(), right: b.shape() });
    }
    Ok(())
}

/// Evaluates the hypotheses of a pair case. Non-pair cases give an empty report.
pub fn check_pair(case: Case, a: &Matrix, b: &Matrix) -> Result<ConditionReport> {
    require_pair(a, b, "check_pair")?;
    let mut report = ConditionReport::new(case.id());
    for (name, letters) in pair_words(case) {
        report.require_zero(*name, word(a, b, letters));
    }
    Ok(report)
}

fn hypotheses(case: Case, a: &Matrix, b: &Matrix) -> Result<()> {
    check_pair(case, a, b)?.into_hypothesis()
}

/// The `ab = 0` series with given Drazin inverses, keeping at most `terms`
/// terms of each sum. Terms stop early once a running factor vanishes, after
/// which every later term is zero as well.
pub fn ab_zero_formula(a: &Matrix, a_d: &Matrix, b: &Matrix, b_d: &Matrix, terms: usize) -> Matrix {
    let n = a.rows();
    let id = Matrix::identity(n);
    let a_pi = &id - &(a * a_d);
    let b_pi = &id - &(b * b_d);

    // (1 - bb^d) Σ b^i (a^d)^{i+1}
    let mut first = Matrix::zeros(n, n);
    let mut left = b_pi;
    let mut right = a_d.clone();
    for _ in 0..terms {
        if left.is_zero() || right.is_zero() {
            break;
        }
        first = &first + &(&left * &right);
        left = &left * b;
        right = &right * a_d;
    }

    // Σ (b^d)^{i+1} a^i (1 - aa^d)
    let mut second = Matrix::zeros(n, n);
    let mut left = b_d.clone();
    let mut right = a_pi;
    for _ in 0..terms {
        if left.is_zero() || right.is_zero() {
            break;
        }
        second = &second + &(&left * &right);
        left = &left * b_d;
        right = a * &right;
    }
    &first + &second
}

/// `(a + b)^d` for `ab = 0`, with both series truncated at `n` terms.
pub fn sum_ab_zero(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    sum_ab_zero_truncated(a, b, a.rows())
}

/// [`sum_ab_zero`] with an explicit truncation length.
pub fn sum_ab_zero_truncated(a: &Matrix, b: &Matrix, terms: usize) -> Result<Matrix> {
    require_pair(a, b, "sum_ab_zero")?;
    hypotheses(Case::AbZero, a, b)?;
    let a_d = drazin_inverse(a)?;
    let b_d = drazin_inverse(b)?;
    Ok(ab_zero_formula(a, &a_d, b, &b_d, terms))
}

/// Cline's formula `(xy)^d = x ((yx)^d)² y`.
pub fn cline(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    if x.rows() != y.cols() || x.cols() != y.rows() {
        return Err(Error::DimensionMismatch { op: "cline", left: x.shape(), right: y.shape() });
    }
    let yx_d = drazin_inverse(&(y * x))?;
    Ok(Matrix::product(&[x, &yx_d, &yx_d, y]))
}

/// `s^d = (s²)^d s`.
pub fn sqrt_reduction(s: &Matrix) -> Result<Matrix> {
    if !s.is_square() {
        return Err(Error::NotSquare { op: "sqrt_reduction", rows: s.rows(), cols: s.cols() });
    }
    Ok(&drazin_inverse(&(s * s))? * s)
}

/// Which `G` the lifted matrix `M = N³` is split off with.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Lift {
    /// `aba = bab = a²b² = ab³ = 0`.
    Thm22,
    /// `ab² = a²ba = (ba)² = 0`.
    Thm25,
}

fn lifted_sum(lift: Lift, a: &Matrix, a_d: &Matrix, b: &Matrix, b_d: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    let n = a.rows();
    let id = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    let mut trace = DerivationTrace::default();
    let context = match lift {
        Lift::Thm22 => "T2.2",
        Lift::Thm25 => "T2.5",
    };

    let a2 = a * a;
    let a3 = &a2 * a;
    let b2 = b * b;
    let b3 = &b2 * b;
    let ab = a * b;
    let ba = b * a;

    let col = Matrix::vstack(&[a, &id])?;
    let row = Matrix::hstack(&[&id, b])?;
    let lift_n = &col * &row;
    let m = Matrix::product(&[&lift_n, &lift_n, &lift_n]);
    trace.push("N", &lift_n);
    trace.push("M", &m);

    let g = match lift {
        Lift::Thm22 => {
            let diag = &(&a2 * b) + &(a * &b2);
            Matrix::block2(&diag, &(&a3 * b), &zero, &diag)?
        }
        Lift::Thm25 => {
            let a2b = &a2 * b;
            let aba = &ab * a;
            let abab = &aba * b;
            Matrix::block2(&(&a2b + &aba), &(&(&a3 * b) + &abab), &zero, &(&a2b + &(&ba * b)))?
        }
    };
    let f = Matrix::block2(&a3, &zero, &(&(&(&a2 + &ab) + &ba) + &b2), &b3)?;
    let h = Matrix::block2(&a3, &zero, &(&a2 + &ba), &zero)?;
    let k = Matrix::block2(&zero, &zero, &(&b2 + &ab), &b3)?;
    trace.push("G", &g);
    trace.push("F", &f);
    trace.push("H", &h);
    trace.push("K", &k);

    let a_d6 = a_d.pow(6)?;
    let h_d = Matrix::product(&[&Matrix::vstack(&[&a2, &(a + b)])?, &a_d6, &Matrix::hstack(&[a, &zero])?]);
    let b_d6 = b_d.pow(6)?;
    let k_d = Matrix::product(&[&Matrix::vstack(&[&zero, &id])?, &b_d6, &Matrix::hstack(&[&(&b2 + &ab), &b3])?]);
    trace.push("H^d", &h_d);
    trace.push("K^d", &k_d);

    let mut obligations = ConditionReport::new(context);
    obligations.require_zero("M=G+F", &m - &(&g + &f));
    obligations.require_zero("F=H+K", &f - &(&h + &k));
    obligations.require_zero("HK=0", &h * &k);
    obligations.require_zero("G^4=0", g.pow(4)?);
    match lift {
        Lift::Thm22 => {
            obligations.require_zero("GF=0", &g * &f);
        }
        Lift::Thm25 => {
            obligations.require_zero("FGF=0", Matrix::product(&[&f, &g, &f]));
            obligations.require_zero("FG^2=0", Matrix::product(&[&f, &g, &g]));
        }
    }
    obligations.into_obligation(context)?;

    let f_d = ab_zero_formula(&h, &h_d, &k, &k_d, 2 * n + 1);
    trace.push("F^d", &f_d);

    // M^d = F^d + G(F^d)² + G²(F^d)³ + G³(F^d)⁴
    let mut m_d = f_d.clone();
    let mut g_pow = Matrix::identity(2 * n);
    let mut f_pow = f_d.clone();
    for _ in 0..3 {
        g_pow = &g_pow * &g;
        f_pow = &f_pow * &f_d;
        m_d = &m_d + &(&g_pow * &f_pow);
    }
    trace.push("M^d", &m_d);

    let square = Matrix::product(&[&row, &m_d, &col]);
    trace.push("(1,b)M^d(a;1)", &square);
    let result = &square * &(a + b);
    trace.push("(a+b)^d", &result);
    Ok((result, trace))
}

/// `(a + b)^d` under `aba = 0, bab = 0, a²b² = 0, ab³ = 0`.
pub fn sum_thm22(a: &Matrix, b: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    require_pair(a, b, "sum_thm22")?;
    hypotheses(Case::T22, a, b)?;
    lifted_sum(Lift::Thm22, a, &drazin_inverse(a)?, b, &drazin_inverse(b)?)
}

/// [`sum_thm22`] with caller-supplied `a^d`, `b^d`.
pub fn sum_thm22_with(a: &Matrix, a_d: &Matrix, b: &Matrix, b_d: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    require_pair(a, b, "sum_thm22")?;
    hypotheses(Case::T22, a, b)?;
    lifted_sum(Lift::Thm22, a, a_d, b, b_d)
}

/// Mirror of [`sum_thm22`] for `aba = bab = a²b² = a³b = 0`, by transposition:
/// `(bᵀ, aᵀ)` satisfies the hypotheses of the original exactly.
pub fn sum_thm22_dual(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    require_pair(a, b, "sum_thm22_dual")?;
    hypotheses(Case::T22Dual, a, b)?;
    let (r, _) = sum_thm22(&b.transpose(), &a.transpose())?;
    Ok(r.transpose())
}

/// `(a + b)^d` under `ab² = 0, a²ba = 0, (ba)² = 0`.
pub fn sum_thm25(a: &Matrix, b: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    require_pair(a, b, "sum_thm25")?;
    hypotheses(Case::T25, a, b)?;
    lifted_sum(Lift::Thm25, a, &drazin_inverse(a)?, b, &drazin_inverse(b)?)
}

/// [`sum_thm25`] with caller-supplied `a^d`, `b^d`.
pub fn sum_thm25_with(a: &Matrix, a_d: &Matrix, b: &Matrix, b_d: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    require_pair(a, b, "sum_thm25")?;
    hypotheses(Case::T25, a, b)?;
    lifted_sum(Lift::Thm25, a, a_d, b, b_d)
}

/// Mirror of [`sum_thm25`] for `a²b = 0, aba² = 0, (ba)² = 0`.
///
/// Transposition sends `(bᵀ, aᵀ)` to the hypotheses `a²b = 0, bab² = 0,
/// (ba)² = 0`, so `bab² = 0` is an extra proof obligation here: the stated
/// hypotheses do not imply it.
pub fn sum_thm25_dual(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    require_pair(a, b, "sum_thm25_dual")?;
    hypotheses(Case::T25Dual, a, b)?;
    let mut obligation = ConditionReport::new("T2.5-dual");
    obligation.require_zero("bab^2=0", word(a, b, "babb"));
    obligation.into_obligation("T2.5-dual")?;
    let (r, _) = sum_thm25(&b.transpose(), &a.transpose())?;
    Ok(r.transpose())
}

/// `(a + b)^d` under `a²b = 0, ab² = 0`: `(a + b)² = p + q` with
/// `p = a² + ab`, `q = ba + b²` falls under [`sum_thm22`], and
/// `(a + b)^d = ((a + b)²)^d (a + b)`.
pub fn sum_cor23(a: &Matrix, b: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    require_pair(a, b, "sum_cor23")?;
    hypotheses(Case::C23, a, b)?;
    let mut trace = DerivationTrace::default();
    let n = a.rows();
    let a_d = drazin_inverse(a)?;
    let b_d = drazin_inverse(b)?;
    let a2 = a * a;
    let b2 = b * b;
    let ab = a * b;
    let ba = b * a;
    let ab_d = drazin_inverse(&ab)?;
    let ba_d = Matrix::product(&[b, &ab_d, &ab_d, a]);

    let p = &a2 + &ab;
    let q = &ba + &b2;
    trace.push("p", &p);
    trace.push("q", &q);

    let mut obligations = ConditionReport::new("C2.3");
    obligations.require_zero("a^2(ab)=0", &a2 * &ab);
    obligations.require_zero("(ba)b^2=0", &ba * &b2);
    obligations.require_zero("pqp=0", Matrix::product(&[&p, &q, &p]));
    obligations.require_zero("qpq=0", Matrix::product(&[&q, &p, &q]));
    obligations.require_zero("p^2q^2=0", Matrix::product(&[&p, &p, &q, &q]));
    obligations.require_zero("pq^3=0", Matrix::product(&[&p, &q, &q, &q]));
    obligations.into_obligation("C2.3")?;

    let p_d = ab_zero_formula(&a2, &(&a_d * &a_d), &ab, &ab_d, n);
    let q_d = ab_zero_formula(&ba, &ba_d, &b2, &(&b_d * &b_d), n);
    trace.push("p^d", &p_d);
    trace.push("q^d", &q_d);
    let (square_d, _) = lifted_sum(Lift::Thm22, &p, &p_d, &q, &q_d)?;
    trace.push("((a+b)^2)^d", &square_d);
    let result = &square_d * &(a + b);
    trace.push("(a+b)^d", &result);
    Ok((result, trace))
}

/// `(a + b)^d` under `aba = 0, ab² = 0`: `ab` is square-zero, `p = a² + ab`
/// and `q = ba + b²` each fall under the `ab = 0` series, `pq = 0`, and
/// `(a + b)² = p + q`.
pub fn sum_lem24(a: &Matrix, b: &Matrix) -> Result<(Matrix, DerivationTrace)> {
    require_pair(a, b, "sum_lem24")?;
    hypotheses(Case::L24, a, b)?;
    let mut trace = DerivationTrace::default();
    let n = a.rows();
    let zero = Matrix::zeros(n, n);
    let a_d = drazin_inverse(a)?;
    let b_d = drazin_inverse(b)?;
    let a2 = a * a;
    let b2 = b * b;
    let ab = a * b;
    let ba = b * a;
    let p = &a2 + &ab;
    let q = &ba + &b2;
    trace.push("p", &p);
    trace.push("q", &q);

    let mut obligations = ConditionReport::new("L2.4");
    obligations.require_zero("(ab)^2=0", &ab * &ab);
    obligations.require_zero("(ab)a^2=0", &ab * &a2);
    obligations.require_zero("(ba)b^2=0", &ba * &b2);
    obligations.require_zero("pq=0", &p * &q);
    obligations.into_obligation("L2.4")?;

    // ab and ba are nilpotent, so both have zero Drazin inverse.
    let p_d = ab_zero_formula(&ab, &zero, &a2, &(&a_d * &a_d), n);
    let q_d = ab_zero_formula(&ba, &zero, &b2, &(&b_d * &b_d), n);
    trace.push("p^d", &p_d);
    trace.push("q^d", &q_d);
    let square_d = ab_zero_formula(&p, &p_d, &q, &q_d, n);
    trace.push("((a+b)^2)^d", &square_d);
    let result = &square_d * &(a + b);
    trace.push("(a+b)^d", &result);
    Ok((result, trace))
}

/// Runs the formula for a pair case.
pub fn sum_for_case(case: Case, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    match case {
        Case::AbZero => sum_ab_zero(a, b),
        Case::T22 => sum_thm22(a, b).map(|(r, _)| r),
        Case::T22Dual => sum_thm22_dual(a, b),
        Case::C23 => sum_cor23(a, b).map(|(r, _)| r),
        Case::L24 => sum_lem24(a, b).map(|(r, _)| r),
        Case::T25 => sum_thm25(a, b).map(|(r, _)| r),
        Case::T25Dual => sum_thm25_dual(a, b),
        other => Err(Error::WrongInstance { case: other.id().to_string(), kind: "pair" }),
    }
}
