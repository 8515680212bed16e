//! Oracle comparison runs over generated instances, and the self-test.

use std::time::Instant;

use serde::Serialize;

use crate::additive::{cline, sqrt_reduction, sum_for_case};
use crate::block::{check_case, gdrazin_block, BlockSpec};
use crate::case::{Case, Family};
use crate::drazin::{drazin, drazin_inverse, verify_axioms};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::generate::{generate, random_matrix, GenRecipe, Instance, InstanceBundle, SplitMix64};
use crate::matrix::Matrix;
use crate::perturbation::{check_pert_with_d, gdrazin_pert, SchurSpec};
use crate::scalar::GaussianRational;

/// The matrix whose Drazin inverse a case computes for this instance.
pub fn target_matrix(inst: &Instance) -> Result<Matrix> {
    match inst {
        Instance::Pair(p) => p.a.try_add(&p.b),
        Instance::Factors(f) => f.x.try_mul(&f.y),
        Instance::Square(s) => Ok(s.s.clone()),
        Instance::Block(b) => Ok(b.assemble()),
        Instance::Schur(s) => s.assemble(),
    }
}

/// Runs the case's own formula on an instance.
pub fn run_formula(case: Case, inst: &Instance) -> Result<Matrix> {
    let wrong = || Error::WrongInstance { case: case.id().to_string(), kind: family_name(inst.family()) };
    match (case.family(), inst) {
        (Family::Pair, Instance::Pair(p)) => sum_for_case(case, &p.a, &p.b),
        (Family::Factors, Instance::Factors(f)) => cline(&f.x, &f.y),
        (Family::Square, Instance::Square(s)) => sqrt_reduction(&s.s),
        (Family::Block, Instance::Block(b)) => gdrazin_block(case, b),
        (Family::Schur, Instance::Schur(s)) => gdrazin_pert(case, s),
        _ => Err(wrong()),
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Pair => "pair",
        Family::Factors => "factor",
        Family::Square => "square",
        Family::Block => "block",
        Family::Schur => "Schur",
    }
}

/// How one instance fared.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// Formula result equals the oracle and passes the axioms.
    Match,
    Mismatch { formula: Matrix, oracle: Matrix },
    Failed(String),
}

/// Compares the case's formula with the oracle on one instance.
pub fn check_instance(case: Case, inst: &Instance) -> Outcome {
    let target = match target_matrix(inst) {
        Ok(t) => t,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let formula = match run_formula(case, inst) {
        Ok(r) => r,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let oracle = match drazin_inverse(&target) {
        Ok(r) => r,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let axioms = verify_axioms(&target, &formula).map(|r| r.all_hold()).unwrap_or(false);
    if formula == oracle && axioms {
        Outcome::Match
    } else {
        Outcome::Mismatch { formula, oracle }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceBundle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Matrix>,
}

/// Counts for one case. Generator exhaustion is kept apart from failures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    pub exhausted: usize,
    pub failures: Vec<Failure>,
}

impl CaseResult {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.exhausted == 0
    }
}

/// Generates `count` instances with seeds `seed, seed + 1, ...` and compares
/// each against the oracle.
pub fn verify_case(case: Case, count: usize, seed: u64) -> CaseResult {
    verify_recipes(case, seed, (0..count as u64).map(|i| GenRecipe::new(case, seed.wrapping_add(i))))
}

/// [`verify_case`] over explicit recipes, reported under `seed`.
pub fn verify_recipes(case: Case, seed: u64, recipes: impl IntoIterator<Item = GenRecipe>) -> CaseResult {
    let mut result = CaseResult { case: case.id().to_string(), seed, count: 0, passed: 0, failed: 0, exhausted: 0, failures: Vec::new() };
    for recipe in recipes {
        result.count += 1;
        let inst = match generate(&recipe) {
            Ok(inst) => inst,
            Err(e) => {
                result.exhausted += 1;
                result.failures.push(Failure { seed: recipe.seed, reason: e.to_string(), instance: None, formula: None, oracle: None });
                continue;
            }
        };
        let bundle = || Some(InstanceBundle::new(case, recipe.seed, inst.clone()));
        match check_instance(case, &inst) {
            Outcome::Match => result.passed += 1,
            Outcome::Mismatch { formula, oracle } => {
                result.failed += 1;
                result.failures.push(Failure {
                    seed: recipe.seed,
                    reason: "formula differs from oracle".into(),
                    instance: bundle(),
                    formula: Some(formula),
                    oracle: Some(oracle),
                });
            }
            Outcome::Failed(reason) => {
                result.failed += 1;
                result.failures.push(Failure { seed: recipe.seed, reason, instance: bundle(), formula: None, oracle: None });
            }
        }
    }
    result.failures.sort_by_key(|f| f.seed);
    result
}

/// One named check of the self-test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRow {
    fn new(name: impl Into<String>, outcome: std::result::Result<(), String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        CheckRow { name: name.into(), passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<CheckRow>,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
    pub duration_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>, checks: Vec<CheckRow>, cases: Vec<CaseResult>, started: Instant) -> Self {
        let passed = checks.iter().all(|c| c.passed) && cases.iter().all(CaseResult::ok);
        RunReport { command: command.into(), checks, cases, passed, duration_ms: started.elapsed().as_millis() }
    }
}

/// The two worked examples as the self-test sees them.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixtures {
    pub example_3_5: BlockSpec,
    pub example_4_3: SchurSpec,
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures { example_3_5: fixtures::example_3_5(), example_4_3: fixtures::example_4_3() }
    }
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn fixture_checks(f: &Fixtures) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let s = &f.example_3_5;
    rows.push(CheckRow::new(
        "Example 3.5: C3.4 conditions",
        check_case(Case::C34, s).map_err(|e| e.to_string()).and_then(|r| {
            expect(r.all_hold(), || format!("{} fails", r.first_failure().map_or("", |c| c.name.as_str())))
        }),
    ));
    // As printed, AB and CB are both zero; the row pins that.
    rows.push(CheckRow::new(
        "Example 3.5: AB = 0 and CB = 0",
        expect(s.word("AB").is_zero() && s.word("CB").is_zero(), || "AB or CB is nonzero".into()),
    ));
    rows.push(CheckRow::new("Example 3.5: C3.4 inverse equals oracle", oracle_row(Case::C34, &Instance::Block(s.clone()))));

    let s = &f.example_4_3;
    rows.push(CheckRow::new(
        "Example 4.3: printed A^d and A^pi",
        drazin(&s.a).map_err(|e| e.to_string()).and_then(|t| {
            expect(t.inverse == fixtures::example_4_3_a_d() && t.idempotent == fixtures::example_4_3_a_pi(), || {
                format!("A^d = {:?}, A^pi = {:?}", t.inverse, t.idempotent)
            })
        }),
    ));
    rows.push(CheckRow::new(
        "Example 4.3: T4.1 conditions",
        check_pert_with_d(Case::T41, s, Some(&fixtures::example_4_3_d()))
            .map_err(|e| e.to_string())
            .and_then(|r| expect(r.all_hold(), || format!("{} fails", r.first_failure().map_or("", |c| c.name.as_str())))),
    ));
    rows.push(CheckRow::new("Example 4.3: T4.1 inverse equals oracle", oracle_row(Case::T41, &Instance::Schur(s.clone()))));
    rows
}

fn oracle_row(case: Case, inst: &Instance) -> std::result::Result<(), String> {
    match check_instance(case, inst) {
        Outcome::Match => Ok(()),
        Outcome::Mismatch { .. } => Err("formula differs from oracle".into()),
        Outcome::Failed(reason) => Err(reason),
    }
}

fn algebra_checks() -> Vec<CheckRow> {
    let mut rng = SplitMix64::new(0x5e1f_7e57);
    let mut laws = Ok(());
    let mut inverses = Ok(());
    for _ in 0..20 {
        let n = rng.range(1, 4) as usize;
        let x = random_matrix(&mut rng, n, n, -3, 3, (2, 3));
        let y = random_matrix(&mut rng, n, n, -3, 3, (2, 3));
        let z = random_matrix(&mut rng, n, n, -3, 3, (2, 3));
        let assoc = &(&x * &y) * &z == &x * &(&y * &z);
        let distrib = &x * &(&y + &z) == &(&x * &y) + &(&x * &z);
        let transpose = (&x * &y).transpose() == &y.transpose() * &x.transpose();
        if laws.is_ok() && !(assoc && distrib && transpose) {
            laws = Err(format!("law fails for {x:?}, {y:?}, {z:?}"));
        }
        if let Ok(inv) = x.inverse() {
            if inverses.is_ok() && &x * &inv != Matrix::identity(n) {
                inverses = Err(format!("X X^-1 != I for {x:?}"));
            }
        }
    }
    let scalars = ["0", "-1/2", "3i", "1/2-3/4i", "-7/3+1i"]
        .iter()
        .try_for_each(|t| match t.parse::<GaussianRational>() {
            Ok(v) if v.to_string() == *t => Ok(()),
            other => Err(format!("{t} round-trips to {other:?}")),
        });
    vec![
        CheckRow::new("algebra: associativity, distributivity, transpose", laws),
        CheckRow::new("algebra: inverse", inverses),
        CheckRow::new("algebra: scalar text round trip", scalars),
    ]
}

/// Number of instances per case in the self-test.
pub const SELFTEST_COUNT: usize = 3;

/// Fixtures, algebra checks and a short oracle comparison for every case.
pub fn selftest() -> RunReport {
    selftest_with(&Fixtures::default())
}

/// [`selftest`] against the given fixtures.
pub fn selftest_with(fixtures: &Fixtures) -> RunReport {
    let started = Instant::now();
    let mut checks = fixture_checks(fixtures);
    checks.extend(algebra_checks());
    let cases = Case::ALL.iter().map(|&c| verify_case(c, SELFTEST_COUNT, 0)).collect();
    RunReport::new("selftest", checks, cases, started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_instance_is_reported() {
        let inst = Instance::Block(fixtures::example_3_5());
        assert!(matches!(run_formula(Case::T22, &inst), Err(Error::WrongInstance { .. })));
        assert!(matches!(check_instance(Case::C32, &inst), Outcome::Failed(_)));
        assert_eq!(check_instance(Case::C34, &inst), Outcome::Match);
    }

    #[test]
    fn corrupted_fixture_fails_by_name() {
        let mut f = Fixtures::default();
        f.example_4_3.b[(0, 0)] = GaussianRational::from_integer(2);
        let rows = fixture_checks(&f);
        let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|n| n.starts_with("Example 4.3")), "{failed:?}");
    }

    #[test]
    fn verify_small_run() {
        let r = verify_case(Case::T25, 1, 0);
        assert_eq!((r.count, r.passed), (1, 1), "{r:?}");
        let r = verify_case(Case::T41, 1, 0);
        assert!(r.ok(), "{r:?}");
    }
}
