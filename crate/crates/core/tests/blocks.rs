mod common;

use common::{drazin_by_factorisation, int_square, rng};
use drazin_core::block::{
    antidiag_drazin, check_case, gdrazin_block, gdrazin_block_traced, lower_triangular_drazin, split_obligations,
    upper_triangular_drazin,
};
use drazin_core::case::Case;
use drazin_core::generate::{generate, random_matrix, Nontriviality};
use drazin_core::{BlockSpec, GenRecipe, Instance, Matrix};
use proptest::prelude::*;

fn block(case: Case, recipe: GenRecipe) -> BlockSpec {
    match generate(&recipe).unwrap() {
        Instance::Block(b) => b,
        other => panic!("{case} gave {other:?}"),
    }
}

fn generated(case: Case, seed: u64) -> BlockSpec {
    block(case, GenRecipe::new(case, seed))
}

#[test]
fn antidiagonal_example() {
    let b = Matrix::from_ints(&[[1], [0]]);
    let c = Matrix::from_ints(&[[0, 1]]);
    let s = BlockSpec::new(Matrix::zeros(2, 2), b.clone(), c.clone(), Matrix::zeros(1, 1)).unwrap();
    assert!((&c * &b).is_zero());
    assert_eq!(antidiag_drazin(&b, &c).unwrap(), drazin_by_factorisation(&s.assemble()));
    assert!(antidiag_drazin(&b, &Matrix::zeros(1, 2)).unwrap().is_zero());
}

#[test]
fn corollaries_are_special_cases() {
    for (narrow, wide) in [(Case::C32, Case::T31), (Case::C34, Case::T33), (Case::C39, Case::T38), (Case::C312, Case::T311)] {
        for seed in 1..=25 {
            let s = generated(narrow, seed);
            assert!(check_case(wide, &s).unwrap().all_hold(), "{narrow} seed {seed} fails {wide}");
        }
    }
}

// Lemma-level splits assert pq² = p²qp = (qp)² = 0 from fewer identities than
// the theorems; every generated instance is checked here.
#[test]
fn split_obligations_hold_on_generated_instances() {
    for case in Case::BLOCK {
        for seed in 1..=30 {
            let s = generated(case, seed);
            let (_, _, report) = split_obligations(case, &s).unwrap();
            assert!(report.all_hold(), "{case} seed {seed}: {:?}", report.first_failure());
        }
    }
}

#[test]
fn cross_product_coverage() {
    // A = 0 in the anti-diagonal and lower-corner lemmas, so only CB ≠ 0 can
    // be asked of them.
    for case in Case::BLOCK {
        let zero_a = matches!(case, Case::L36 | Case::L310);
        let flags = Nontriviality { cross_products: true, ..Nontriviality::for_case(case) };
        let hit = (1..=40).find_map(|seed| {
            let s = match generate(&GenRecipe::new(case, seed).flags(flags)) {
                Ok(Instance::Block(s)) => s,
                _ => return None,
            };
            let ok = (zero_a || !s.word("AB").is_zero()) && !s.word("CB").is_zero();
            ok.then_some(s)
        });
        let s = hit.unwrap_or_else(|| panic!("{case}: no instance with nonzero cross products"));
        assert_eq!(gdrazin_block(case, &s).unwrap(), drazin_by_factorisation(&s.assemble()));
    }
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn block_cases_match_independent_oracle(seed in 1u64..1_000_000, which in 0usize..Case::BLOCK.len()) {
        let case = Case::BLOCK[which];
        let s = generated(case, seed);
        let (got, report) = gdrazin_block_traced(case, &s).unwrap();
        prop_assert!(report.all_hold());
        prop_assert_eq!(got, drazin_by_factorisation(&s.assemble()));
    }

    #[test]
    fn triangular_blocks(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let mut r = rng(seed);
        let a = int_square(&mut r, n, -2, 2);
        let b = random_matrix(&mut r, n, m, -2, 2, (1, 2));
        let d = int_square(&mut r, m, -2, 2);
        let upper = BlockSpec::new(a.clone(), b.clone(), Matrix::zeros(m, n), d.clone()).unwrap();
        prop_assert_eq!(upper_triangular_drazin(&a, &b, &d).unwrap(), drazin_by_factorisation(&upper.assemble()));
        let c = b.transpose();
        let lower = BlockSpec::new(a.clone(), Matrix::zeros(n, m), c.clone(), d.clone()).unwrap();
        prop_assert_eq!(lower_triangular_drazin(&a, &c, &d).unwrap(), drazin_by_factorisation(&lower.assemble()));
    }

    // AB = 0 and CB = 0 make every identity of the lower-triangular
    // corollary hold.
    #[test]
    fn vanishing_cross_products_suffice(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, n, -2, 2, (1, 2));
        let c = random_matrix(&mut r, m, n, -2, 2, (1, 2));
        let d = random_matrix(&mut r, m, m, -2, 2, (1, 2));
        let kernel = Matrix::vstack(&[&a, &c]).unwrap().null_space_basis();
        let mix = random_matrix(&mut r, kernel.cols(), m, -1, 1, (1, 1));
        let b = &kernel * &mix;
        let s = BlockSpec::new(a, b, c, d).unwrap();
        prop_assert!(s.word("AB").is_zero() && s.word("CB").is_zero());
        prop_assert!(check_case(Case::C34, &s).unwrap().all_hold());
        prop_assert_eq!(gdrazin_block(Case::C34, &s).unwrap(), drazin_by_factorisation(&s.assemble()));
    }
}
