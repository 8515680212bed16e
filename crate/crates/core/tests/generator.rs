use drazin_core::additive::check_pair;
use drazin_core::block::check_case;
use drazin_core::case::{Case, Family};
use drazin_core::generate::{exhaustive_small, generate, generate_bundle};
use drazin_core::perturbation::check_pert;
use drazin_core::{fixtures, is_nilpotent, GenRecipe, Instance, InstanceBundle};

fn predicate_holds(case: Case, inst: &Instance) -> bool {
    match inst {
        Instance::Pair(p) => check_pair(case, &p.a, &p.b).unwrap().all_hold(),
        Instance::Block(b) => check_case(case, b).unwrap().all_hold(),
        Instance::Schur(s) => check_pert(case, s).unwrap().all_hold(),
        Instance::Factors(_) | Instance::Square(_) => true,
    }
}

#[test]
fn every_case_emits_valid_instances() {
    for case in Case::ALL {
        for seed in 0..12 {
            let inst = generate(&GenRecipe::new(case, seed)).unwrap_or_else(|e| panic!("{case} seed {seed}: {e}"));
            assert_eq!(inst.family(), case.family());
            assert!(predicate_holds(case, &inst), "{case} seed {seed}");
        }
    }
}

#[test]
fn same_recipe_same_bytes() {
    for case in Case::ALL {
        let recipe = GenRecipe::new(case, 99);
        let first = serde_json::to_string(&generate_bundle(&recipe).unwrap()).unwrap();
        let second = serde_json::to_string(&generate_bundle(&recipe).unwrap()).unwrap();
        assert_eq!(first, second, "{case}");
        let back: InstanceBundle = serde_json::from_str(&first).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), first);
    }
}

#[test]
fn four_identity_pair_has_non_nilpotent_first_summand() {
    let inst = generate(&GenRecipe::new(Case::T22, 7).size(4)).unwrap();
    let Instance::Pair(p) = inst else { panic!("not a pair") };
    assert_eq!(p.a.rows(), 4);
    assert!(check_pair(Case::T22, &p.a, &p.b).unwrap().all_hold());
    assert!(!is_nilpotent(&p.a));
}

#[test]
fn seed_zero_fixtures() {
    assert_eq!(generate(&GenRecipe::new(Case::C34, 0).dims(3, 1)).unwrap(), Instance::Block(fixtures::example_3_5()));
    assert_eq!(generate(&GenRecipe::new(Case::T41, 0).dims(4, 2)).unwrap(), Instance::Schur(fixtures::example_4_3()));
    assert_ne!(generate(&GenRecipe::new(Case::C34, 0).dims(2, 2)).unwrap(), Instance::Block(fixtures::example_3_5()));
}

#[test]
fn exhaustive_binary_pairs_pass_recheck() {
    let all: Vec<Instance> = exhaustive_small(Case::T22, 2, 0, &[0, 1]).unwrap().collect();
    assert!(!all.is_empty());
    assert!(all.iter().all(|i| predicate_holds(Case::T22, i)));
    let zero_products = exhaustive_small(Case::AbZero, 1, 0, &[-1, 0, 1]).unwrap().count();
    assert_eq!(zero_products, 5);
}

#[test]
fn exhaustive_scalar_blocks() {
    let all: Vec<Instance> = exhaustive_small(Case::C32, 1, 1, &[-1, 0, 1]).unwrap().collect();
    assert!(all.iter().all(|i| predicate_holds(Case::C32, i)));
    // BC = 0 and DC = 0 with scalars: C = 0 (27 choices of A, B, D), or
    // C ≠ 0 with B = D = 0 (3 choices of A, 2 of C).
    assert_eq!(all.len(), 27 + 6);
}

#[test]
fn pair_coverage_with_both_summands_non_nilpotent() {
    for case in Case::ALL.into_iter().filter(|c| c.family() == Family::Pair) {
        let mut flags = drazin_core::Nontriviality::for_case(case);
        flags.b_core = true;
        let found = (1..=10).any(|seed| match generate(&GenRecipe::new(case, seed).flags(flags)) {
            Ok(Instance::Pair(p)) => !is_nilpotent(&p.a) && !is_nilpotent(&p.b),
            _ => false,
        });
        assert!(found, "{case}");
    }
}
