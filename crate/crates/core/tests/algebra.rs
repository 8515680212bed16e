mod common;

use common::{gaussian_square, int_square, rng};
use drazin_core::generate::random_matrix;
use drazin_core::{BlockSpec, GaussianRational, Matrix};
use proptest::prelude::*;

#[test]
fn scalar_field_laws() {
    let i = GaussianRational::i();
    assert_eq!(&i * &i, GaussianRational::from_integer(-1));
    let z: GaussianRational = "1/2-3/4i".parse().unwrap();
    let w = z.recip().unwrap();
    assert_eq!(&z * &w, GaussianRational::from_integer(1));
    assert_eq!(&z * &z.conj(), GaussianRational::ratio(13, 16));
    assert!(GaussianRational::from_integer(0).recip().is_none());
}

#[test]
fn invertible_three_by_three() {
    let mut r = rng(3);
    let mut seen = 0;
    while seen < 20 {
        let x = int_square(&mut r, 3, -2, 2);
        if x.rank() < 3 {
            continue;
        }
        seen += 1;
        assert_eq!(&x * &x.inverse().unwrap(), Matrix::identity(3));
    }
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn ring_laws(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=4, l in 1usize..=4) {
        let mut r = rng(seed);
        let x = random_matrix(&mut r, n, k, -3, 3, (2, 3));
        let y = random_matrix(&mut r, k, l, -3, 3, (2, 3));
        let y2 = random_matrix(&mut r, k, l, -3, 3, (2, 3));
        let z = gaussian_square(&mut r, l);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!((&y + &y2).transpose(), &y.transpose() + &y2.transpose());
        prop_assert_eq!((&x * &y).transpose(), &y.transpose() * &x.transpose());
        prop_assert_eq!(&x * &(&y + &y2), &(&x * &y) + &(&x * &y2));
    }

    #[test]
    fn rank_invariants(seed in any::<u64>(), n in 1usize..=5, k in 1usize..=5) {
        let mut r = rng(seed);
        let x = random_matrix(&mut r, n, k, -2, 2, (1, 2));
        prop_assert_eq!(x.rank(), x.transpose().rank());
        let p = loop {
            let p = int_square(&mut r, n, -1, 1);
            if p.rank() == n {
                break p;
            }
        };
        prop_assert_eq!((&p * &x).rank(), x.rank());
        prop_assert_eq!(x.column_space_basis().rank(), x.rank());
        prop_assert_eq!(x.column_space_basis().cols(), x.rank());
        let null = x.null_space_basis();
        prop_assert_eq!(null.cols(), k - x.rank());
        prop_assert!((&x * &null).is_zero());
    }

    #[test]
    fn block_round_trip(seed in any::<u64>(), n in 0usize..=3, m in 0usize..=3) {
        let mut r = rng(seed);
        let s = BlockSpec::new(
            random_matrix(&mut r, n, n, -2, 2, (1, 2)),
            random_matrix(&mut r, n, m, -2, 2, (1, 2)),
            random_matrix(&mut r, m, n, -2, 2, (1, 2)),
            random_matrix(&mut r, m, m, -2, 2, (1, 2)),
        ).unwrap();
        prop_assert_eq!(BlockSpec::extract(&s.assemble(), n).unwrap(), s);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let x = gaussian_square(&mut rng(seed), n).scale(&GaussianRational::ratio(1, 3));
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Matrix>(&text).unwrap(), x);
    }
}
