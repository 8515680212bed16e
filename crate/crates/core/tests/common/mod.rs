#![allow(dead_code)]

use drazin_core::generate::random_matrix;
use drazin_core::{GaussianRational, Matrix, SplitMix64};

mod oracle;
#[allow(unused_imports)]
pub use oracle::drazin_by_factorisation;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::new(seed)
}

/// Square integer matrix with entries in `lo..=hi`.
pub fn int_square(rng: &mut SplitMix64, n: usize, lo: i64, hi: i64) -> Matrix {
    let density = [(1, 3), (1, 2), (1, 1)][rng.below(3) as usize];
    random_matrix(rng, n, n, lo, hi, density)
}

/// Square matrix with Gaussian-integer entries `x + yi`, `x, y` in `-1..=1`.
pub fn gaussian_square(rng: &mut SplitMix64, n: usize) -> Matrix {
    let re = random_matrix(rng, n, n, -1, 1, (1, 2));
    let im = random_matrix(rng, n, n, -1, 1, (1, 3));
    let i = GaussianRational::i();
    Matrix::from_fn(n, n, |r, c| &re[(r, c)] + &(&im[(r, c)] * &i))
}

/// A nilpotent matrix: strictly upper triangular, conjugated by a unimodular
/// transvection so it is not visibly triangular.
pub fn nilpotent(rng: &mut SplitMix64, n: usize) -> Matrix {
    let mut u = random_matrix(rng, n, n, -1, 1, (1, 2));
    for i in 0..n {
        for j in 0..=i {
            u[(i, j)] = GaussianRational::from_integer(0);
        }
    }
    let mut p = Matrix::identity(n);
    let mut p_inv = Matrix::identity(n);
    if n >= 2 {
        let t = GaussianRational::from_integer(rng.range(-2, 2));
        p[(n - 1, 0)] = t.clone();
        p_inv[(n - 1, 0)] = -t;
    }
    Matrix::product(&[&p, &u, &p_inv])
}

/// Property-test settings with a fixed seed, so runs are reproducible.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x6472_617a_696e),
        ..Default::default()
    }
}
