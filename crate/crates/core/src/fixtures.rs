//! The two worked examples, transcribed entry by entry.

use crate::block::BlockSpec;
use crate::matrix::Matrix;
use crate::perturbation::SchurSpec;

/// Blocks with `ABC = ABD = BCB = DCB = 0` while `AB` and `CB` are nonzero.
pub fn example_3_5() -> BlockSpec {
    BlockSpec::new(
        Matrix::from_ints(&[[0, 0, 0], [0, 0, 0], [1, 0, 1]]),
        Matrix::from_ints(&[[1], [1], [-1]]),
        Matrix::from_ints(&[[1, 0, 1]]),
        Matrix::from_ints(&[[0]]),
    )
    .expect("fixture blocks are conformable")
}

/// `A` of index 2 with a rank-one core, and `B`, `C` meeting the Schur-case
/// hypotheses.
pub fn example_4_3() -> SchurSpec {
    SchurSpec::new(
        Matrix::from_ints(&[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 1, 0]]),
        Matrix::from_ints(&[[1, 0], [1, -1], [-1, 1], [1, -1]]),
        Matrix::from_ints(&[[1, 1, 1, 1], [1, -1, -1, 1]]),
    )
    .expect("fixture blocks are conformable")
}

/// `D = CA^dB` as printed alongside [`example_4_3`].
pub fn example_4_3_d() -> Matrix {
    Matrix::from_ints(&[[1, 0], [1, 0]])
}

/// `A^d` as printed alongside [`example_4_3`].
pub fn example_4_3_a_d() -> Matrix {
    Matrix::from_ints(&[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
}

/// `A^π` as printed alongside [`example_4_3`].
pub fn example_4_3_a_pi() -> Matrix {
    Matrix::from_ints(&[[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
}
