use drazin_core::Matrix;

/// Drazin inverse by repeated full-rank factorisation.
///
/// Factor `A = B1 C1`, then `C1 B1 = B2 C2`, and so on until `Ck Bk` is
/// invertible or zero. Then `A^d = B1..Bk (Ck Bk)^-(k+1) Ck..C1`, or zero.
/// Shares nothing with the library's core-nilpotent construction beyond row
/// reduction.
pub fn drazin_by_factorisation(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    let mut x = a.clone();
    loop {
        if x.rows() == 0 || x.is_zero() {
            return Matrix::zeros(n, n);
        }
        if x.rank() == x.rows() {
            break;
        }
        let (r, pivots) = x.rref();
        let left = x.select_columns(&pivots);
        let right = r.submatrix(0, 0, pivots.len(), x.cols());
        x = &right * &left;
        lefts.push(left);
        rights.push(right);
    }
    let inv = x.inverse().expect("loop stops at an invertible product");
    let k = lefts.len() as u32;
    let mut result = inv.pow(k + 1).unwrap();
    for (l, r) in lefts.iter().zip(&rights).rev() {
        result = Matrix::product(&[l, &result, r]);
    }
    result
}
