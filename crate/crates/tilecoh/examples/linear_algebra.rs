//! Smith normal form, characteristic polynomials and Perron–Frobenius vectors.

use num_bigint::BigInt;
use tilecoh::linalg::{characteristic_polynomial, perron_frobenius_vector, rational_eigenspace, smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("invariant factors: {:?}", snf.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);

    let m = IntMatrix::from_i64_rows(&[vec![3, 1], vec![1, 3]]);
    println!("char poly: {}", characteristic_polynomial(&m));
    for e in [4, 2] {
        println!("eigenvalue {e}: {:?}", rational_eigenspace(&m, &BigInt::from(e)));
    }
    println!("PF vector: {:?}", perron_frobenius_vector(&m, &BigInt::from(4)).unwrap());
}
