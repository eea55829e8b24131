//! Bit-exact CSV and JSON round trips of integer matrices, including
//! entries far beyond 64 bits.

use num_bigint::BigInt;
use tilecoh::linalg::IntMatrix;

fn main() {
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    let mut m = IntMatrix::from_i64_rows(&[vec![1, 0, -3], vec![0, 7, 0]]);
    m.set(1, 2, -big);
    let csv = m.to_csv().unwrap();
    let json = m.to_json();
    println!("csv:\n{csv}");
    println!("json: {json}");
    assert_eq!(IntMatrix::from_csv(&csv).unwrap(), m);
    assert_eq!(IntMatrix::from_json(&json).unwrap(), m);
    println!("both round trips are exact");
}
