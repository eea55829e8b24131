//! Integral cohomology as a direct limit, with divisibility questions
//! answered inside the limit group.

use num_bigint::BigInt;
use tilecoh::cohomology::{degree_cohomology, DirectLimitGroup, LimitElement};
use tilecoh::complexes::build_dual_complex;
use tilecoh::fixtures::builtin;
use tilecoh::linalg::{ints, IntMatrix};
use tilecoh::patches::{enumerate_legal_windows, unit_shapes};

fn main() {
    let rule = builtin("ex3").unwrap();
    let lang = enumerate_legal_windows(&rule, &unit_shapes(2)).unwrap();
    let (complex, map) = build_dual_complex(&rule, &lang, 0).unwrap();
    for q in 0..=2 {
        let s = degree_cohomology(&complex, &map, q).unwrap().limit.summary();
        println!("H^{q}: {} with eigenvalues {:?}; char poly {}", s.group, s.eigenvalues, s.characteristic_polynomial);
    }

    // lim(Z², [[4,1],[1,4]]) does not split: (1,0) is not divisible by 3
    let lim = DirectLimitGroup::new(vec![BigInt::from(0); 2], IntMatrix::from_i64_rows(&[vec![4, 1], vec![1, 4]]));
    let three = BigInt::from(3);
    for x in [ints(&[1, 1]), ints(&[1, -1]), ints(&[1, 0])] {
        let d = lim.divisible_by(&LimitElement::new(0, x.clone()), &three);
        let probe = lim.divisibility_probe(&LimitElement::new(0, x.clone()), &three, 3);
        println!("{x:?}: divisible by 3: {}; by 3^k for k=1..3: {:?}", d.divisible, probe.iter().map(|l| l.divisible).collect::<Vec<_>>());
    }
}
