//! The uncollared AP complex of a border-forcing rule.

use tilecoh::complexes::{build_ap_uncollared, verify_complex};
use tilecoh::fixtures::builtin;
use tilecoh::patches::enumerate_legal_windows;

fn main() {
    let rule = builtin("equivariant-4d").unwrap();
    let lang = enumerate_legal_windows(&rule, &[vec![2; 4]]).unwrap();
    let (complex, map) = build_ap_uncollared(&rule, &lang, true).unwrap();
    let diag = verify_complex(&complex, Some(&map)).unwrap();
    println!("cells {:?}, Betti {:?}", diag.counts, diag.betti);
    println!("top-cell substitution {:?}", map.matrices[4].to_i64().unwrap());
    // without a border assertion the model is refused
    println!("{}", build_ap_uncollared(&rule, &lang, false).unwrap_err());
}
