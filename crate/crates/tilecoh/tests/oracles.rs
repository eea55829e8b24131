//! Comparison against reference matrices and listings stored in tests/data.

mod common;

use common::*;
use tilecoh::complexes::verify_complex;
use tilecoh::linalg::characteristic_polynomial;
use tilecoh::substitution::SubstitutionRule;

fn check_top_matrix(rule: &SubstitutionRule, file: &str) {
    let (c, m) = dual(rule);
    let reference = load_matrix(file);
    let top = &m.matrices[c.dim];
    assert_eq!(top.nrows(), reference.nrows(), "{file}: size");
    assert_eq!(characteristic_polynomial(top), characteristic_polynomial(&reference), "{file}");
}

#[test]
fn top_matrix_of_first_product_matches_reference() {
    check_top_matrix(&product("ex1-a", "ex1-b"), "top_matrix_ex1.json");
}

#[test]
fn top_matrix_of_second_product_matches_reference() {
    check_top_matrix(&product("ex2-a", "ex2-b"), "top_matrix_ex2.json");
}

#[test]
fn top_matrix_of_third_example_matches_reference() {
    check_top_matrix(&rule("ex3"), "top_matrix_ex3.json");
}

#[test]
fn top_matrix_of_fourth_example_matches_reference() {
    check_top_matrix(&rule("ex4"), "top_matrix_ex4.json");
}

#[test]
fn degree_two_map_of_main_rule_matches_reference() {
    let (c, m) = dual(&rule("main-4d"));
    let h2 = tilecoh::cohomology::degree_cohomology(&c, &m, 2).unwrap();
    let reference = load_matrix("h2_matrix_main_4d.json");
    assert_eq!(h2.group.orders().len(), reference.nrows());
    assert_eq!(characteristic_polynomial(&h2.limit.phi), characteristic_polynomial(&reference));
}

#[test]
fn squiral_quotient_agrees_with_reference_listing() {
    let path = format!("{}/tests/data/squiral_quotient_listing.json", env!("CARGO_MANIFEST_DIR"));
    let listed = SubstitutionRule::from_file(std::path::Path::new(&path)).unwrap();
    let (lc, lm) = ap(&listed);
    let (qc, qm) = squiral_quotient();
    assert_eq!(lc.counts(), qc.counts());
    assert_eq!(verify_complex(&lc, Some(&lm)).unwrap().betti, verify_complex(&qc, Some(&qm)).unwrap().betti);
    let (lh, qh) = (cohomology(&lc, &lm), cohomology(&qc, &qm));
    for q in 0..=4 {
        let (a, b) = (lh[q].limit.summary(), qh[q].limit.summary());
        assert_eq!(a.group, b.group, "degree {q}");
        assert_eq!(a.characteristic_polynomial, b.characteristic_polynomial, "degree {q}");
        assert_eq!(a.stable_torsion, b.stable_torsion, "degree {q}");
    }
}
