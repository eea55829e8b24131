#![allow(dead_code)]

use num_bigint::BigInt;
use tilecoh::cohomology::{degree_cohomology, DegreeCohomology};
use tilecoh::complexes::{CellComplex, CellMap, SymmetrySpec};
use tilecoh::fixtures::builtin;
use tilecoh::report::{prepare, AnalysisConfig, ComplexChoice};
use tilecoh::substitution::SubstitutionRule;

pub fn rule(name: &str) -> SubstitutionRule {
    builtin(name).unwrap()
}

pub fn product(a: &str, b: &str) -> SubstitutionRule {
    SubstitutionRule::product(&rule(a), &rule(b)).unwrap()
}

pub fn build(rule: &SubstitutionRule, config: &AnalysisConfig) -> (CellComplex, CellMap) {
    let p = prepare(rule, config).unwrap();
    (p.complex, p.map)
}

pub fn dual(rule: &SubstitutionRule) -> (CellComplex, CellMap) {
    build(rule, &AnalysisConfig::default())
}

pub fn ap(rule: &SubstitutionRule) -> (CellComplex, CellMap) {
    build(rule, &AnalysisConfig { complex: ComplexChoice::ApUncollared, assume_border: true, ..Default::default() })
}

/// The squiral rule modulo its color swap, as an uncollared complex.
pub fn squiral_quotient() -> (CellComplex, CellMap) {
    let spec = SymmetrySpec::from_json(r#"{"colors": [1, 0], "level": "rule"}"#).unwrap();
    build(
        &rule("squiral-4d"),
        &AnalysisConfig {
            complex: ComplexChoice::ApUncollared,
            assume_border: true,
            quotient: Some(spec),
            ..Default::default()
        },
    )
}

/// The equivariant rule, Kuhn-triangulated, modulo the swap of axis pairs.
pub fn equivariant_quotient() -> (CellComplex, CellMap) {
    let spec = SymmetrySpec::from_json(r#"{"axes": [2, 3, 0, 1]}"#).unwrap();
    build(
        &rule("equivariant-4d"),
        &AnalysisConfig {
            complex: ComplexChoice::ApUncollared,
            assume_border: true,
            triangulate: true,
            quotient: Some(spec),
            ..Default::default()
        },
    )
}

pub fn cohomology(c: &CellComplex, m: &CellMap) -> Vec<DegreeCohomology> {
    (0..=c.dim).map(|q| degree_cohomology(c, m, q).unwrap()).collect()
}

/// Nonzero integer eigenvalues with multiplicity, expanded and sorted descending.
pub fn eigen_multiset(h: &DegreeCohomology) -> Vec<i64> {
    let s = h.limit.summary();
    assert!(s.unfactored.is_none(), "unfactored part {:?}", s.unfactored);
    let mut v: Vec<i64> = s.eigenvalues.iter().flat_map(|&(e, m)| std::iter::repeat_n(e, m)).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

pub fn load_matrix(name: &str) -> tilecoh::linalg::IntMatrix {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    tilecoh::linalg::IntMatrix::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}
pub mod props;
