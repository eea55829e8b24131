//! Frequency modules from Perron–Frobenius eigenvectors of the top-cell map.

use tilecoh::complexes::build_dual_complex;
use tilecoh::fixtures::builtin;
use tilecoh::frequency::{frequency_module, frequency_module_per_dimension};
use tilecoh::patches::{enumerate_legal_windows, unit_shapes};
use tilecoh::substitution::SubstitutionRule;

fn main() {
    let rules = [
        SubstitutionRule::product(&builtin("ex1-a").unwrap(), &builtin("ex1-b").unwrap()).unwrap(),
        builtin("ex3").unwrap(),
        builtin("ex4").unwrap(),
    ];
    for rule in &rules {
        let lang = enumerate_legal_windows(rule, &unit_shapes(rule.dim)).unwrap();
        let (complex, map) = build_dual_complex(rule, &lang, 0).unwrap();
        let f = frequency_module(&complex, &map).unwrap();
        println!("{}: PF sum {} → {}", rule.name, f.sum, f.rendered);
        for c in frequency_module_per_dimension(&complex, &map, 1).unwrap() {
            println!("  1-cells along {:?}: sum {} → {}", c.axes, c.module.sum, c.module.rendered);
        }
    }
}
