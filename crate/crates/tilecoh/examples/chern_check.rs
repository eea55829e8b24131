//! The Chern-character integrality check on a four-dimensional rule whose
//! H⁴ limit carries stable 4-torsion.

use tilecoh::report::{analyze, AnalysisConfig};
use tilecoh::fixtures::builtin;

fn main() {
    let rule = builtin("main-4d").unwrap();
    let report = analyze(&rule, &AnalysisConfig { chern: true, ..Default::default() }).unwrap();
    println!("cells per degree {:?}", report.complex.counts);
    for c in &report.cohomology {
        println!("H^{}: {} (stable torsion {})", c.degree, c.limit.group, c.limit.stable_torsion);
    }
    let verdict = report.chern.unwrap();
    println!("verdict: {:?}", verdict.status);
    if let Some(w) = verdict.witness {
        let tors: Vec<String> = w.stable_torsion.iter().map(ToString::to_string).collect();
        println!("witness: {} squares to stable torsion coordinates {tors:?}", w.class);
    }
}
