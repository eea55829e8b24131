//! The whole pipeline as one JSON report, the same one the command-line
//! tool writes.

use tilecoh::report::{analyze, AnalysisConfig, ProbeRequest};
use tilecoh::substitution::SubstitutionRule;
use tilecoh::fixtures::builtin;

fn main() {
    let rule = SubstitutionRule::product(&builtin("ex2-a").unwrap(), &builtin("ex2-b").unwrap()).unwrap();
    let config = AnalysisConfig {
        ring: true,
        probes: vec![ProbeRequest { prime: 2.into(), depth: 3 }],
        ..Default::default()
    };
    let report = analyze(&rule, &config).unwrap();
    println!("{}", serde_json::to_string_pretty(&report.stable_json()).unwrap());
}
