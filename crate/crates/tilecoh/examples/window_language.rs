//! The legal window language and the border-forcing probe.

use tilecoh::fixtures::builtin;
use tilecoh::patches::{border_forcing_probe, enumerate_legal_windows, unit_shapes};

fn main() {
    let rule = builtin("ex1-a").unwrap();
    let lang = enumerate_legal_windows(&rule, &unit_shapes(1)).unwrap();
    for shape in lang.shapes() {
        println!("shape {shape:?}: {} windows {:?}", lang.count(shape), lang.windows(shape).unwrap());
    }
    for name in ["chair-2", "ex3", "equivariant-4d"] {
        let r = builtin(name).unwrap();
        let probe = border_forcing_probe(&r, 3).unwrap();
        println!("{name}: border forced at level {:?}", probe.forced_at);
    }
    println!("{}", lang.dump_json());
}
