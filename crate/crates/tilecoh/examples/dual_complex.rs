//! The dual complex of the chair tiling: cells, verification and the
//! substitution's chain map.

use tilecoh::complexes::{build_dual_complex, verify_complex};
use tilecoh::fixtures::builtin;
use tilecoh::patches::{enumerate_legal_windows, unit_shapes};

fn main() {
    let rule = builtin("chair-2").unwrap();
    let lang = enumerate_legal_windows(&rule, &unit_shapes(2)).unwrap();
    let (complex, map) = build_dual_complex(&rule, &lang, 0).unwrap();
    let diag = verify_complex(&complex, Some(&map)).unwrap();
    println!("cells per degree {:?}, Euler characteristic {}, Betti {:?}", diag.counts, diag.euler_characteristic, diag.betti);
    for q in 0..=2 {
        let m = &map.matrices[q];
        println!("chain map in degree {q}: {}×{} with {} nonzero entries", m.nrows(), m.ncols(), m.nnz());
    }
    let dump = complex.dump_json(Some(&map));
    println!("dump keys: {:?}", dump.as_object().unwrap().keys().collect::<Vec<_>>());
}
