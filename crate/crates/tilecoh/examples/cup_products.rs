//! Cup products: the bilinear forms H¹ × H¹ → H² split by eigenvalue.

use tilecoh::cohomology::degree_cohomology;
use tilecoh::complexes::build_dual_complex;
use tilecoh::fixtures::builtin;
use tilecoh::patches::{enumerate_legal_windows, unit_shapes};
use tilecoh::ring::bilinear_forms_by_eigenvalue;

fn main() {
    for name in ["ex3", "ex4"] {
        let rule = builtin(name).unwrap();
        let lang = enumerate_legal_windows(&rule, &unit_shapes(2)).unwrap();
        let (complex, map) = build_dual_complex(&rule, &lang, 0).unwrap();
        let h: Vec<_> = (0..=2).map(|q| degree_cohomology(&complex, &map, q).unwrap()).collect();
        let forms = bilinear_forms_by_eigenvalue(&complex, &h[1], &h[1], &h[2]).unwrap();
        println!("{name}: H¹ eigenvalues {:?}, H² eigenvalues {:?}", forms.left, forms.target);
        for f in &forms.forms {
            println!("  B_{}: {}", f.eigenvalue, if f.nonzero { "nonzero" } else { "zero" });
        }
        println!("  surjective: {}", forms.surjective);
    }
}
