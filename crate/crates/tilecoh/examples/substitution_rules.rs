//! Rules: parsing, primitivity, substitution matrices, products and
//! substituting patches.

use tilecoh::fixtures::builtin;
use tilecoh::substitution::{chair, LatticePatch, SubstitutionRule};

fn main() {
    let a = builtin("ex1-a").unwrap();
    let b = builtin("ex1-b").unwrap();
    for r in [&a, &b] {
        let p = r.primitivity();
        println!("{}: d={} λ={} colors={} primitive={} (exponent {:?})", r.name, r.dim, r.expansion, r.colors, p.primitive, p.exponent);
        println!("  substitution matrix {:?}", r.substitution_matrix().to_i64().unwrap());
    }
    let product = SubstitutionRule::product(&a, &b).unwrap();
    println!("product: d={} colors={}", product.dim, product.colors);

    let c = chair(2);
    let patch = c.substitute_patch(&LatticePatch::tile(2, 0), 2);
    println!("chair level-2 supertile {:?}:", patch.extents);
    for row in patch.colors.chunks(patch.extents[1]) {
        println!("  {row:?}");
    }
    println!("{}", c.to_json());
}
