//! Quotients by a symmetry: the axis swap (0↔2, 1↔3) reverses a fixed
//! cubical 2-cell, so the complex is triangulated first.

use tilecoh::cohomology::degree_cohomology;
use tilecoh::complexes::{build_ap_uncollared, quotient_by_involution, triangulate, verify_complex, CellInvolution, SymmetrySpec};
use tilecoh::fixtures::builtin;
use tilecoh::patches::enumerate_legal_windows;
use tilecoh::ring::chern_integrality_check;

fn main() {
    let rule = builtin("equivariant-4d").unwrap();
    let lang = enumerate_legal_windows(&rule, &[vec![2; 4]]).unwrap();
    let (cubes, cube_map) = build_ap_uncollared(&rule, &lang, true).unwrap();
    let spec = SymmetrySpec { axes: Some(vec![2, 3, 0, 1]), ..Default::default() };

    let g = CellInvolution::from_symmetry(&cubes, &spec).unwrap();
    println!("cubical quotient: {}", quotient_by_involution(&cubes, &cube_map, &g).unwrap_err());

    let (tri, tri_map) = triangulate(&cubes, &cube_map).unwrap();
    let g = CellInvolution::from_symmetry(&tri, &spec).unwrap();
    let (q, q_map) = quotient_by_involution(&tri, &tri_map, &g).unwrap();
    println!("triangulated {:?} → quotient {:?}", tri.counts(), verify_complex(&q, Some(&q_map)).unwrap().counts);
    for (name, c, m) in [("before", &tri, &tri_map), ("after", &q, &q_map)] {
        let h2 = degree_cohomology(c, m, 2).unwrap();
        let h4 = degree_cohomology(c, m, 4).unwrap();
        let v = chern_integrality_check(c, &h2, &h4).unwrap();
        println!("{name} quotient: H² = {}, H⁴ = {}, Chern check {:?}", h2.limit.summary().group, h4.limit.summary().group, v.status);
    }
}
