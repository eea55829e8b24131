//! Cellular involutions induced by axis and color symmetries, and the
//! quotient complex they define.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{sort_sign, Cell, CellComplex, CellIndex, CellLabel, CellMap, Geometry};
use crate::error::{Error, Result};
use crate::grid::{box_points, flat_index};
use crate::linalg::IntMatrix;

/// Where a symmetry is applied: to the rule (colors only, before building a
/// complex) or to the cells of a built complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryLevel {
    Rule,
    #[default]
    Complex,
}

/// A symmetry of the tiling: an axis permutation and a color permutation,
/// both involutions. Missing entries mean identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrySpec {
    #[serde(default)]
    pub axes: Option<Vec<usize>>,
    #[serde(default)]
    pub colors: Option<Vec<u32>>,
    #[serde(default)]
    pub level: SymmetryLevel,
}

fn check_involution<T: Copy + Into<u64>>(perm: &[T], what: &str) -> Result<()> {
    let n = perm.len() as u64;
    for (i, &p) in perm.iter().enumerate() {
        let p: u64 = p.into();
        if p >= n || perm[p as usize].into() != i as u64 {
            return Err(Error::IncompatibleInvolution(format!("{what} permutation is not an involution")));
        }
    }
    Ok(())
}

impl SymmetrySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SymmetrySpec = serde_json::from_str(text)?;
        if let Some(a) = &spec.axes {
            check_involution(&a.iter().map(|&x| x as u64).collect::<Vec<_>>(), "axis")?;
        }
        if let Some(c) = &spec.colors {
            check_involution(c, "color")?;
        }
        if spec.level == SymmetryLevel::Rule && spec.axes.is_some() {
            return Err(Error::IncompatibleInvolution("a rule-level symmetry can only permute colors".into()));
        }
        Ok(spec)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn axis(&self, a: usize) -> usize {
        self.axes.as_ref().map_or(a, |p| p[a])
    }

    fn color(&self, c: u32) -> u32 {
        self.colors.as_ref().map_or(c, |p| p[c as usize])
    }

    fn check_sizes(&self, dim: usize) -> Result<()> {
        if let Some(a) = &self.axes {
            if a.len() != dim {
                return Err(Error::IncompatibleInvolution(format!("axis permutation has length {}, expected {dim}", a.len())));
            }
        }
        Ok(())
    }
}

/// A signed cellular involution: `images[q][c] = (g(c), sign)`.
#[derive(Clone, Debug)]
pub struct CellInvolution {
    pub images: Vec<Vec<(usize, i32)>>,
    /// Whether a cell mapped to itself is fixed pointwise.
    pub pointwise: Vec<Vec<bool>>,
}

impl CellInvolution {
    /// The involution a symmetry induces on the cells of `complex`.
    pub fn from_symmetry(complex: &CellComplex, spec: &SymmetrySpec) -> Result<Self> {
        spec.check_sizes(complex.dim)?;
        if let Some(c) = &spec.colors {
            let needed = complex
                .cells
                .iter()
                .flatten()
                .filter_map(|cell| match &cell.label {
                    CellLabel::Window { colors, .. } => colors.iter().max().copied(),
                    CellLabel::Face { color, .. } => Some(*color),
                    _ => None,
                })
                .max();
            if needed.is_some_and(|m| m as usize >= c.len()) {
                return Err(Error::IncompatibleInvolution("color permutation is shorter than the palette".into()));
            }
        }
        let mut images = Vec::with_capacity(complex.dim + 1);
        let mut pointwise = Vec::with_capacity(complex.dim + 1);
        for q in 0..=complex.dim {
            let mut im = Vec::with_capacity(complex.count(q));
            let mut pw = Vec::with_capacity(complex.count(q));
            for c in 0..complex.count(q) {
                let (img, sign, fixes) = cell_image(complex, q, c, spec)?;
                im.push((img, sign));
                pw.push(fixes);
            }
            images.push(im);
            pointwise.push(pw);
        }
        Ok(CellInvolution { images, pointwise })
    }

    /// Signed permutation matrix in degree q.
    pub fn matrix(&self, q: usize) -> IntMatrix {
        let n = self.images[q].len();
        IntMatrix::from_triplets(n, n, self.images[q].iter().enumerate().map(|(c, &(r, s))| (r, c, BigInt::from(s))))
    }

    /// Checks g² = id and that g commutes with ∂ and with the chain map.
    pub fn validate(&self, complex: &CellComplex, map: Option<&CellMap>) -> Result<()> {
        for (q, im) in self.images.iter().enumerate() {
            for (c, &(r, s)) in im.iter().enumerate() {
                let (back, s2) = im[r];
                if back != c || s * s2 != 1 {
                    return Err(Error::IncompatibleInvolution(format!("cell map does not square to the identity in degree {q}")));
                }
            }
        }
        for q in 1..=complex.dim {
            if self.matrix(q - 1).mul(&complex.boundary[q]) != complex.boundary[q].mul(&self.matrix(q)) {
                return Err(Error::NonCommuting(format!("the boundary in degree {q}")));
            }
        }
        if let Some(m) = map {
            for q in 0..=complex.dim {
                if self.matrix(q).mul(&m.matrices[q]) != m.matrices[q].mul(&self.matrix(q)) {
                    return Err(Error::NonCommuting(format!("the substitution in degree {q}")));
                }
            }
        }
        Ok(())
    }
}

fn cell_image(complex: &CellComplex, q: usize, c: usize, spec: &SymmetrySpec) -> Result<(usize, i32, bool)> {
    let cell = &complex.cells[q][c];
    let missing = || Error::IncompatibleInvolution(format!("image of cell {c} in degree {q} is not a cell of the complex"));
    match (&complex.index, &cell.label) {
        (CellIndex::Windows(lookup), CellLabel::Window { extents, colors }) => {
            let d = extents.len();
            let mut new_ext = vec![0; d];
            for a in 0..d {
                new_ext[spec.axis(a)] = extents[a];
            }
            let mut new_colors = vec![0; colors.len()];
            for p in box_points(extents) {
                let mut np = vec![0; d];
                for a in 0..d {
                    np[spec.axis(a)] = p[a];
                }
                new_colors[flat_index(&np, &new_ext)] = spec.color(colors[flat_index(&p, extents)]);
            }
            let img = *lookup.get(&(new_ext, new_colors)).ok_or_else(missing)?;
            let (sign, fixes) = cube_orientation(&cell.axes, spec);
            Ok((img, sign, fixes))
        }
        (CellIndex::Faces(classes), CellLabel::Face { color, roles }) => {
            let mut new_roles = roles.clone();
            for (a, &r) in roles.iter().enumerate() {
                new_roles[spec.axis(a)] = r;
            }
            let (deg, img) = classes.cell(spec.color(*color), &new_roles);
            if deg != q {
                return Err(missing());
            }
            let (sign, fixes) = cube_orientation(&cell.axes, spec);
            Ok((img, sign, fixes))
        }
        (CellIndex::Simplices { base, lookup }, CellLabel::Simplex { cube, blocks }) => {
            let k: usize = blocks.iter().map(Vec::len).sum();
            let (base_img, _, _) = cell_image(base, k, *cube, spec)?;
            let new_blocks: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| {
                    let mut nb: Vec<usize> = b.iter().map(|&a| spec.axis(a)).collect();
                    nb.sort_unstable();
                    nb
                })
                .collect();
            let img = *lookup.get(&(base_img, new_blocks)).ok_or_else(missing)?;
            // a simplex mapped to itself has its vertices fixed, hence is fixed pointwise
            Ok((img, 1, true))
        }
        _ => Err(Error::IncompatibleInvolution("the complex carries no cell index for symmetries".into())),
    }
}

/// Orientation sign of the axis permutation on a cube's spanned axes and
/// whether it fixes each of them.
fn cube_orientation(axes: &[usize], spec: &SymmetrySpec) -> (i32, bool) {
    let mapped: Vec<usize> = axes.iter().map(|&a| spec.axis(a)).collect();
    (sort_sign(&mapped), axes.iter().all(|&a| spec.axis(a) == a))
}

/// The quotient complex X/g and its induced chain map.
///
/// Cells are orbits named by their smaller member; chains are coinvariants,
/// so a cell c = s·g(r) of orbit r contributes with sign s. Fixed cells must
/// keep their orientation and be fixed pointwise.
pub fn quotient_by_involution(
    complex: &CellComplex,
    map: &CellMap,
    g: &CellInvolution,
) -> Result<(CellComplex, CellMap)> {
    g.validate(complex, Some(map))?;
    let d = complex.dim;
    for q in 0..=d {
        for (c, &(r, s)) in g.images[q].iter().enumerate() {
            if r == c && s < 0 {
                return Err(Error::OrientationReversingFixedCell { dim: q, cell: c });
            }
            if r == c && !g.pointwise[q][c] {
                return Err(Error::NotPointwiseFixed { dim: q, cell: c });
            }
        }
    }
    // orbit_of[q][c] = (orbit index, sign of c relative to the representative)
    let mut orbit_of: Vec<Vec<(usize, i32)>> = Vec::with_capacity(d + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(d + 1);
    for q in 0..=d {
        let n = complex.count(q);
        let mut of = vec![(0usize, 1i32); n];
        let mut rs = Vec::new();
        let mut cs = Vec::new();
        for c in 0..n {
            let (r, s) = g.images[q][c];
            if r < c {
                of[c] = (of[r].0, s);
            } else {
                of[c] = (rs.len(), 1);
                rs.push(c);
                cs.push(Cell {
                    label: CellLabel::Orbit { representative: c, size: if r == c { 1 } else { 2 } },
                    axes: complex.cells[q][c].axes.clone(),
                });
            }
        }
        orbit_of.push(of);
        reps.push(rs);
        cells.push(cs);
    }
    let project = |m: &IntMatrix, row_deg: usize, col_deg: usize| -> IntMatrix {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, v) in m.triplets() {
            let (oc, sc) = orbit_of[col_deg][c];
            if reps[col_deg][oc] != c || sc != 1 {
                continue;
            }
            let (or, sr) = orbit_of[row_deg][r];
            *acc.entry((or, oc)).or_default() += v * sr;
        }
        IntMatrix::from_triplets(reps[row_deg].len(), reps[col_deg].len(), acc.into_iter().map(|((r, c), v)| (r, c, v)))
    };
    let boundary: Vec<IntMatrix> = (0..=d)
        .map(|q| if q == 0 { IntMatrix::zeros(0, reps[0].len()) } else { project(&complex.boundary[q], q - 1, q) })
        .collect();
    let matrices: Vec<IntMatrix> = (0..=d).map(|q| project(&map.matrices[q], q, q)).collect();

    // the face table survives when g preserves face positions and orientations
    let all_positive = g.images.iter().flatten().all(|&(_, s)| s == 1);
    let positions_kept = (1..=d).all(|q| {
        (0..complex.count(q)).all(|c| {
            let img = g.images[q][c].0;
            complex.faces[q][c].iter().zip(&complex.faces[q][img]).all(|(&f, &gf)| g.images[q - 1][f].0 == gf)
        })
    });
    let faces_exact = complex.faces_exact && all_positive && positions_kept;
    let faces: Vec<Vec<Vec<usize>>> = (0..=d)
        .map(|q| {
            reps[q]
                .iter()
                .map(|&r| if q == 0 { Vec::new() } else { complex.faces[q][r].iter().map(|&f| orbit_of[q - 1][f].0).collect() })
                .collect()
        })
        .collect();
    let quotient = CellComplex {
        model: complex.model,
        geometry: complex.geometry,
        dim: d,
        cells,
        faces,
        boundary,
        faces_exact,
        index: CellIndex::None,
    };
    let qmap = CellMap { matrices, children: None, expansion: map.expansion, anchor: map.anchor };
    super::check_chain_map(&quotient, &qmap)?;
    if faces_exact && quotient.geometry == Geometry::Cubical {
        debug_assert_eq!(
            CellComplex::boundaries_from_faces(Geometry::Cubical, &quotient.faces, &quotient.counts()),
            quotient.boundary
        );
    }
    Ok((quotient, qmap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_ap_uncollared, build_dual_complex, triangulate, verify_complex};
    use crate::fixtures::builtin;
    use crate::patches::{enumerate_legal_windows, unit_shapes};
    use crate::substitution::one_color;

    #[test]
    fn spec_parsing_rejects_non_involutions() {
        assert!(SymmetrySpec::from_json(r#"{"axes":[1,2,0]}"#).is_err());
        assert!(SymmetrySpec::from_json(r#"{"colors":[1,0],"level":"rule"}"#).is_ok());
        assert!(SymmetrySpec::from_json(r#"{"axes":[1,0],"level":"rule"}"#).is_err());
        assert!(SymmetrySpec::from_json(r#"{"mirror":true}"#).is_err());
    }

    #[test]
    fn swapping_torus_axes_reverses_the_square() {
        let r = one_color(2, 2);
        let lang = enumerate_legal_windows(&r, &[]).unwrap();
        let (c, m) = build_ap_uncollared(&r, &lang, true).unwrap();
        let spec = SymmetrySpec { axes: Some(vec![1, 0]), ..Default::default() };
        let g = CellInvolution::from_symmetry(&c, &spec).unwrap();
        let err = quotient_by_involution(&c, &m, &g).unwrap_err();
        assert!(matches!(err, Error::OrientationReversingFixedCell { dim: 2, cell: 0 }));
    }

    #[test]
    fn triangulated_torus_swap_folds_to_a_moebius_band_model() {
        let r = one_color(2, 2);
        let lang = enumerate_legal_windows(&r, &[]).unwrap();
        let (c, m) = build_ap_uncollared(&r, &lang, true).unwrap();
        let (t, tm) = triangulate(&c, &m).unwrap();
        let spec = SymmetrySpec { axes: Some(vec![1, 0]), ..Default::default() };
        let g = CellInvolution::from_symmetry(&t, &spec).unwrap();
        let (qc, qm) = quotient_by_involution(&t, &tm, &g).unwrap();
        assert_eq!(qc.counts(), vec![1, 2, 1]);
        let diag = verify_complex(&qc, Some(&qm)).unwrap();
        assert_eq!(diag.euler_characteristic, 0);
        assert_eq!(diag.betti, vec![1, 1, 0]);
    }

    #[test]
    fn color_swap_on_the_circle() {
        // two colors a -> ab, b -> ba; swapping colors commutes with the rule
        let r = crate::substitution::SubstitutionRule::new("tm", 1, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let lang = enumerate_legal_windows(&r, &unit_shapes(1)).unwrap();
        let (c, m) = build_dual_complex(&r, &lang, 0).unwrap();
        let spec = SymmetrySpec { colors: Some(vec![1, 0]), ..Default::default() };
        let g = CellInvolution::from_symmetry(&c, &spec).unwrap();
        let (qc, qm) = quotient_by_involution(&c, &m, &g).unwrap();
        assert_eq!(qc.count(1) * 2, c.count(1));
        assert!(qc.faces_exact);
        verify_complex(&qc, Some(&qm)).unwrap();
    }

    #[test]
    fn equivariant_rule_rejects_cubical_axis_swap() {
        let r = builtin("equivariant-4d").unwrap();
        let lang = enumerate_legal_windows(&r, &[]).unwrap();
        let (c, m) = build_ap_uncollared(&r, &lang, true).unwrap();
        let spec = SymmetrySpec { axes: Some(vec![2, 3, 0, 1]), ..Default::default() };
        let g = CellInvolution::from_symmetry(&c, &spec).unwrap();
        let err = quotient_by_involution(&c, &m, &g).unwrap_err();
        assert!(matches!(err, Error::OrientationReversingFixedCell { .. } | Error::NotPointwiseFixed { .. }));
    }
}
