//! The dual complex: a q-cell is a legal window with extent 2 on q spanned
//! axes and extent 1 on the others, i.e. the unit q-cube joining the centres
//! of the tiles in the window.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{matrices_from_children, Cell, CellComplex, CellIndex, CellLabel, CellMap, Geometry, Model};
use crate::error::{Error, Result};
use crate::grid::{box_points, sub_box};
use crate::patches::{unit_shapes, WindowLanguage};
use crate::substitution::SubstitutionRule;

/// Builds the dual complex and its chain map.
///
/// The image of a cell is the set of same-shape windows of its substituted
/// window at offsets `anchor + t` (0 ≤ t < λ) on spanned axes and `anchor`
/// on the others, each with sign +1.
pub fn build_dual_complex(
    rule: &SubstitutionRule,
    language: &WindowLanguage,
    anchor: usize,
) -> Result<(CellComplex, CellMap)> {
    let d = rule.dim;
    let l = rule.expansion;
    if anchor >= l {
        return Err(Error::Schema(format!("anchor {anchor} must be below the expansion {l}")));
    }
    // degree -> shapes in canonical order, with the first index of each
    let mut by_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
    let mut shapes = unit_shapes(d);
    shapes.sort();
    for s in shapes {
        let q = s.iter().filter(|&&e| e == 2).count();
        by_degree[q].push(s);
    }
    let mut start: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); d + 1];
    for q in 0..=d {
        for s in &by_degree[q] {
            start.insert(s.clone(), cells[q].len());
            let axes: Vec<usize> = (0..d).filter(|&a| s[a] == 2).collect();
            for w in language.windows(s)? {
                cells[q].push(Cell {
                    label: CellLabel::Window { extents: s.clone(), colors: w.clone() },
                    axes: axes.clone(),
                });
            }
        }
    }
    let lookup = |shape: &[usize], colors: &[u32]| -> Result<usize> {
        language
            .index_of(shape, colors)
            .map(|i| start[shape] + i)
            .ok_or_else(|| Error::IllegalFace(format!("window {colors:?} of shape {shape:?} is not legal")))
    };

    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
    for q in 1..=d {
        faces[q] = cells[q]
            .par_iter()
            .map(|cell| {
                let CellLabel::Window { extents, colors } = &cell.label else { unreachable!() };
                let mut out = Vec::with_capacity(2 * q);
                for &a in &cell.axes {
                    let mut shape = extents.clone();
                    shape[a] = 1;
                    for side in 0..2 {
                        let mut off = vec![0; d];
                        off[a] = side;
                        out.push(lookup(&shape, &sub_box(colors, extents, &off, &shape))?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
    }

    let children: Vec<Vec<Vec<usize>>> = (0..=d)
        .map(|q| {
            cells[q]
                .par_iter()
                .map(|cell| {
                    let CellLabel::Window { extents, colors } = &cell.label else { unreachable!() };
                    let sub = rule.substitute_once(extents, colors);
                    let grid = vec![l; q];
                    box_points(&grid)
                        .map(|t| {
                            let mut off = vec![anchor; d];
                            for (i, &a) in cell.axes.iter().enumerate() {
                                off[a] += t[i];
                            }
                            lookup(extents, &sub_box(&sub.colors, &sub.extents, &off, extents))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let counts: Vec<usize> = cells.iter().map(Vec::len).collect();
    let boundary = CellComplex::boundaries_from_faces(Geometry::Cubical, &faces, &counts);
    let index = cells
        .iter()
        .flat_map(|cs| cs.iter().enumerate())
        .map(|(i, cell)| match &cell.label {
            CellLabel::Window { extents, colors } => ((extents.clone(), colors.clone()), i),
            _ => unreachable!(),
        })
        .collect();
    let complex = CellComplex {
        model: Model::Dual,
        geometry: Geometry::Cubical,
        dim: d,
        cells,
        faces,
        boundary,
        faces_exact: true,
        index: CellIndex::Windows(index),
    };
    let map = CellMap {
        matrices: matrices_from_children(&children),
        children: Some(children),
        expansion: l,
        anchor: Some(anchor),
    };
    super::check_chain_map(&complex, &map)?;
    Ok((complex, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::builtin;
    use crate::linalg::IntMatrix;
    use crate::patches::enumerate_legal_windows;

    fn dual(rule: &SubstitutionRule) -> (CellComplex, CellMap) {
        let lang = enumerate_legal_windows(rule, &unit_shapes(rule.dim)).unwrap();
        build_dual_complex(rule, &lang, 0).unwrap()
    }

    #[test]
    fn torus_model() {
        let (c, m) = dual(&crate::substitution::one_color(2, 2));
        assert_eq!(c.counts(), vec![1, 2, 1]);
        assert!(c.boundary.iter().all(IntMatrix::is_zero));
        assert_eq!(m.matrices[2].to_i64().unwrap(), vec![vec![4]]);
        assert_eq!(m.matrices[0].to_i64().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn circle_map_is_expansion() {
        let (c, m) = dual(&crate::substitution::one_color(1, 3));
        assert_eq!(c.counts(), vec![1, 1]);
        assert_eq!(m.matrices[1].to_i64().unwrap(), vec![vec![3]]);
    }

    #[test]
    fn two_dimensional_counts() {
        assert_eq!(dual(&builtin("ex3").unwrap()).0.counts(), vec![3, 14, 23]);
        assert_eq!(dual(&builtin("ex4").unwrap()).0.counts(), vec![3, 14, 21]);
    }

    #[test]
    fn every_anchor_gives_a_chain_map() {
        let r = builtin("ex1-a").unwrap();
        let lang = enumerate_legal_windows(&r, &unit_shapes(1)).unwrap();
        for anchor in 0..r.expansion {
            assert!(build_dual_complex(&r, &lang, anchor).is_ok());
        }
    }

    #[test]
    fn limits_do_not_depend_on_the_anchor() {
        let r = builtin("ex3").unwrap();
        let lang = enumerate_legal_windows(&r, &unit_shapes(2)).unwrap();
        let summaries = |anchor| {
            let (c, m) = build_dual_complex(&r, &lang, anchor).unwrap();
            (0..=2)
                .map(|q| crate::cohomology::degree_cohomology(&c, &m, q).unwrap().limit.summary())
                .map(|s| (s.limit_rank, s.eigenvalues, s.stable_torsion))
                .collect::<Vec<_>>()
        };
        let base = summaries(0);
        for anchor in 1..r.expansion {
            assert_eq!(summaries(anchor), base, "anchor {anchor}");
        }
    }
}
