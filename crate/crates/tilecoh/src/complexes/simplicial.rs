//! Kuhn triangulation of a cubical complex, with the subdivided chain map.
//!
//! A simplex is a cube cell together with an ordered partition of its
//! spanned axes: starting at the cube's low corner, the axes of each block
//! rise to 1 together, block by block. Vertex i is the indicator of the first
//! i blocks. The triangulation is natural in axis permutations, so symmetries
//! that reverse cubes act on it without fixed-cell obstructions.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{sort_sign, Cell, CellComplex, CellIndex, CellLabel, CellMap, Geometry};
use crate::error::{Error, Result};
use crate::grid::{box_points, flat_index};
use crate::linalg::IntMatrix;

/// Ordered partitions of `set` into exactly `m` nonempty blocks.
fn ordered_partitions(set: &[usize], m: usize) -> Vec<Vec<Vec<usize>>> {
    if m == 0 {
        return if set.is_empty() { vec![Vec::new()] } else { Vec::new() };
    }
    box_points(&vec![m; set.len()])
        .filter_map(|labels| {
            let mut blocks = vec![Vec::new(); m];
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(set[i]);
            }
            blocks.iter().all(|b| !b.is_empty()).then_some(blocks)
        })
        .collect()
}

/// Triangulates a cubical complex and subdivides its chain map.
pub fn triangulate(complex: &CellComplex, map: &CellMap) -> Result<(CellComplex, CellMap)> {
    if complex.geometry != Geometry::Cubical || !complex.faces_exact {
        return Err(Error::Verification("triangulation needs a cubical complex with an exact face table".into()));
    }
    let Some(children) = &map.children else {
        return Err(Error::Verification("triangulation needs the chain map's child cells".into()));
    };
    let d = complex.dim;
    let l = map.expansion;
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); d + 1];
    let mut lookup: HashMap<(usize, Vec<Vec<usize>>), usize> = HashMap::new();
    for m in 0..=d {
        for k in m..=d {
            if m == 0 && k > 0 {
                break;
            }
            for (f, cube) in complex.cells[k].iter().enumerate() {
                for blocks in ordered_partitions(&cube.axes, m) {
                    lookup.insert((f, blocks.clone()), cells[m].len());
                    cells[m].push(Cell { label: CellLabel::Simplex { cube: f, blocks }, axes: cube.axes.clone() });
                }
            }
        }
    }
    let simplex = |cube: usize, blocks: Vec<Vec<usize>>| -> usize { lookup[&(cube, blocks)] };
    // positions of a set of axes among a cube's spanned axes
    let positions = |axes: &[usize], subset: &[usize]| -> Vec<usize> {
        subset.iter().map(|a| axes.iter().position(|x| x == a).expect("axis of carrier")).collect()
    };

    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
    for m in 1..=d {
        for cell in &cells[m] {
            let CellLabel::Simplex { cube, blocks } = &cell.label else { unreachable!() };
            let k = cell.axes.len();
            let mut fs = Vec::with_capacity(m + 1);
            // d_0: the first block has already risen
            let front = complex.cube_face(k, *cube, &positions(&cell.axes, &blocks[0]), true);
            fs.push(simplex(front, blocks[1..].to_vec()));
            for j in 1..m {
                let mut merged = blocks[..j - 1].to_vec();
                let mut b = blocks[j - 1].clone();
                b.extend(&blocks[j]);
                b.sort_unstable();
                merged.push(b);
                merged.extend_from_slice(&blocks[j + 1..]);
                fs.push(simplex(*cube, merged));
            }
            // d_m: the last block never rises
            let back = complex.cube_face(k, *cube, &positions(&cell.axes, &blocks[m - 1]), false);
            fs.push(simplex(back, blocks[..m - 1].to_vec()));
            faces[m].push(fs);
        }
    }

    // a simplex of the inflated cube splits into the simplices of its unit
    // subcubes: block heights b (non-increasing) choose the subcube, and the
    // rising order π inside it must keep tied blocks in their original order
    let mut matrices = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut trip: Vec<(usize, usize, BigInt)> = Vec::new();
        for (c, cell) in cells[m].iter().enumerate() {
            let CellLabel::Simplex { cube, blocks } = &cell.label else { unreachable!() };
            let k = cell.axes.len();
            if m == 0 {
                trip.push((simplex(children[0][*cube][0], Vec::new()), c, BigInt::from(1)));
                continue;
            }
            let block_of: Vec<usize> = cell
                .axes
                .iter()
                .map(|a| blocks.iter().position(|b| b.contains(a)).expect("partition"))
                .collect();
            let perms: Vec<Vec<usize>> = permutations(m);
            for b in box_points(&vec![l; m]) {
                if b.windows(2).any(|w| w[0] < w[1]) {
                    continue;
                }
                let t: Vec<usize> = block_of.iter().map(|&i| b[i]).collect();
                let child = children[k][*cube][flat_index(&t, &vec![l; k])];
                for pi in &perms {
                    let ordered = (0..m).all(|x| {
                        (x + 1..m).all(|y| b[pi[x]] != b[pi[y]] || pi[x] < pi[y])
                    });
                    if !ordered {
                        continue;
                    }
                    let child_blocks: Vec<Vec<usize>> = pi.iter().map(|&i| blocks[i].clone()).collect();
                    trip.push((simplex(child, child_blocks), c, BigInt::from(sort_sign(pi))));
                }
            }
        }
        let n = cells[m].len();
        matrices.push(IntMatrix::from_triplets(n, n, trip));
    }

    let counts: Vec<usize> = cells.iter().map(Vec::len).collect();
    let boundary = CellComplex::boundaries_from_faces(Geometry::Simplicial, &faces, &counts);
    let tri = CellComplex {
        model: complex.model,
        geometry: Geometry::Simplicial,
        dim: d,
        cells,
        faces,
        boundary,
        faces_exact: true,
        index: CellIndex::Simplices { base: Box::new(complex.clone()), lookup },
    };
    let tmap = CellMap { matrices, children: None, expansion: l, anchor: map.anchor };
    super::check_chain_map(&tri, &tmap)?;
    Ok((tri, tmap))
}

/// All permutations of 0..m in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(m - 1) {
        for pos in 0..=rest.len() {
            let mut p: Vec<usize> = rest.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}
