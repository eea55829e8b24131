//! Cell complexes modelling tiling spaces, with exact boundary matrices and
//! the substitution-induced chain map.
//!
//! Every complex here stores a face table, so boundaries and cup products
//! read incidences from one place. Cubical cells list their faces as
//! `[low_0, high_0, low_1, high_1, …]` over spanned axes in increasing order;
//! simplicial cells list `[d_0, …, d_q]` (vertex deletions).

mod ap;
mod dual;
mod quotient;
mod simplicial;

pub use ap::build_ap_uncollared;
pub use dual::build_dual_complex;
pub use quotient::{quotient_by_involution, CellInvolution, SymmetryLevel, SymmetrySpec};
pub use simplicial::triangulate;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::matrix::bigint_to_json;
use crate::linalg::{smith_tracked, IntMatrix, Track};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Dual,
    ApUncollared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Cubical,
    Simplicial,
}

/// Position of a local face of the unit cube along one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Spanned,
    Low,
    High,
}

/// What a cell is, in terms of the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CellLabel {
    /// A legal window; spanned axes are those with extent 2.
    Window { extents: Vec<usize>, colors: Vec<u32> },
    /// A face of a prototile cube; the smallest member of its class.
    Face { color: u32, roles: Vec<Role> },
    /// A simplex of the cube triangulation: a cube cell and an ordered
    /// partition of its spanned axes (the order in which they rise to 1).
    Simplex { cube: usize, blocks: Vec<Vec<usize>> },
    /// An orbit under an involution, named by its first member.
    Orbit { representative: usize, size: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub label: CellLabel,
    /// Spanned axes, increasing. For simplices: the axes of the carrier cube.
    pub axes: Vec<usize>,
}

/// A finite regular CW complex with cubical or simplicial cells.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub model: Model,
    pub geometry: Geometry,
    pub dim: usize,
    pub cells: Vec<Vec<Cell>>,
    /// `faces[q][c]`: face cells (in degree q−1) of cell `c`.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `boundary[q]`: ∂_q as an n_{q−1} × n_q matrix (`boundary[0]` is 0 × n_0).
    pub boundary: Vec<IntMatrix>,
    /// Whether `faces` realizes every cell's faces (false after a quotient
    /// that permutes face positions); cup products need it.
    pub faces_exact: bool,
    pub(crate) index: CellIndex,
}

/// Lookup from construction data back to cells, for building involutions.
#[derive(Clone, Debug)]
pub(crate) enum CellIndex {
    None,
    /// (extents, colors) -> index within its degree.
    Windows(HashMap<(Vec<usize>, Vec<u32>), usize>),
    Faces(ap::FaceClasses),
    Simplices { base: Box<CellComplex>, lookup: HashMap<(usize, Vec<Vec<usize>>), usize> },
}

/// The substitution acting on cellular chains.
///
/// `matrices[q][r][c]` is the signed count of cell `r` in the image of cell `c`.
#[derive(Clone, Debug)]
pub struct CellMap {
    pub matrices: Vec<IntMatrix>,
    /// For cubical complexes: `children[q][c][t]` is the cell at grid
    /// position `t` (flat over the spanned axes, each of extent λ) in the
    /// inflated image of `c`. Used to subdivide the map for triangulations.
    pub children: Option<Vec<Vec<Vec<usize>>>>,
    pub expansion: usize,
    /// Window offset used to pick child cells (dual model).
    pub anchor: Option<usize>,
}

impl CellComplex {
    pub fn count(&self, q: usize) -> usize {
        self.cells.get(q).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim).map(|q| self.count(q)).collect()
    }

    /// δ^q = ∂_{q+1}ᵀ, an n_{q+1} × n_q matrix; zero rows when q = dim.
    pub fn coboundary(&self, q: usize) -> IntMatrix {
        if q < self.dim {
            self.boundary[q + 1].transpose()
        } else {
            IntMatrix::zeros(0, self.count(q))
        }
    }

    /// Builds the boundary matrices from the face table.
    pub(crate) fn boundaries_from_faces(geometry: Geometry, faces: &[Vec<Vec<usize>>], counts: &[usize]) -> Vec<IntMatrix> {
        (0..counts.len())
            .map(|q| {
                if q == 0 {
                    return IntMatrix::zeros(0, counts[0]);
                }
                let mut trip = Vec::new();
                for (c, fs) in faces[q].iter().enumerate() {
                    for (j, &f) in fs.iter().enumerate() {
                        let sign = match geometry {
                            // (−1)^i (high − low) over spanned positions i
                            Geometry::Cubical => {
                                let i = j / 2;
                                let s = if j % 2 == 1 { 1 } else { -1 };
                                if i % 2 == 0 { s } else { -s }
                            }
                            Geometry::Simplicial => {
                                if j % 2 == 0 { 1 } else { -1 }
                            }
                        };
                        trip.push((f, c, BigInt::from(sign)));
                    }
                }
                IntMatrix::from_triplets(counts[q - 1], counts[q], trip)
            })
            .collect()
    }

    /// Cubical face obtained by collapsing the given spanned positions of
    /// cell `c` (degree q) to the low or high side.
    pub fn cube_face(&self, q: usize, c: usize, positions: &[usize], high: bool) -> usize {
        debug_assert_eq!(self.geometry, Geometry::Cubical);
        let mut pos: Vec<usize> = positions.to_vec();
        pos.sort_unstable();
        let (mut deg, mut cell) = (q, c);
        // collapse from the largest position so smaller ones keep their index
        for &p in pos.iter().rev() {
            cell = self.faces[deg][cell][2 * p + usize::from(high)];
            deg -= 1;
        }
        cell
    }

    /// Simplicial face keeping the vertices `lo..=hi` of a q-simplex.
    pub fn simplex_face(&self, q: usize, c: usize, lo: usize, hi: usize) -> usize {
        debug_assert_eq!(self.geometry, Geometry::Simplicial);
        let (mut deg, mut cell) = (q, c);
        for _ in hi..q {
            cell = self.faces[deg][cell][deg];
            deg -= 1;
        }
        for _ in 0..lo {
            cell = self.faces[deg][cell][0];
            deg -= 1;
        }
        cell
    }

    /// JSON dump: cells, boundary triplets and (optionally) chain-map triplets.
    pub fn dump_json(&self, map: Option<&CellMap>) -> serde_json::Value {
        let trip = |m: &IntMatrix| -> serde_json::Value {
            serde_json::json!({
                "rows": m.nrows(),
                "cols": m.ncols(),
                "entries": m.triplets()
                    .map(|(r, c, v)| serde_json::json!([r, c, bigint_to_json(v)]))
                    .collect::<Vec<_>>(),
            })
        };
        serde_json::json!({
            "model": self.model,
            "geometry": self.geometry,
            "dimension": self.dim,
            "counts": self.counts(),
            "cells": self.cells,
            "boundary": self.boundary.iter().map(trip).collect::<Vec<_>>(),
            "chain_map": map.map(|m| m.matrices.iter().map(trip).collect::<Vec<_>>()),
        })
    }
}

/// Outcome of [`verify_complex`].
#[derive(Clone, Debug, Serialize)]
pub struct ComplexDiagnostics {
    pub counts: Vec<usize>,
    pub euler_characteristic: i64,
    /// Rational Betti numbers, from boundary ranks.
    pub betti: Vec<usize>,
}

/// Checks ∂² = 0, the chain-map identity and Euler characteristic consistency.
pub fn verify_complex(complex: &CellComplex, map: Option<&CellMap>) -> Result<ComplexDiagnostics> {
    for q in 2..=complex.dim {
        if !complex.boundary[q - 1].mul(&complex.boundary[q]).is_zero() {
            return Err(Error::Verification(format!("boundary squares to nonzero in degree {q}")));
        }
    }
    if let Some(m) = map {
        check_chain_map(complex, m)?;
    }
    let ranks: Vec<usize> = (0..=complex.dim)
        .map(|q| if q == 0 { 0 } else { smith_tracked(&complex.boundary[q], Track::NONE).rank() })
        .collect();
    let counts = complex.counts();
    let betti: Vec<usize> = (0..=complex.dim)
        .map(|q| counts[q] - ranks[q] - ranks.get(q + 1).copied().unwrap_or(0))
        .collect();
    let alt = |v: &[usize]| v.iter().enumerate().map(|(q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) }).sum::<i64>();
    let euler = alt(&counts);
    if euler != alt(&betti) {
        return Err(Error::Verification("Euler characteristic mismatch".into()));
    }
    Ok(ComplexDiagnostics { counts, euler_characteristic: euler, betti })
}

/// Asserts ∂_q·M_q = M_{q−1}·∂_q for every q.
pub fn check_chain_map(complex: &CellComplex, map: &CellMap) -> Result<()> {
    for q in 1..=complex.dim {
        let lhs = complex.boundary[q].mul(&map.matrices[q]);
        let rhs = map.matrices[q - 1].mul(&complex.boundary[q]);
        if lhs != rhs {
            return Err(Error::ChainMapViolation(q));
        }
    }
    Ok(())
}

/// Chain-map matrices counting children, all with sign +1.
pub(crate) fn matrices_from_children(children: &[Vec<Vec<usize>>]) -> Vec<IntMatrix> {
    children
        .iter()
        .map(|cells| {
            let n = cells.len();
            let trip = cells
                .iter()
                .enumerate()
                .flat_map(|(c, ch)| ch.iter().map(move |&r| (r, c, BigInt::one())));
            IntMatrix::from_triplets(n, n, trip)
        })
        .collect()
}

/// Sign of the permutation that sorts `v` (entries distinct).
pub(crate) fn sort_sign(v: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}
