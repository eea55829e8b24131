//! Finitely generated abelian groups H^q with cochain-level generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complexes::{CellComplex, CellMap};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, smith_tracked, IntMatrix, LatticeSolver, Track};

/// H^q = ker δ^q / im δ^{q−1}, presented as Z/d₁ ⊕ … ⊕ Z/d_t ⊕ Z^rank.
///
/// Generators are ordered torsion first, then free; each carries a cocycle lift.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    pub degree: usize,
    pub rank: usize,
    /// Invariant factors, each at least 2, in divisibility order.
    pub torsion: Vec<BigInt>,
    /// Cocycle lifts of the generators, one per coordinate.
    pub generators: Vec<Vec<BigInt>>,
    coboundary: IntMatrix,
    u: IntMatrix,
    torsion_rows: Vec<usize>,
    image_rank: usize,
    free_solver: LatticeSolver,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub rank: usize,
    #[serde(serialize_with = "crate::linalg::matrix::serialize_bigint_vec")]
    pub torsion: Vec<BigInt>,
    pub display: String,
}

impl FgAbGroup {
    /// Number of generators (torsion plus free).
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.rank
    }

    /// Order of each generator; 0 marks a free generator.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat_n(BigInt::zero(), self.rank));
        o
    }

    /// Coordinates of the class of a cocycle, torsion entries reduced.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if !self.coboundary.mul_vec(z).iter().all(Zero::is_zero) {
            return Err(Error::NotACocycle(self.degree));
        }
        let y = self.u.mul_vec(z);
        let mut out: Vec<BigInt> = self
            .torsion_rows
            .iter()
            .zip(&self.torsion)
            .map(|(&i, d)| y[i].mod_floor(d))
            .collect();
        let free = self.free_solver.solve(&y[self.image_rank..]).ok_or(Error::NotACocycle(self.degree))?;
        out.extend(free);
        Ok(out)
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary { rank: self.rank, torsion: self.torsion.clone(), display: describe(self.rank, &self.torsion) }
    }
}

/// Renders `Z_2^14 + Z_4 + Z^126` style descriptions; `0` for the trivial group.
pub fn describe(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < torsion.len() {
        let j = (i..torsion.len()).find(|&j| torsion[j] != torsion[i]).unwrap_or(torsion.len());
        let n = j - i;
        parts.push(if n == 1 { format!("Z_{}", torsion[i]) } else { format!("Z_{}^{}", torsion[i], n) });
        i = j;
    }
    match rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

/// Integral cellular cohomology in degree q.
pub fn cochain_cohomology(complex: &CellComplex, q: usize) -> FgAbGroup {
    let n = complex.count(q);
    let incoming = if q == 0 { IntMatrix::zeros(n, 0) } else { complex.coboundary(q - 1) };
    let outgoing = complex.coboundary(q);
    let s = smith_tracked(&incoming, Track::LEFT);
    let r = s.rank();
    let u = s.u.expect("left transform tracked");
    let u_inv = s.u_inv.expect("left transform tracked");
    let tail: Vec<usize> = (r..n).collect();
    let basis_tail = u_inv.select_columns(&tail);
    let w = outgoing.mul(&basis_tail);
    let kernel = integer_kernel(&w);
    let k = IntMatrix::from_columns(n - r, &kernel);
    let mut generators = Vec::new();
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    for (i, d) in s.factors.iter().enumerate() {
        if !d.is_one() {
            torsion.push(d.clone());
            torsion_rows.push(i);
            generators.push(u_inv.column(i));
        }
    }
    for col in &kernel {
        generators.push(basis_tail.mul_vec(col));
    }
    FgAbGroup {
        degree: q,
        rank: kernel.len(),
        torsion,
        generators,
        coboundary: outgoing,
        u,
        torsion_rows,
        image_rank: r,
        free_solver: LatticeSolver::new(&k),
    }
}

/// Matrix of the map induced on H^q by the cochain map Mᵀ, in generator
/// coordinates (column j = image of generator j).
pub fn induced_cohomology_map(complex: &CellComplex, map: &CellMap, group: &FgAbGroup) -> Result<IntMatrix> {
    let q = group.degree;
    let phi = map.matrices[q].transpose();
    if q < complex.dim {
        let lhs = map.matrices[q + 1].transpose().mul(&complex.coboundary(q));
        if lhs != complex.coboundary(q).mul(&phi) {
            return Err(Error::NotCochainMap(q));
        }
    }
    let cols = group
        .generators
        .iter()
        .map(|g| group.coordinates(&phi.mul_vec(g)).map_err(|_| Error::NotCochainMap(q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(group.ngens(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::build_dual_complex;
    use crate::patches::{enumerate_legal_windows, unit_shapes};
    use crate::substitution::one_color;

    #[test]
    fn torus_groups() {
        let r = one_color(2, 2);
        let lang = enumerate_legal_windows(&r, &unit_shapes(2)).unwrap();
        let (c, m) = build_dual_complex(&r, &lang, 0).unwrap();
        let ranks: Vec<usize> = (0..=2).map(|q| cochain_cohomology(&c, q).rank).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
        let h1 = cochain_cohomology(&c, 1);
        let phi = induced_cohomology_map(&c, &m, &h1).unwrap();
        assert_eq!(phi, IntMatrix::scalar(2, 2));
    }

    #[test]
    fn describe_groups() {
        let t: Vec<BigInt> = [2, 2, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(describe(3, &t), "Z_2^2 + Z_4 + Z^3");
        assert_eq!(describe(0, &[]), "0");
    }
}
