//! Frequency modules: the image of top-degree cohomology under the
//! Ruelle–Sullivan map, read off a Perron–Frobenius eigenvector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complexes::{CellComplex, CellMap};
use crate::error::{Error, Result};
use crate::linalg::matrix::serialize_bigint;
use crate::linalg::matrix::serialize_bigint_vec;
use crate::linalg::{perron_frobenius_vector, rational_eigenspace, simple_eigenvector, IntMatrix};

/// The subgroup (1/N)·Z[1/λ] of R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrequencyModule {
    /// N: the eigenvector sum with every prime factor of λ removed.
    #[serde(serialize_with = "serialize_bigint")]
    pub denominator: BigInt,
    /// Product of the distinct primes of λ; Z[1/λ] = Z[1/base].
    pub base: usize,
    pub expansion: usize,
    #[serde(serialize_with = "serialize_bigint")]
    pub sum: BigInt,
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub vector: Vec<BigInt>,
    pub rendered: String,
}

impl FrequencyModule {
    /// Builds the module from a nonnegative eigenvector.
    pub fn from_vector(vector: Vec<BigInt>, expansion: usize) -> Self {
        let sum: BigInt = vector.iter().sum();
        let denominator = strip_factors(&sum, expansion);
        let base = radical(expansion);
        let rendered = if denominator.is_one() {
            format!("Z[1/{base}]")
        } else {
            format!("(1/{denominator})Z[1/{base}]")
        };
        FrequencyModule { denominator, base, expansion, sum, vector, rendered }
    }
}

/// Product of the distinct prime factors of n.
pub fn radical(mut n: usize) -> usize {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            r *= p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 { r * n } else { r }
}

/// Divides out every prime factor of `base` from `n`.
pub fn strip_factors(n: &BigInt, base: usize) -> BigInt {
    let mut n = n.abs();
    if n.is_zero() {
        return n;
    }
    let b = BigInt::from(base);
    loop {
        let g = n.gcd(&b);
        if g.is_one() {
            return n;
        }
        while (&n % &g).is_zero() {
            n /= &g;
        }
    }
}

/// Frequency module from the top-cell matrix M_d and its PF eigenvalue λ^d.
pub fn frequency_module(complex: &CellComplex, map: &CellMap) -> Result<FrequencyModule> {
    let d = complex.dim;
    let pf = BigInt::from(map.expansion).pow(d as u32);
    let v = perron_frobenius_vector(&map.matrices[d], &pf)?;
    Ok(FrequencyModule::from_vector(v, map.expansion))
}

/// A block of q-cells sharing spanned axes and connected under the map.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyComponent {
    pub axes: Vec<usize>,
    pub cells: Vec<usize>,
    pub module: FrequencyModule,
}

/// Per-component frequency modules in degree q.
///
/// q-cells are grouped by their spanned axes, then split into the weakly
/// connected components of the graph "cell → cells in its image". Each
/// component's block of M_q must have a one-dimensional eigenspace at λ^q
/// spanned by a nonnegative vector; transient cells may carry weight 0.
pub fn frequency_module_per_dimension(complex: &CellComplex, map: &CellMap, q: usize) -> Result<Vec<FrequencyComponent>> {
    let n = complex.count(q);
    let m = &map.matrices[q];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (r, c, _) in m.triplets() {
        if complex.cells[q][r].axes == complex.cells[q][c].axes {
            let (a, b) = (find(&mut parent, r), find(&mut parent, c));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for c in 0..n {
        let root = find(&mut parent, c);
        groups.entry(root).or_default().push(c);
    }
    let pf = BigInt::from(map.expansion).pow(q as u32);
    let mut out = Vec::with_capacity(groups.len());
    for cells in groups.into_values() {
        let block = m.select_rows(&cells).select_columns(&cells);
        let basis = match simple_eigenvector(&block, &pf) {
            Some(v) => vec![v],
            None => rational_eigenspace(&block, &pf),
        };
        let not_pf = |dim| Error::NotPrimitiveSpectrum { eigenvalue: (&pf).try_into().unwrap_or(i64::MAX), dim };
        if basis.len() != 1 {
            return Err(not_pf(basis.len()));
        }
        let mut v = basis.into_iter().next().expect("one vector");
        if v.iter().any(Signed::is_negative) {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        if v.iter().any(Signed::is_negative) {
            return Err(not_pf(1));
        }
        out.push(FrequencyComponent {
            axes: complex.cells[q][cells[0]].axes.clone(),
            cells,
            module: FrequencyModule::from_vector(v, map.expansion),
        });
    }
    Ok(out)
}

/// Checks M·v = μ·v for a candidate eigenvector.
pub fn is_eigenvector(m: &IntMatrix, v: &[BigInt], mu: &BigInt) -> bool {
    m.mul_vec(v).iter().zip(v).all(|(l, r)| *l == r * mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::build_dual_complex;
    use crate::patches::{enumerate_legal_windows, unit_shapes};
    use crate::substitution::one_color;

    #[test]
    fn stripping() {
        assert_eq!(strip_factors(&BigInt::from(750), 5), BigInt::from(6));
        assert_eq!(strip_factors(&BigInt::from(24576), 2), BigInt::from(3));
        assert_eq!(strip_factors(&BigInt::from(52500), 5), BigInt::from(84));
        assert_eq!(strip_factors(&BigInt::from(29952), 3), BigInt::from(3328));
        assert_eq!(strip_factors(&BigInt::from(7), 6), BigInt::from(7));
        assert_eq!(radical(4), 2);
        assert_eq!(radical(12), 6);
        assert_eq!(radical(5), 5);
        let m = FrequencyModule::from_vector(vec![BigInt::from(6), BigInt::from(18)], 4);
        assert_eq!(m.rendered, "(1/3)Z[1/2]");
    }

    #[test]
    fn one_prototile_module_is_z_localized() {
        let r = one_color(2, 3);
        let lang = enumerate_legal_windows(&r, &unit_shapes(2)).unwrap();
        let (c, m) = build_dual_complex(&r, &lang, 0).unwrap();
        let f = frequency_module(&c, &m).unwrap();
        assert_eq!(f.vector, vec![BigInt::one()]);
        assert_eq!(f.rendered, "Z[1/3]");
    }
}
