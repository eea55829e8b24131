//! Integer kernels, linear systems and sublattice bookkeeping, all via SNF.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_tracked, Track};

/// Saturated basis of `{x ∈ Zⁿ : A·x = 0}`, as vectors.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_tracked(a, Track::RIGHT);
    let v = s.v.expect("right transform tracked");
    (s.factors.len()..a.ncols()).map(|j| v.column(j)).collect()
}

/// Some integer `x` with `A·x = b`, if one exists.
pub fn solve_linear_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side length mismatch");
    let s = smith_tracked(a, Track::ALL);
    let ub = s.u.as_ref().unwrap().mul_vec(b);
    let mut y = vec![BigInt::zero(); a.ncols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < s.factors.len() {
            let (q, r) = ubi.div_rem(&s.factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(s.v.as_ref().unwrap().mul_vec(&y))
}

/// Columns forming a basis of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let s = smith_tracked(gens, Track::LEFT);
    let u_inv = s.u_inv.unwrap();
    let cols: Vec<Vec<BigInt>> = s
        .factors
        .iter()
        .enumerate()
        .map(|(k, f)| u_inv.column(k).into_iter().map(|x| x * f).collect())
        .collect();
    IntMatrix::from_columns(gens.nrows(), &cols)
}

/// Solver for repeated membership queries against one fixed lattice.
///
/// Stores `U` and the invariant factors of the generator matrix so each query
/// is one sparse matrix-vector product.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    u: IntMatrix,
    v: IntMatrix,
    factors: Vec<BigInt>,
    gens_cols: usize,
}

impl LatticeSolver {
    pub fn new(gens: &IntMatrix) -> Self {
        let s = smith_tracked(gens, Track::ALL);
        LatticeSolver {
            u: s.u.unwrap(),
            v: s.v.unwrap(),
            factors: s.factors,
            gens_cols: gens.ncols(),
        }
    }

    /// Coefficients `c` with `gens·c = x`, if `x` lies in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let ux = self.u.mul_vec(x);
        let mut y = vec![BigInt::zero(); self.gens_cols];
        for (i, v) in ux.iter().enumerate() {
            if i < self.factors.len() {
                let (q, r) = v.div_rem(&self.factors[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let ux = self.u.mul_vec(x);
        ux.iter().enumerate().all(|(i, v)| {
            if i < self.factors.len() {
                (v % &self.factors[i]).is_zero()
            } else {
                v.is_zero()
            }
        })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Greatest common divisor of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content and makes the first nonzero entry positive.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    v.iter().map(|x| if sign { -(x / &g) } else { x / &g }).collect()
}
