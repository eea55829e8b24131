//! Exact integer linear algebra: sparse matrices, Smith normal form,
//! kernels, characteristic polynomials and integer eigenvectors.

pub mod charpoly;
pub mod eigen;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod snf;

pub use charpoly::{characteristic_polynomial, nonsingular_certificate, rank_mod_p};
pub use eigen::{perron_frobenius_vector, rational_eigenspace, simple_eigenvector};
pub use lattice::{content, integer_kernel, lattice_basis, primitive, solve_linear_integer, LatticeSolver};
pub use matrix::IntMatrix;
pub use poly::{IntPoly, RootFactorization};
pub use snf::{smith_normal_form, smith_tracked, SnfDecomposition, SnfParts, Track};

use num_bigint::BigInt;

/// Shorthand for building test and fixture vectors.
pub fn ints(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&a| BigInt::from(a)).collect()
}
