//! Integer eigenvectors: rational eigenspaces scaled to primitive integer
//! vectors, and Perron–Frobenius vectors of nonnegative matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::charpoly::{inv_mod, primes_below_2_31, reduce};
use super::lattice::{integer_kernel, primitive};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Null vector of `A − μ·I` mod p when the nullity mod p is exactly one.
fn null_vector_mod_p(a: &IntMatrix, mu: &BigInt, p: u64) -> Option<Vec<u64>> {
    let n = a.nrows();
    let mut m = vec![vec![0u64; n]; n];
    for (r, c, v) in a.triplets() {
        m[r][c] = reduce(v, p);
    }
    let mu = reduce(mu, p);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = (row[i] + p - mu) % p;
    }
    // reduced row echelon form
    let mut pivots = Vec::with_capacity(n);
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for x in m[row][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col] == 0 {
                continue;
            }
            let f = other[col];
            for (x, &y) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut v = vec![0u64; n];
    v[free] = 1;
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = (p - m[r][free]) % p;
    }
    Some(v)
}

/// Rational number with |num|, den ≤ sqrt(m/2) congruent to `a` mod `m`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// The primitive integer vector spanning `ker(A − μ·I)` when that kernel is
/// one-dimensional, found modulo word-size primes and certified exactly.
///
/// Returns `None` when the kernel is not certifiably one-dimensional (the
/// caller should fall back to [`rational_eigenspace`]).
pub fn simple_eigenvector(a: &IntMatrix, mu: &BigInt) -> Option<Vec<BigInt>> {
    assert!(a.is_square(), "eigenvector needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return None;
    }
    let mut modulus = BigInt::from(1);
    let mut residues: Vec<BigInt> = Vec::new();
    let mut anchor: Option<usize> = None;
    let mut misses = 0;
    for p in primes_below_2_31(256) {
        let Some(mut v) = null_vector_mod_p(a, mu, p) else {
            // nullity mod p bounds the true nullity from above; a few
            // unlucky primes are tolerated before giving up
            misses += 1;
            if misses > 3 || anchor.is_none() && misses > 2 {
                return None;
            }
            continue;
        };
        let k = *anchor.get_or_insert_with(|| v.iter().position(|&x| x != 0).expect("nonzero null vector"));
        if v[k] == 0 {
            continue;
        }
        let s = inv_mod(v[k], p);
        v.iter_mut().for_each(|x| *x = *x * s % p);
        // Chinese remaindering onto the running residues
        let pb = BigInt::from(p);
        if residues.is_empty() {
            residues = v.iter().map(|&x| BigInt::from(x)).collect();
        } else {
            let inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
            for (r, &x) in residues.iter_mut().zip(&v) {
                let diff = (BigInt::from(x) - reduce(r, p) as i64).mod_floor(&pb);
                *r += &modulus * ((diff * &inv) % &pb);
            }
        }
        modulus *= &pb;
        let Some(fracs) = residues.iter().map(|r| rational_reconstruction(r, &modulus)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let den = fracs.iter().fold(BigInt::from(1), |l, (_, d)| l.lcm(d));
        let cand: Vec<BigInt> = primitive(&fracs.iter().map(|(num, d)| num * (&den / d)).collect::<Vec<_>>());
        if a.mul_vec(&cand).iter().zip(&cand).all(|(l, r)| *l == r * mu) {
            return Some(cand);
        }
    }
    None
}

/// Basis of `ker(A − μ·I)` over Q, each vector primitive with content 1.
///
/// The vectors form a basis of the saturated kernel lattice, so every integer
/// eigenvector is an integer combination of them. Empty if μ is not an eigenvalue.
pub fn rational_eigenspace(a: &IntMatrix, eigenvalue: &BigInt) -> Vec<Vec<BigInt>> {
    assert!(a.is_square(), "eigenspace needs a square matrix");
    let shifted = a.sub(&IntMatrix::scalar(a.nrows(), eigenvalue.clone()));
    integer_kernel(&shifted).iter().map(|v| primitive(v)).collect()
}

/// The positive primitive eigenvector for the Perron–Frobenius eigenvalue.
pub fn perron_frobenius_vector(a: &IntMatrix, pf_eigenvalue: &BigInt) -> Result<Vec<BigInt>> {
    let basis = match simple_eigenvector(a, pf_eigenvalue) {
        Some(v) => vec![v],
        None => rational_eigenspace(a, pf_eigenvalue),
    };
    let not_pf = |dim| Error::NotPrimitiveSpectrum {
        eigenvalue: pf_eigenvalue.try_into().unwrap_or(i64::MAX),
        dim,
    };
    if basis.len() != 1 {
        return Err(not_pf(basis.len()));
    }
    let v = &basis[0];
    let all_pos = v.iter().all(|x| x.is_positive());
    let all_neg = v.iter().all(|x| x.is_negative());
    let v: Vec<BigInt> = if all_pos {
        v.clone()
    } else if all_neg {
        v.iter().map(|x| -x).collect()
    } else {
        return Err(not_pf(1));
    };
    debug_assert!(a.mul_vec(&v).iter().zip(&v).all(|(l, r)| *l == r * pf_eigenvalue));
    debug_assert!(!v.iter().any(Zero::is_zero));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn two_by_two_eigenvectors() {
        let a = m(&[&[3, 1], &[1, 3]]);
        assert_eq!(rational_eigenspace(&a, &BigInt::from(4)), vec![v(&[1, 1])]);
        assert_eq!(rational_eigenspace(&a, &BigInt::from(2)), vec![v(&[1, -1])]);
        assert!(rational_eigenspace(&a, &BigInt::from(7)).is_empty());
    }

    #[test]
    fn modular_eigenvector_matches_exact_kernel() {
        let a = m(&[&[3, 3, 1], &[1, 0, 2], &[0, 1, 1]]);
        let mu = BigInt::from(4);
        // 4 is an eigenvalue: det(A − 4I) = 0
        let exact = rational_eigenspace(&a, &mu);
        assert_eq!(exact.len(), 1);
        let fast = simple_eigenvector(&a, &mu).unwrap();
        assert!(fast == exact[0] || fast.iter().map(|x| -x).collect::<Vec<_>>() == exact[0]);
        assert!(simple_eigenvector(&m(&[&[2, 0], &[0, 2]]), &BigInt::from(2)).is_none());
        assert!(simple_eigenvector(&a, &BigInt::from(5)).is_none());
    }

    #[test]
    fn reconstruction_of_fractions() {
        let m = BigInt::from(1_000_003i64);
        // −2/3 mod m
        let a = (BigInt::from(-2) * BigInt::from(super::inv_mod(3, 1_000_003))).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m), Some((BigInt::from(-2), BigInt::from(3))));
    }

    #[test]
    fn one_prototile_pf() {
        let a = m(&[&[9]]);
        assert_eq!(perron_frobenius_vector(&a, &BigInt::from(9)).unwrap(), v(&[1]));
    }

    #[test]
    fn repeated_eigenvalue_rejected() {
        let a = m(&[&[2, 0], &[0, 2]]);
        assert!(matches!(
            perron_frobenius_vector(&a, &BigInt::from(2)),
            Err(Error::NotPrimitiveSpectrum { dim: 2, .. })
        ));
    }
}
