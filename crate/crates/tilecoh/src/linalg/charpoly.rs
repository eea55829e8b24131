//! Characteristic polynomials by Hessenberg reduction modulo word-size primes
//! and Chinese remaindering under a Hadamard-type coefficient bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::matrix::IntMatrix;
use super::poly::IntPoly;

/// Primes just below 2³¹, descending. Products of two residues fit in a u64.
pub(crate) fn primes_below_2_31(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = (1 << 31) - 1;
    while out.len() < count {
        if is_prime_u32(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = (v % BigInt::from(p)).to_i64().unwrap();
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

/// Characteristic polynomial `det(t·I − A)`, exact.
pub fn characteristic_polynomial(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square(), "characteristic polynomial needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return IntPoly::one();
    }
    // |c_k| ≤ e_k(r₁,…,rₙ) ≤ Π (1 + rᵢ), rᵢ ≥ Euclidean norm of row i.
    let mut bound = BigUint::one();
    for row in a.rows_iter() {
        let sq: BigUint = row.iter().map(|(_, v)| v.magnitude() * v.magnitude()).sum();
        let r = sq.sqrt() + 2u32;
        bound *= r;
    }
    let needed_bits = bound.bits() + 2;
    let count = (needed_bits / 30 + 1) as usize;
    let primes = primes_below_2_31(count);
    let residues: Vec<Vec<u64>> = primes.par_iter().map(|&p| charpoly_mod(a, p)).collect();
    crt_symmetric(&residues, &primes)
}

/// Combines residue vectors into the symmetric-range integers they determine.
/// Rank of a matrix over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = a.to_dense().iter().map(|r| r.iter().map(|v| reduce(v, p)).collect()).collect();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in c..cols {
                    m[r][k] = (m[r][k] + p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// True if the square matrix is certainly invertible over Q (its
/// determinant is nonzero modulo a large prime). False is inconclusive.
pub fn nonsingular_certificate(a: &IntMatrix) -> bool {
    a.is_square() && rank_mod_p(a, primes_below_2_31(1)[0]) == a.nrows()
}

pub(crate) fn crt_symmetric(residues: &[Vec<u64>], primes: &[u64]) -> IntPoly {
    let len = residues[0].len();
    let mut modulus = BigInt::one();
    let mut coeffs = vec![BigInt::zero(); len];
    for (res, &p) in residues.iter().zip(primes) {
        let pb = BigInt::from(p);
        let m_mod_p = reduce(&modulus, p);
        let inv = inv_mod(m_mod_p, p);
        for (c, &r) in coeffs.iter_mut().zip(res) {
            let cur = reduce(c, p);
            let delta = (r + p - cur) % p * inv % p;
            *c += &modulus * BigInt::from(delta);
        }
        modulus *= pb;
    }
    let half = &modulus / 2u32;
    for c in &mut coeffs {
        if *c > half {
            *c -= &modulus;
        }
    }
    IntPoly::new(coeffs)
}

/// Characteristic polynomial modulo a prime `p < 2³¹`, coefficients low to high.
pub(crate) fn charpoly_mod(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.nrows();
    let mut h = vec![vec![0u64; n]; n];
    for (i, j, v) in a.triplets() {
        h[i][j] = reduce(v, p);
    }
    // Similarity reduction to upper Hessenberg form.
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], p);
        for i in k + 2..n {
            if h[i][k] == 0 {
                continue;
            }
            let f = h[i][k] * inv % p;
            // row_i -= f·row_{k+1}
            let (top, bottom) = h.split_at_mut(i);
            let src = &top[k + 1];
            for (x, &y) in bottom[0].iter_mut().zip(src.iter()) {
                *x = (*x + p - f * y % p) % p;
            }
            // col_{k+1} += f·col_i
            for row in h.iter_mut() {
                let add = f * row[i] % p;
                row[k + 1] = (row[k + 1] + add) % p;
            }
        }
    }
    // p_m = (t − h_mm)·p_{m−1} − Σ_{i<m} h_{i,m}·(Π_{j=i+1..m} h_{j,j−1})·p_{i−1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - h[m][m] * c % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % p;
            if prod == 0 {
                break;
            }
            let coef = h[i][m] * prod % p;
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = (next[k] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn small_examples() {
        assert_eq!(characteristic_polynomial(&m(&[&[4, 1], &[1, 4]])), IntPoly::from_i64(&[15, -8, 1]));
        assert_eq!(characteristic_polynomial(&m(&[&[80, 1], &[81, 0]])), IntPoly::from_i64(&[-81, -80, 1]));
        let id = characteristic_polynomial(&IntMatrix::identity(3));
        assert_eq!(id, IntPoly::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn needs_pivoting() {
        // Zero subdiagonal entries force row/column swaps.
        let a = m(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(characteristic_polynomial(&a), IntPoly::from_i64(&[0, -1, 0, 1]));
    }

    #[test]
    fn large_coefficients_reconstructed() {
        let a = m(&[&[1_000_000_007, 3], &[5, -999_999_937]]);
        let tr = BigInt::from(1_000_000_007i64 - 999_999_937);
        let det = BigInt::from(1_000_000_007i64) * BigInt::from(-999_999_937i64) - 15;
        assert_eq!(characteristic_polynomial(&a), IntPoly::new(vec![det, -tr, BigInt::one()]));
    }
}
