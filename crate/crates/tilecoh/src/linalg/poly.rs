//! Monic integer polynomials: evaluation, division by linear factors and
//! exact integer-root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Integer polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

/// `(root, multiplicity)` pairs plus the leftover factor with no integer roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactorization {
    pub roots: Vec<(BigInt, usize)>,
    pub residual: IntPoly,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient by `(t − r)`; the caller guarantees `r` is a root.
    fn deflate(&self, r: &BigInt) -> IntPoly {
        let n = self.degree();
        let mut q = vec![BigInt::zero(); n];
        let mut acc = BigInt::zero();
        for k in (1..=n).rev() {
            acc = acc * r + &self.coeffs[k];
            q[k - 1] = acc.clone();
        }
        IntPoly::new(q)
    }

    /// Upper bound on the absolute value of every complex root (Fujiwara),
    /// computed with integer roots only.
    pub fn root_bound(&self) -> BigInt {
        let n = self.degree();
        let lead = self.coeffs[n].abs();
        let mut best = BigInt::zero();
        for k in 1..=n {
            let c = self.coeffs[n - k].abs();
            if c.is_zero() {
                continue;
            }
            // ceil((c / lead)^(1/k))
            let ratio = c.div_ceil(&lead);
            let mut r = ratio.nth_root(k as u32);
            if r.pow(k as u32) < ratio {
                r += 1;
            }
            if r > best {
                best = r;
            }
        }
        best * 2u32
    }

    /// All integer roots with multiplicity. Exhaustive: candidates are the
    /// divisors of the lowest nonzero coefficient inside the root bound.
    pub fn integer_roots(&self) -> RootFactorization {
        let mut roots = Vec::new();
        let mut p = self.clone();
        let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 && p.degree() > 0 {
            p = IntPoly::new(p.coeffs[zeros..].to_vec());
            roots.push((BigInt::zero(), zeros));
        }
        if p.degree() == 0 {
            return RootFactorization { roots, residual: p };
        }
        let bound = p.root_bound();
        let c0 = p.coeffs[0].clone();
        let limit = bound.to_u64().unwrap_or(u64::MAX).min(c0.abs().to_u64().unwrap_or(u64::MAX));
        let mut found: Vec<(BigInt, usize)> = Vec::new();
        let mut r: u64 = 1;
        while r <= limit && p.degree() > 0 {
            let rb = BigInt::from(r);
            if (&p.coeffs[0] % &rb).is_zero() {
                for cand in [rb.clone(), -rb.clone()] {
                    let mut mult = 0;
                    while p.degree() > 0 && p.eval(&cand).is_zero() {
                        p = p.deflate(&cand);
                        mult += 1;
                    }
                    if mult > 0 {
                        found.push((cand, mult));
                    }
                }
            }
            r += 1;
        }
        found.sort_by(|a, b| b.0.cmp(&a.0));
        roots.extend(found);
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        RootFactorization { roots, residual: p }
    }

    /// Drops factors of `t`.
    pub fn strip_zero_roots(&self) -> IntPoly {
        let zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros == self.coeffs.len() {
            return IntPoly::one();
        }
        IntPoly::new(self.coeffs[zeros..].to_vec())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::matrix::serialize_bigint_vec(&self.coeffs, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_split_polynomial() {
        // (t-5)^2 (t-3) (t+1) t^2
        let p = IntPoly::from_i64(&[-5, 3, -5, 1])
            .mul(&IntPoly::from_i64(&[0, 0, 1]))
            .mul(&IntPoly::from_i64(&[-5, 1]))
            .mul(&IntPoly::from_i64(&[-3, 1]))
            .mul(&IntPoly::from_i64(&[1, 1]));
        let f = p.integer_roots();
        assert_eq!(f.residual, IntPoly::from_i64(&[-5, 3, -5, 1]).integer_roots().residual);
        let got: Vec<(i64, usize)> = f.roots.iter().map(|(r, m)| (r.try_into().unwrap(), *m)).collect();
        assert!(got.contains(&(5, 1)) && got.contains(&(3, 1)) && got.contains(&(0, 2)) && got.contains(&(-1, 1)));
    }

    #[test]
    fn irreducible_quadratic_stays_residual() {
        let f = IntPoly::from_i64(&[-2, 0, 1]).integer_roots();
        assert!(f.roots.is_empty());
        assert_eq!(f.residual.degree(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-81, -80, 1]).to_string(), "t^2 - 80t - 81");
    }
}
