//! Algebraic identities checked by both the property tests and the
//! acceptance run. Each returns an error message naming the broken identity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use tilecoh::cohomology::{DegreeCohomology, DirectLimitGroup, LimitElement};
use tilecoh::complexes::CellComplex;
use tilecoh::linalg::{characteristic_polynomial, IntMatrix};
use tilecoh::ring::{cup_classes, cup_cochain};

type Check = Result<(), String>;

fn add(a: &[BigInt], b: &[BigInt], sign: i64) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y * sign).collect()
}

fn reduce(v: &[BigInt], orders: &[BigInt]) -> Vec<BigInt> {
    v.iter().zip(orders).map(|(x, o)| if o.is_zero() { x.clone() } else { x.mod_floor(o) }).collect()
}

/// δ(a ⌣ b) = δa ⌣ b + (−1)^p a ⌣ δb.
pub fn leibniz(c: &CellComplex, p: usize, a: &[BigInt], q: usize, b: &[BigInt]) -> Check {
    let lhs = c.coboundary(p + q).mul_vec(&cup_cochain(c, p, a, q, b).unwrap());
    let da = c.coboundary(p).mul_vec(a);
    let db = c.coboundary(q).mul_vec(b);
    let sign = if p.is_multiple_of(2) { 1 } else { -1 };
    let rhs = add(&cup_cochain(c, p + 1, &da, q, b).unwrap(), &cup_cochain(c, p, a, q + 1, &db).unwrap(), sign);
    (lhs == rhs).then_some(()).ok_or_else(|| format!("Leibniz rule fails in degrees ({p}, {q})"))
}

/// (a ⌣ b) ⌣ x = a ⌣ (b ⌣ x) on cochains.
pub fn associativity(c: &CellComplex, (p, a): (usize, &[BigInt]), (q, b): (usize, &[BigInt]), (r, x): (usize, &[BigInt])) -> Check {
    let left = cup_cochain(c, p + q, &cup_cochain(c, p, a, q, b).unwrap(), r, x).unwrap();
    let right = cup_cochain(c, p, a, q + r, &cup_cochain(c, q, b, r, x).unwrap()).unwrap();
    (left == right).then_some(()).ok_or_else(|| format!("associativity fails in degrees ({p}, {q}, {r})"))
}

/// a ⌣ b = (−1)^{pq} b ⌣ a in cohomology, for classes given by coordinates.
pub fn graded_commutativity(c: &CellComplex, hp: &DegreeCohomology, a: &[BigInt], hq: &DegreeCohomology, b: &[BigInt], hpq: &DegreeCohomology) -> Check {
    let (p, q) = (hp.group.degree, hq.group.degree);
    let ab = cup_classes(c, &hp.group, a, &hq.group, b, &hpq.group).unwrap();
    let ba = cup_classes(c, &hq.group, b, &hp.group, a, &hpq.group).unwrap();
    let sign = if p * q % 2 == 0 { 1 } else { -1 };
    let orders = hpq.group.orders();
    let ba: Vec<BigInt> = ba.iter().map(|x| x * sign).collect();
    (reduce(&ab, &orders) == reduce(&ba, &orders))
        .then_some(())
        .ok_or_else(|| format!("graded commutativity fails in degrees ({p}, {q})"))
}

/// φ(a ⌣ b) = φa ⌣ φb for the map induced by the substitution.
pub fn naturality(c: &CellComplex, hp: &DegreeCohomology, a: &[BigInt], hq: &DegreeCohomology, b: &[BigInt], hpq: &DegreeCohomology) -> Check {
    let ab = cup_classes(c, &hp.group, a, &hq.group, b, &hpq.group).unwrap();
    let pa = hp.limit.phi.mul_vec(a);
    let pb = hq.limit.phi.mul_vec(b);
    let lhs = hpq.limit.phi.mul_vec(&ab);
    let rhs = cup_classes(c, &hp.group, &pa, &hq.group, &pb, &hpq.group).unwrap();
    let orders = hpq.group.orders();
    (reduce(&lhs, &orders) == reduce(&rhs, &orders))
        .then_some(())
        .ok_or_else(|| format!("naturality fails in degrees ({}, {})", hp.group.degree, hq.group.degree))
}

/// The map on H^n of a product complex has the characteristic polynomial of
/// ⊕_{p+q=n} φ_p ⊗ φ_q, up to zero roots (torsion-free factors).
pub fn kunneth_eigenvalues(factors: (&[DegreeCohomology], &[DegreeCohomology]), product: &[DegreeCohomology]) -> Check {
    let (x, y) = factors;
    for (n, h) in product.iter().enumerate() {
        let mut expected = tilecoh::linalg::IntPoly::one();
        for p in 0..=n {
            if p < x.len() && n - p < y.len() {
                let k = x[p].limit.phi.kron(&y[n - p].limit.phi);
                expected = expected.mul(&characteristic_polynomial(&k));
            }
        }
        let got = characteristic_polynomial(&h.limit.phi);
        if got.strip_zero_roots() != expected.strip_zero_roots() {
            return Err(format!("Künneth eigenvalues fail in degree {n}: {got} vs {expected}"));
        }
    }
    Ok(())
}

/// Divisible exactly when a witness is reported, and the witness w
/// satisfies n·w = x in the limit.
pub fn divisibility_witness(lim: &DirectLimitGroup, x: &LimitElement, n: &BigInt) -> Check {
    let d = lim.divisible_by(x, n);
    match (&d.divisible, &d.witness) {
        (true, Some(w)) => {
            let nw = LimitElement::new(w.stage, w.coords.iter().map(|c| c * n).collect());
            lim.limit_equal(&nw, x).then_some(()).ok_or_else(|| "divisibility witness is wrong".to_string())
        }
        (true, None) => Err("divisible without a witness".into()),
        (false, Some(_)) => Err("witness reported for an indivisible element".into()),
        (false, None) => Ok(()),
    }
}

/// U·A·V = D, U·U⁻¹ = I, V·V⁻¹ = I and the diagonal divisibility chain.
pub fn smith_form(a: &IntMatrix) -> Check {
    let s = tilecoh::linalg::smith_normal_form(a);
    if s.u.mul(a).mul(&s.v) != s.d {
        return Err("U·A·V ≠ D".into());
    }
    if s.u.mul(&s.u_inv) != IntMatrix::identity(a.nrows()) || s.v.mul(&s.v_inv) != IntMatrix::identity(a.ncols()) {
        return Err("transforms are not unimodular".into());
    }
    let f = s.invariant_factors();
    if f.iter().any(|x| *x <= BigInt::zero()) || f.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
        return Err(format!("invariant factors {f:?} do not form a divisibility chain"));
    }
    if s.d.triplets().any(|(i, j, _)| i != j || i >= s.rank) {
        return Err("D is not diagonal".into());
    }
    Ok(())
}
