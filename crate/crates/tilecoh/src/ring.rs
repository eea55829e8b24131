//! Cup products: cochain level, on cohomology generators, as bilinear forms
//! between eigenclasses, and the degree-two squaring test for Chern
//! character integrality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cohomology::{DegreeCohomology, FgAbGroup, LimitElement};
use crate::complexes::{CellComplex, Geometry};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, primitive, IntMatrix};

pub type Cochain = Vec<BigInt>;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Cup product of a p-cochain and a q-cochain.
///
/// Cubical cells use the front/back face formula: for an n-cell with spanned
/// positions A, sum over H ⊆ A with |H| = p of sgn(H, A∖H)·α(A∖H collapsed
/// low)·β(H collapsed high), where sgn counts pairs k < h with h ∈ H, k ∉ H.
/// Simplicial cells use Alexander–Whitney: α(front p-face)·β(back q-face).
pub fn cup_cochain(complex: &CellComplex, p: usize, alpha: &[BigInt], q: usize, beta: &[BigInt]) -> Result<Cochain> {
    let n = p + q;
    if n > complex.dim {
        return Err(Error::DimensionOverflow(n, complex.dim));
    }
    if !complex.faces_exact {
        return Err(Error::Verification("cup products need a face table realizing every cell".into()));
    }
    assert_eq!(alpha.len(), complex.count(p), "alpha has the wrong length");
    assert_eq!(beta.len(), complex.count(q), "beta has the wrong length");
    let mut out = vec![BigInt::zero(); complex.count(n)];
    match complex.geometry {
        Geometry::Cubical => {
            let splits: Vec<(Vec<usize>, Vec<usize>, bool)> = subsets(n, p)
                .into_iter()
                .map(|h| {
                    let k: Vec<usize> = (0..n).filter(|i| !h.contains(i)).collect();
                    let inversions = h.iter().map(|&a| k.iter().filter(|&&b| b < a).count()).sum::<usize>();
                    (h, k, inversions % 2 == 1)
                })
                .collect();
            for (c, slot) in out.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for (h, k, negative) in &splits {
                    let a = &alpha[complex.cube_face(n, c, k, false)];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &beta[complex.cube_face(n, c, h, true)];
                    if b.is_zero() {
                        continue;
                    }
                    if *negative { acc -= a * b } else { acc += a * b }
                }
                *slot = acc;
            }
        }
        Geometry::Simplicial => {
            for (c, slot) in out.iter_mut().enumerate() {
                let a = &alpha[complex.simplex_face(n, c, 0, p)];
                if !a.is_zero() {
                    *slot = a * &beta[complex.simplex_face(n, c, p, n)];
                }
            }
        }
    }
    Ok(out)
}

/// Cochain lift of a class given by generator coordinates.
pub fn lift_class(group: &FgAbGroup, coords: &[BigInt], cells: usize) -> Cochain {
    let mut out = vec![BigInt::zero(); cells];
    for (c, g) in coords.iter().zip(&group.generators) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(g) {
            *o += c * x;
        }
    }
    out
}

/// `table[i][j]` = coordinates in H^{p+q} of (generator i of H^p) ⌣ (generator j of H^q).
pub fn cup_cohomology(
    complex: &CellComplex,
    hp: &FgAbGroup,
    hq: &FgAbGroup,
    hpq: &FgAbGroup,
) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let (p, q) = (hp.degree, hq.degree);
    hp.generators
        .iter()
        .map(|a| {
            hq.generators
                .iter()
                .map(|b| hpq.coordinates(&cup_cochain(complex, p, a, q, b)?))
                .collect()
        })
        .collect()
}

/// Class of a ⌣ b in H^{p+q} coordinates, from coordinates of a and b.
pub fn cup_classes(
    complex: &CellComplex,
    hp: &FgAbGroup,
    a: &[BigInt],
    hq: &FgAbGroup,
    b: &[BigInt],
    hpq: &FgAbGroup,
) -> Result<Vec<BigInt>> {
    let la = lift_class(hp, a, complex.count(hp.degree));
    let lb = lift_class(hq, b, complex.count(hq.degree));
    hpq.coordinates(&cup_cochain(complex, hp.degree, &la, hq.degree, &lb)?)
}

fn ser_mat<S: Serializer>(m: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<serde_json::Number>> =
        m.iter().map(|r| r.iter().map(crate::linalg::matrix::bigint_to_json).collect()).collect();
    v.serialize(s)
}

fn ser_vecs<S: Serializer>(m: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_mat(m, s)
}

/// Eigenclasses of the limit, in free coordinates of H^q: for each nonzero
/// integer eigenvalue, a basis of its generalized eigenspace.
#[derive(Clone, Debug, Serialize)]
pub struct EigenBasis {
    pub degree: usize,
    pub eigenvalues: Vec<i64>,
    #[serde(serialize_with = "ser_vecs")]
    pub vectors: Vec<Vec<BigInt>>,
}

fn free_block(dc: &DegreeCohomology) -> IntMatrix {
    let t = dc.group.torsion.len();
    let idx: Vec<usize> = (t..dc.group.ngens()).collect();
    dc.limit.phi.select_rows(&idx).select_columns(&idx)
}

fn generalized_eigenspace(m: &IntMatrix, e: i64, mult: usize) -> Vec<Vec<BigInt>> {
    let shifted = m.sub(&IntMatrix::scalar(m.nrows(), e));
    let power = shifted.pow(mult as u32);
    integer_kernel(&power).iter().map(|v| primitive(v)).collect()
}

pub fn eigen_basis(dc: &DegreeCohomology) -> EigenBasis {
    let f = free_block(dc);
    let mut eigenvalues = Vec::new();
    let mut vectors = Vec::new();
    for (e, mult) in dc.limit.summary().eigenvalues {
        let mut basis = generalized_eigenspace(&f, e, 1);
        if basis.len() < mult {
            basis = generalized_eigenspace(&f, e, mult);
        }
        for v in basis {
            eigenvalues.push(e);
            vectors.push(v);
        }
    }
    EigenBasis { degree: dc.group.degree, eigenvalues, vectors }
}

/// Embeds free coordinates into full generator coordinates.
pub fn with_torsion_zero(group: &FgAbGroup, free: &[BigInt]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); group.torsion.len()];
    v.extend_from_slice(free);
    v
}

/// Determinant by fraction-free elimination.
fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// One target eigenclass and the form B_e(a, b) = e-coordinate of a ⌣ b.
#[derive(Clone, Debug, Serialize)]
pub struct EigenForm {
    pub eigenvalue: i64,
    /// Index within the eigenspace of the target.
    pub index: usize,
    #[serde(serialize_with = "ser_mat")]
    pub matrix: Vec<Vec<BigInt>>,
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BilinearFormsReport {
    pub degrees: (usize, usize),
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub target: Vec<i64>,
    pub forms: Vec<EigenForm>,
    /// B_e(a, b) ≠ 0 only when eig(a)·eig(b) = e.
    pub eigenvalue_compatible: bool,
    /// Every target eigenclass is hit.
    pub surjective: bool,
}

/// Cup products between eigenclasses of H^p and H^q, expanded along the
/// eigenclasses of H^{p+q}. Each form is scaled by a common nonzero factor
/// per eigenspace (the Gram determinant of its left and right bases), so
/// entries stay integral; only the zero pattern and ratios are meaningful.
pub fn bilinear_forms_by_eigenvalue(
    complex: &CellComplex,
    hp: &DegreeCohomology,
    hq: &DegreeCohomology,
    hpq: &DegreeCohomology,
) -> Result<BilinearFormsReport> {
    let (bp, bq, bt) = (eigen_basis(hp), eigen_basis(hq), eigen_basis(hpq));
    let ft = free_block(hpq);
    let ftt = ft.transpose();
    let t = hpq.group.torsion.len();
    // products in free coordinates of H^{p+q}
    let mut products = vec![vec![Vec::new(); bq.vectors.len()]; bp.vectors.len()];
    for (i, a) in bp.vectors.iter().enumerate() {
        for (j, b) in bq.vectors.iter().enumerate() {
            let c = cup_classes(
                complex,
                &hp.group,
                &with_torsion_zero(&hp.group, a),
                &hq.group,
                &with_torsion_zero(&hq.group, b),
                &hpq.group,
            )?;
            products[i][j] = c[t..].to_vec();
        }
    }
    let mut forms = Vec::new();
    let mut distinct: Vec<i64> = bt.eigenvalues.clone();
    distinct.dedup();
    for e in distinct {
        let right: Vec<&Vec<BigInt>> =
            bt.vectors.iter().zip(&bt.eigenvalues).filter(|(_, &x)| x == e).map(|(v, _)| v).collect();
        let m = right.len();
        let left = generalized_eigenspace(&ftt, e, m);
        let left = if left.len() == m { left } else { generalized_eigenspace(&ftt, e, 1) };
        let dot = |u: &[BigInt], v: &[BigInt]| u.iter().zip(v).map(|(x, y)| x * y).sum::<BigInt>();
        let gram: Vec<Vec<BigInt>> = left.iter().map(|l| right.iter().map(|r| dot(l, r)).collect()).collect();
        for k in 0..m {
            let matrix: Vec<Vec<BigInt>> = products
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|y| {
                            // Cramer: coefficient k of y along the right basis, times det(gram)
                            let ly: Vec<BigInt> = left.iter().map(|l| dot(l, y)).collect();
                            let mut g = gram.clone();
                            for (r, v) in g.iter_mut().zip(&ly) {
                                r[k] = v.clone();
                            }
                            det(g)
                        })
                        .collect()
                })
                .collect();
            let nonzero = matrix.iter().flatten().any(|x| !x.is_zero());
            forms.push(EigenForm { eigenvalue: e, index: k, matrix, nonzero });
        }
    }
    let eigenvalue_compatible = forms.iter().all(|f| {
        f.matrix.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| x.is_zero() || bp.eigenvalues[i] * bq.eigenvalues[j] == f.eigenvalue)
        })
    });
    let surjective = forms.iter().all(|f| f.nonzero);
    Ok(BilinearFormsReport {
        degrees: (hp.group.degree, hq.group.degree),
        left: bp.eigenvalues,
        right: bq.eigenvalues,
        target: bt.eigenvalues,
        forms,
        eigenvalue_compatible,
        surjective,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChernStatus {
    NotIntegral,
    NoObstructionFound,
}

/// The squaring test for one degree-two class.
#[derive(Clone, Debug, Serialize)]
pub struct SquareCheck {
    /// "generator k", or "eigenvalue e" for a rational eigenclass.
    pub class: String,
    /// The class is a generator of the torsion subgroup of H².
    pub torsion_class: bool,
    #[serde(serialize_with = "ser_vec")]
    pub coords: Vec<BigInt>,
    #[serde(serialize_with = "ser_vec")]
    pub square: Vec<BigInt>,
    pub divisible_by_two: bool,
    pub unique_half: bool,
    /// Coordinates of the square in the stable torsion of the H⁴ limit.
    #[serde(serialize_with = "ser_vec")]
    pub stable_torsion: Vec<BigInt>,
    #[serde(serialize_with = "ser_vec")]
    pub stable_torsion_orders: Vec<BigInt>,
    /// The square is twice an element of order ≥ 4 in some stable torsion summand.
    pub torsion_pattern: bool,
    /// The torsion pattern occurs in a summand the substitution maps to itself.
    pub on_preserved_summand: bool,
}

fn ser_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::linalg::matrix::serialize_bigint_vec(v, s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernVerdict {
    pub status: ChernStatus,
    pub witness: Option<SquareCheck>,
    pub checks: Vec<SquareCheck>,
}

impl SquareCheck {
    fn obstructs(&self) -> bool {
        !self.divisible_by_two || self.torsion_pattern
    }

    /// Witness preference: failed divisibility, then a torsion pattern on a
    /// preserved summand, then any torsion pattern; within each, torsion
    /// classes (canonical) before eigenclasses and free generators.
    fn rank(&self) -> (u8, bool) {
        let level = if !self.divisible_by_two {
            0
        } else if self.on_preserved_summand {
            1
        } else {
            2
        };
        (level, !self.torsion_class)
    }
}

/// Searches for a degree-two class whose square is not divisible by two in
/// the H⁴ limit.
///
/// Completeness: for degree-two classes (a+b)² = a² + b² + 2ab, so squaring
/// is additive modulo 2·H⁴ and it suffices to test generators of H²/2H².
/// Rational eigenclasses are tested first so a witness, when found, is an
/// eigenclass where possible. A square that is divisible only non-uniquely
/// and sits at twice an element of order ≥ 4 in the stable torsion is also
/// reported as an obstruction (flagged by `torsion_pattern`); the witness
/// prefers such a square on a summand the substitution preserves.
pub fn chern_integrality_check(complex: &CellComplex, h2: &DegreeCohomology, h4: &DegreeCohomology) -> Result<ChernVerdict> {
    if complex.dim != 4 {
        return Err(Error::WrongDimension { expected: 4, found: complex.dim });
    }
    let two = BigInt::from(2);
    let mut candidates: Vec<(String, bool, Vec<BigInt>)> = Vec::new();
    let basis = eigen_basis(h2);
    for (e, v) in basis.eigenvalues.iter().zip(&basis.vectors) {
        candidates.push((format!("eigenvalue {e}"), false, with_torsion_zero(&h2.group, v)));
    }
    for (k, o) in h2.group.orders().iter().enumerate() {
        if o.is_zero() || o.is_even() {
            let mut v = vec![BigInt::zero(); h2.group.ngens()];
            v[k] = BigInt::one();
            candidates.push((format!("generator {k}"), !o.is_zero(), v));
        }
    }
    let orders = h4.limit.stable_torsion();
    let preserved = h4.limit.preserved_torsion_summands();
    let four = BigInt::from(4);
    let mut checks = Vec::new();
    for (class, torsion_class, coords) in candidates {
        let square = cup_classes(complex, &h2.group, &coords, &h2.group, &coords, &h4.group)?;
        let x = LimitElement::new(0, square.clone());
        let d = h4.limit.divisible_by(&x, &two);
        let stable_torsion = h4.limit.torsion_coordinates(&x);
        let pattern_at: Vec<bool> = stable_torsion
            .iter()
            .zip(&orders)
            .map(|(c, o)| d.divisible && !d.unique && o.mod_floor(&four).is_zero() && c.mod_floor(&four) == two)
            .collect();
        let torsion_pattern = pattern_at.iter().any(|&b| b);
        let on_preserved_summand = pattern_at.iter().zip(&preserved).any(|(&a, &b)| a && b);
        checks.push(SquareCheck {
            class,
            torsion_class,
            coords,
            square,
            divisible_by_two: d.divisible,
            unique_half: d.unique,
            stable_torsion,
            stable_torsion_orders: orders.clone(),
            torsion_pattern,
            on_preserved_summand,
        });
    }
    let witness = checks.iter().filter(|c| c.obstructs()).min_by_key(|c| c.rank()).cloned();
    let status = if witness.is_some() { ChernStatus::NotIntegral } else { ChernStatus::NoObstructionFound };
    Ok(ChernVerdict { status, witness, checks })
}
