//! Direct limits lim(G, φ) of a finitely generated abelian group under an
//! endomorphism, with element-level equality and divisibility decisions.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::describe;
use crate::linalg::matrix::{serialize_bigint, serialize_bigint_vec};
use crate::linalg::{
    characteristic_polynomial, integer_kernel, lattice_basis, nonsingular_certificate, smith_tracked, IntMatrix,
    IntPoly, LatticeSolver, Track,
};

/// An element of the limit: the class of `coords` ∈ G placed at `stage`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitElement {
    pub stage: usize,
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub coords: Vec<BigInt>,
}

impl LimitElement {
    pub fn new(stage: usize, coords: Vec<BigInt>) -> Self {
        LimitElement { stage, coords }
    }
}

/// lim(G, φ) for G = Z^n / diag(orders) (order 0 marks a free coordinate).
///
/// The eventual kernel N = ∪ ker φ^k is computed as a lattice in Z^n; the
/// injective quotient G′ = G/N is stored in Smith coordinates, where its
/// torsion subgroup is the stable torsion of the limit.
#[derive(Clone, Debug)]
pub struct DirectLimitGroup {
    pub orders: Vec<BigInt>,
    pub phi: IntMatrix,
    /// Smallest k with ker φ^k = ker φ^{k+1}.
    pub stabilization: usize,
    kernel: LatticeSolver,
    /// y = U·x, then keep `kept` coordinates.
    u: IntMatrix,
    u_inv: IntMatrix,
    kept: Vec<usize>,
    /// Orders of the G′ coordinates (0 = free).
    pub quotient_orders: Vec<BigInt>,
    /// φ′ on G′ in its own coordinates.
    pub quotient_phi: IntMatrix,
    /// Inverse of φ′ on the stable torsion, in the torsion coordinates of G′.
    pub torsion_inverse: IntMatrix,
}

/// Outcome of [`DirectLimitGroup::divisible_by`].
#[derive(Clone, Debug, Serialize)]
pub struct Divisibility {
    #[serde(serialize_with = "serialize_bigint")]
    pub n: BigInt,
    pub divisible: bool,
    /// Some w with n·w = x in the limit.
    pub witness: Option<LimitElement>,
    /// Whether halves (n-th parts) are unique, i.e. the limit has no n-torsion.
    pub unique: bool,
    /// Number of φ′ steps before the orbit hit zero or repeated.
    pub steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeLevel {
    pub exponent: u32,
    pub divisible: bool,
}

/// Proof that x is divisible by every power of p in the limit.
#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityCertificate {
    #[serde(serialize_with = "serialize_bigint")]
    pub p: BigInt,
    /// Minimal polynomial of the free part of x under φ′; ≡ t^deg (mod p).
    pub krylov_polynomial: String,
    /// Depth to which explicit witnesses were checked.
    pub verified_depth: u32,
}

/// Rational and torsion summary of a limit.
#[derive(Clone, Debug, Serialize)]
pub struct LimitSummary {
    pub group: String,
    pub characteristic_polynomial: String,
    /// Nonzero integer eigenvalues with multiplicity; these survive in the limit.
    pub eigenvalues: Vec<(i64, usize)>,
    /// Part of the char-poly without integer roots, if any.
    pub unfactored: Option<String>,
    pub limit_rank: usize,
    pub stable_torsion: String,
    pub stabilization: usize,
}

fn reduce_vec(v: &mut [BigInt], orders: &[BigInt]) {
    for (x, o) in v.iter_mut().zip(orders) {
        if !o.is_zero() {
            *x = x.mod_floor(o);
        }
    }
}

/// Columns spanning {x : A·x ∈ L} where L is spanned by `lgens` columns.
fn preimage(a: &IntMatrix, lgens: &IntMatrix) -> IntMatrix {
    let n = a.ncols();
    let stacked = IntMatrix::from_columns(
        a.nrows(),
        &(0..n).map(|j| a.column(j)).chain((0..lgens.ncols()).map(|j| lgens.column(j))).collect::<Vec<_>>(),
    );
    let ker = integer_kernel(&stacked);
    let cols: Vec<Vec<BigInt>> = ker.into_iter().map(|v| v[..n].to_vec()).collect();
    lattice_basis(&IntMatrix::from_columns(n, &cols))
}

/// Places the rows of `m` at positions `rows` of an n-row matrix.
fn embed_rows(m: &IntMatrix, rows: &[usize], n: usize) -> IntMatrix {
    let trip = m.triplets().map(|(r, c, v)| (rows[r], c, v.clone())).collect::<Vec<_>>();
    IntMatrix::from_triplets(n, m.ncols(), trip)
}

fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    let sa = LatticeSolver::new(a);
    let sb = LatticeSolver::new(b);
    (0..a.ncols()).all(|j| sb.contains(&a.column(j))) && (0..b.ncols()).all(|j| sa.contains(&b.column(j)))
}

impl DirectLimitGroup {
    pub fn new(orders: Vec<BigInt>, phi: IntMatrix) -> Self {
        let n = orders.len();
        assert_eq!((phi.nrows(), phi.ncols()), (n, n), "endomorphism size mismatch");
        let relations = IntMatrix::from_columns(
            n,
            &orders
                .iter()
                .enumerate()
                .filter(|(_, o)| !o.is_zero())
                .map(|(i, o)| {
                    let mut v = vec![BigInt::zero(); n];
                    v[i] = o.clone();
                    v
                })
                .collect::<Vec<_>>(),
        );
        // When φ is invertible on the free quotient, everything φ eventually
        // kills is torsion, so the chain can be run on the torsion block alone.
        let tors: Vec<usize> = (0..n).filter(|&i| !orders[i].is_zero()).collect();
        let free: Vec<usize> = (0..n).filter(|&i| orders[i].is_zero()).collect();
        let free_invertible = nonsingular_certificate(&phi.select_rows(&free).select_columns(&free));
        let (space, sub_phi) = if free_invertible {
            (tors.clone(), phi.select_rows(&tors).select_columns(&tors))
        } else {
            ((0..n).collect(), phi.clone())
        };
        let sub_rel = relations.select_rows(&space);
        // ascending chain P_k = {x : φ^k x ∈ L}
        let mut current = lattice_basis(&sub_rel);
        let mut stabilization = 0;
        loop {
            let next = preimage(&sub_phi, &current);
            if same_lattice(&next, &current) {
                break;
            }
            current = next;
            stabilization += 1;
        }
        let current = embed_rows(&current, &space, n);
        let s = smith_tracked(&current, Track::LEFT);
        let u = s.u.expect("left transform tracked");
        let u_inv = s.u_inv.expect("left transform tracked");
        let mut kept = Vec::new();
        let mut quotient_orders = Vec::new();
        for i in 0..n {
            let f = s.factors.get(i);
            match f {
                Some(f) if f.is_one() => {}
                Some(f) => {
                    kept.push(i);
                    quotient_orders.push(f.clone());
                }
                None => {
                    kept.push(i);
                    quotient_orders.push(BigInt::zero());
                }
            }
        }
        let conj = u.mul(&phi).mul(&u_inv);
        let mut qphi = conj.select_rows(&kept).select_columns(&kept);
        let mut rows: Vec<Vec<BigInt>> = qphi.to_dense();
        for (r, o) in rows.iter_mut().zip(&quotient_orders) {
            if !o.is_zero() {
                for x in r.iter_mut() {
                    *x = x.mod_floor(o);
                }
            }
        }
        qphi = IntMatrix::from_dense(kept.len(), kept.len(), rows);
        let torsion_inverse = invert_on_torsion(&qphi, &quotient_orders);
        DirectLimitGroup {
            orders,
            phi,
            stabilization,
            kernel: LatticeSolver::new(&current),
            u,
            u_inv,
            kept,
            quotient_orders,
            quotient_phi: qphi,
            torsion_inverse,
        }
    }

    pub fn limit_rank(&self) -> usize {
        self.quotient_orders.iter().filter(|o| o.is_zero()).count()
    }

    /// Orders of the stable torsion summands.
    pub fn stable_torsion(&self) -> Vec<BigInt> {
        self.quotient_orders.iter().filter(|o| !o.is_zero()).cloned().collect()
    }

    /// For each stable torsion summand (in [`Self::stable_torsion`] order):
    /// whether φ′ maps its generator into the same summand.
    pub fn preserved_torsion_summands(&self) -> Vec<bool> {
        let tors: Vec<usize> = (0..self.quotient_orders.len()).filter(|&i| !self.quotient_orders[i].is_zero()).collect();
        tors.iter()
            .map(|&i| {
                tors.iter().all(|&j| j == i || self.quotient_phi.get(j, i).mod_floor(&self.quotient_orders[j]).is_zero())
            })
            .collect()
    }

    fn apply(&self, x: &[BigInt], k: usize) -> Vec<BigInt> {
        let mut v = x.to_vec();
        for _ in 0..k {
            v = self.phi.mul_vec(&v);
            reduce_vec(&mut v, &self.orders);
        }
        v
    }

    /// Image of a base-group vector in G′ coordinates.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.u.mul_vec(x);
        let mut v: Vec<BigInt> = self.kept.iter().map(|&i| y[i].clone()).collect();
        reduce_vec(&mut v, &self.quotient_orders);
        v
    }

    /// Base-group vector representing a G′ element.
    pub fn lift(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.orders.len()];
        for (&i, x) in self.kept.iter().zip(v) {
            y[i] = x.clone();
        }
        let mut x = self.u_inv.mul_vec(&y);
        reduce_vec(&mut x, &self.orders);
        x
    }

    fn qapply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = self.quotient_phi.mul_vec(v);
        reduce_vec(&mut w, &self.quotient_orders);
        w
    }

    /// Whether x and y define the same element of the limit.
    pub fn limit_equal(&self, x: &LimitElement, y: &LimitElement) -> bool {
        let top = x.stage.max(y.stage);
        let a = self.apply(&x.coords, top - x.stage);
        let b = self.apply(&y.coords, top - y.stage);
        let diff: Vec<BigInt> = a.iter().zip(&b).map(|(p, q)| p - q).collect();
        self.kernel.contains(&diff)
    }

    /// Decides whether x = n·w for some w in the limit, by following the orbit
    /// of x′ in the finite group G′/nG′ until it reaches 0 or repeats.
    pub fn divisible_by(&self, x: &LimitElement, n: &BigInt) -> Divisibility {
        assert!(*n >= BigInt::from(2), "divisor must be at least 2");
        let mods: Vec<BigInt> =
            self.quotient_orders.iter().map(|o| if o.is_zero() { n.clone() } else { o.gcd(n) }).collect();
        let unique = mods.iter().zip(&self.quotient_orders).all(|(m, o)| o.is_zero() || m.is_one());
        let mut cur = self.project(&x.coords);
        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        let mut steps = 0;
        loop {
            let state: Vec<BigInt> = cur.iter().zip(&mods).map(|(v, m)| v.mod_floor(m)).collect();
            if state.iter().all(Zero::is_zero) {
                let w = self.halve(&cur, n);
                let witness = LimitElement::new(x.stage + steps, self.lift(&w));
                return Divisibility { n: n.clone(), divisible: true, witness: Some(witness), unique, steps };
            }
            if !seen.insert(state) {
                return Divisibility { n: n.clone(), divisible: false, witness: None, unique, steps };
            }
            cur = self.qapply(&cur);
            steps += 1;
        }
    }

    /// Some w ∈ G′ with n·w = v, given that v ∈ nG′.
    fn halve(&self, v: &[BigInt], n: &BigInt) -> Vec<BigInt> {
        v.iter()
            .zip(&self.quotient_orders)
            .map(|(x, o)| {
                if o.is_zero() {
                    x / n
                } else {
                    let g = n.gcd(o);
                    let (nn, oo) = (n / &g, o / &g);
                    let inv = nn.extended_gcd(&oo).x.mod_floor(&oo);
                    ((x / &g) * inv).mod_floor(&oo)
                }
            })
            .collect()
    }

    /// Divisibility by p, p², …, p^K.
    pub fn divisibility_probe(&self, x: &LimitElement, p: &BigInt, depth: u32) -> Vec<ProbeLevel> {
        let mut out = Vec::new();
        let mut failed = false;
        for k in 1..=depth {
            let divisible = !failed && self.divisible_by(x, &p.pow(k)).divisible;
            failed |= !divisible;
            out.push(ProbeLevel { exponent: k, divisible });
        }
        out
    }

    /// Certificate of infinite p-divisibility: the torsion part of x′ must be
    /// prime to p, and the minimal polynomial of its free part under φ′ must
    /// reduce to a power of t mod p, so some φ′^m maps the invariant lattice
    /// it spans into p times itself. Witnesses are checked up to `depth`.
    pub fn eigen_divisibility_certificate(&self, x: &LimitElement, p: &BigInt, depth: u32) -> Option<DivisibilityCertificate> {
        let v = self.project(&x.coords);
        for (c, o) in v.iter().zip(&self.quotient_orders) {
            if !o.is_zero() && !c.is_zero() && !o.gcd(p).is_one() {
                return None;
            }
        }
        let free_idx: Vec<usize> = (0..v.len()).filter(|&i| self.quotient_orders[i].is_zero()).collect();
        let fphi = self.quotient_phi.select_rows(&free_idx).select_columns(&free_idx);
        let start: Vec<BigInt> = free_idx.iter().map(|&i| v[i].clone()).collect();
        let poly = minimal_polynomial(&fphi, &start);
        let reduces = poly.coeffs[..poly.degree()].iter().all(|c| c.mod_floor(p).is_zero());
        if !reduces {
            return None;
        }
        if self.divisibility_probe(x, p, depth).iter().any(|l| !l.divisible) {
            return None;
        }
        Some(DivisibilityCertificate { p: p.clone(), krylov_polynomial: poly.to_string(), verified_depth: depth })
    }

    /// Stable-torsion coordinates of x′ (the torsion block of G′).
    pub fn torsion_coordinates(&self, x: &LimitElement) -> Vec<BigInt> {
        let v = self.project(&x.coords);
        v.into_iter().zip(&self.quotient_orders).filter(|(_, o)| !o.is_zero()).map(|(c, _)| c).collect()
    }

    pub fn summary(&self) -> LimitSummary {
        let free_idx: Vec<usize> = (0..self.orders.len()).filter(|&i| self.orders[i].is_zero()).collect();
        let free = self.phi.select_rows(&free_idx).select_columns(&free_idx);
        let cp = characteristic_polynomial(&free);
        let f = cp.integer_roots();
        let eigenvalues = f
            .roots
            .iter()
            .filter(|(r, _)| !r.is_zero())
            .map(|(r, m)| (i64::try_from(r).expect("eigenvalue fits in i64"), *m))
            .collect();
        LimitSummary {
            group: describe(free_idx.len(), &self.orders.iter().filter(|o| !o.is_zero()).cloned().collect::<Vec<_>>()),
            characteristic_polynomial: cp.to_string(),
            eigenvalues,
            unfactored: (f.residual.degree() > 0).then(|| f.residual.to_string()),
            limit_rank: self.limit_rank(),
            stable_torsion: describe(0, &self.stable_torsion()),
            stabilization: self.stabilization,
        }
    }
}

/// Monic integer minimal polynomial of `x` under `a`.
pub fn minimal_polynomial(a: &IntMatrix, x: &[BigInt]) -> IntPoly {
    let mut krylov = vec![x.to_vec()];
    loop {
        let m = IntMatrix::from_columns(x.len(), &krylov);
        let ker = integer_kernel(&m);
        if let Some(rel) = ker.first() {
            let lead = rel.last().unwrap().clone();
            debug_assert!(!lead.is_zero());
            let coeffs: Vec<BigInt> = rel.iter().map(|c| c / &lead).collect();
            return IntPoly::new(coeffs);
        }
        let next = a.mul_vec(krylov.last().unwrap());
        krylov.push(next);
    }
}

/// Inverse of an automorphism of ⊕ Z/o_i (torsion coordinates of `phi`).
fn invert_on_torsion(phi: &IntMatrix, orders: &[BigInt]) -> IntMatrix {
    let idx: Vec<usize> = (0..orders.len()).filter(|&i| !orders[i].is_zero()).collect();
    let t = idx.len();
    let block = phi.select_rows(&idx).select_columns(&idx);
    let tors: Vec<BigInt> = idx.iter().map(|&i| orders[i].clone()).collect();
    // solve block·c ≡ e_j modulo the orders, via [block | diag(orders)]
    let mut cols: Vec<Vec<BigInt>> = (0..t).map(|j| block.column(j)).collect();
    for (i, o) in tors.iter().enumerate() {
        let mut v = vec![BigInt::zero(); t];
        v[i] = o.clone();
        cols.push(v);
    }
    let solver = LatticeSolver::new(&IntMatrix::from_columns(t, &cols));
    let inv_cols: Vec<Vec<BigInt>> = (0..t)
        .map(|j| {
            let mut e = vec![BigInt::zero(); t];
            e[j] = BigInt::one();
            let mut c = solver.solve(&e).expect("φ is an automorphism of the stable torsion");
            c.truncate(t);
            reduce_vec(&mut c, &tors);
            c
        })
        .collect();
    let inv = IntMatrix::from_columns(t, &inv_cols);
    let mut check = block.mul(&inv).to_dense();
    for (r, o) in check.iter_mut().zip(&tors) {
        for x in r.iter_mut() {
            *x = x.mod_floor(o);
        }
    }
    debug_assert_eq!(IntMatrix::from_dense(t, t, check), IntMatrix::identity(t));
    inv
}
