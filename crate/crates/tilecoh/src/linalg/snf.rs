//! Smith normal form by sparse elimination with full transform tracking.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{axpy_row, IntMatrix, SparseRow};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
///
/// The inverses are tracked alongside, since cohomology needs both
/// directions of the left change of basis.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }
}

/// Which transforms to accumulate. Skipping unused ones saves most of the work
/// on large matrices.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub right: bool,
}

impl Track {
    pub const ALL: Track = Track { left: true, right: true };
    pub const LEFT: Track = Track { left: true, right: false };
    pub const RIGHT: Track = Track { left: false, right: true };
    pub const NONE: Track = Track { left: false, right: false };
}

/// Result of [`smith_tracked`]; untracked transforms are `None`.
#[derive(Clone, Debug)]
pub struct SnfParts {
    pub factors: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl SnfParts {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn d(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.factors.iter().enumerate().map(|(i, f)| (i, i, f.clone())),
        )
    }
}

/// Full decomposition with all four transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let p = smith_tracked(a, Track::ALL);
    SnfDecomposition {
        d: p.d(),
        rank: p.rank(),
        u: p.u.unwrap(),
        u_inv: p.u_inv.unwrap(),
        v: p.v.unwrap(),
        v_inv: p.v_inv.unwrap(),
    }
}

/// Smith normal form accumulating only the requested transforms.
///
/// Pivot rule: smallest absolute value; ties go to the smallest Markowitz
/// fill estimate, then the lowest row, then the lowest column. The output is
/// a deterministic function of the input.
///
/// Row operations fill the left transform far more than column operations
/// fill the right one, so a left-only request is answered from the
/// transpose: if U'·Aᵀ·V' = Dᵀ then V'ᵀ·A·U'ᵀ = D.
pub fn smith_tracked(a: &IntMatrix, track: Track) -> SnfParts {
    if track.left && !track.right {
        let t = eliminate(&a.transpose(), Track::RIGHT);
        return SnfParts {
            factors: t.factors,
            rows: a.nrows(),
            cols: a.ncols(),
            u: t.v.map(|v| v.transpose()),
            u_inv: t.v_inv.map(|v| v.transpose()),
            v: None,
            v_inv: None,
        };
    }
    eliminate(a, track)
}

fn eliminate(a: &IntMatrix, track: Track) -> SnfParts {
    let mut e = Elim::new(a, track);
    e.diagonalize();
    e.fix_divisibility();
    e.finish()
}

/// A stack of sparse rows, transformed in lockstep with the working matrix.
struct RowSet {
    rows: Vec<SparseRow>,
}

impl RowSet {
    fn identity(n: usize) -> Self {
        RowSet { rows: (0..n).map(|i| vec![(i, BigInt::one())]).collect() }
    }

    /// row_i += q·row_p
    fn axpy(&mut self, i: usize, p: usize, q: &BigInt) {
        let new = axpy_row(&self.rows[i], &self.rows[p], q);
        self.rows[i] = new;
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    fn negate(&mut self, i: usize) {
        for (_, v) in &mut self.rows[i] {
            *v = -&*v;
        }
    }

    /// (row_i, row_j) ← (a·row_i + b·row_j, c·row_i + e·row_j)
    fn mix(&mut self, i: usize, j: usize, m: &[BigInt; 4]) {
        let ri = std::mem::take(&mut self.rows[i]);
        let rj = std::mem::take(&mut self.rows[j]);
        let scaled = |r: &SparseRow, s: &BigInt| -> SparseRow {
            if s.is_zero() {
                Vec::new()
            } else {
                r.iter().map(|(k, v)| (*k, v * s)).collect()
            }
        };
        self.rows[i] = axpy_row(&scaled(&ri, &m[0]), &rj, &m[1]);
        self.rows[j] = axpy_row(&scaled(&ri, &m[2]), &rj, &m[3]);
    }

    fn into_matrix(self, cols: usize) -> IntMatrix {
        IntMatrix::from_sparse_rows(cols, self.rows)
    }
}

struct Elim {
    rows: usize,
    cols: usize,
    work: Vec<SparseRow>,
    col_rows: Vec<BTreeSet<usize>>,
    /// U (rows), U⁻¹ stored transposed, Vᵀ, V⁻¹.
    u: Option<RowSet>,
    u_inv_t: Option<RowSet>,
    v_t: Option<RowSet>,
    v_inv: Option<RowSet>,
    pivots: Vec<(usize, usize, BigInt)>,
}

impl Elim {
    fn new(a: &IntMatrix, track: Track) -> Self {
        let work: Vec<SparseRow> = a.rows_iter().cloned().collect();
        let mut col_rows = vec![BTreeSet::new(); a.ncols()];
        for (i, row) in work.iter().enumerate() {
            for (j, _) in row {
                col_rows[*j].insert(i);
            }
        }
        let (m, n) = (a.nrows(), a.ncols());
        Elim {
            rows: m,
            cols: n,
            work,
            col_rows,
            u: track.left.then(|| RowSet::identity(m)),
            u_inv_t: track.left.then(|| RowSet::identity(m)),
            v_t: track.right.then(|| RowSet::identity(n)),
            v_inv: track.right.then(|| RowSet::identity(n)),
            pivots: Vec::new(),
        }
    }

    fn entry(&self, i: usize, j: usize) -> Option<&BigInt> {
        let row = &self.work[i];
        row.binary_search_by_key(&j, |(c, _)| *c).ok().map(|k| &row[k].1)
    }

    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(num_bigint::BigUint, usize, usize, usize)> = None;
        for (i, row) in self.work.iter().enumerate() {
            let rlen = row.len();
            for (j, v) in row {
                let mag = v.magnitude();
                let cost = (rlen - 1) * (self.col_rows[*j].len() - 1);
                let better = match &best {
                    None => true,
                    Some((bm, bc, _, _)) => mag < bm || (mag == bm && cost < *bc),
                };
                if better {
                    best = Some((mag.clone(), cost, i, *j));
                }
            }
            if let Some((bm, 0, _, _)) = &best {
                if bm.is_one() {
                    break;
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    /// work row_i += q·row_p, with index and transform bookkeeping.
    fn row_axpy(&mut self, i: usize, p: usize, q: &BigInt) {
        let old = std::mem::take(&mut self.work[i]);
        let new = axpy_row(&old, &self.work[p], q);
        update_index(&mut self.col_rows, i, &old, &new);
        self.work[i] = new;
        if let Some(u) = &mut self.u {
            u.axpy(i, p, q);
        }
        if let Some(ut) = &mut self.u_inv_t {
            ut.axpy(p, i, &-q);
        }
    }

    /// work col_j += q·col_p.
    fn col_axpy(&mut self, j: usize, p: usize, q: &BigInt) {
        let rows: Vec<usize> = self.col_rows[p].iter().copied().collect();
        for i in rows {
            let add = q * self.entry(i, p).expect("indexed entry present");
            let row = &mut self.work[i];
            match row.binary_search_by_key(&j, |(c, _)| *c) {
                Ok(k) => {
                    row[k].1 += add;
                    if row[k].1.is_zero() {
                        row.remove(k);
                        self.col_rows[j].remove(&i);
                    }
                }
                Err(k) => {
                    row.insert(k, (j, add));
                    self.col_rows[j].insert(i);
                }
            }
        }
        if let Some(vt) = &mut self.v_t {
            vt.axpy(j, p, q);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.axpy(p, j, &-q);
        }
    }

    fn diagonalize(&mut self) {
        while let Some((p, c)) = self.select_pivot() {
            let a = self.entry(p, c).unwrap().clone();
            // Clear the pivot column with row operations.
            let mut remainder = false;
            let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&i| i != p).collect();
            for i in others {
                let x = self.entry(i, c).unwrap().clone();
                let q = &x / &a;
                if !(&x % &a).is_zero() {
                    remainder = true;
                }
                if !q.is_zero() {
                    self.row_axpy(i, p, &-q);
                }
            }
            if remainder {
                continue;
            }
            // Column c now holds only the pivot; clear the pivot row.
            let others: Vec<usize> =
                self.work[p].iter().map(|(j, _)| *j).filter(|&j| j != c).collect();
            for j in others {
                let x = self.entry(p, j).unwrap().clone();
                let q = &x / &a;
                if !(&x % &a).is_zero() {
                    remainder = true;
                }
                if !q.is_zero() {
                    self.col_axpy(j, c, &-q);
                }
            }
            if remainder {
                continue;
            }
            self.work[p].clear();
            self.col_rows[c].clear();
            self.pivots.push((p, c, a));
        }
    }

    fn row_mix(&mut self, i: usize, j: usize, m: &[BigInt; 4]) {
        if let Some(u) = &mut self.u {
            u.mix(i, j, m);
        }
        if let Some(ut) = &mut self.u_inv_t {
            let inv = [m[3].clone(), -&m[2], -&m[1], m[0].clone()];
            ut.mix(i, j, &inv);
        }
    }

    /// Applies A ← A·R on columns (i, j), R = [[a,b],[c,e]].
    fn col_mix(&mut self, i: usize, j: usize, m: &[BigInt; 4]) {
        if let Some(vt) = &mut self.v_t {
            vt.mix(i, j, &[m[0].clone(), m[2].clone(), m[1].clone(), m[3].clone()]);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.mix(i, j, &[m[3].clone(), -&m[1], -&m[2], m[0].clone()]);
        }
    }

    /// Turns the pivot list into a divisibility chain with nonnegative entries.
    fn fix_divisibility(&mut self) {
        let n = self.pivots.len();
        for k in 0..n {
            if self.pivots[k].2.is_negative() {
                let r = self.pivots[k].0;
                self.pivots[k].2 = -&self.pivots[k].2;
                if let Some(u) = &mut self.u {
                    u.negate(r);
                }
                if let Some(ut) = &mut self.u_inv_t {
                    ut.negate(r);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = self.pivots[i].2.clone();
                let b = self.pivots[j].2.clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let (ag, bg) = (&a / &g, &b / &g);
                let (ri, ci) = (self.pivots[i].0, self.pivots[i].1);
                let (rj, cj) = (self.pivots[j].0, self.pivots[j].1);
                // L·diag(a,b)·R = diag(g, ab/g)
                let l = [s.clone(), t.clone(), -&bg, ag.clone()];
                let r = [BigInt::one(), -(&t * &bg), BigInt::one(), &s * &ag];
                self.row_mix(ri, rj, &l);
                self.col_mix(ci, cj, &r);
                self.pivots[i].2 = g;
                self.pivots[j].2 = &a * &bg;
            }
        }
    }

    fn finish(mut self) -> SnfParts {
        // Move pivot k to position (k, k) by swaps.
        let mut row_at: Vec<usize> = (0..self.rows).collect();
        let mut row_pos: Vec<usize> = (0..self.rows).collect();
        let mut col_at: Vec<usize> = (0..self.cols).collect();
        let mut col_pos: Vec<usize> = (0..self.cols).collect();
        for k in 0..self.pivots.len() {
            let (r, c, _) = self.pivots[k];
            let pr = row_pos[r];
            if pr != k {
                if let Some(u) = &mut self.u {
                    u.swap(k, pr);
                }
                if let Some(ut) = &mut self.u_inv_t {
                    ut.swap(k, pr);
                }
                let other = row_at[k];
                row_at.swap(k, pr);
                row_pos[r] = k;
                row_pos[other] = pr;
            }
            let pc = col_pos[c];
            if pc != k {
                if let Some(vt) = &mut self.v_t {
                    vt.swap(k, pc);
                }
                if let Some(vi) = &mut self.v_inv {
                    vi.swap(k, pc);
                }
                let other = col_at[k];
                col_at.swap(k, pc);
                col_pos[c] = k;
                col_pos[other] = pc;
            }
        }
        let (m, n) = (self.rows, self.cols);
        SnfParts {
            factors: self.pivots.into_iter().map(|(_, _, a)| a).collect(),
            rows: m,
            cols: n,
            u: self.u.map(|s| s.into_matrix(m)),
            u_inv: self.u_inv_t.map(|s| s.into_matrix(m).transpose()),
            v: self.v_t.map(|s| s.into_matrix(n).transpose()),
            v_inv: self.v_inv.map(|s| s.into_matrix(n)),
        }
    }
}

fn update_index(col_rows: &mut [BTreeSet<usize>], i: usize, old: &SparseRow, new: &SparseRow) {
    let (mut a, mut b) = (0, 0);
    while a < old.len() || b < new.len() {
        if b >= new.len() || (a < old.len() && old[a].0 < new[b].0) {
            col_rows[old[a].0].remove(&i);
            a += 1;
        } else if a >= old.len() || new[b].0 < old[a].0 {
            col_rows[new[b].0].insert(i);
            b += 1;
        } else {
            a += 1;
            b += 1;
        }
    }
}
