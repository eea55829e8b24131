use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// One sparse row: `(column, value)` pairs sorted by column, no stored zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Integer matrix with arbitrary-precision entries, stored row-major and sparse.
///
/// Dimensions are fixed at construction. Small dense matrices pay a little
/// overhead; the 4D complexes have a few thousand rows with a handful of
/// nonzeros each, which is the case this layout is for.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn scalar(n: usize, value: impl Into<BigInt>) -> Self {
        let v: BigInt = value.into();
        if v.is_zero() {
            return Self::zeros(n, n);
        }
        let data = (0..n).map(|i| vec![(i, v.clone())]).collect();
        IntMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from dense `i64` rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_i64_rows_with_cols(rows, cols)
    }

    pub fn from_i64_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix rows");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, BigInt::from(*v)))
                    .collect()
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_dense(rows: usize, cols: usize, dense: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(dense.len(), rows, "row count mismatch");
        let data = dense
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix rows");
                r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        IntMatrix { rows, cols, data }
    }

    /// Sums duplicate positions; drops zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) out of bounds");
            data[i].push((j, v));
        }
        for row in &mut data {
            *row = normalize_row(std::mem::take(row));
        }
        IntMatrix { rows, cols, data }
    }

    /// Takes ownership of already sorted, zero-free rows.
    pub fn from_sparse_rows(cols: usize, data: Vec<SparseRow>) -> Self {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(j, v)| *j < cols && !v.is_zero())));
        IntMatrix { rows: data.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut t = Self::zeros(columns.len(), rows);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            t.data[j] = c.iter().enumerate().filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone())).collect();
        }
        t.transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &SparseRow> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Dense `i64` copy, or `None` if an entry does not fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.to_i64()?;
        }
        Some(out)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        acc.push((*j, a * b));
                    }
                }
                normalize_row(acc)
            })
            .collect();
        IntMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in matrix-vector product");
        self.data
            .iter()
            .map(|row| row.iter().fold(BigInt::zero(), |s, (j, v)| s + v * &x[*j]))
            .collect()
    }

    /// `xᵀ·A` as a vector of length `cols`.
    pub fn vec_mul(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.rows, x.len(), "dimension mismatch in vector-matrix product");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, v) in row {
                out[*j] += v * &x[i];
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        self.combine(other, &BigInt::one())
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.combine(other, &-BigInt::one())
    }

    /// `self + c·other`.
    pub fn combine(&self, other: &IntMatrix, c: &BigInt) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy_row(a, b, c))
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut out: SparseRow = r
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, v)| (pos[*j], v.clone()))
                    .collect();
                out.sort_by_key(|(j, _)| *j);
                out
            })
            .collect();
        IntMatrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let data = rows.iter().map(|&i| self.data[i].clone()).collect();
        IntMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let mut trip = Vec::new();
        for (i, j, a) in self.triplets() {
            for (k, l, b) in other.triplets() {
                trip.push((i * other.rows + k, j * other.cols + l, a * b));
            }
        }
        Self::from_triplets(self.rows * other.rows, self.cols * other.cols, trip)
    }

    /// Conjugates by a permutation: result[p(i)][p(j)] = self[i][j].
    pub fn permute_symmetric(&self, p: &[usize]) -> IntMatrix {
        let trip = self.triplets().map(|(i, j, v)| (p[i], p[j], v.clone()));
        Self::from_triplets(self.rows, self.cols, trip)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.triplets().all(|(_, _, v)| !v.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.data.iter().all(|r| r.len() == self.cols && r.iter().all(|(_, v)| v.is_positive()))
    }

    /// Writes the matrix as CSV: one line per row, decimal integers.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for row in self.to_dense() {
            w.write_record(row.iter().map(|v| v.to_str_radix(10)))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }

    /// Parses CSV written by [`IntMatrix::to_csv`]. An empty input is the 0×0 matrix.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut dense = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| s.parse::<BigInt>().map_err(|e| Error::Format(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            dense.push(row);
        }
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Format("ragged CSV rows".into()));
        }
        Ok(Self::from_dense(dense.len(), cols, dense))
    }

    /// JSON nested arrays of integers; big entries stay exact.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let rows = value
            .as_array()
            .ok_or_else(|| Error::Format("matrix JSON must be an array of rows".into()))?;
        let mut dense = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Format("matrix row must be an array".into()))?;
            let parsed = row
                .iter()
                .map(json_to_bigint)
                .collect::<Result<Vec<_>>>()?;
            dense.push(parsed);
        }
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Format("ragged JSON rows".into()));
        }
        Ok(Self::from_dense(dense.len(), cols, dense))
    }
}

pub(crate) fn json_to_bigint(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|e| Error::Format(format!("{n}: {e}"))),
        other => Err(Error::Format(format!("expected an integer, found {other}"))),
    }
}

pub(crate) fn bigint_to_json(v: &BigInt) -> serde_json::Number {
    v.to_str_radix(10).parse().expect("decimal integer is a valid JSON number")
}

/// Serializes a BigInt as a JSON number (exact, arbitrary length).
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    bigint_to_json(v).serialize(s)
}

pub fn serialize_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&bigint_to_json(x))?;
    }
    seq.end()
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for row in self.to_dense() {
            let nums: Vec<serde_json::Number> = row.iter().map(bigint_to_json).collect();
            seq.serialize_element(&nums)?;
        }
        seq.end()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            f.debug_list().entries(self.to_dense().iter().map(|r| {
                r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            })).finish()
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}

/// Sorts by column, merges duplicates, removes zeros.
pub(crate) fn normalize_row(mut row: Vec<(usize, BigInt)>) -> SparseRow {
    row.sort_by_key(|(j, _)| *j);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + c·b` for sorted sparse rows.
pub(crate) fn axpy_row(a: &[(usize, BigInt)], b: &[(usize, BigInt)], c: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let take_a = k >= b.len() || (i < a.len() && a[i].0 < b[k].0);
        let take_b = i >= a.len() || (k < b.len() && b[k].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[k].0, c * &b[k].1));
            k += 1;
        } else {
            let v = &a[i].1 + c * &b[k].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.pow(2), m(&[&[7, 10], &[15, 22]]));
    }

    #[test]
    fn set_and_get_keep_rows_sorted() {
        let mut a = IntMatrix::zeros(2, 3);
        a.set(0, 2, BigInt::from(5));
        a.set(0, 0, BigInt::from(-1));
        a.set(0, 2, BigInt::zero());
        assert_eq!(a.row(0), &[(0, BigInt::from(-1))]);
        assert_eq!(a.get(1, 1), BigInt::zero());
    }

    #[test]
    fn csv_and_json_round_trip_big_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let a = IntMatrix::from_dense(2, 2, vec![
            vec![big.clone(), BigInt::from(-3)],
            vec![BigInt::zero(), -big],
        ]);
        assert_eq!(IntMatrix::from_csv(&a.to_csv().unwrap()).unwrap(), a);
        assert_eq!(IntMatrix::from_json(&a.to_json()).unwrap(), a);
        assert!(a.to_json().contains("123456789012345678901234567890"));
    }

    #[test]
    fn kron_of_identities() {
        let a = IntMatrix::identity(2);
        assert_eq!(a.kron(&IntMatrix::identity(3)), IntMatrix::identity(6));
    }
}
