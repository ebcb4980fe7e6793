//! Dense exact matrices and fraction-free elimination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Default cap on `rows * cols` for dense matrices.
pub const DEFAULT_MAX_ENTRIES: u128 = 10_000_000;

/// Row-major dense matrix of unbounded integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

pub(crate) fn check_entries(rows: u128, cols: u128, max_entries: u128) -> Result<()> {
    let requested = rows.saturating_mul(cols);
    if requested > max_entries {
        return Err(Error::LimitExceeded {
            what: "matrix entry count",
            requested,
            limit: max_entries,
        });
    }
    Ok(())
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ArityMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    /// Nonzero entries as `(flat index, value)`, in increasing index order.
    pub fn sparse(&self) -> Vec<(usize, BigInt)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    /// Matrix product, skipping zero entries of `self`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row_out = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let row_b = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in row_out.iter_mut().zip(row_b) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; row and column indices of `self` are the more
    /// significant digits.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for (i, a) in self.sparse() {
            let (r1, c1) = (i / self.cols, i % self.cols);
            for (j, b) in other.sparse() {
                let (r2, c2) = (j / other.cols, j % other.cols);
                out.data[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] = &a * &b;
            }
        }
        out
    }

    pub fn rank(&self, exec: Exec) -> usize {
        let rows: Vec<Vec<BigInt>> = self.data.chunks(self.cols.max(1)).map(<[BigInt]>::to_vec).collect();
        if self.cols == 0 {
            return 0;
        }
        bareiss_rank(rows, exec)
    }
}

impl fmt::Display for ExactMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sparse integer matrix holding only nonzero entries, keyed by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// 0/1 matrix with ones at the given positions.
    pub fn from_ones(rows: usize, cols: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let entries = ones.into_iter().map(|rc| (rc, BigInt::one())).collect();
        SparseMatrix { rows, cols, entries }
    }

    pub fn from_dense(m: &ExactMatrix) -> Self {
        let entries = m
            .sparse()
            .into_iter()
            .map(|(i, v)| ((i / m.cols, i % m.cols), v))
            .collect();
        SparseMatrix {
            rows: m.rows,
            cols: m.cols,
            entries,
        }
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v.clone());
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> SparseMatrix {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&rc, v)| (rc, v * k)).collect(),
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &by_row[k] {
                *acc.entry((r, c)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        })
    }

    /// Kronecker product with the same digit convention as [`ExactMatrix::kron`].
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut entries = BTreeMap::new();
        for (&(r1, c1), a) in &self.entries {
            for (&(r2, c2), b) in &other.entries {
                entries.insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            entries,
        }
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// After processing pivots in columns `c_1 < … < c_r`, every remaining entry
/// is an `(r+1) × (r+1)` minor, so dividing by the previous pivot is exact.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, exec: Exec) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        exec.for_each_mut(tail, |row| {
            let factor = std::mem::take(&mut row[col]);
            for c in col + 1..ncols {
                let v = &pivot * &row[c] - &factor * &pivot_row[c];
                row[c] = v / &prev;
            }
        });
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Gram matrix `G[i][j] = <v_i, v_j>` of sparse integer vectors.
pub fn gram_matrix(vectors: &[Vec<(usize, BigInt)>], exec: Exec) -> Vec<Vec<BigInt>> {
    let n = vectors.len();
    let upper: Vec<Vec<BigInt>> = exec.map_range(n, |i| (i..n).map(|j| sparse_dot(&vectors[i], &vectors[j])).collect());
    let mut g = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in upper.into_iter().enumerate() {
        for (t, v) in row.into_iter().enumerate() {
            let j = i + t;
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    g
}

pub fn sparse_dot(a: &[(usize, BigInt)], b: &[(usize, BigInt)]) -> BigInt {
    let (mut i, mut j) = (0, 0);
    let mut acc = BigInt::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Rank of a family of vectors via their Gram matrix; exact because
/// `rank(V Vᵀ) = rank(V)` over the reals.
pub fn span_rank_sparse(vectors: &[Vec<(usize, BigInt)>], exec: Exec) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    bareiss_rank(gram_matrix(vectors, exec), exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Plain Gaussian elimination over Q.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    let pivot = m[rank].clone();
                    for (x, p) in m[r][c..].iter_mut().zip(&pivot[c..]) {
                        *x -= p * &f;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(bareiss_rank(big(&[vec![1, 2], vec![2, 4]]), Exec::Sequential), 1);
        assert_eq!(bareiss_rank(big(&[vec![0, 1], vec![1, 0]]), Exec::Sequential), 2);
        assert_eq!(bareiss_rank(big(&[vec![0, 0, 0]]), Exec::Sequential), 0);
        assert_eq!(bareiss_rank(vec![], Exec::Sequential), 0);
        assert_eq!(
            bareiss_rank(big(&[vec![0, 2, 4], vec![0, 1, 2], vec![1, 0, 1]]), Exec::Parallel),
            2
        );
    }

    #[test]
    fn products() {
        let a = ExactMatrix::from_rows(big(&[vec![1, 2], vec![3, 4]])).unwrap();
        let i = ExactMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, ExactMatrix::from_rows(big(&[vec![7, 10], vec![15, 22]])).unwrap());
        assert!(a.mul(&ExactMatrix::zeros(3, 1)).is_err());
        let k = i.kron(&a);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(3, 2), BigInt::from(3));
        assert_eq!(*k.get(0, 2), BigInt::zero());
        assert_eq!(a.transpose().to_string(), "1 3\n2 4\n");
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let a = ExactMatrix::from_rows(big(&[vec![1, 0, 2], vec![0, 0, -1]])).unwrap();
        let b = ExactMatrix::from_rows(big(&[vec![3, 1], vec![0, 0], vec![1, -5]])).unwrap();
        let (sa, sb) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b));
        assert_eq!(sa.mul(&sb).unwrap().to_dense(), a.mul(&b).unwrap());
        assert_eq!(sa.kron(&sb).to_dense(), a.kron(&b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        assert_eq!(sa.scale(&BigInt::from(-2)).to_dense(), a.scale(&BigInt::from(-2)));
        assert_eq!(sa.scale(&BigInt::zero()).nnz(), 0);
        assert!(sa.mul(&sa).is_err());
        // cancellation leaves no stored zero
        let c = SparseMatrix::from_dense(&ExactMatrix::from_rows(big(&[vec![1, -1]])).unwrap());
        let d = SparseMatrix::from_dense(&ExactMatrix::from_rows(big(&[vec![1], vec![1]])).unwrap());
        assert_eq!(c.mul(&d).unwrap(), SparseMatrix::zeros(1, 1));
    }

    #[test]
    fn entry_guard() {
        assert!(check_entries(4000, 4000, DEFAULT_MAX_ENTRIES).is_err());
        assert!(check_entries(1000, 1000, DEFAULT_MAX_ENTRIES).is_ok());
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..7)
        ) {
            let want = rational_rank(&rows);
            prop_assert_eq!(bareiss_rank(big(&rows), Exec::Sequential), want);
            prop_assert_eq!(bareiss_rank(big(&rows), Exec::Parallel), want);
            let sparse: Vec<Vec<(usize, BigInt)>> = big(&rows)
                .into_iter()
                .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
                .collect();
            prop_assert_eq!(span_rank_sparse(&sparse, Exec::Sequential), want);
        }
    }
}
