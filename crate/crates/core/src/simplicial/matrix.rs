//! Sparse integer matrices in row-major form.

use std::fmt;

/// A sparse integer matrix. Each row keeps its nonzero entries sorted by column.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, 1));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            m.rows[i] = row
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(j, v)| (j, *v))
                .collect();
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of bounds");
            m.rows[i].push((j, v));
        }
        for row in &mut m.rows {
            row.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *row = merged;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map_or(0, |k| self.rows[i][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols]; self.nrows];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                out[i][j] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                t.rows[j].push((i, v));
            }
        }
        t
    }

    /// Matrix product `self * rhs`, or `None` if an entry overflows `i64`.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        let mut acc: Vec<i64> = vec![0; rhs.ncols];
        let mut touched: Vec<usize> = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(j, b) in &rhs.rows[k] {
                    if acc[j] == 0 {
                        touched.push(j);
                    }
                    acc[j] = acc[j].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                if acc[j] != 0 {
                    out.rows[i].push((j, acc[j]));
                }
                acc[j] = 0;
            }
            touched.clear();
        }
        Some(out)
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, i64)>> {
        self.rows
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
