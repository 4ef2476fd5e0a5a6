//! Column-major sparse matrices of exact rationals.

use num_traits::Zero;

use crate::Rat;

/// A sparse matrix stored as columns of `(row, value)` pairs with rows
/// ascending and values nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseRationalMatrix {
    nrows: usize,
    columns: Vec<Vec<(usize, Rat)>>,
}

impl SparseRationalMatrix {
    pub fn new(nrows: usize) -> Self {
        Self { nrows, columns: Vec::new() }
    }

    pub fn from_columns(nrows: usize, columns: Vec<Vec<(usize, Rat)>>) -> Self {
        let mut m = Self::new(nrows);
        for col in columns {
            m.push_column(col);
        }
        m
    }

    /// Append a column. Entries are sorted and zero entries dropped.
    pub fn push_column(&mut self, mut entries: Vec<(usize, Rat)>) {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(r, _)| *r);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(r, _)| *r < self.nrows));
        self.columns.push(entries);
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rat)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rat {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn dense_column(&self, j: usize) -> Vec<Rat> {
        let mut col = vec![Rat::zero(); self.nrows];
        for (r, v) in &self.columns[j] {
            col[*r] = v.clone();
        }
        col
    }

    /// `sum_j x_j * col_j` as a dense vector.
    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.ncols());
        let mut out = vec![Rat::zero(); self.nrows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[j] {
                out[*r] += v * xj;
            }
        }
        out
    }

    /// Dot product of a dense row vector with column `j`.
    pub fn col_dot(&self, row: &[Rat], j: usize) -> Rat {
        let mut acc = Rat::zero();
        for (r, v) in &self.columns[j] {
            acc += &row[*r] * v;
        }
        acc
    }
}
