//! Sparse matrices whose entries are powers of `α`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::FieldElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry ({row}, {col}) is outside a {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

/// Sparse matrix with entries in GF(q) stored as exponents of `α`.
///
/// Indices are 0-based in the API; exported formats use 1-based indices.
/// Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), u32>,
}

impl ExponentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExponentMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Build from `(row, col, exponent)` triples, 0-based.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, e) in triples {
            m.set(r, c, FieldElement::Pow(e))?;
        }
        Ok(m)
    }

    pub fn from_dense(dense: &[Vec<FieldElement>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if let FieldElement::Pow(e) = v {
                    m.entries.insert((r, c), e);
                }
            }
        }
        m
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

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries
            .get(&(row, col))
            .map_or(FieldElement::Zero, |&e| FieldElement::Pow(e))
    }

    pub fn set(&mut self, row: usize, col: usize, value: FieldElement) -> Result<(), MatrixError> {
        if row >= self.rows || col >= self.cols {
            return Err(MatrixError::OutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        match value {
            FieldElement::Zero => {
                self.entries.remove(&(row, col));
            }
            FieldElement::Pow(e) => {
                self.entries.insert((row, col), e);
            }
        }
        Ok(())
    }

    /// Nonzero entries in row-major order as `(row, col, exponent)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.entries.iter().map(|(&(r, c), &e)| (r, c, e))
    }

    /// Row indices of the nonzero entries in column `col`, ascending.
    pub fn column_support(&self, col: usize) -> Vec<usize> {
        self.iter().filter(|&(_, c, _)| c == col).map(|(r, _, _)| r).collect()
    }

    pub fn row_support(&self, row: usize) -> Vec<usize> {
        self.entries
            .range((row, 0)..(row + 1, 0))
            .map(|(&(_, c), _)| c)
            .collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for (_, c, _) in self.iter() {
            w[c] += 1;
        }
        w
    }

    pub fn row_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.rows];
        for (r, _, _) in self.iter() {
            w[r] += 1;
        }
        w
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        let mut d = vec![vec![FieldElement::Zero; self.cols]; self.rows];
        for (r, c, e) in self.iter() {
            d[r][c] = FieldElement::Pow(e);
        }
        d
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExponentMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if let Some(&e) = self.entries.get(&(r, c)) {
                    m.entries.insert((i, j), e);
                }
            }
        }
        m
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            schema: MATRIX_SCHEMA.to_string(),
            rows: self.rows,
            cols: self.cols,
            entries: self.iter().map(|(r, c, e)| [r + 1, c + 1, e as usize]).collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(j.rows, j.cols);
        for &[r, c, e] in &j.entries {
            if r == 0 || c == 0 {
                return Err(MatrixError::OutOfRange {
                    row: r,
                    col: c,
                    rows: j.rows,
                    cols: j.cols,
                });
            }
            m.set(r - 1, c - 1, FieldElement::Pow(e as u32))?;
        }
        Ok(m)
    }
}

pub const MATRIX_SCHEMA: &str = "nbldpc.matrix/1";

/// Exponent JSON: `{"schema", "rows", "cols", "entries": [[r, c, e], ...]}`
/// with 1-based `r`, `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default = "matrix_schema")]
    pub schema: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[usize; 3]>,
}

fn matrix_schema() -> String {
    MATRIX_SCHEMA.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_never_stored() {
        let mut m = ExponentMatrix::zeros(2, 2);
        m.set(0, 1, FieldElement::Pow(3)).unwrap();
        m.set(0, 1, FieldElement::Zero).unwrap();
        assert_eq!(m.nnz(), 0);
        assert!(m.set(2, 0, FieldElement::ONE).is_err());
    }

    #[test]
    fn supports_and_weights() {
        let m = ExponentMatrix::from_triples(3, 2, [(0, 0, 1), (2, 0, 4), (1, 1, 0)]).unwrap();
        assert_eq!(m.column_support(0), vec![0, 2]);
        assert_eq!(m.row_support(2), vec![0]);
        assert_eq!(m.column_weights(), vec![2, 1]);
        assert_eq!(m.row_weights(), vec![1, 1, 1]);
        let s = m.submatrix(&[0, 2], &[0]);
        assert_eq!(
            s.to_dense(),
            vec![vec![FieldElement::Pow(1)], vec![FieldElement::Pow(4)]]
        );
    }

    #[test]
    fn json_is_one_based() {
        let m = ExponentMatrix::from_triples(1, 2, [(0, 0, 1), (0, 1, 0)]).unwrap();
        let j = m.to_json();
        assert_eq!(j.entries, vec![[1, 1, 1], [1, 2, 0]]);
        assert_eq!(ExponentMatrix::from_json(&j).unwrap(), m);
    }
}
