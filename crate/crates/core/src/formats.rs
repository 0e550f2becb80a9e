//! Matrix export formats and small parsers shared by the CLI and bindings.
//!
//! # alist
//!
//! The classic alist layout, extended with field values. For a matrix with
//! `M` rows and `N` columns:
//!
//! ```text
//! N M
//! max_column_weight max_row_weight
//! column weights (N numbers)
//! row weights (M numbers)
//! one line per column: row value row value ... padded with "0 0"
//! one line per row:    col value col value ... padded with "0 0"
//! ```
//!
//! Indices are 1-based; `α^e` is written as the value `e + 1`, so values
//! range over `1 ..= q - 1` and `0` only appears in padding. Numbers are
//! separated by single spaces and every line ends with `\n`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dts::DifferenceTriangleSet;
use crate::gf::{is_prime, FieldElement};
use crate::matrix::ExponentMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("alist: {0}")]
    Alist(String),
    #[error("field spec {0:?} is not p^N for a prime p")]
    FieldSpec(String),
}

pub fn to_alist(m: &ExponentMatrix) -> String {
    let mut cols: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m.cols()];
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m.rows()];
    for (r, c, e) in m.iter() {
        cols[c].push((r, e));
        rows[r].push((c, e));
    }
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{} {}", m.cols(), m.rows()).unwrap();
    writeln!(out, "{max_c} {max_r}").unwrap();
    writeln!(out, "{}", join(&mut cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut rows.iter().map(Vec::len))).unwrap();
    for (lists, width) in [(&cols, max_c), (&rows, max_r)] {
        for list in lists.iter() {
            let mut fields: Vec<usize> = list.iter().flat_map(|&(i, e)| [i + 1, e as usize + 1]).collect();
            fields.resize(2 * width, 0);
            writeln!(out, "{}", join(&mut fields.into_iter())).unwrap();
        }
    }
    out
}

pub fn from_alist(text: &str) -> Result<ExponentMatrix, FormatError> {
    let err = |s: &str| FormatError::Alist(s.to_string());
    let mut lines = text.lines();
    let mut numbers = |what: &str| -> Result<Vec<usize>, FormatError> {
        let line = lines.next().ok_or_else(|| err(&format!("missing {what}")))?;
        line.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| err(&format!("{what}: {e}"))))
            .collect()
    };
    let dims = numbers("dimensions")?;
    let [ncols, nrows] = dims[..] else {
        return Err(err("dimension line must hold two numbers"));
    };
    let maxes = numbers("maximum weights")?;
    if maxes.len() != 2 {
        return Err(err("maximum weight line must hold two numbers"));
    }
    let col_weights = numbers("column weights")?;
    let row_weights = numbers("row weights")?;
    if col_weights.len() != ncols || row_weights.len() != nrows {
        return Err(err("weight lists do not match the dimensions"));
    }
    let mut m = ExponentMatrix::zeros(nrows, ncols);
    for (c, &w) in col_weights.iter().enumerate() {
        let fields = numbers("column entries")?;
        for pair in fields.chunks(2).take(w) {
            let [r, v] = pair else {
                return Err(err("odd number of column fields"));
            };
            if *r == 0 || *v == 0 || *r > nrows {
                return Err(err("column entry out of range"));
            }
            m.set(r - 1, c, FieldElement::Pow(*v as u32 - 1))
                .map_err(|e| err(&e.to_string()))?;
        }
    }
    if m.column_weights() != col_weights {
        return Err(err("column lists disagree with column weights"));
    }
    for (r, &w) in row_weights.iter().enumerate() {
        let fields = numbers("row entries")?;
        for pair in fields.chunks(2).take(w) {
            let [c, v] = pair else {
                return Err(err("odd number of row fields"));
            };
            if *c == 0 || *c > ncols || m.get(r, c - 1) != FieldElement::Pow((*v as u32).wrapping_sub(1)) {
                return Err(err("row lists disagree with column lists"));
            }
        }
    }
    if m.row_weights() != row_weights {
        return Err(err("row lists disagree with row weights"));
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZeroStyle {
    #[default]
    Zero,
    Blank,
}

/// Grid of `α`-powers: `1` for the unit, `a` for `α`, `a^k` otherwise.
/// Columns are left-aligned and separated by one space.
pub fn render_pretty(m: &ExponentMatrix, zeros: ZeroStyle) -> String {
    let cell = |x: FieldElement| -> String {
        match (x, zeros) {
            (FieldElement::Zero, ZeroStyle::Blank) => String::new(),
            (x, _) => x.to_string(),
        }
    };
    let cells: Vec<Vec<String>> = m
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(cell).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    cells
        .iter()
        .map(|row| {
            let line = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:<w$}"))
                .collect::<Vec<_>>()
                .join(" ");
            line.trim_end().to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// A field given as `p^N`, or as a prime power `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub degree: u32,
}

impl FromStr for FieldSpec {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FormatError::FieldSpec(s.to_string());
        let (p, degree) = match s.split_once('^') {
            Some((p, n)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                n.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = s.trim().parse::<u32>().map_err(|_| bad())?;
                let p = (2..=q).find(|d| q % d == 0).ok_or_else(bad)?;
                let (mut rest, mut degree) = (q, 0);
                while rest % p == 0 {
                    rest /= p;
                    degree += 1;
                }
                if rest != 1 {
                    return Err(bad());
                }
                (p, degree)
            }
        };
        if !is_prime(p) || degree == 0 {
            return Err(bad());
        }
        Ok(FieldSpec { p, degree })
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.p, self.degree)
    }
}

pub const CODE_SCHEMA: &str = "nbldpc.code/1";

/// A code description: `{"schema", "n", "field": "2^5", "sets": [[...]]}`.
/// `n` defaults to the number of sets plus one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    pub field: String,
    pub sets: DifferenceTriangleSet,
}
