//! Structural checks on constructed codes: small minors, short cycles of
//! the Tanner graph, column distances and free distance.
//!
//! All checks work on the truncated sliding matrix `H_j^c`; by default
//! `j = μ`, the part of the sliding matrix that affects the first block.
//! Witness lists are sorted, so reports are deterministic.

pub mod cycles;
pub mod distance;
pub mod minors;

use thiserror::Error;

use crate::gf::FieldElement;
use crate::matrix::ExponentMatrix;

pub use cycles::{enumerate_cycles, girth, Cycle, CycleReport, Girth};
pub use distance::{
    check_distance_assumptions, column_distance, column_distances, distance_profile, free_distance, AssumptionReport,
    DistanceProfile, FreeDistance,
};
pub use minors::{check_minors, closed_form_2x2, minor_cycle_duality, Duality, MinorClass, MinorReport};

/// Default cap on the number of candidate submatrices or subsets.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("horizon {horizon} needs {count} candidates, over the budget of {budget}")]
    HorizonTooLarge { horizon: usize, count: u128, budget: u64 },
    #[error("assumption check needs {count} subsets, over the budget of {budget}")]
    BudgetExhausted { count: u128, budget: u64 },
    #[error("minor size {0} is not supported (2 or 3)")]
    UnsupportedMinorSize(usize),
    #[error("cycle length {0} is not supported (4 or 6)")]
    UnsupportedCycleLength(usize),
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Row-major dense copy for fast lookups during enumeration.
pub(crate) struct Dense {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
    row_support: Vec<Vec<usize>>,
}

impl Dense {
    pub fn new(m: &ExponentMatrix) -> Self {
        let mut data = vec![FieldElement::Zero; m.rows() * m.cols()];
        let mut row_support = vec![Vec::new(); m.rows()];
        for (r, c, e) in m.iter() {
            data[r * m.cols() + c] = FieldElement::Pow(e);
            row_support[r].push(c);
        }
        Dense {
            rows: m.rows(),
            cols: m.cols(),
            data,
            row_support,
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn row_support(&self, r: usize) -> &[usize] {
        &self.row_support[r]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<FieldElement>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c)).collect())
            .collect()
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c).is_zero())
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}
