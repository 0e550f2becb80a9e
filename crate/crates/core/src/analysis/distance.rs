//! Column distances and free distance.
//!
//! `d_j^c` is the smallest `d` such that one of the first `n` columns of
//! `H_j^c` lies in the span of `d - 1` other columns. The search runs over
//! column subsets by increasing size and stops at the first hit.
//!
//! The free distance is bracketed: `d_r^c` is a lower bound for every
//! horizon `r`, and the weight-`(w+1)` codeword obtained by encoding a unit
//! message is an upper bound. When the two meet the value is exact.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{binomial, one_based, AnalysisError, Dense};
use crate::code::{CodeSpec, MessageWord};
use crate::gf::{FieldElement, GaloisField};

pub const DISTANCE_SCHEMA: &str = "nbldpc.distance/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeDistance {
    Exact(usize),
    Bounds { lower_bound: usize, upper_bound: usize },
}

impl FreeDistance {
    pub fn exact(self) -> Option<usize> {
        match self {
            FreeDistance::Exact(d) => Some(d),
            FreeDistance::Bounds { .. } => None,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            FreeDistance::Exact(d) => d,
            FreeDistance::Bounds { lower_bound, .. } => lower_bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionWitness {
    /// 1-based rows `I` of `H_μ^c`.
    pub rows: Vec<usize>,
    /// 1-based columns `J`; the first one is `min(J)`.
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub holds: bool,
    pub checked: u64,
    pub failures: Vec<AssumptionWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub schema: String,
    pub horizon: usize,
    pub column_distances: Vec<usize>,
    pub free_distance: FreeDistance,
    /// `w + 1`
    pub predicted_free: usize,
    /// `w_j + 1` for `j = 0 ..= horizon`
    pub predicted_column: Vec<usize>,
    pub assumptions: AssumptionReport,
}

fn is_in_span(f: &GaloisField, h: &Dense, target: usize, others: &[usize]) -> bool {
    let rows: Vec<usize> = (0..h.rows).collect();
    let mut cols = others.to_vec();
    let base = f.rank(h.submatrix(&rows, &cols));
    cols.push(target);
    f.rank(h.submatrix(&rows, &cols)) == base
}

/// Smallest `d <= max_weight` such that some column in `targets` is in the
/// span of `d - 1` other columns; `None` if there is none.
fn min_dependent_weight(
    f: &GaloisField,
    h: &Dense,
    targets: std::ops::Range<usize>,
    max_weight: usize,
) -> Option<usize> {
    let nonzero: Vec<usize> = (0..h.cols).filter(|&c| !h.column_is_zero(c)).collect();
    for d in 1..=max_weight {
        for target in targets.clone() {
            let pool: Vec<usize> = nonzero.iter().copied().filter(|&c| c != target).collect();
            for others in pool.into_iter().combinations(d - 1) {
                if is_in_span(f, h, target, &others) {
                    return Some(d);
                }
            }
        }
    }
    None
}

fn search_cost(n: usize, cols: usize, max_weight: usize) -> u128 {
    (0..max_weight)
        .map(|s| n as u128 * binomial(cols.saturating_sub(1), s))
        .sum()
}

/// Exact `d_j^c` by the span criterion.
pub fn column_distance(spec: &CodeSpec, j: usize, budget: u64) -> Result<usize, AnalysisError> {
    let h = Dense::new(&spec.sliding_matrix(j));
    // encoding a unit message in the lightest column gives a truncated
    // codeword of weight w_j + 1
    let max_weight = spec.min_column_weight(j) + 1;
    let count = search_cost(spec.n(), h.cols, max_weight);
    if count > budget as u128 {
        return Err(AnalysisError::HorizonTooLarge {
            horizon: j,
            count,
            budget,
        });
    }
    Ok(min_dependent_weight(spec.field(), &h, 0..spec.n(), max_weight)
        .expect("the encoded unit message is a truncated codeword of weight w_j + 1"))
}

/// `d_0^c ..= d_horizon^c`.
pub fn column_distances(spec: &CodeSpec, horizon: usize, budget: u64) -> Result<Vec<usize>, AnalysisError> {
    (0..=horizon).map(|j| column_distance(spec, j, budget)).collect()
}

/// Free distance with certified bounds from codewords of degree at most
/// `horizon`.
pub fn free_distance(spec: &CodeSpec, horizon: usize, budget: u64) -> Result<FreeDistance, AnalysisError> {
    let lower = column_distance(spec, horizon, budget)?;
    let mut upper = unit_codeword_weight(spec);
    if lower < upper {
        // codewords of degree <= horizon are the kernel of the untruncated
        // sliding matrix with horizon + 1 block columns
        let h = Dense::new(&spec.full_sliding_matrix(horizon + 1));
        let max_weight = upper - 1;
        let count = search_cost(spec.n(), h.cols, max_weight);
        if count > budget as u128 {
            return Err(AnalysisError::HorizonTooLarge { horizon, count, budget });
        }
        if let Some(d) = min_dependent_weight(spec.field(), &h, 0..spec.n(), max_weight) {
            upper = d;
        }
    }
    Ok(if lower == upper {
        FreeDistance::Exact(lower)
    } else {
        FreeDistance::Bounds {
            lower_bound: lower,
            upper_bound: upper,
        }
    })
}

/// Weight of the codeword generated by a unit message in the first
/// information position; equals `w + 1`.
fn unit_codeword_weight(spec: &CodeSpec) -> usize {
    let mut u = vec![FieldElement::Zero; spec.n() - 1];
    u[0] = FieldElement::ONE;
    let v = spec
        .encode(&MessageWord { blocks: vec![u] })
        .expect("block length n - 1");
    debug_assert!(spec
        .syndrome(&v)
        .expect("blocks of length n")
        .iter()
        .all(|s| s.is_zero()));
    v.weight()
}

/// For every information column `j1` of the first block, with `I` its
/// support in `H_μ^c` and `J = {j1} ∪ S`, `S ⊂ {j1+1, ...}`, `|J| = |I|`,
/// checks that column `j1` restricted to `I` is not in the span of the
/// columns in `S` restricted to `I`.
///
/// `|I| = w` forces `|J| = w`; smaller `J` are covered because spans only
/// grow with `S`. When fewer than `w - 1` columns follow `j1`, all of them
/// are used.
pub fn check_distance_assumptions(spec: &CodeSpec, budget: u64) -> Result<AssumptionReport, AnalysisError> {
    let h = Dense::new(&spec.sliding_matrix(spec.memory()));
    let f = spec.field();
    let w = spec.weight();
    let count: u128 = (0..spec.n() - 1)
        .map(|j1| binomial(h.cols - j1 - 1, (w - 1).min(h.cols - j1 - 1)))
        .sum();
    if count > budget as u128 {
        return Err(AnalysisError::BudgetExhausted { count, budget });
    }
    let mut report = AssumptionReport {
        holds: true,
        checked: 0,
        failures: Vec::new(),
    };
    for j1 in 0..spec.n() - 1 {
        let rows: Vec<usize> = (0..h.rows).filter(|&r| !h.get(r, j1).is_zero()).collect();
        let later: Vec<usize> = (j1 + 1..h.cols).collect();
        let size = (w - 1).min(later.len());
        for others in later.into_iter().combinations(size) {
            report.checked += 1;
            let base = f.rank(h.submatrix(&rows, &others));
            let mut cols = others.clone();
            cols.push(j1);
            if f.rank(h.submatrix(&rows, &cols)) == base {
                let mut j = vec![j1];
                j.extend(&others);
                report.failures.push(AssumptionWitness {
                    rows: one_based(&rows),
                    cols: one_based(&j),
                });
            }
        }
    }
    report.holds = report.failures.is_empty();
    Ok(report)
}

pub fn distance_profile(spec: &CodeSpec, horizon: usize, budget: u64) -> Result<DistanceProfile, AnalysisError> {
    let column_distances = column_distances(spec, horizon, budget)?;
    let free_distance = free_distance(spec, horizon, budget)?;
    Ok(DistanceProfile {
        schema: DISTANCE_SCHEMA.to_string(),
        horizon,
        column_distances,
        free_distance,
        predicted_free: spec.weight() + 1,
        predicted_column: (0..=horizon).map(|j| spec.min_column_weight(j) + 1).collect(),
        assumptions: check_distance_assumptions(spec, budget)?,
    })
}
