//! Exhaustive evaluation of the 2x2 and 3x3 minors of `H_j^c`.
//!
//! Only minors whose zero pattern admits a nonzero diagonal under some
//! column permutation are evaluated. The others vanish for structural
//! reasons and say nothing about the field size.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{binomial, enumerate_cycles, one_based, AnalysisError, Dense};
use crate::code::CodeSpec;
use crate::gf::FieldElement;

pub const MINOR_SCHEMA: &str = "nbldpc.minors/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinorClass {
    /// Every entry nonzero.
    FullyNonzero,
    /// Exactly two nonzeros in every row and column (3x3 only).
    CyclePattern,
    /// Anything else that can still be nonzero.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    /// 1-based row indices into `H_j^c`.
    pub rows: Vec<usize>,
    /// 1-based column indices into `H_j^c`.
    pub cols: Vec<usize>,
    pub class: MinorClass,
    pub determinant: FieldElement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub fully_nonzero: u64,
    pub cycle_pattern: u64,
    pub mixed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorReport {
    pub schema: String,
    pub minor_size: usize,
    pub horizon: usize,
    /// Number of non-trivially-zero minors evaluated.
    pub checked: u64,
    pub by_class: ClassCounts,
    pub failures: Vec<MinorWitness>,
}

impl MinorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether some permutation picks only nonzero positions.
pub fn admits_nonzero(pattern: &[Vec<bool>]) -> bool {
    let n = pattern.len();
    (0..n)
        .permutations(n)
        .any(|perm| perm.iter().enumerate().all(|(r, &c)| pattern[r][c]))
}

pub fn classify(pattern: &[Vec<bool>]) -> MinorClass {
    let n = pattern.len();
    if pattern.iter().flatten().all(|&b| b) {
        return MinorClass::FullyNonzero;
    }
    let rows_two = pattern.iter().all(|r| r.iter().filter(|&&b| b).count() == 2);
    let cols_two = (0..n).all(|c| pattern.iter().filter(|r| r[c]).count() == 2);
    if n == 3 && rows_two && cols_two {
        MinorClass::CyclePattern
    } else {
        MinorClass::Mixed
    }
}

/// Evaluates every non-trivially-zero `size x size` minor of `H_j^c` and
/// reports the singular ones.
pub fn check_minors(spec: &CodeSpec, size: usize, horizon: usize, budget: u64) -> Result<MinorReport, AnalysisError> {
    if !(2..=3).contains(&size) {
        return Err(AnalysisError::UnsupportedMinorSize(size));
    }
    let h = Dense::new(&spec.sliding_matrix(horizon));
    let count = binomial(h.rows, size) * binomial(h.cols, size);
    if count > budget as u128 {
        return Err(AnalysisError::HorizonTooLarge { horizon, count, budget });
    }
    let f = spec.field();
    let mut report = MinorReport {
        schema: MINOR_SCHEMA.to_string(),
        minor_size: size,
        horizon,
        checked: 0,
        by_class: ClassCounts::default(),
        failures: Vec::new(),
    };
    for rows in (0..h.rows).combinations(size) {
        let candidates: Vec<usize> = rows
            .iter()
            .flat_map(|&r| h.row_support(r).iter().copied())
            .sorted()
            .dedup()
            .collect();
        for cols in candidates.into_iter().combinations(size) {
            let sub = h.submatrix(&rows, &cols);
            let pattern: Vec<Vec<bool>> = sub.iter().map(|r| r.iter().map(|x| !x.is_zero()).collect()).collect();
            if !admits_nonzero(&pattern) {
                continue;
            }
            let class = classify(&pattern);
            report.checked += 1;
            match class {
                MinorClass::FullyNonzero => report.by_class.fully_nonzero += 1,
                MinorClass::CyclePattern => report.by_class.cycle_pattern += 1,
                MinorClass::Mixed => report.by_class.mixed += 1,
            }
            let determinant = f.det(&sub).expect("size is 2 or 3");
            if determinant.is_zero() {
                report.failures.push(MinorWitness {
                    rows: one_based(&rows),
                    cols: one_based(&cols),
                    class,
                    determinant,
                });
            }
        }
    }
    Ok(report)
}

/// Base-matrix coordinates of sliding-matrix entry `(row, col)`: the 1-based
/// base row `i` and the column exponent `k` (`0` for the parity column).
fn base_coordinates(spec: &CodeSpec, row: usize, col: usize) -> Option<(i64, i64)> {
    let n = spec.n();
    let (block, k0) = (col / n, col % n);
    let i = row.checked_sub(block)? + 1;
    if i > spec.scope() as usize {
        return None;
    }
    let k = if k0 == n - 1 { 0 } else { k0 + 1 };
    Some((i as i64, k as i64))
}

/// `α^(ij+lk) (α^(rk) - α^(rj))` for the 2x2 minor on rows `r1 < r2` and
/// columns `c1, c2` of a sliding matrix (0-based), where the top entries
/// are `α^(ij)` and `α^(lk)` and `r = r2 - r1`. `None` unless all four
/// entries lie in the supports of their columns.
pub fn closed_form_2x2(spec: &CodeSpec, rows: [usize; 2], cols: [usize; 2]) -> Option<FieldElement> {
    let [r1, r2] = rows;
    let [c1, c2] = cols;
    let n = spec.n();
    let in_support = |r: usize, c: usize| -> bool {
        let Some((i, k)) = base_coordinates(spec, r, c) else {
            return false;
        };
        if k == 0 {
            i == 1
        } else {
            spec.dts().contains(c % n, i as u32)
        }
    };
    if r1 >= r2
        || ![(r1, c1), (r1, c2), (r2, c1), (r2, c2)]
            .iter()
            .all(|&(r, c)| in_support(r, c))
    {
        return None;
    }
    let (i, j) = base_coordinates(spec, r1, c1)?;
    let (l, k) = base_coordinates(spec, r1, c2)?;
    let r = (r2 - r1) as i64;
    let f = spec.field();
    let bracket = f.sub(f.alpha_pow(r * k), f.alpha_pow(r * j));
    Some(f.mul(f.alpha_pow(i * j + l * k), bracket))
}

/// Singular short cycles versus singular cycle-shaped minors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duality {
    pub size: usize,
    /// `(rows, cols)`, 1-based and sorted, of cycles violating the full
    /// rank condition. For 6-cycles only chordless cycles are included,
    /// since a chord makes the submatrix something other than a cycle.
    pub cycle_witnesses: Vec<(Vec<usize>, Vec<usize>)>,
    /// `(rows, cols)` of singular fully-nonzero 2x2 or cycle-pattern 3x3
    /// minors.
    pub minor_witnesses: Vec<(Vec<usize>, Vec<usize>)>,
    pub equal: bool,
}

pub fn minor_cycle_duality(
    spec: &CodeSpec,
    size: usize,
    horizon: usize,
    budget: u64,
) -> Result<Duality, AnalysisError> {
    let cycles = enumerate_cycles(spec, 2 * size, horizon, budget)?;
    let mut cycle_witnesses: Vec<_> = cycles
        .frc_failures
        .iter()
        .filter(|c| c.chordless)
        .map(|c| c.support())
        .collect();
    cycle_witnesses.sort();
    let wanted = if size == 2 {
        MinorClass::FullyNonzero
    } else {
        MinorClass::CyclePattern
    };
    let minors = check_minors(spec, size, horizon, budget)?;
    let mut minor_witnesses: Vec<_> = minors
        .failures
        .iter()
        .filter(|w| w.class == wanted)
        .map(|w| (w.rows.clone(), w.cols.clone()))
        .collect();
    minor_witnesses.sort();
    Ok(Duality {
        size,
        equal: cycle_witnesses == minor_witnesses,
        cycle_witnesses,
        minor_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::analysis::DEFAULT_BUDGET;
    use crate::dts::DifferenceTriangleSet;
    use crate::gf::GaloisField;

    fn spec(s: &str, n: usize, p: u32, deg: u32) -> CodeSpec {
        CodeSpec::new(
            DifferenceTriangleSet::parse_inline(s).unwrap(),
            Arc::new(GaloisField::new(p, deg).unwrap()),
            n,
        )
        .unwrap()
    }

    #[test]
    fn pattern_helpers() {
        let t = true;
        let f = false;
        assert!(admits_nonzero(&[vec![t, f], vec![f, t]]));
        assert!(!admits_nonzero(&[vec![t, t], vec![f, f]]));
        assert!(!admits_nonzero(&[vec![t, f, f], vec![t, f, f], vec![t, t, t]]));
        assert_eq!(
            classify(&[vec![t, t, f], vec![f, t, t], vec![t, f, t]]),
            MinorClass::CyclePattern
        );
        assert_eq!(
            classify(&[vec![t, t, f], vec![t, t, t], vec![t, f, t]]),
            MinorClass::Mixed
        );
        assert_eq!(classify(&[vec![t, t], vec![t, t]]), MinorClass::FullyNonzero);
    }

    #[test]
    fn minors_of_shared_difference_code() {
        let c = spec("1,2,6;1,2,4", 3, 2, 5);
        let r2 = check_minors(&c, 2, 5, DEFAULT_BUDGET).unwrap();
        assert!(r2.passed());
        assert!(r2.by_class.fully_nonzero > 0);
        // three shifts of the column on {1, 2, 4} close a 6-cycle whose two
        // permutation terms coincide; in characteristic 2 they cancel
        let r3 = check_minors(&c, 3, 5, DEFAULT_BUDGET).unwrap();
        let rows: Vec<Vec<usize>> = r3.failures.iter().map(|w| w.rows.clone()).collect();
        assert_eq!(
            rows,
            vec![
                vec![2, 3, 4],
                vec![2, 4, 5],
                vec![3, 4, 5],
                vec![3, 5, 6],
                vec![4, 5, 6]
            ]
        );
        assert!(r3.failures.iter().all(|w| w.class == MinorClass::CyclePattern));
        assert!(r3.failures.iter().all(|w| w.cols.iter().all(|c| c % 3 == 2)));
    }

    #[test]
    fn odd_characteristic_mixed_minor_can_vanish() {
        // det = α^13 - α^14 - α^9, and α is a root of x^5 + 2x^4 + 1
        let c = spec("1,2,5;1,5,6", 3, 3, 5);
        assert_eq!(c.field().modulus(), &[1, 0, 0, 0, 2, 1]);
        let r3 = check_minors(&c, 3, c.memory(), DEFAULT_BUDGET).unwrap();
        let w = r3
            .failures
            .iter()
            .find(|w| w.rows == vec![1, 5, 6] && w.cols == vec![1, 2, 13])
            .expect("mixed witness");
        assert_eq!(w.class, MinorClass::Mixed);
    }

    #[test]
    fn small_field_has_singular_minor() {
        // q - 1 = 6 and rows 1, 7 in both columns: α^(6·2) - α^(6·1) = 0
        let c = spec("1,2,7;1,3,7", 3, 7, 1);
        let r = check_minors(&c, 2, c.memory(), DEFAULT_BUDGET).unwrap();
        let w = r
            .failures
            .iter()
            .find(|w| w.rows == vec![1, 7] && w.cols == vec![1, 2])
            .expect("aligned witness");
        assert_eq!(w.class, MinorClass::FullyNonzero);
        assert_eq!(w.determinant, FieldElement::Zero);
    }

    #[test]
    fn unsupported_sizes_and_budget() {
        let c = spec("1,2,6;1,2,4", 3, 2, 5);
        assert_eq!(
            check_minors(&c, 4, 5, DEFAULT_BUDGET),
            Err(AnalysisError::UnsupportedMinorSize(4))
        );
        assert!(matches!(
            check_minors(&c, 3, 5, 10),
            Err(AnalysisError::HorizonTooLarge { .. })
        ));
    }

    #[test]
    fn closed_form_rejects_non_support() {
        let c = spec("1,2,6;1,2,4", 3, 2, 5);
        // rows 1, 2 and the two information columns of block 0
        assert!(closed_form_2x2(&c, [0, 1], [0, 1]).is_some());
        // row 3 is outside both supports
        assert_eq!(closed_form_2x2(&c, [0, 2], [0, 1]), None);
    }
}
