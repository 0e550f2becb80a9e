//! Rate `(n-1)/n` convolutional codes built from difference triangle sets.
//!
//! The base matrix has `m(T)` rows and `n` columns. For `1 <= k <= n-1`,
//! column `k` carries `α^(i·k)` in every row `i ∈ T_k` (rows 1-based), and
//! column `n` is the unit vector `[1, 0, ..., 0]^T`. Row `i + 1` of the base
//! matrix is the coefficient `H_i` of `H(z) = H_0 + H_1 z + ... + H_μ z^μ`,
//! with memory `μ = m(T) - 1`.

use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dts::{DifferenceTriangleSet, Mode};
use crate::gf::{FieldElement, GaloisField};
use crate::matrix::ExponentMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("difference triangle sets used for construction must not contain 0")]
    ZeroElementInDts,
    #[error("a length-{n} code needs {expected} sets, the DTS has {found}")]
    SetCountMismatch { n: usize, expected: usize, found: usize },
    #[error("the DTS repeats a difference within a set (not relaxed-valid)")]
    InvalidDts,
    #[error("block {block} has length {found}, expected {expected}")]
    BlockLength {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("message length {length} is not a multiple of the block length {n}")]
    IncompleteBlock { length: u64, n: u64 },
    #[error("code length must be at least 2")]
    CodeLength,
}

/// A constructed `(n, n-1, m(T)-1)` code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    n: usize,
    dts: DifferenceTriangleSet,
    field: Arc<GaloisField>,
    base: ExponentMatrix,
}

impl CodeSpec {
    pub fn new(dts: DifferenceTriangleSet, field: Arc<GaloisField>, n: usize) -> Result<Self, CodeError> {
        let base = build_base_matrix(&dts, &field, n)?;
        Ok(CodeSpec { n, dts, field, base })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dts(&self) -> &DifferenceTriangleSet {
        &self.dts
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<GaloisField> {
        Arc::clone(&self.field)
    }

    /// Column weight `w` of the information columns.
    pub fn weight(&self) -> usize {
        self.dts.set_size()
    }

    pub fn scope(&self) -> u32 {
        self.dts.scope()
    }

    /// Memory `μ = m(T) - 1`.
    pub fn memory(&self) -> usize {
        self.dts.scope() as usize - 1
    }

    /// Degree `δ = m(T) - 1`.
    pub fn degree(&self) -> usize {
        self.memory()
    }

    pub fn base_matrix(&self) -> &ExponentMatrix {
        &self.base
    }

    /// `H_0 .. H_μ` as `1 x n` matrices.
    pub fn coefficients(&self) -> Vec<ExponentMatrix> {
        (0..self.base.rows())
            .map(|r| {
                let cols: Vec<usize> = (0..self.n).collect();
                self.base.submatrix(&[r], &cols)
            })
            .collect()
    }

    /// Entry `(row, col)` of `H_row` (0-based), zero beyond `μ`.
    pub fn coefficient(&self, row: usize, col: usize) -> FieldElement {
        if row < self.base.rows() {
            self.base.get(row, col)
        } else {
            FieldElement::Zero
        }
    }

    /// `H_j^c`: `(j+1) x n(j+1)` block lower-triangular truncation of the
    /// sliding parity-check matrix.
    pub fn sliding_matrix(&self, j: usize) -> ExponentMatrix {
        self.sliding(j + 1, j + 1)
    }

    /// Sliding matrix with `blocks` complete block columns and `μ + blocks`
    /// rows, so that every column carries its full support.
    pub fn full_sliding_matrix(&self, blocks: usize) -> ExponentMatrix {
        self.sliding(self.memory() + blocks, blocks)
    }

    fn sliding(&self, rows: usize, blocks: usize) -> ExponentMatrix {
        let mut m = ExponentMatrix::zeros(rows, self.n * blocks);
        for t in 0..blocks {
            for (r, c, e) in self.base.iter() {
                if r + t < rows {
                    m.set(r + t, t * self.n + c, FieldElement::Pow(e))
                        .expect("index within sliding matrix");
                }
            }
        }
        m
    }

    /// Systematic encoder: `v_t = (u_t, p_t)` with
    /// `p_t = -Σ_{i=0..min(t,μ)} A_i u_{t-i}`. The codeword runs for
    /// `r + μ + 1` blocks so that all trailing parity is included.
    pub fn encode(&self, message: &MessageWord) -> Result<CodeWord, CodeError> {
        let f = &*self.field;
        let k = self.n - 1;
        for (t, u) in message.blocks.iter().enumerate() {
            if u.len() != k {
                return Err(CodeError::BlockLength {
                    block: t,
                    expected: k,
                    found: u.len(),
                });
            }
        }
        let r = message.blocks.len();
        if r == 0 {
            return Ok(CodeWord { blocks: Vec::new() });
        }
        let mu = self.memory();
        let blocks = (0..r + mu)
            .map(|t| {
                let mut acc = FieldElement::Zero;
                for i in 0..=t.min(mu) {
                    let Some(u) = message.blocks.get(t - i) else {
                        continue;
                    };
                    for (c, &x) in u.iter().enumerate() {
                        acc = f.add(acc, f.mul(self.base.get(i, c), x));
                    }
                }
                let mut v = message
                    .blocks
                    .get(t)
                    .cloned()
                    .unwrap_or_else(|| vec![FieldElement::Zero; k]);
                v.push(f.neg(acc));
                v
            })
            .collect();
        Ok(CodeWord { blocks })
    }

    /// Full sliding product `H v^T`: one entry per row `s = 0 .. D + μ`,
    /// `s`-th entry `Σ_i H_i v_{s-i}`.
    pub fn syndrome(&self, word: &CodeWord) -> Result<Vec<FieldElement>, CodeError> {
        let f = &*self.field;
        for (t, v) in word.blocks.iter().enumerate() {
            if v.len() != self.n {
                return Err(CodeError::BlockLength {
                    block: t,
                    expected: self.n,
                    found: v.len(),
                });
            }
        }
        let d = word.blocks.len();
        if d == 0 {
            return Ok(Vec::new());
        }
        let mu = self.memory();
        Ok((0..d + mu)
            .map(|s| {
                let mut acc = FieldElement::Zero;
                for i in 0..=s.min(mu) {
                    if let Some(v) = word.blocks.get(s - i) {
                        for (c, &x) in v.iter().enumerate() {
                            acc = f.add(acc, f.mul(self.base.get(i, c), x));
                        }
                    }
                }
                acc
            })
            .collect())
    }

    /// Minimal column weight `w_j` of `[A_0; ...; A_j]`.
    pub fn min_column_weight(&self, j: usize) -> usize {
        (0..self.n - 1)
            .map(|c| self.base.column_support(c).iter().filter(|&&r| r <= j).count())
            .min()
            .unwrap_or(0)
    }
}

/// Information blocks `u_0 .. u_r`, each of length `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageWord {
    pub blocks: Vec<Vec<FieldElement>>,
}

/// Code blocks `v_0 .. v_D`, each of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeWord {
    pub blocks: Vec<Vec<FieldElement>>,
}

impl CodeWord {
    pub fn weight(&self) -> usize {
        self.blocks.iter().flatten().filter(|x| !x.is_zero()).count()
    }
}

/// `H̄^T`: `m(T) x n`, entry `(i, k) = α^(i·k mod (q-1))` for `i ∈ T_k`,
/// unit at `(1, n)`.
pub fn build_base_matrix(
    dts: &DifferenceTriangleSet,
    field: &GaloisField,
    n: usize,
) -> Result<ExponentMatrix, CodeError> {
    if n < 2 {
        return Err(CodeError::CodeLength);
    }
    if dts.num_sets() != n - 1 {
        return Err(CodeError::SetCountMismatch {
            n,
            expected: n - 1,
            found: dts.num_sets(),
        });
    }
    if dts.min_element() == 0 {
        return Err(CodeError::ZeroElementInDts);
    }
    if !dts.is_valid(Mode::Relaxed) {
        return Err(CodeError::InvalidDts);
    }
    let rows = dts.scope() as usize;
    let mut m = ExponentMatrix::zeros(rows, n);
    for (k0, set) in dts.sets().iter().enumerate() {
        let k = k0 as i64 + 1;
        for &i in set {
            m.set(i as usize - 1, k0, field.alpha_pow(i as i64 * k))
                .expect("row within scope");
        }
    }
    m.set(0, n - 1, FieldElement::ONE).expect("matrix has a first row");
    Ok(m)
}

/// Density `(w(n-1) + 1) / (μn + N)` of the sliding matrix for messages of
/// total length `N` (a multiple of `n`).
pub fn density(n: u64, w: u64, mu: u64, length: u64) -> Result<Ratio<u64>, CodeError> {
    if n == 0 || !length.is_multiple_of(n) || length == 0 {
        return Err(CodeError::IncompleteBlock { length, n });
    }
    Ok(Ratio::new(w * (n - 1) + 1, mu * n + length))
}

/// Field-size requirements for minor non-vanishing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    /// Smallest `q` with `q > (n-1)(m-1) + 1`.
    pub q_2x2: u64,
    /// Smallest `N` with `N > (m-2)(n-2)`; only claimed when `w >= 3`.
    pub n_3x3: u32,
    pub three_by_three_applies: bool,
    /// Smallest prime power `p^N` with `q >= q_2x2`, `q > 2`, and
    /// `N >= n_3x3` when the 3x3 bound applies.
    pub suggested: Option<(u32, u32)>,
}

pub fn min_field_params(n: u64, scope: u64, w: u64) -> FieldParams {
    let q_2x2 = (n.saturating_sub(1)) * scope.saturating_sub(1) + 2;
    let n_3x3 = (scope.saturating_sub(2) * n.saturating_sub(2) + 1) as u32;
    let three = w >= 3;
    let min_degree = if three { n_3x3 } else { 1 };
    FieldParams {
        q_2x2,
        n_3x3,
        three_by_three_applies: three,
        suggested: smallest_prime_power(q_2x2.max(3), min_degree),
    }
}

/// Advisory bound from the second 3x3 case: `q > 2(n-3) + 2(δ-2)(n-2) + 1`.
pub fn cycle_pattern_field_bound(n: i64, degree: i64) -> i64 {
    2 * (n - 3) + 2 * (degree - 2) * (n - 2) + 1
}

fn smallest_prime_power(min_q: u64, min_degree: u32) -> Option<(u32, u32)> {
    let limit = crate::gf::MAX_FIELD_ORDER;
    let mut best: Option<(u64, u32, u32)> = None;
    for p in 2u32.. {
        let Some(mut q) = (p as u64).checked_pow(min_degree) else {
            break;
        };
        if q > limit || best.is_some_and(|(b, _, _)| q >= b) {
            break;
        }
        if !crate::gf::is_prime(p) {
            continue;
        }
        let mut deg = min_degree;
        while q < min_q {
            deg += 1;
            q *= p as u64;
        }
        if q <= limit && best.is_none_or(|(b, _, _)| q < b) {
            best = Some((q, p, deg));
        }
    }
    best.map(|(_, p, d)| (p, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use FieldElement::{Pow, Zero};

    fn gf32() -> Arc<GaloisField> {
        Arc::new(GaloisField::new(2, 5).unwrap())
    }

    fn spec(s: &str, n: usize) -> CodeSpec {
        CodeSpec::new(DifferenceTriangleSet::parse_inline(s).unwrap(), gf32(), n).unwrap()
    }

    #[test]
    fn base_matrix_with_shared_difference() {
        let c = spec("1,2,6;1,2,4", 3);
        let b = c.base_matrix();
        assert_eq!((b.rows(), b.cols()), (6, 3));
        let col =
            |k: usize| -> Vec<(usize, u32)> { b.iter().filter(|e| e.1 == k).map(|(r, _, e)| (r + 1, e)).collect() };
        assert_eq!(col(0), vec![(1, 1), (2, 2), (6, 6)]);
        assert_eq!(col(1), vec![(1, 2), (2, 4), (4, 8)]);
        assert_eq!(col(2), vec![(1, 0)]);
        assert_eq!(c.degree(), 5);
    }

    #[test]
    fn coefficient_blocks() {
        let c = spec("1,2,6;2,3,5", 3);
        let h = c.coefficients();
        assert_eq!(h.len(), 6);
        assert_eq!(h[0].to_dense()[0], vec![Pow(1), Zero, Pow(0)]);
        assert_eq!(h[1].to_dense()[0], vec![Pow(2), Pow(4), Zero]);
        assert_eq!(h[2].to_dense()[0], vec![Zero, Pow(6), Zero]);
        assert_eq!(h[4].to_dense()[0], vec![Zero, Pow(10), Zero]);
    }

    #[test]
    fn memory_zero_code() {
        let c = spec("1", 2);
        assert_eq!(c.memory(), 0);
        assert_eq!(c.base_matrix().to_dense(), vec![vec![Pow(1), Pow(0)]]);
        assert_eq!(c.coefficients().len(), 1);
        assert_eq!(c.sliding_matrix(0), c.base_matrix().clone());
    }

    #[test]
    fn construction_errors() {
        let f = gf32();
        let t = DifferenceTriangleSet::parse_inline("0,1,3").unwrap();
        assert_eq!(CodeSpec::new(t, f.clone(), 2), Err(CodeError::ZeroElementInDts));
        let t = DifferenceTriangleSet::parse_inline("1,2,4").unwrap();
        assert!(matches!(
            CodeSpec::new(t, f.clone(), 3),
            Err(CodeError::SetCountMismatch { .. })
        ));
        let t = DifferenceTriangleSet::parse_inline("1,2,3").unwrap();
        assert_eq!(CodeSpec::new(t, f, 2), Err(CodeError::InvalidDts));
    }

    #[test]
    fn sliding_matrix_shape_and_j0() {
        let c = spec("1,2,6;1,2,4", 3);
        let h5 = c.sliding_matrix(5);
        assert_eq!((h5.rows(), h5.cols()), (6, 18));
        let h0 = c.sliding_matrix(0);
        assert_eq!(h0.to_dense(), vec![vec![Pow(1), Pow(2), Pow(0)]]);
        let full = c.full_sliding_matrix(6);
        assert_eq!((full.rows(), full.cols()), (11, 18));
        assert_eq!(full.nnz(), 42);
    }

    #[test]
    fn encode_unit_message() {
        let c = spec("1,2,6;2,3,5", 3);
        let msg = MessageWord {
            blocks: vec![vec![Pow(0), Zero]],
        };
        let v = c.encode(&msg).unwrap();
        assert_eq!(v.blocks.len(), 6);
        let parity: Vec<FieldElement> = v.blocks.iter().map(|b| b[2]).collect();
        // characteristic 2: -x = x
        assert_eq!(parity, vec![Pow(1), Pow(2), Zero, Zero, Zero, Pow(6)]);
        assert_eq!(v.weight(), 4);
        assert!(c.syndrome(&v).unwrap().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn encode_zero_and_errors() {
        let c = spec("1,2,6;2,3,5", 3);
        let zero = MessageWord {
            blocks: vec![vec![Zero, Zero]; 3],
        };
        assert_eq!(c.encode(&zero).unwrap().weight(), 0);
        let bad = MessageWord {
            blocks: vec![vec![Zero]],
        };
        assert!(matches!(c.encode(&bad), Err(CodeError::BlockLength { .. })));
    }

    #[test]
    fn unit_info_word_has_nonzero_syndrome() {
        let c = spec("1,2,6;1,2,4", 3);
        let word = CodeWord {
            blocks: vec![vec![Pow(0), Zero, Zero]],
        };
        let s = c.syndrome(&word).unwrap();
        assert_eq!(s.iter().filter(|x| !x.is_zero()).count(), 3);
    }

    #[test]
    fn odd_characteristic_sign() {
        let f = Arc::new(GaloisField::new(3, 2).unwrap());
        let c = CodeSpec::new(DifferenceTriangleSet::parse_inline("1,2").unwrap(), f.clone(), 2).unwrap();
        let v = c
            .encode(&MessageWord {
                blocks: vec![vec![Pow(0)]],
            })
            .unwrap();
        assert_eq!(v.blocks[0][1], f.neg(Pow(1)));
        assert!(c.syndrome(&v).unwrap().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn density_values() {
        assert_eq!(density(3, 3, 5, 18).unwrap(), Ratio::new(7, 33));
        assert_eq!(density(2, 1, 0, 2).unwrap(), Ratio::from_integer(1));
        assert!(matches!(density(3, 3, 5, 17), Err(CodeError::IncompleteBlock { .. })));
    }

    #[test]
    fn field_params() {
        let p = min_field_params(3, 6, 3);
        assert_eq!((p.q_2x2, p.n_3x3, p.suggested), (12, 5, Some((2, 5))));
        let p = min_field_params(2, 9, 3);
        assert_eq!(p.n_3x3, 1);
        assert_eq!(p.q_2x2, 10);
        assert_eq!(p.suggested, Some((11, 1)));
        let p = min_field_params(3, 2, 3);
        assert_eq!((p.q_2x2, p.n_3x3), (4, 1));
        assert_eq!(p.suggested, Some((2, 2)));
        let p = min_field_params(3, 6, 2);
        assert!(!p.three_by_three_applies);
        assert_eq!(p.suggested, Some((13, 1)));
        assert_eq!(cycle_pattern_field_bound(3, 5), 7);
    }

    #[test]
    fn min_column_weights() {
        let c = spec("1,2,6;2,3,5", 3);
        let w: Vec<usize> = (0..6).map(|j| c.min_column_weight(j)).collect();
        assert_eq!(w, vec![0, 1, 2, 2, 2, 3]);
        let c = spec("1,2,6;1,2,4", 3);
        let w: Vec<usize> = (0..6).map(|j| c.min_column_weight(j)).collect();
        assert_eq!(w, vec![1, 2, 2, 2, 2, 3]);
    }
}
