//! 4- and 6-cycles of the Tanner graph of `H_j^c` and the full rank
//! condition.
//!
//! A cycle through checks `r_1 .. r_t` and variables `c_1 .. c_t` is
//! described by the `t x t` matrix
//!
//! ```text
//! a1 a2 0
//! 0  a3 a4
//! a6 0  a5
//! ```
//!
//! (shown for `t = 3`), where row `i` holds the two edges of check `r_i`.
//! The cycle satisfies the full rank condition when this matrix is
//! nonsingular. Chord entries of the underlying submatrix are not part of
//! the cycle matrix.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize, Serializer};

use super::{binomial, AnalysisError, Dense};
use crate::code::CodeSpec;
use crate::gf::FieldElement;

pub const CYCLE_SCHEMA: &str = "nbldpc.cycles/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    /// Check nodes (1-based rows) in traversal order.
    pub checks: Vec<usize>,
    /// Variable nodes (1-based columns); `variables[i]` joins
    /// `checks[i]` and `checks[i + 1]` (cyclically).
    pub variables: Vec<usize>,
    pub matrix: Vec<Vec<FieldElement>>,
    pub determinant: FieldElement,
    /// No other nonzero entry in the submatrix spanned by the cycle.
    pub chordless: bool,
}

impl Cycle {
    /// Sorted rows and sorted columns, 1-based.
    pub fn support(&self) -> (Vec<usize>, Vec<usize>) {
        (
            self.checks.iter().copied().sorted().collect(),
            self.variables.iter().copied().sorted().collect(),
        )
    }
}

/// Shortest cycle length, reported up to 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Four,
    Six,
    /// The graph has cycles, all longer than 6.
    AboveSix,
    /// The graph has no cycles at all.
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Girth::Four => "4",
            Girth::Six => "6",
            Girth::AboveSix => ">6",
            Girth::Infinite => "inf",
        })
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Four => s.serialize_u32(4),
            Girth::Six => s.serialize_u32(6),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) if n.as_u64() == Some(4) => Ok(Girth::Four),
            serde_json::Value::Number(n) if n.as_u64() == Some(6) => Ok(Girth::Six),
            serde_json::Value::String(s) if s == ">6" => Ok(Girth::AboveSix),
            serde_json::Value::String(s) if s == "inf" => Ok(Girth::Infinite),
            other => Err(serde::de::Error::custom(format!("invalid girth {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub schema: String,
    pub length: usize,
    pub horizon: usize,
    pub count: usize,
    pub girth: Girth,
    #[serde(skip)]
    pub cycles: Vec<Cycle>,
    pub frc_failures: Vec<Cycle>,
}

impl CycleReport {
    pub fn passed(&self) -> bool {
        self.frc_failures.is_empty()
    }
}

pub fn enumerate_cycles(
    spec: &CodeSpec,
    length: usize,
    horizon: usize,
    budget: u64,
) -> Result<CycleReport, AnalysisError> {
    let t = match length {
        4 => 2,
        6 => 3,
        other => return Err(AnalysisError::UnsupportedCycleLength(other)),
    };
    let h = Dense::new(&spec.sliding_matrix(horizon));
    let count = binomial(h.rows, t) * binomial(h.cols, t);
    if count > budget as u128 {
        return Err(AnalysisError::HorizonTooLarge { horizon, count, budget });
    }
    let cycles = if t == 2 {
        four_cycles(spec, &h)
    } else {
        six_cycles(spec, &h)
    };
    let frc_failures = cycles.iter().filter(|c| c.determinant.is_zero()).cloned().collect();
    Ok(CycleReport {
        schema: CYCLE_SCHEMA.to_string(),
        length,
        horizon,
        count: cycles.len(),
        girth: girth_of(&h),
        cycles,
        frc_failures,
    })
}

/// Girth of the Tanner graph of `H_j^c`, capped at 6.
pub fn girth(spec: &CodeSpec, horizon: usize) -> Girth {
    girth_of(&Dense::new(&spec.sliding_matrix(horizon)))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn girth_of(h: &Dense) -> Girth {
    let shared: Vec<Vec<Vec<usize>>> = (0..h.rows)
        .map(|a| {
            (0..h.rows)
                .map(|b| intersect(h.row_support(a), h.row_support(b)))
                .collect()
        })
        .collect();
    if (0..h.rows).tuple_combinations().any(|(a, b)| shared[a][b].len() >= 2) {
        return Girth::Four;
    }
    for (a, b, c) in (0..h.rows).tuple_combinations() {
        let (ab, bc, ca) = (&shared[a][b], &shared[b][c], &shared[c][a]);
        // without 4-cycles each pairwise intersection has at most one column
        if let (Some(x), Some(y), Some(z)) = (ab.first(), bc.first(), ca.first()) {
            if x != y && y != z && x != z {
                return Girth::Six;
            }
        }
    }
    if is_forest(h) {
        Girth::Infinite
    } else {
        Girth::AboveSix
    }
}

/// Union-find over check and variable nodes; a cycle exists iff an edge
/// joins two nodes already connected.
fn is_forest(h: &Dense) -> bool {
    let mut parent: Vec<usize> = (0..h.rows + h.cols).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for r in 0..h.rows {
        for &c in h.row_support(r) {
            let (a, b) = (find(&mut parent, r), find(&mut parent, h.rows + c));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

fn four_cycles(spec: &CodeSpec, h: &Dense) -> Vec<Cycle> {
    let f = spec.field();
    let mut out = Vec::new();
    for (r1, r2) in (0..h.rows).tuple_combinations() {
        let shared = intersect(h.row_support(r1), h.row_support(r2));
        for (c1, c2) in shared.into_iter().tuple_combinations() {
            let matrix = vec![vec![h.get(r1, c1), h.get(r1, c2)], vec![h.get(r2, c1), h.get(r2, c2)]];
            let determinant = f.det(&matrix).expect("2x2");
            out.push(Cycle {
                checks: vec![r1 + 1, r2 + 1],
                variables: vec![c1 + 1, c2 + 1],
                matrix,
                determinant,
                chordless: true,
            });
        }
    }
    out
}

fn six_cycles(spec: &CodeSpec, h: &Dense) -> Vec<Cycle> {
    let f = spec.field();
    let mut out = Vec::new();
    for (r1, r2, r3) in (0..h.rows).tuple_combinations() {
        let s12 = intersect(h.row_support(r1), h.row_support(r2));
        if s12.is_empty() {
            continue;
        }
        let s23 = intersect(h.row_support(r2), h.row_support(r3));
        if s23.is_empty() {
            continue;
        }
        let s31 = intersect(h.row_support(r3), h.row_support(r1));
        for &x in &s12 {
            for &y in &s23 {
                for &z in &s31 {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    // columns ordered (z, x, y) give the two-per-row layout
                    let (rows, cols) = ([r1, r2, r3], [z, x, y]);
                    let matrix = vec![
                        vec![h.get(r1, z), h.get(r1, x), FieldElement::Zero],
                        vec![FieldElement::Zero, h.get(r2, x), h.get(r2, y)],
                        vec![h.get(r3, z), FieldElement::Zero, h.get(r3, y)],
                    ];
                    let chordless = rows
                        .iter()
                        .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
                        .filter(|&(r, c)| !h.get(r, c).is_zero())
                        .count()
                        == 6;
                    let determinant = f.det(&matrix).expect("3x3");
                    out.push(Cycle {
                        checks: vec![r1 + 1, r2 + 1, r3 + 1],
                        variables: vec![x + 1, y + 1, z + 1],
                        matrix,
                        determinant,
                        chordless,
                    });
                }
            }
        }
    }
    out
}
