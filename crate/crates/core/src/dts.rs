//! Difference triangle sets: validation and minimum-scope search.
//!
//! An `(N, M)` difference triangle set is a list of `N` increasing integer
//! sets of size `M`. Two notions of validity are supported:
//!
//! * [`Mode::Relaxed`]: within each set all `M(M-1)/2` positive differences
//!   are distinct.
//! * [`Mode::Strict`]: additionally no difference occurs in two different
//!   sets.
//!
//! Strict validity implies relaxed validity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DtsError {
    #[error("a difference triangle set needs at least one set")]
    NoSets,
    #[error("set {0} is empty")]
    EmptySet(usize),
    #[error("set {0} is not strictly increasing")]
    NotIncreasing(usize),
    #[error("all sets must have the same size; set {set} has {found} elements, expected {expected}")]
    RaggedSets { set: usize, expected: usize, found: usize },
    #[error("cannot parse difference triangle set: {0}")]
    Parse(String),
    #[error("no valid ({sets}, {size}) difference triangle set with scope at most {budget}")]
    BudgetExhausted { sets: usize, size: usize, budget: u32 },
    #[error("search parameters must be positive")]
    InvalidParameters,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    #[default]
    Relaxed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Relaxed => "relaxed",
        })
    }
}

impl FromStr for Mode {
    type Err = DtsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Mode::Strict),
            "relaxed" => Ok(Mode::Relaxed),
            other => Err(DtsError::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Provenance of a difference `a[set][j] - a[set][k]`, all indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub set: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateDifference {
    pub difference: u32,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub valid: bool,
    pub duplicates: Vec<DuplicateDifference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct DifferenceTriangleSet {
    sets: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for DifferenceTriangleSet {
    type Error = DtsError;

    fn try_from(sets: Vec<Vec<u32>>) -> Result<Self, Self::Error> {
        Self::new(sets)
    }
}

impl From<DifferenceTriangleSet> for Vec<Vec<u32>> {
    fn from(t: DifferenceTriangleSet) -> Self {
        t.sets
    }
}

impl DifferenceTriangleSet {
    /// Checks shape only: non-empty, equal-sized, strictly increasing sets.
    /// Difference conditions are reported by [`validate`](Self::validate).
    pub fn new(sets: Vec<Vec<u32>>) -> Result<Self, DtsError> {
        let first = sets.first().ok_or(DtsError::NoSets)?.len();
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(DtsError::EmptySet(i + 1));
            }
            if s.len() != first {
                return Err(DtsError::RaggedSets {
                    set: i + 1,
                    expected: first,
                    found: s.len(),
                });
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DtsError::NotIncreasing(i + 1));
            }
        }
        Ok(DifferenceTriangleSet { sets })
    }

    /// Parses the inline form `"1,2,6;1,2,4"`.
    pub fn parse_inline(s: &str) -> Result<Self, DtsError> {
        let sets = s
            .split(';')
            .map(|part| {
                part.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|e| DtsError::Parse(format!("{x:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sets)
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    /// Number of sets `N`.
    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    /// Common set size `M`.
    pub fn set_size(&self) -> usize {
        self.sets[0].len()
    }

    /// Largest element over all sets.
    pub fn scope(&self) -> u32 {
        self.sets.iter().map(|s| *s.last().unwrap()).max().unwrap()
    }

    pub fn min_element(&self) -> u32 {
        self.sets.iter().map(|s| s[0]).min().unwrap()
    }

    pub fn contains(&self, set: usize, value: u32) -> bool {
        self.sets[set].binary_search(&value).is_ok()
    }

    /// Every within-set positive difference with its witnesses.
    pub fn differences(&self) -> BTreeMap<u32, Vec<Witness>> {
        let mut out: BTreeMap<u32, Vec<Witness>> = BTreeMap::new();
        for (i, s) in self.sets.iter().enumerate() {
            for j in 1..s.len() {
                for k in 0..j {
                    out.entry(s[j] - s[k]).or_default().push(Witness {
                        set: i + 1,
                        j: j + 1,
                        k: k + 1,
                    });
                }
            }
        }
        for w in out.values_mut() {
            w.sort();
        }
        out
    }

    pub fn validate(&self, mode: Mode) -> ValidationReport {
        let mut duplicates = Vec::new();
        for (difference, witnesses) in self.differences() {
            let offending: Vec<Witness> = match mode {
                Mode::Strict => witnesses,
                Mode::Relaxed => witnesses
                    .iter()
                    .filter(|w| witnesses.iter().filter(|o| o.set == w.set).count() > 1)
                    .copied()
                    .collect(),
            };
            if offending.len() > 1 {
                duplicates.push(DuplicateDifference {
                    difference,
                    witnesses: offending,
                });
            }
        }
        ValidationReport {
            mode,
            valid: duplicates.is_empty(),
            duplicates,
        }
    }

    pub fn is_valid(&self, mode: Mode) -> bool {
        self.validate(mode).valid
    }

    /// Adds `c` to every element.
    pub fn shifted(&self, c: u32) -> Self {
        DifferenceTriangleSet {
            sets: self.sets.iter().map(|s| s.iter().map(|&a| a + c).collect()).collect(),
        }
    }
}

impl fmt::Display for DifferenceTriangleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, a) in s.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}

/// On-disk form: `{"sets": [[...], ...], "mode": "relaxed"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtsFile {
    pub sets: DifferenceTriangleSet,
    #[serde(default)]
    pub mode: Mode,
}

/// Proof of optimality for a search result: every scope in
/// `exhausted_from..scope` was searched completely without finding a valid
/// set. Scopes below `exhausted_from` cannot hold `M` distinct elements
/// `>= min_element`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub exhausted_from: u32,
    pub exhausted_scopes: Vec<u32>,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub dts: DifferenceTriangleSet,
    pub scope: u32,
    pub mode: Mode,
    pub certificate: Certificate,
}

/// Finds the lexicographically smallest (on the flattened sets) DTS of
/// minimum scope with all elements `>= min_element` and scope at most
/// `scope_budget`.
///
/// Depth-first backtracking, elements in increasing order, with a bitmask
/// of used differences. Sets are generated in non-decreasing lexicographic
/// order: sorting the sets of any valid DTS keeps it valid and does not
/// increase the flattened sequence, so the first solution found is the
/// smallest one.
pub fn search_min_scope(
    num_sets: usize,
    size: usize,
    mode: Mode,
    min_element: u32,
    scope_budget: u32,
) -> Result<SearchResult, DtsError> {
    if num_sets == 0 || size == 0 {
        return Err(DtsError::InvalidParameters);
    }
    let lower = min_element + size as u32 - 1;
    let mut exhausted = Vec::new();
    let mut nodes = 0u64;
    for scope in lower..=scope_budget {
        let mut s = Search::new(num_sets, size, mode, min_element, scope);
        let found = s.run();
        nodes += s.nodes;
        if let Some(sets) = found {
            let dts = DifferenceTriangleSet::new(sets).expect("search yields well-formed sets");
            return Ok(SearchResult {
                scope: dts.scope(),
                dts,
                mode,
                certificate: Certificate {
                    exhausted_from: lower,
                    exhausted_scopes: exhausted,
                    nodes,
                },
            });
        }
        exhausted.push(scope);
    }
    Err(DtsError::BudgetExhausted {
        sets: num_sets,
        size,
        budget: scope_budget,
    })
}

struct Search {
    num_sets: usize,
    size: usize,
    mode: Mode,
    min_element: u32,
    scope: u32,
    sets: Vec<Vec<u32>>,
    used: Vec<u64>,
    nodes: u64,
}

impl Search {
    fn new(num_sets: usize, size: usize, mode: Mode, min_element: u32, scope: u32) -> Self {
        Search {
            num_sets,
            size,
            mode,
            min_element,
            scope,
            sets: vec![Vec::with_capacity(size); num_sets],
            used: vec![0; scope as usize / 64 + 1],
            nodes: 0,
        }
    }

    fn is_used(&self, d: u32) -> bool {
        self.used[d as usize / 64] >> (d % 64) & 1 == 1
    }

    fn toggle(&mut self, d: u32) {
        self.used[d as usize / 64] ^= 1 << (d % 64);
    }

    fn run(&mut self) -> Option<Vec<Vec<u32>>> {
        if self.place(0, 0, false) {
            Some(std::mem::take(&mut self.sets))
        } else {
            None
        }
    }

    /// `tight`: the current set so far equals the previous set's prefix.
    fn place(&mut self, set: usize, slot: usize, tight: bool) -> bool {
        if slot == self.size {
            if set + 1 == self.num_sets {
                return true;
            }
            if self.mode == Mode::Relaxed {
                self.used.iter_mut().for_each(|w| *w = 0);
            }
            if self.place(set + 1, 0, set + 1 > 0) {
                return true;
            }
            if self.mode == Mode::Relaxed {
                self.restore_set_differences(set);
            }
            return false;
        }
        self.nodes += 1;
        let remaining = (self.size - slot - 1) as u32;
        let Some(hi) = self.scope.checked_sub(remaining) else {
            return false;
        };
        let mut lo = match self.sets[set].last() {
            Some(&prev) => prev + 1,
            None => self.min_element,
        };
        if tight {
            lo = lo.max(self.sets[set - 1][slot]);
        }
        for c in lo..=hi {
            let diffs: Vec<u32> = self.sets[set].iter().map(|&a| c - a).collect();
            if diffs.iter().any(|&d| self.is_used(d)) {
                continue;
            }
            diffs.iter().for_each(|&d| self.toggle(d));
            self.sets[set].push(c);
            let still_tight = tight && c == self.sets[set - 1][slot];
            if self.place(set, slot + 1, still_tight) {
                return true;
            }
            self.sets[set].pop();
            diffs.iter().for_each(|&d| self.toggle(d));
        }
        false
    }

    fn restore_set_differences(&mut self, set: usize) {
        self.used.iter_mut().for_each(|w| *w = 0);
        let s = self.sets[set].clone();
        for j in 1..s.len() {
            for k in 0..j {
                self.toggle(s[j] - s[k]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dts(s: &str) -> DifferenceTriangleSet {
        DifferenceTriangleSet::parse_inline(s).unwrap()
    }

    #[test]
    fn shared_difference_is_relaxed_only() {
        let t = dts("1,2,6;1,2,4");
        assert!(t.validate(Mode::Relaxed).valid);
        let strict = t.validate(Mode::Strict);
        assert!(!strict.valid);
        assert_eq!(strict.duplicates.len(), 1);
        assert_eq!(strict.duplicates[0].difference, 1);
        assert_eq!(
            strict.duplicates[0].witnesses,
            vec![Witness { set: 1, j: 2, k: 1 }, Witness { set: 2, j: 2, k: 1 }]
        );
    }

    #[test]
    fn singleton_is_valid() {
        let t = dts("0");
        assert!(t.is_valid(Mode::Strict));
        assert!(t.is_valid(Mode::Relaxed));
        assert_eq!(t.scope(), 0);
    }

    #[test]
    fn differences_with_witnesses() {
        let d = dts("1,2,6").differences();
        let expected: BTreeMap<u32, Vec<Witness>> = [
            (1, vec![Witness { set: 1, j: 2, k: 1 }]),
            (4, vec![Witness { set: 1, j: 3, k: 2 }]),
            (5, vec![Witness { set: 1, j: 3, k: 1 }]),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
        assert_eq!(dts("0,1").differences().len(), 1);
        let two = dts("1,2,6;2,3,5").differences();
        assert_eq!(two[&1].len(), 2);
        assert_eq!(two[&1][0].set, 1);
        assert_eq!(two[&1][1].set, 2);
    }

    #[test]
    fn relaxed_reports_only_within_set_repeats() {
        let t = dts("1,2,3;1,3,7");
        let r = t.validate(Mode::Relaxed);
        assert!(!r.valid);
        assert_eq!(r.duplicates.len(), 1);
        assert_eq!(r.duplicates[0].difference, 1);
        assert!(r.duplicates[0].witnesses.iter().all(|w| w.set == 1));
    }

    #[test]
    fn scopes() {
        assert_eq!(dts("1,2,6;1,2,4").scope(), 6);
        assert_eq!(dts("1,2,6;2,3,5").scope(), 6);
    }

    #[test]
    fn malformed_sets() {
        assert_eq!(DifferenceTriangleSet::new(vec![]), Err(DtsError::NoSets));
        assert_eq!(
            DifferenceTriangleSet::new(vec![vec![2, 1]]),
            Err(DtsError::NotIncreasing(1))
        );
        assert!(matches!(
            DifferenceTriangleSet::new(vec![vec![1, 2], vec![1]]),
            Err(DtsError::RaggedSets { .. })
        ));
        assert!(DifferenceTriangleSet::parse_inline("1,x").is_err());
    }

    #[test]
    fn file_format() {
        let f: DtsFile = serde_json::from_str(r#"{"sets":[[1,2,6],[1,2,4]],"mode":"relaxed"}"#).unwrap();
        assert_eq!(f.sets, dts("1,2,6;1,2,4"));
        assert_eq!(f.mode, Mode::Relaxed);
        assert!(serde_json::from_str::<DtsFile>(r#"{"sets":[[3,1]]}"#).is_err());
        assert_eq!(dts("1,2,6;1,2,4").to_string(), "1,2,6;1,2,4");
    }

    #[test]
    fn search_small_cases() {
        let r = search_min_scope(1, 2, Mode::Relaxed, 1, 10).unwrap();
        assert_eq!(r.dts, dts("1,2"));
        let r = search_min_scope(1, 3, Mode::Relaxed, 1, 10).unwrap();
        assert_eq!(r.scope, 4);
        assert_eq!(r.dts, dts("1,2,4"));
        assert_eq!(r.certificate.exhausted_scopes, vec![3]);
        let r = search_min_scope(2, 3, Mode::Relaxed, 1, 10).unwrap();
        assert!(r.scope <= 6);
        assert!(r.dts.is_valid(Mode::Relaxed));
    }

    #[test]
    fn search_budget() {
        assert_eq!(
            search_min_scope(1, 4, Mode::Strict, 0, 5),
            Err(DtsError::BudgetExhausted {
                sets: 1,
                size: 4,
                budget: 5
            })
        );
        // Golomb ruler of order 4 has length 6
        assert_eq!(search_min_scope(1, 4, Mode::Strict, 0, 6).unwrap().dts, dts("0,1,4,6"));
    }
}
