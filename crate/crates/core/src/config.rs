//! Chip configurations, vertex sets and move traces, together with their
//! text formats.
//!
//! Vertices are numbered `1..=n` everywhere in the public API; the sink is
//! vertex 0 and its chip count is never stored.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Integer chip counts on the non-sink vertices, vertex 1 first.
///
/// Entries may be negative; operations that only make sense for
/// nonnegative configurations check this themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChipConfig(Vec<i64>);

impl ChipConfig {
    pub fn new(counts: Vec<i64>) -> Self {
        ChipConfig(counts)
    }

    pub fn zeros(n: usize) -> Self {
        ChipConfig(vec![0; n])
    }

    pub fn counts(&self) -> &[i64] {
        &self.0
    }

    pub fn into_counts(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Chip count at a 1-based vertex.
    pub fn get(&self, vertex: usize) -> Option<i64> {
        vertex.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Fails with [`Error::NegativeEntry`] naming the first negative vertex.
    pub fn require_nonnegative(&self) -> Result<()> {
        match self.0.iter().position(|&x| x < 0) {
            Some(i) => Err(Error::NegativeEntry { vertex: i + 1 }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                got: self.0.len(),
                expected: n,
            })
        }
    }

    /// Total number of chips on the non-sink vertices.
    pub fn total_chips(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Vertices listed from poorest to richest: fewer chips first, ties
    /// broken by the smaller vertex index.
    pub fn poorest_to_richest(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=self.0.len()).collect();
        order.sort_by_key(|&v| (self.0[v - 1], v));
        order
    }
}

impl From<Vec<i64>> for ChipConfig {
    fn from(v: Vec<i64>) -> Self {
        ChipConfig(v)
    }
}

impl fmt::Display for ChipConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.0.iter())
    }
}

impl FromStr for ChipConfig {
    type Err = Error;

    /// Parses the comma-separated format, vertex 1 first: `"0,0,3,5,5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty configuration".into()));
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad chip count {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ChipConfig)
    }
}

/// A set of non-sink vertices, stored sorted and without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// The whole vertex set `1..=n`.
    pub fn full(n: usize) -> Self {
        VertexSet((1..=n).collect())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Membership mask indexed by `vertex - 1`, after range-checking against `n`.
    pub(crate) fn mask(&self, n: usize) -> Result<Vec<bool>> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask[v - 1] = true;
        }
        Ok(mask)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<&[usize]> for VertexSet {
    fn from(v: &[usize]) -> Self {
        VertexSet::new(v.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_joined(f, self.0.iter())?;
        f.write_str("}")
    }
}

impl FromStr for VertexSet {
    type Err = Error;

    /// Accepts `"1,2"`, `"{1,2}"` or the empty string / `"{}"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if inner.is_empty() {
            return Ok(VertexSet::empty());
        }
        inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad vertex {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(VertexSet::new)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Fire,
    Borrow,
}

/// One cluster-fire or borrow move.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub set: VertexSet,
}

impl Move {
    pub fn fire(set: VertexSet) -> Self {
        Move {
            kind: MoveKind::Fire,
            set,
        }
    }

    pub fn borrow(set: VertexSet) -> Self {
        Move {
            kind: MoveKind::Borrow,
            set,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = match self.kind {
            MoveKind::Fire => "fire",
            MoveKind::Borrow => "borrow",
        };
        write!(f, "{verb} {}", self.set)
    }
}

fn write_joined<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// `floor(x * a / b)` for `x >= 0`, `a >= 0`, `b > 0`, with overflow checking.
pub(crate) fn mul_floor_div(x: i64, a: i64, b: i64) -> Result<i64> {
    debug_assert!(x >= 0 && a >= 0 && b > 0);
    x.checked_mul(a).map(|p| p / b).ok_or(Error::Overflow)
}

pub(crate) fn checked_add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y).ok_or(Error::Overflow)
}

pub(crate) fn checked_sub(x: i64, y: i64) -> Result<i64> {
    x.checked_sub(y).ok_or(Error::Overflow)
}
