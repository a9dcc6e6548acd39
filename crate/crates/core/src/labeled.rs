//! Labeled lattice paths and the encoding of chip configurations as paths.
//!
//! The north step in row `r` (counting from the bottom) carries the label of
//! the `r`-th poorest vertex and sits at that vertex's chip count. Labels
//! increase up each run of consecutive north steps.

use std::fmt;

use crate::complete::RatParams;
use crate::config::ChipConfig;
use crate::error::{Error, Result};
use crate::paths::{LatticePath, Point, Step};

/// One step of a labeled path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabeledStep {
    E,
    N(usize),
}

/// A lattice path whose north steps carry a permutation of `1..=b`.
///
/// Stored row by row: `xs[r]` is the x-coordinate of the north step in row
/// `r` and `labels[r]` its label. When the top north step lies right of
/// `x = a` (an overflow path, encoding a vertex with more than `a` chips)
/// no east steps are drawn on the line `y = b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPath {
    a: i64,
    b: i64,
    xs: Vec<i64>,
    labels: Vec<usize>,
}

impl LabeledPath {
    pub fn new(a: i64, b: i64, xs: Vec<i64>, labels: Vec<usize>) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidParams(format!(
                "a and b must be positive (got a={a}, b={b})"
            )));
        }
        let n = b as usize;
        if xs.len() != n || labels.len() != n {
            return Err(Error::Parse(format!(
                "labeled path needs {n} north steps, got {}",
                xs.len().min(labels.len())
            )));
        }
        let mut seen = vec![false; n];
        for &l in &labels {
            if l == 0 || l > n || seen[l - 1] {
                return Err(Error::Parse(format!(
                    "labels must be a permutation of 1..={n}"
                )));
            }
            seen[l - 1] = true;
        }
        if xs[0] < 0 {
            return Err(Error::Parse("north step left of x = 0".into()));
        }
        for r in 1..n {
            if xs[r] < xs[r - 1] {
                return Err(Error::Parse("north steps must move weakly east".into()));
            }
            if xs[r] == xs[r - 1] && labels[r] < labels[r - 1] {
                return Err(Error::Parse(format!(
                    "labels {} and {} decrease within a run",
                    labels[r - 1],
                    labels[r]
                )));
            }
        }
        Ok(LabeledPath { a, b, xs, labels })
    }

    /// Rebuilds a labeled path from its steps. More than `a` east steps are
    /// allowed only when none of them follow the last north step.
    pub fn from_steps(a: i64, b: i64, steps: &[LabeledStep]) -> Result<Self> {
        let mut x = 0;
        let mut xs = Vec::new();
        let mut labels = Vec::new();
        for &s in steps {
            match s {
                LabeledStep::E => x += 1,
                LabeledStep::N(l) => {
                    xs.push(x);
                    labels.push(l);
                }
            }
        }
        let overflow = xs.last().is_some_and(|&top| top > a);
        let expected = if overflow { *xs.last().unwrap() } else { a };
        if x != expected {
            return Err(Error::Parse(format!(
                "labeled path has {x} east steps, expected {expected}"
            )));
        }
        LabeledPath::new(a, b, xs, labels)
    }

    /// Parses `"N(2)EEN(1)N(3)EE"`.
    pub fn parse(a: i64, b: i64, s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                'E' | 'e' => steps.push(LabeledStep::E),
                'N' | 'n' => {
                    if chars.next() != Some('(') {
                        return Err(Error::Parse("expected `(` after N".into()));
                    }
                    let mut digits = String::new();
                    for d in chars.by_ref() {
                        if d == ')' {
                            break;
                        }
                        digits.push(d);
                    }
                    let label = digits
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad label {digits:?}: {e}")))?;
                    steps.push(LabeledStep::N(label));
                }
                c if c.is_whitespace() => {}
                _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
            }
        }
        LabeledPath::from_steps(a, b, &steps)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// x-coordinates of the north steps, bottom to top.
    pub fn xs(&self) -> &[i64] {
        &self.xs
    }

    /// Labels of the north steps, bottom to top.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// The top north step lies right of `x = a`.
    pub fn is_overflow(&self) -> bool {
        self.xs[self.xs.len() - 1] > self.a
    }

    pub fn ends_in_east(&self) -> bool {
        self.xs[self.xs.len() - 1] < self.a
    }

    pub fn steps(&self) -> Vec<LabeledStep> {
        let mut out = Vec::new();
        let mut x = 0;
        for (&nx, &l) in self.xs.iter().zip(&self.labels) {
            while x < nx {
                out.push(LabeledStep::E);
                x += 1;
            }
            out.push(LabeledStep::N(l));
        }
        while x < self.a {
            out.push(LabeledStep::E);
            x += 1;
        }
        out
    }

    /// The path with its labels erased.
    pub fn path(&self) -> Result<LatticePath> {
        if self.is_overflow() {
            return Err(Error::OverflowPath);
        }
        let steps = self
            .steps()
            .into_iter()
            .map(|s| match s {
                LabeledStep::E => Step::E,
                LabeledStep::N(_) => Step::N,
            })
            .collect();
        LatticePath::new(self.a, self.b, steps)
    }

    /// Lengths of the maximal runs of north steps, sorted.
    pub fn run_multiset(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut len = 1;
        for r in 1..self.xs.len() {
            if self.xs[r] == self.xs[r - 1] {
                len += 1;
            } else {
                runs.push(len);
                len = 1;
            }
        }
        runs.push(len);
        runs.sort_unstable();
        runs
    }

    /// Moves the `(j+1)`-th east step from the end to the end of the path,
    /// carrying labels along. On the encoded configuration this adds `j` to
    /// every chip count modulo `a`.
    pub fn run_preserving_shift(&self, j: i64) -> Result<LabeledPath> {
        if !self.ends_in_east() {
            return Err(Error::Precondition(
                "run-preserving shifts need a path ending in an east step".into(),
            ));
        }
        if !(0..self.a).contains(&j) {
            return Err(Error::Precondition(format!(
                "shift amount {j} is out of range 0..{}",
                self.a
            )));
        }
        let mut steps = self.steps();
        let cut = steps
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, s)| **s == LabeledStep::E)
            .nth(j as usize)
            .map(|(i, _)| i)
            .expect("a path ending in east has a east steps");
        steps.rotate_left(cut + 1);
        LabeledPath::from_steps(self.a, self.b, &steps)
    }

    /// Cyclic shift moving the lattice point `v` to the origin. Fails if the
    /// result would split a run or merge runs out of label order.
    pub fn cyclic_shift_at(&self, v: Point) -> Result<LabeledPath> {
        if self.is_overflow() {
            return Err(Error::OverflowPath);
        }
        let steps = self.steps();
        let (mut x, mut y) = (0, 0);
        let mut idx = None;
        for (i, s) in std::iter::once(None)
            .chain(steps.iter().map(Some))
            .enumerate()
        {
            match s {
                Some(LabeledStep::E) => x += 1,
                Some(LabeledStep::N(_)) => y += 1,
                None => {}
            }
            if (x, y) == v {
                idx = Some(i % steps.len());
                break;
            }
        }
        let idx =
            idx.ok_or_else(|| Error::Precondition(format!("point {v:?} is not on the path")))?;
        let mut rotated = steps;
        rotated.rotate_left(idx);
        LabeledPath::from_steps(self.a, self.b, &rotated)
    }

    /// Whether the underlying path is `k`-skeletal.
    pub fn is_k_skeletal(&self, k: usize) -> Result<bool> {
        self.path()?.is_k_skeletal(k)
    }

    /// The unique `k`-skeletal path among the run-preserving shifts.
    pub fn find_k_skeletal(&self, k: usize) -> Result<LabeledPath> {
        if self.is_overflow() {
            return Err(Error::OverflowPath);
        }
        let target = self.path()?.find_k_skeletal_in_class(k)?;
        for j in 0..self.a {
            let q = self.run_preserving_shift(j)?;
            if q.path()? == target {
                return Ok(q);
            }
        }
        Err(Error::Precondition(
            "no run-preserving shift is skeletal".into(),
        ))
    }
}

impl fmt::Display for LabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            match s {
                LabeledStep::E => f.write_str("E")?,
                LabeledStep::N(l) => write!(f, "N({l})")?,
            }
        }
        Ok(())
    }
}

/// The labeled path of a nonnegative configuration: rows hold the vertices
/// from poorest to richest, each north step at its vertex's chip count.
pub fn lpath(p: &RatParams, d: &ChipConfig) -> Result<LabeledPath> {
    d.require_len(p.n())?;
    d.require_nonnegative()?;
    let labels = d.poorest_to_richest();
    let xs = labels.iter().map(|&v| d.counts()[v - 1]).collect();
    LabeledPath::new(p.a(), p.b(), xs, labels)
}

/// Reads the configuration back off a labeled path.
pub fn decode(q: &LabeledPath) -> ChipConfig {
    let mut counts = vec![0; q.labels.len()];
    for (&x, &l) in q.xs.iter().zip(&q.labels) {
        counts[l - 1] = x;
    }
    ChipConfig::new(counts)
}

pub fn run_multiset(q: &LabeledPath) -> Vec<usize> {
    q.run_multiset()
}

pub fn is_k_skeletal_labeled(q: &LabeledPath, k: usize) -> Result<bool> {
    q.is_k_skeletal(k)
}

pub fn find_k_skeletal_labeled(q: &LabeledPath, k: usize) -> Result<LabeledPath> {
    q.find_k_skeletal(k)
}
