//! Unlabeled lattice paths from `(0,0)` to `(a,b)`: levels, cyclic shifts,
//! Dyck and `k`-skeletal predicates, and enumeration.
//!
//! The level of a lattice point is `a·y − b·x`. A north step raises it by
//! `a`, an east step lowers it by `b`. For coprime `(a, b)` every point a
//! path visits has a distinct level except the two endpoints, which is what
//! makes level-addressed shifts well defined.

use std::fmt;

use crate::complete::RatParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    // declaration order gives E < N, the enumeration order
    E,
    N,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
        }
    }
}

pub type Point = (i64, i64);

/// `a·y − b·x`.
pub fn level(p: &RatParams, v: Point) -> i64 {
    raw_level(p.a(), p.b(), v)
}

fn raw_level(a: i64, b: i64, (x, y): Point) -> i64 {
    a * y - b * x
}

/// A sequence of `b` north and `a` east unit steps starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    a: i64,
    b: i64,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(a: i64, b: i64, steps: Vec<Step>) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidParams(format!(
                "a and b must be positive (got a={a}, b={b})"
            )));
        }
        let norths = steps.iter().filter(|&&s| s == Step::N).count() as i64;
        let easts = steps.len() as i64 - norths;
        if norths != b || easts != a {
            return Err(Error::Parse(format!(
                "path has {norths} north and {easts} east steps, expected {b} and {a}"
            )));
        }
        Ok(LatticePath { a, b, steps })
    }

    /// Parses a step string such as `"NENEENNEENEEE"`, taking `a` and `b`
    /// from the step counts.
    pub fn parse(s: &str) -> Result<Self> {
        let steps = parse_steps(s)?;
        let b = steps.iter().filter(|&&s| s == Step::N).count() as i64;
        let a = steps.len() as i64 - b;
        LatticePath::new(a, b, steps)
    }

    /// Parses a step string and checks it against the given parameters.
    pub fn parse_for(p: &RatParams, s: &str) -> Result<Self> {
        LatticePath::new(p.a(), p.b(), parse_steps(s)?)
    }

    /// All north steps followed by all east steps.
    pub fn staircase(a: i64, b: i64) -> Result<Self> {
        let mut steps = vec![Step::N; b.max(0) as usize];
        steps.extend(vec![Step::E; a.max(0) as usize]);
        LatticePath::new(a, b, steps)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn params(&self) -> Result<RatParams> {
        RatParams::new(self.a, self.b)
    }

    /// The `a + b + 1` lattice points visited, origin first.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0, 0);
        out.push((x, y));
        for &s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// Levels of the visited points, origin first.
    pub fn levels(&self) -> Vec<i64> {
        self.points()
            .into_iter()
            .map(|v| raw_level(self.a, self.b, v))
            .collect()
    }

    pub fn min_level(&self) -> i64 {
        self.levels().into_iter().min().unwrap_or(0)
    }

    /// Every north step starts at a nonnegative level.
    pub fn is_dyck(&self) -> bool {
        self.min_level() == 0
    }

    fn rotated(&self, idx: usize) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.rotate_left(idx % self.steps.len());
        LatticePath {
            a: self.a,
            b: self.b,
            steps,
        }
    }

    /// `Q_v`: the steps from `v` to `(a,b)` followed by the steps from the
    /// origin to `v`.
    pub fn cyclic_shift(&self, v: Point) -> Result<LatticePath> {
        let idx = self
            .points()
            .iter()
            .position(|&w| w == v)
            .ok_or_else(|| Error::Precondition(format!("point {v:?} is not on the path")))?;
        Ok(self.rotated(idx))
    }

    /// `Q_ℓ`: the shift moving the point of level `ℓ` to the origin;
    /// `Q_0 = Q`.
    pub fn shift_by_level(&self, lvl: i64) -> Result<LatticePath> {
        if lvl == 0 {
            return Ok(self.clone());
        }
        let idx = self
            .levels()
            .iter()
            .position(|&l| l == lvl)
            .ok_or_else(|| Error::Precondition(format!("no point of level {lvl} on the path")))?;
        Ok(self.rotated(idx))
    }

    /// The `a + b` cyclic shifts ordered by decreasing minimum level; the
    /// unique Dyck member comes first.
    pub fn shift_class(&self) -> Result<Vec<LatticePath>> {
        self.params()?;
        let mut class: Vec<(i64, LatticePath)> = (0..self.steps.len())
            .map(|i| {
                let q = self.rotated(i);
                (q.min_level(), q)
            })
            .collect();
        class.sort_by_key(|x| std::cmp::Reverse(x.0));
        Ok(class.into_iter().map(|(_, q)| q).collect())
    }

    /// Length of the trailing block of north steps (east steps may be
    /// interleaved) that start at nonnegative levels, scanning from the end.
    pub fn pos_stat(&self) -> usize {
        let levels = self.levels();
        let mut count = 0;
        for (i, &s) in self.steps.iter().enumerate().rev() {
            if s == Step::N {
                if levels[i] < 0 {
                    break;
                }
                count += 1;
            }
        }
        count
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if (k as i64) < self.b {
            Ok(())
        } else {
            Err(Error::KOutOfRange {
                k,
                n: self.b as usize,
            })
        }
    }

    /// The last `k + 1` north steps start on or above the diagonal.
    pub fn is_k_stable(&self, k: usize) -> Result<bool> {
        self.check_k(k)?;
        Ok(self.pos_stat() > k)
    }

    /// `k`-stable, and every shift with a smaller minimum level is not.
    pub fn is_k_skeletal(&self, k: usize) -> Result<bool> {
        self.check_k(k)?;
        self.params()?;
        if self.pos_stat() <= k {
            return Ok(false);
        }
        Ok(self.find_k_skeletal_in_class(k)? == *self)
    }

    /// The unique `k`-skeletal member of this path's shift class: the one
    /// with the smallest minimum level among those with `pos > k`.
    pub fn find_k_skeletal_in_class(&self, k: usize) -> Result<LatticePath> {
        self.check_k(k)?;
        let class = self.shift_class()?;
        class
            .into_iter()
            .rev()
            .find(|q| q.pos_stat() > k)
            .ok_or_else(|| Error::Precondition("shift class has no Dyck member".into()))
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

pub(crate) fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.trim()
        .chars()
        .map(|c| match c {
            'N' | 'n' => Ok(Step::N),
            'E' | 'e' => Ok(Step::E),
            _ => Err(Error::Parse(format!("unexpected character {c:?} in path"))),
        })
        .collect()
}

/// `C(n, k)` in exact arithmetic.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128).ok_or(Error::Overflow)? / (i + 1) as u128;
    }
    Ok(acc)
}

/// `Cat_{a,b} = C(a+b, a) / (a+b)`.
pub fn rational_catalan(p: &RatParams) -> Result<u128> {
    let n = (p.a() + p.b()) as u64;
    Ok(binomial(n, p.a() as u64)? / n as u128)
}

/// Every path from `(0,0)` to `(a,b)` in lexicographic order with `E < N`.
pub struct AllPaths {
    a: i64,
    b: i64,
    next: Option<Vec<Step>>,
}

pub fn all_paths(a: i64, b: i64) -> AllPaths {
    let mut first = vec![Step::E; a.max(0) as usize];
    first.extend(vec![Step::N; b.max(0) as usize]);
    AllPaths {
        a,
        b,
        next: Some(first),
    }
}

impl Iterator for AllPaths {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(LatticePath {
            a: self.a,
            b: self.b,
            steps: current,
        })
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `(a,b)`-Dyck paths in lexicographic order.
pub fn enumerate_dyck(p: &RatParams) -> impl Iterator<Item = LatticePath> {
    all_paths(p.a(), p.b()).filter(|q| q.is_dyck())
}

/// `k`-skeletal paths in lexicographic order.
pub fn enumerate_k_skeletal(p: &RatParams, k: usize) -> Result<impl Iterator<Item = LatticePath>> {
    if k >= p.n() {
        return Err(Error::KOutOfRange { k, n: p.n() });
    }
    Ok(all_paths(p.a(), p.b()).filter(move |q| q.is_k_skeletal(k).unwrap_or(false)))
}
