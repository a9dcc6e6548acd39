//! Closed-form firing on the complete graph `K_{b+1}` with `c = 1` and
//! coprime `a`, `b`.
//!
//! Firing an `s`-element set subtracts `E(s) = 1 + ⌊(b-s)a/b⌋` from each of
//! its vertices and adds `W(s) = ⌊sa/b⌋` to every other vertex.

use crate::config::{checked_add, checked_sub, mul_floor_div, ChipConfig, VertexSet};
use crate::error::{Error, Result};
use crate::model::GeneralParams;

pub fn gcd(mut x: i64, mut y: i64) -> i64 {
    x = x.abs();
    y = y.abs();
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// Coprime slope parameters `(a, b)`; the graph has `b` non-sink vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatParams {
    a: i64,
    b: i64,
}

impl RatParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidParams(format!(
                "a and b must be positive (got a={a}, b={b})"
            )));
        }
        // keep s·a and the level arithmetic far away from i64 overflow
        if a > 1 << 30 || b > 1 << 30 {
            return Err(Error::InvalidParams(format!(
                "a and b must not exceed 2^30 (got a={a}, b={b})"
            )));
        }
        let g = gcd(a, b);
        if g != 1 {
            return Err(Error::NotCoprime { a, b, gcd: g });
        }
        Ok(RatParams { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Number of non-sink vertices, `b`.
    pub fn n(&self) -> usize {
        self.b as usize
    }

    /// The same model in general form: complete graph, `c = 1`.
    pub fn general(&self) -> GeneralParams {
        GeneralParams::new(self.a, self.b, 1).expect("positive parameters")
    }

    /// `e = E(b-1) = 1 + ⌊a/b⌋`, the number of east steps every 0-stable
    /// path ends with.
    pub fn e(&self) -> i64 {
        1 + self.a / self.b
    }

    /// `a^(b-1)`, the number of superstable configurations.
    pub fn group_order(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 1..self.b {
            acc = acc.checked_mul(self.a as u128).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }
}

/// `(E(s), W(s))`: what each firing vertex loses and what every other
/// vertex gains when `s` vertices fire together.
pub fn offsets(p: &RatParams, s: usize) -> Result<(i64, i64)> {
    if s == 0 || s > p.n() {
        return Err(Error::InvalidParams(format!(
            "set size {s} is out of range 1..={}",
            p.b
        )));
    }
    let s = s as i64;
    let lose = 1 + mul_floor_div(p.b - s, p.a, p.b)?;
    let gain = mul_floor_div(s, p.a, p.b)?;
    Ok((lose, gain))
}

fn shift(p: &RatParams, d: &ChipConfig, s: &VertexSet, sign: i64) -> Result<ChipConfig> {
    d.require_len(p.n())?;
    let mask = s.mask(p.n())?;
    if s.is_empty() {
        return Ok(d.clone());
    }
    let (lose, gain) = offsets(p, s.len())?;
    d.counts()
        .iter()
        .zip(&mask)
        .map(|(&x, &inside)| {
            let delta = if inside { -lose } else { gain };
            if sign > 0 {
                checked_add(x, delta)
            } else {
                checked_sub(x, delta)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(ChipConfig::new)
}

/// `φ_S` on the complete graph, in `O(b)`.
pub fn fire_complete(p: &RatParams, d: &ChipConfig, s: &VertexSet) -> Result<ChipConfig> {
    shift(p, d, s, 1)
}

/// `β_S` on the complete graph, in `O(b)`.
pub fn borrow_complete(p: &RatParams, d: &ChipConfig, s: &VertexSet) -> Result<ChipConfig> {
    shift(p, d, s, -1)
}

fn check_k(p: &RatParams, k: usize) -> Result<()> {
    if k < p.n() {
        Ok(())
    } else {
        Err(Error::KOutOfRange { k, n: p.n() })
    }
}

/// `k`-stability by one sort: for `s = 1..=k+1`, the `s`-th richest vertex
/// may hold at most `⌊(b-s)a/b⌋` chips.
pub fn is_k_stable(p: &RatParams, d: &ChipConfig, k: usize) -> Result<bool> {
    d.require_len(p.n())?;
    d.require_nonnegative()?;
    check_k(p, k)?;
    let mut sorted = d.counts().to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    for (idx, &x) in sorted.iter().take(k + 1).enumerate() {
        let s = idx as i64 + 1;
        if x > mul_floor_div(p.b - s, p.a, p.b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rational parking function test: every nonempty `U ⊆ [b]` has a member
/// with at most `(b-|U|)a/b` chips. Checked on the sorted entries, since the
/// worst `U` of each size is the set of richest vertices.
pub fn is_superstable_parking(p: &RatParams, d: &ChipConfig) -> Result<bool> {
    d.require_len(p.n())?;
    d.require_nonnegative()?;
    let mut sorted = d.counts().to_vec();
    sorted.sort_unstable();
    // sorted[b-u] is the smallest entry among the u richest
    Ok((1..=p.b).all(|u| {
        let x = sorted[(p.b - u) as usize];
        (x as i128) * (p.b as i128) <= ((p.b - u) as i128) * (p.a as i128)
    }))
}

/// The `s` richest vertices of `d` (ties: larger index is richer).
pub fn richest(d: &ChipConfig, s: usize) -> VertexSet {
    d.poorest_to_richest().into_iter().rev().take(s).collect()
}

/// The `s` poorest vertices of `d` (ties: smaller index is poorer).
pub fn poorest(d: &ChipConfig, s: usize) -> VertexSet {
    d.poorest_to_richest().into_iter().take(s).collect()
}

/// `k`-stabilizes `d` on the complete graph by repeatedly firing the
/// richest `ℓ` vertices for the largest legal `ℓ ≤ k+1`. Returns the final
/// configuration and the fired sets.
///
/// Agrees move for move with the general model's `greedy-max` strategy.
pub fn k_stabilize(
    p: &RatParams,
    d: &ChipConfig,
    k: usize,
) -> Result<(ChipConfig, Vec<VertexSet>)> {
    d.require_len(p.n())?;
    d.require_nonnegative()?;
    check_k(p, k)?;
    let mut current = d.clone();
    let mut trace = Vec::new();
    'outer: loop {
        let order = current.poorest_to_richest();
        for size in (1..=k + 1).rev() {
            let (lose, _) = offsets(p, size)?;
            // the size-th richest vertex is the poorest of the candidate set
            let pivot = order[p.n() - size];
            if current.counts()[pivot - 1] >= lose {
                let set: VertexSet = order[p.n() - size..].iter().copied().collect();
                current = fire_complete(p, &current, &set)?;
                trace.push(set);
                continue 'outer;
            }
        }
        return Ok((current, trace));
    }
}
