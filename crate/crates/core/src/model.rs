//! The general quantized firing model on an arbitrary sinked graph.
//!
//! Every non-sink vertex is joined to the sink by an edge of capacity `c`;
//! edges between non-sink vertices carry capacity `a/b`. When a set `S`
//! fires, each `i ∈ S` loses `c + ⌊deg_{S̄}(i)·a/b⌋` chips and each
//! `j ∉ S` gains `⌊deg_S(j)·a/b⌋` chips. Borrowing is the exact inverse.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{checked_add, checked_sub, mul_floor_div, ChipConfig, VertexSet};
use crate::error::{Error, Result};

/// Default node budget for [`all_k_stabilizations`].
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A simple undirected graph on `{0} ∪ [n]` whose sink 0 is adjacent to
/// every other vertex. Only the non-sink edges are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkedGraph {
    // 0-based sorted neighbor lists
    adj: Vec<Vec<usize>>,
}

impl SinkedGraph {
    /// Builds a graph from 1-based non-sink edges. Loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "need at least one non-sink vertex".into(),
            ));
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({i},{j}) has endpoint outside 1..={n}"
                    )));
                }
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
            if adj[i - 1].contains(&(j - 1)) {
                return Err(Error::InvalidGraph(format!("repeated edge ({i},{j})")));
            }
            adj[i - 1].push(j - 1);
            adj[j - 1].push(i - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SinkedGraph { adj })
    }

    /// The complete graph on `{0} ∪ [n]`.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "need at least one non-sink vertex".into(),
            ));
        }
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect();
        Ok(SinkedGraph { adj })
    }

    /// Number of non-sink vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Non-sink neighbors of a 1-based vertex, 1-based.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1].iter().map(|&j| j + 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Non-sink edges `(i, j)` with `i < j`, 1-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Parses the graph text format: first line `n`, then one `i j` pair per
    /// line. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph description".into()))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::Parse(format!("expected `i j`, got {line:?}")));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad vertex {s:?}: {e}")))
            };
            edges.push((parse(nums[0])?, parse(nums[1])?));
        }
        SinkedGraph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (i, j) in self.edges() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }
}

/// Positive integer parameters of the general model. No coprimality is
/// required here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralParams {
    a: i64,
    b: i64,
    c: i64,
}

impl GeneralParams {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 1 || b < 1 || c < 1 {
            return Err(Error::InvalidParams(format!(
                "a, b, c must be positive (got a={a}, b={b}, c={c})"
            )));
        }
        Ok(GeneralParams { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }
}

/// Signed change in each vertex's chip count when the masked set fires.
fn fire_deltas(g: &SinkedGraph, p: &GeneralParams, mask: &[bool]) -> Result<Vec<i64>> {
    let mut delta = vec![0i64; g.n()];
    for (i, list) in g.adj.iter().enumerate() {
        let cross = list.iter().filter(|&&j| mask[j] != mask[i]).count() as i64;
        let flow = mul_floor_div(cross, p.a, p.b)?;
        delta[i] = if mask[i] {
            -checked_add(p.c, flow)?
        } else {
            flow
        };
    }
    Ok(delta)
}

fn apply(d: &ChipConfig, delta: &[i64], sign: i64) -> Result<ChipConfig> {
    d.counts()
        .iter()
        .zip(delta)
        .map(|(&x, &dx)| {
            if sign > 0 {
                checked_add(x, dx)
            } else {
                checked_sub(x, dx)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(ChipConfig::new)
}

/// The cluster-fire move `φ_S`. Firing the empty set is the identity.
pub fn cluster_fire(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    s: &VertexSet,
) -> Result<ChipConfig> {
    d.require_len(g.n())?;
    let mask = s.mask(g.n())?;
    apply(d, &fire_deltas(g, p, &mask)?, 1)
}

/// The borrow move `β_S = φ_S⁻¹`.
pub fn borrow_general(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    s: &VertexSet,
) -> Result<ChipConfig> {
    d.require_len(g.n())?;
    let mask = s.mask(g.n())?;
    apply(d, &fire_deltas(g, p, &mask)?, -1)
}

/// Whether `S` can legally fire in `d >= 0`.
pub fn is_legal_fire(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    s: &VertexSet,
) -> Result<bool> {
    d.require_len(g.n())?;
    d.require_nonnegative()?;
    Ok(cluster_fire(g, p, d, s)?.is_nonnegative())
}

/// Whether `S` can legally borrow in `d >= 0`.
pub fn is_legal_borrow(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    s: &VertexSet,
) -> Result<bool> {
    d.require_len(g.n())?;
    d.require_nonnegative()?;
    Ok(borrow_general(g, p, d, s)?.is_nonnegative())
}

pub fn total_chips(d: &ChipConfig) -> i64 {
    d.total_chips()
}

/// Scratch state for repeated legality tests on one configuration.
struct FireTester<'a> {
    g: &'a SinkedGraph,
    p: &'a GeneralParams,
    d: &'a [i64],
    mask: Vec<bool>,
}

impl<'a> FireTester<'a> {
    fn new(g: &'a SinkedGraph, p: &'a GeneralParams, d: &'a ChipConfig) -> Self {
        FireTester {
            g,
            p,
            d: d.counts(),
            mask: vec![false; g.n()],
        }
    }

    /// Vertices that could belong to some legal firing set.
    fn candidates(&self) -> Vec<usize> {
        (0..self.g.n()).filter(|&i| self.d[i] >= self.p.c).collect()
    }

    /// Legality of firing the given 0-based set. Only members of the set can
    /// go negative since everybody else gains chips.
    fn can_fire(&mut self, set: &[usize]) -> Result<bool> {
        for &i in set {
            self.mask[i] = true;
        }
        let mut ok = true;
        for &i in set {
            let cross = self.g.adj[i].iter().filter(|&&j| !self.mask[j]).count() as i64;
            let loss = checked_add(self.p.c, mul_floor_div(cross, self.p.a, self.p.b)?)?;
            if self.d[i] < loss {
                ok = false;
                break;
            }
        }
        for &i in set {
            self.mask[i] = false;
        }
        Ok(ok)
    }
}

/// Index combinations of `0..len` of a fixed size, in lexicographic order.
pub(crate) struct Combinations {
    len: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(len: usize, size: usize) -> Self {
        Combinations {
            len,
            idx: (0..size).collect(),
            done: size > len,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.len - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            self.done = true;
        }
        Some(out)
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k < n {
        Ok(())
    } else {
        Err(Error::KOutOfRange { k, n })
    }
}

fn to_set(zero_based: &[usize]) -> VertexSet {
    VertexSet::new(zero_based.iter().map(|&i| i + 1).collect())
}

/// First legal set of the given size in lexicographic order.
fn lex_min_legal_of_size(
    tester: &mut FireTester<'_>,
    candidates: &[usize],
    size: usize,
) -> Result<Option<Vec<usize>>> {
    for combo in Combinations::new(candidates.len(), size) {
        let set: Vec<usize> = combo.iter().map(|&i| candidates[i]).collect();
        if tester.can_fire(&set)? {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// Every legal `k`-firing set of `d`, ordered by size and then
/// lexicographically.
pub fn legal_fire_sets(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    k: usize,
) -> Result<Vec<VertexSet>> {
    d.require_len(g.n())?;
    d.require_nonnegative()?;
    check_k(k, g.n())?;
    let mut tester = FireTester::new(g, p, d);
    let candidates = tester.candidates();
    let mut out = Vec::new();
    for size in 1..=(k + 1).min(candidates.len()) {
        for combo in Combinations::new(candidates.len(), size) {
            let set: Vec<usize> = combo.iter().map(|&i| candidates[i]).collect();
            if tester.can_fire(&set)? {
                out.push(to_set(&set));
            }
        }
    }
    Ok(out)
}

/// True iff no nonempty set of at most `k + 1` vertices can legally fire.
///
/// Works on any graph by enumerating subsets, so it is exponential in `k`.
pub fn is_k_stable_general(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    k: usize,
) -> Result<bool> {
    d.require_len(g.n())?;
    d.require_nonnegative()?;
    check_k(k, g.n())?;
    let mut tester = FireTester::new(g, p, d);
    let candidates = tester.candidates();
    for size in 1..=(k + 1).min(candidates.len()) {
        if lex_min_legal_of_size(&mut tester, &candidates, size)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How [`k_stabilize_general`] picks among the legal moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Fire the largest legal set, preferring the richest vertices.
    #[default]
    GreedyMax,
    /// Fire the smallest legal set, lexicographically first among those.
    LexMin,
    /// Fire a uniformly random legal set, reproducibly from a seed.
    SeededRandom(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::GreedyMax => f.write_str("greedy-max"),
            Strategy::LexMin => f.write_str("lex-min"),
            Strategy::SeededRandom(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy-max" => Ok(Strategy::GreedyMax),
            "lex-min" => Ok(Strategy::LexMin),
            _ => match s.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(Strategy::SeededRandom)
                    .map_err(|e| Error::Parse(format!("bad random seed {seed:?}: {e}"))),
                None => Err(Error::Parse(format!(
                    "unknown strategy {s:?} (expected greedy-max, lex-min or random:SEED)"
                ))),
            },
        }
    }
}

/// Result of a stabilization run: the final configuration and the sets
/// fired, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub config: ChipConfig,
    pub trace: Vec<VertexSet>,
}

/// Runs legal `k`-firing moves chosen by `strategy` until `d` is `k`-stable.
///
/// Terminates because every nonempty fire strictly lowers the total chip
/// count.
pub fn k_stabilize_general(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    k: usize,
    strategy: Strategy,
) -> Result<Stabilization> {
    d.require_len(g.n())?;
    d.require_nonnegative()?;
    check_k(k, g.n())?;
    let mut rng = match strategy {
        Strategy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = d.clone();
    let mut trace = Vec::new();
    loop {
        let next = match strategy {
            Strategy::GreedyMax => greedy_max_move(g, p, &current, k)?,
            Strategy::LexMin => lex_min_move(g, p, &current, k)?,
            Strategy::SeededRandom(_) => {
                let sets = legal_fire_sets(g, p, &current, k)?;
                if sets.is_empty() {
                    None
                } else {
                    let rng = rng.as_mut().expect("rng is seeded for the random strategy");
                    Some(sets[rng.gen_range(0..sets.len())].clone())
                }
            }
        };
        match next {
            Some(set) => {
                current = cluster_fire(g, p, &current, &set)?;
                trace.push(set);
            }
            None => {
                return Ok(Stabilization {
                    config: current,
                    trace,
                })
            }
        }
    }
}

fn greedy_max_move(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    k: usize,
) -> Result<Option<VertexSet>> {
    let mut tester = FireTester::new(g, p, d);
    let candidates = tester.candidates();
    let richest: Vec<usize> = d
        .poorest_to_richest()
        .iter()
        .rev()
        .map(|&v| v - 1)
        .collect();
    for size in (1..=(k + 1).min(candidates.len())).rev() {
        let top = &richest[..size];
        if tester.can_fire(top)? {
            return Ok(Some(to_set(top)));
        }
        // Off the complete graph the richest vertices need not be the ones
        // that can fire; fall back to any legal set of this size.
        if let Some(set) = lex_min_legal_of_size(&mut tester, &candidates, size)? {
            return Ok(Some(to_set(&set)));
        }
    }
    Ok(None)
}

fn lex_min_move(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    k: usize,
) -> Result<Option<VertexSet>> {
    let mut tester = FireTester::new(g, p, d);
    let candidates = tester.candidates();
    for size in 1..=(k + 1).min(candidates.len()) {
        if let Some(set) = lex_min_legal_of_size(&mut tester, &candidates, size)? {
            return Ok(Some(to_set(&set)));
        }
    }
    Ok(None)
}

/// The exact set of `k`-stabilizations of `d`: every `k`-stable
/// configuration reachable through legal `k`-firing moves.
///
/// Explores the reachable configurations once each; fails with
/// [`Error::BudgetExceeded`] once more than `budget` states have been seen.
pub fn all_k_stabilizations(
    g: &SinkedGraph,
    p: &GeneralParams,
    d: &ChipConfig,
    k: usize,
    budget: usize,
) -> Result<BTreeSet<ChipConfig>> {
    d.require_len(g.n())?;
    d.require_nonnegative()?;
    check_k(k, g.n())?;
    let mut seen: HashSet<ChipConfig> = HashSet::new();
    let mut stack = vec![d.clone()];
    seen.insert(d.clone());
    let mut found = BTreeSet::new();
    while let Some(current) = stack.pop() {
        let moves = legal_fire_sets(g, p, &current, k)?;
        if moves.is_empty() {
            found.insert(current);
            continue;
        }
        for set in &moves {
            let next = cluster_fire(g, p, &current, set)?;
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        explored: seen.len(),
                        frontier: stack.len() + 1,
                    });
                }
                stack.push(next);
            }
        }
    }
    Ok(found)
}
