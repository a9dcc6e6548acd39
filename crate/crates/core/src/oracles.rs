//! Brute-force reference implementations, written straight from the
//! definitions. They reuse only the data types of the crate, never its
//! firing rules, orderings or path machinery, and are exponential on
//! purpose.

use crate::complete::RatParams;
use crate::config::ChipConfig;
use crate::model::{GeneralParams, SinkedGraph};
use crate::paths::{LatticePath, Step};

/// One cluster-fire (`sign = 1`) or borrow (`sign = -1`) of the vertices
/// in `mask`, on an adjacency matrix without the sink.
fn move_by_definition(
    adj: &[Vec<bool>],
    (a, b, c): (i128, i128, i128),
    d: &[i64],
    mask: u64,
    sign: i128,
) -> Vec<i128> {
    let n = d.len();
    let inside = |v: usize| mask >> v & 1 == 1;
    (0..n)
        .map(|v| {
            let across = adj[v]
                .iter()
                .enumerate()
                .filter(|&(w, &edge)| edge && inside(w) != inside(v))
                .count() as i128;
            let delta = if inside(v) {
                -(c + across * a / b)
            } else {
                across * a / b
            };
            d[v] as i128 + sign * delta
        })
        .collect()
}

fn adjacency(g: &SinkedGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u - 1][v - 1] = true;
        adj[v - 1][u - 1] = true;
    }
    adj
}

fn complete_adjacency(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|u| (0..n).map(|v| u != v).collect()).collect()
}

fn triple(p: &GeneralParams) -> (i128, i128, i128) {
    (p.a() as i128, p.b() as i128, p.c() as i128)
}

fn stable_by_definition(adj: &[Vec<bool>], abc: (i128, i128, i128), d: &[i64], k: usize) -> bool {
    let n = d.len();
    (1u64..1 << n)
        .filter(|m| m.count_ones() as usize <= k + 1)
        .all(|m| move_by_definition(adj, abc, d, m, 1).iter().any(|&x| x < 0))
}

/// No set of `1..=k+1` vertices can legally fire.
pub fn brute_is_k_stable(g: &SinkedGraph, p: &GeneralParams, d: &ChipConfig, k: usize) -> bool {
    assert!(g.n() <= 24, "brute force is limited to 24 vertices");
    stable_by_definition(&adjacency(g), triple(p), d.counts(), k)
}

/// [`brute_is_k_stable`] on the complete graph with `c = 1`.
pub fn brute_is_k_stable_complete(p: &RatParams, d: &ChipConfig, k: usize) -> bool {
    let n = d.len();
    stable_by_definition(
        &complete_adjacency(n),
        (p.a() as i128, p.b() as i128, 1),
        d.counts(),
        k,
    )
}

/// `k`-stable, and no nonempty legal borrow leaves a `k`-stable result.
/// All `2^b - 1` borrow sets are tried.
pub fn brute_is_k_skeletal(p: &RatParams, d: &ChipConfig, k: usize) -> bool {
    let n = d.len();
    assert!(n <= 24, "brute force is limited to 24 vertices");
    let adj = complete_adjacency(n);
    let abc = (p.a() as i128, p.b() as i128, 1);
    if !stable_by_definition(&adj, abc, d.counts(), k) {
        return false;
    }
    for mask in 1u64..1 << n {
        let after = move_by_definition(&adj, abc, d.counts(), mask, -1);
        if after.iter().any(|&x| x < 0) {
            continue;
        }
        let after: Vec<i64> = after.into_iter().map(|x| x as i64).collect();
        if stable_by_definition(&adj, abc, &after, k) {
            return false;
        }
    }
    true
}

/// Every nonempty `U ⊆ [b]` has some `i ∈ U` with
/// `β_i <= (b - |U|)·a/b`.
pub fn brute_superstable_parking(p: &RatParams, d: &ChipConfig) -> bool {
    let (a, b) = (p.a() as i128, p.b() as i128);
    let n = d.len();
    (1u64..1 << n).all(|u| {
        let size = u.count_ones() as i128;
        (0..n).any(|i| u >> i & 1 == 1 && b * d.counts()[i] as i128 <= (b - size) * a)
    })
}

fn levels_at_starts(a: i64, b: i64, steps: &[Step]) -> Vec<i64> {
    let mut lvl = 0;
    let mut out = Vec::with_capacity(steps.len());
    for s in steps {
        out.push(lvl);
        lvl += match s {
            Step::N => a,
            Step::E => -b,
        };
    }
    out
}

fn above_diagonal(a: i64, b: i64, steps: &[Step], k: usize) -> bool {
    let starts = levels_at_starts(a, b, steps);
    steps
        .iter()
        .zip(starts)
        .filter(|(s, _)| **s == Step::N)
        .map(|(_, l)| l)
        .collect::<Vec<_>>()
        .iter()
        .rev()
        .take(k + 1)
        .all(|&l| l >= 0)
}

/// Checked literally over rotations: the last `k+1` north steps
/// start on or above the diagonal, and every shift at a lattice point
/// strictly above the diagonal fails that.
pub fn brute_path_skeletal(q: &LatticePath, k: usize) -> bool {
    let (a, b) = (q.a(), q.b());
    let steps = q.steps();
    if !above_diagonal(a, b, steps, k) {
        return false;
    }
    let starts = levels_at_starts(a, b, steps);
    for (i, &l) in starts.iter().enumerate() {
        if l > 0 {
            let mut shifted = steps[i..].to_vec();
            shifted.extend_from_slice(&steps[..i]);
            if above_diagonal(a, b, &shifted, k) {
                return false;
            }
        }
    }
    true
}

/// Paths from `(0,0)` to `(a,b)` staying weakly above the diagonal,
/// counted over all `C(a+b, b)` bit strings.
pub fn brute_dyck_count(a: i64, b: i64) -> u64 {
    let len = (a + b) as u32;
    assert!(len < 40, "brute force is limited to 40 steps");
    (0u64..1 << len)
        .filter(|m| m.count_ones() as i64 == b)
        .filter(|m| {
            let mut lvl = 0;
            (0..len).all(|i| {
                if m >> i & 1 == 1 {
                    lvl += a;
                } else {
                    lvl -= b;
                }
                lvl >= 0
            })
        })
        .count() as u64
}

/// The integral rule on `K_{b+1}` with `m` chips per edge and one chip to
/// the sink: each vertex of `S` loses `1 + m·|S̄|`, each other vertex gains
/// `m·|S|`.
pub fn integral_fire(m: i64, d: &ChipConfig, set: &[usize]) -> ChipConfig {
    let n = d.len() as i64;
    let size = set.len() as i64;
    let counts = d
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if set.contains(&(i + 1)) {
                x - 1 - m * (n - size)
            } else {
                x + m * size
            }
        })
        .collect();
    ChipConfig::new(counts)
}
