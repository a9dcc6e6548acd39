//! Exhaustive agreement checks between the fast predicates and the
//! brute-force oracles for one `(a, b)`.

use std::fmt;
use std::thread;

use crate::complete::{is_k_stable, is_superstable_parking, RatParams};
use crate::config::ChipConfig;
use crate::error::{Error, Result};
use crate::labeled::{is_k_skeletal_labeled, lpath};
use crate::model::{is_k_stable_general, SinkedGraph};
use crate::oracles::{
    brute_is_k_skeletal, brute_is_k_stable_complete, brute_path_skeletal, brute_superstable_parking,
};
use crate::paths::all_paths;
use crate::skeletal::is_k_skeletal_config;

const SHOWN_MISMATCHES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub mismatches: usize,
    /// The first few disagreements.
    pub examples: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub a: i64,
    pub b: i64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "MISMATCH" };
            writeln!(f, "{:<44} {:>9} cases  {status}", c.name, c.cases)?;
            for e in &c.examples {
                writeln!(f, "    {e}")?;
            }
        }
        Ok(())
    }
}

/// Decodes `index` as a base-`base` vector of length `n`.
fn nth_config(index: usize, base: i64, n: usize) -> ChipConfig {
    let mut code = index as i64;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(code % base);
        code /= base;
    }
    ChipConfig::new(v)
}

/// Runs `test` on `0..total` across threads. `test` returns a description
/// of each disagreement and the number of cases it covered.
fn sweep<F>(name: &str, total: usize, test: F) -> Check
where
    F: Fn(usize) -> (usize, Vec<String>) + Sync,
{
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(total.max(1));
    let chunk = total.div_ceil(workers.max(1)).max(1);
    let parts: Vec<(usize, Vec<String>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let test = &test;
                scope.spawn(move || {
                    let mut cases = 0;
                    let mut bad = Vec::new();
                    for i in w * chunk..((w + 1) * chunk).min(total) {
                        let (c, mut m) = test(i);
                        cases += c;
                        bad.append(&mut m);
                    }
                    (cases, bad)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let cases = parts.iter().map(|p| p.0).sum();
    let all: Vec<String> = parts.into_iter().flat_map(|p| p.1).collect();
    Check {
        name: name.to_string(),
        cases,
        mismatches: all.len(),
        examples: all.into_iter().take(SHOWN_MISMATCHES).collect(),
    }
}

fn config_count(base: i64, n: usize, budget: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..n {
        total = total
            .checked_mul(base as usize)
            .filter(|&t| t <= budget)
            .ok_or(Error::BudgetExceeded {
                budget,
                explored: 0,
                frontier: 0,
            })?;
    }
    Ok(total)
}

/// Compares, over every configuration in `{0..a}^b` and every path:
/// k-stability (closed form, general model, oracle), k-skeletality of
/// configurations and of paths, the parking criterion, and the
/// configuration/labeled-path skeletal equivalence on `{0..a-1}^b`.
pub fn verify(p: &RatParams, budget: usize) -> Result<VerifyReport> {
    let (a, n) = (p.a(), p.n());
    let total = config_count(a + 1, n, budget)?;
    let reduced = config_count(a, n, budget)?;
    let g = SinkedGraph::complete(n)?;
    let gp = p.general();
    let mut checks = Vec::new();

    checks.push(sweep(
        "k-stable: closed form = general = oracle",
        total,
        |i| {
            let d = nth_config(i, a + 1, n);
            let mut bad = Vec::new();
            for k in 0..n {
                let fast = is_k_stable(p, &d, k).expect("valid input");
                let general = is_k_stable_general(&g, &gp, &d, k).expect("valid input");
                let brute = brute_is_k_stable_complete(p, &d, k);
                if fast != brute || general != brute {
                    bad.push(format!(
                        "{d} k={k}: closed form {fast}, general {general}, oracle {brute}"
                    ));
                }
            }
            (n, bad)
        },
    ));

    checks.push(sweep("k-skeletal config: fast = oracle", total, |i| {
        let d = nth_config(i, a + 1, n);
        let mut bad = Vec::new();
        for k in 0..n {
            let fast = is_k_skeletal_config(p, &d, k).expect("valid input");
            let brute = brute_is_k_skeletal(p, &d, k);
            if fast != brute {
                bad.push(format!("{d} k={k}: fast {fast}, oracle {brute}"));
            }
        }
        (n, bad)
    }));

    checks.push(sweep(
        "superstable: parking = oracle = (b-1)-stable",
        total,
        |i| {
            let d = nth_config(i, a + 1, n);
            let fast = is_superstable_parking(p, &d).expect("valid input");
            let brute = brute_superstable_parking(p, &d);
            let stable = is_k_stable(p, &d, n - 1).expect("valid input");
            let bad = if fast == brute && brute == stable {
                vec![]
            } else {
                vec![format!(
                    "{d}: parking {fast}, oracle {brute}, stable {stable}"
                )]
            };
            (1, bad)
        },
    ));

    checks.push(sweep(
        "config skeletal = labeled path skeletal",
        reduced,
        |i| {
            let d = nth_config(i, a, n);
            let q = lpath(p, &d).expect("valid input");
            let mut bad = Vec::new();
            for k in 0..n {
                let config = is_k_skeletal_config(p, &d, k).expect("valid input");
                let path = is_k_skeletal_labeled(&q, k).expect("valid input");
                if config != path {
                    bad.push(format!("{d} k={k}: config {config}, path {path}"));
                }
            }
            (n, bad)
        },
    ));

    let paths: Vec<_> = all_paths(a, p.b()).collect();
    if paths.len() > budget {
        return Err(Error::BudgetExceeded {
            budget,
            explored: 0,
            frontier: paths.len(),
        });
    }
    checks.push(sweep(
        "k-skeletal path: fast = rotation oracle",
        paths.len(),
        |i| {
            let q = &paths[i];
            let mut bad = Vec::new();
            for k in 0..n {
                let fast = q.is_k_skeletal(k).expect("valid input");
                let brute = brute_path_skeletal(q, k);
                if fast != brute {
                    bad.push(format!("{q} k={k}: fast {fast}, oracle {brute}"));
                }
            }
            (n, bad)
        },
    ));

    Ok(VerifyReport {
        a,
        b: p.b(),
        checks,
    })
}
