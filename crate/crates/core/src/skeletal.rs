//! `k`-skeletal configurations on the complete graph.
//!
//! A `k`-stable configuration is `k`-skeletal when no nonempty legal borrow
//! leaves it `k`-stable. Only borrows by the `s` poorest vertices whose path
//! reaches the min-level point `v_s` by an east step need checking, and such
//! a borrow is the cyclic shift of the labeled path at `v_s`. This turns the
//! `2^b` borrow sets of the definition into at most `b` candidates.

use crate::complete::{borrow_complete, is_k_stable, offsets, poorest, RatParams};
use crate::config::{ChipConfig, VertexSet};
use crate::error::{Error, Result};
use crate::labeled::{decode, lpath, LabeledPath, LabeledStep};
use crate::paths::{LatticePath, Point, Step};

/// The rightmost lattice point of row `s` strictly left of the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinLevelPoint {
    pub s: usize,
    pub point: Point,
    pub level: i64,
}

/// `v_s = (⌊sa/b⌋, s)` for `s < b` and `v_b = (a-1, b)`. Their levels are
/// `1..=b` in some order.
pub fn min_level_points(p: &RatParams) -> Vec<MinLevelPoint> {
    (1..=p.n())
        .map(|s| {
            let point = min_level_point(p, s);
            MinLevelPoint {
                s,
                point,
                level: p.a() * point.1 - p.b() * point.0,
            }
        })
        .collect()
}

fn min_level_point(p: &RatParams, s: usize) -> Point {
    let s = s as i64;
    if s == p.b() {
        (p.a() - 1, s)
    } else {
        (s * p.a() / p.b(), s)
    }
}

/// Whether the path with north-step columns `xs` reaches `v_s` by an east
/// step, i.e. `x_s < v_s.x <= x_{s+1}` with `x_{b+1} = a`.
fn arrives_by_east(p: &RatParams, xs: &[i64], s: usize) -> bool {
    let (vx, _) = min_level_point(p, s);
    let next = xs.get(s).copied().unwrap_or(p.a());
    xs[s - 1] < vx && vx <= next
}

/// A borrow that keeps a `k`-stable configuration `k`-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletalBorrow {
    pub s: usize,
    pub set: VertexSet,
    pub result: ChipConfig,
}

/// All `s` for which the `s` poorest vertices of the `k`-stable `d` can
/// legally borrow with a `k`-stable result, restricted to those whose path
/// reaches `v_s` by an east step. Empty exactly when `d` is `k`-skeletal.
pub fn skeletal_borrows(p: &RatParams, d: &ChipConfig, k: usize) -> Result<Vec<SkeletalBorrow>> {
    let q = lpath(p, d)?;
    let mut out = Vec::new();
    if q.is_overflow() {
        return Ok(out);
    }
    for s in 1..=p.n() {
        if !arrives_by_east(p, q.xs(), s) {
            continue;
        }
        let set = poorest(d, s);
        let result = borrow_complete(p, d, &set)?;
        if result.is_nonnegative() && is_k_stable(p, &result, k)? {
            out.push(SkeletalBorrow { s, set, result });
        }
    }
    Ok(out)
}

/// Fast `k`-skeletal test in `O(b² log b)`. Configurations that are not
/// `k`-stable are not `k`-skeletal.
pub fn is_k_skeletal_config(p: &RatParams, d: &ChipConfig, k: usize) -> Result<bool> {
    if !is_k_stable(p, d, k)? {
        return Ok(false);
    }
    Ok(skeletal_borrows(p, d, k)?.is_empty())
}

/// Checks that borrowing by the `s` poorest vertices of a 0-stable `d`
/// whose path reaches `v_s` by an east step is legal and equals the cyclic
/// shift of `lpath(d)` at `v_s`. Always true on valid input.
pub fn special_borrow_check(p: &RatParams, d: &ChipConfig, s: usize) -> Result<bool> {
    offsets(p, s)?;
    if !is_k_stable(p, d, 0)? {
        return Err(Error::Precondition("configuration is not 0-stable".into()));
    }
    let q = lpath(p, d)?;
    if !arrives_by_east(p, q.xs(), s) {
        return Err(Error::Precondition(format!(
            "the path does not reach v_{s} by an east step"
        )));
    }
    let borrowed = borrow_complete(p, d, &poorest(d, s))?;
    if !borrowed.is_nonnegative() {
        return Ok(false);
    }
    let shifted = q.cyclic_shift_at(min_level_point(p, s))?;
    Ok(lpath(p, &borrowed)? == shifted)
}

/// The unique superstable configuration equivalent to `d` under firing and
/// borrowing. `d` may have negative entries.
///
/// Reduce mod `a`, draw the labeled path, and shift it so that its
/// minimum-level point becomes the origin.
pub fn superstabilize(p: &RatParams, d: &ChipConfig) -> Result<ChipConfig> {
    d.require_len(p.n())?;
    let reduced = ChipConfig::new(d.counts().iter().map(|&x| x.rem_euclid(p.a())).collect());
    let q = lpath(p, &reduced)?;
    let path = q.path()?;
    let (lowest, _) = path
        .points()
        .into_iter()
        .zip(path.levels())
        .min_by_key(|&(_, l)| l)
        .expect("paths have points");
    Ok(decode(&q.cyclic_shift_at(lowest)?))
}

/// Which admissible borrow the skeletal finder takes when several apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BorrowRule {
    #[default]
    Smallest,
    Largest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletalSearch {
    pub config: ChipConfig,
    /// The borrow sets applied after superstabilizing, in order.
    pub borrows: Vec<VertexSet>,
}

/// The unique `k`-skeletal configuration equivalent to `d`.
pub fn find_k_skeletal_config(p: &RatParams, d: &ChipConfig, k: usize) -> Result<ChipConfig> {
    Ok(find_k_skeletal_config_with(p, d, k, BorrowRule::Smallest)?.config)
}

/// Starts from the superstabilization and keeps borrowing while some
/// borrow keeps the configuration `k`-stable. Each borrow raises the total
/// chip count, which stays below `b·a`, so this terminates.
pub fn find_k_skeletal_config_with(
    p: &RatParams,
    d: &ChipConfig,
    k: usize,
    rule: BorrowRule,
) -> Result<SkeletalSearch> {
    if k >= p.n() {
        return Err(Error::KOutOfRange { k, n: p.n() });
    }
    let mut current = superstabilize(p, d)?;
    let mut borrows = Vec::new();
    loop {
        let mut options = skeletal_borrows(p, &current, k)?;
        let pick = match rule {
            BorrowRule::Smallest => options.drain(..).next(),
            BorrowRule::Largest => options.pop(),
        };
        match pick {
            Some(b) => {
                current = b.result;
                borrows.push(b.set);
            }
            None => {
                return Ok(SkeletalSearch {
                    config: current,
                    borrows,
                })
            }
        }
    }
}

fn dual_offset(p: &RatParams) -> Result<i64> {
    if p.b() < 2 {
        return Err(Error::Precondition("duality needs b > 1".into()));
    }
    Ok(p.a() - p.e())
}

/// `D'(i) = a − e − D(i)` with `e = 1 + ⌊a/b⌋`; maps superstable
/// configurations onto 0-skeletal ones and is its own inverse.
pub fn dual_config(p: &RatParams, d: &ChipConfig) -> Result<ChipConfig> {
    d.require_len(p.n())?;
    let top = dual_offset(p)?;
    if let Some(i) = d.counts().iter().position(|&x| !(0..=top).contains(&x)) {
        return Err(Error::Precondition(format!(
            "vertex {} holds {} chips, outside 0..={top}",
            i + 1,
            d.counts()[i]
        )));
    }
    Ok(ChipConfig::new(
        d.counts().iter().map(|&x| top - x).collect(),
    ))
}

fn trailing_easts<T: PartialEq>(steps: &[T], east: &T) -> usize {
    steps.iter().rev().take_while(|s| *s == east).count()
}

/// Moves the last `e` east steps of a 0-stable path to the front. The
/// result starts at `(-e, 0)`; it is returned in coordinates relative to
/// that start.
pub fn invert_path(p: &RatParams, q: &LatticePath) -> Result<LatticePath> {
    let e = p.e() as usize;
    if q.a() != p.a() || q.b() != p.b() || trailing_easts(q.steps(), &Step::E) < e {
        return Err(Error::Precondition(format!(
            "path must be 0-stable for ({}, {}), ending in at least {e} east steps",
            p.a(),
            p.b()
        )));
    }
    let mut steps = q.steps().to_vec();
    steps.rotate_right(e);
    LatticePath::new(q.a(), q.b(), steps)
}

/// [`invert_path`] for labeled paths; runs and labels are untouched.
pub fn invert_labeled(p: &RatParams, q: &LabeledPath) -> Result<LabeledPath> {
    let e = p.e() as usize;
    let mut steps = q.steps();
    if q.a() != p.a() || q.b() != p.b() || trailing_easts(&steps, &LabeledStep::E) < e {
        return Err(Error::Precondition(format!(
            "labeled path must be 0-stable for ({}, {})",
            p.a(),
            p.b()
        )));
    }
    steps.rotate_right(e);
    LabeledPath::from_steps(q.a(), q.b(), &steps)
}

/// The steps of `q` in reverse order.
pub fn reverse_path(q: &LatticePath) -> LatticePath {
    let mut steps = q.steps().to_vec();
    steps.reverse();
    LatticePath::new(q.a(), q.b(), steps).expect("reversal keeps step counts")
}

/// Reverses a labeled path, then re-sorts the labels in each column so they
/// increase from bottom to top.
pub fn reverse_labeled(q: &LabeledPath) -> Result<LabeledPath> {
    if q.is_overflow() {
        return Err(Error::OverflowPath);
    }
    let xs: Vec<i64> = q.xs().iter().rev().map(|&x| q.a() - x).collect();
    let mut labels: Vec<usize> = q.labels().iter().rev().copied().collect();
    let mut start = 0;
    while start < xs.len() {
        let end = (start..xs.len())
            .find(|&r| xs[r] != xs[start])
            .unwrap_or(xs.len());
        labels[start..end].sort_unstable();
        start = end;
    }
    LabeledPath::new(q.a(), q.b(), xs, labels)
}

/// Whether a path, read from its own starting point, stays weakly below
/// the line through its endpoints (every level `<= 0`).
pub fn is_inverted_dyck(q: &LatticePath) -> bool {
    q.levels().into_iter().all(|l| l <= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::fire_complete;

    fn rp(a: i64, b: i64) -> RatParams {
        RatParams::new(a, b).unwrap()
    }

    fn cfg(v: &[i64]) -> ChipConfig {
        ChipConfig::new(v.to_vec())
    }

    fn cube(a: i64, b: i64) -> impl Iterator<Item = ChipConfig> {
        let n = b as u32;
        (0..a.pow(n)).map(move |mut code| {
            let mut v = Vec::new();
            for _ in 0..n {
                v.push(code % a);
                code /= a;
            }
            ChipConfig::new(v)
        })
    }

    #[test]
    fn min_level_points_for_85() {
        let pts = min_level_points(&rp(8, 5));
        let coords: Vec<Point> = pts.iter().map(|m| m.point).collect();
        assert_eq!(coords, vec![(1, 1), (3, 2), (4, 3), (6, 4), (7, 5)]);
        let levels: Vec<i64> = pts.iter().map(|m| m.level).collect();
        assert_eq!(levels, vec![3, 1, 4, 2, 5]);
        assert_eq!(min_level_points(&rp(7, 5))[3].point, (5, 4));
        let single = min_level_points(&rp(4, 1));
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].point, (3, 1));
    }

    #[test]
    fn min_level_point_levels_are_a_permutation() {
        for (a, b) in [(3, 2), (5, 3), (7, 5), (12, 5), (2, 7), (1, 3)] {
            let p = rp(a, b);
            let mut lv: Vec<i64> = min_level_points(&p).iter().map(|m| m.level).collect();
            lv.sort();
            assert_eq!(lv, (1..=b).collect::<Vec<_>>());
            // every other strictly interior point of the triangle sits higher
            for y in 0..=b {
                for x in 0..=a {
                    let l = a * y - b * x;
                    let is_min = min_level_points(&p).iter().any(|m| m.point == (x, y));
                    if l > 0 && !is_min && b * x <= a * y {
                        assert!(l > b, "({x},{y}) level {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn skeletal_examples() {
        let p = rp(7, 5);
        assert!(!is_k_skeletal_config(&p, &cfg(&[2, 2, 5, 0, 0]), 2).unwrap());
        let borrows = skeletal_borrows(&p, &cfg(&[2, 2, 5, 0, 0]), 2).unwrap();
        assert_eq!(borrows.len(), 1);
        assert_eq!(borrows[0].s, 4);
        assert_eq!(borrows[0].set, VertexSet::from(&[1, 2, 4, 5][..]));
        assert_eq!(borrows[0].result, cfg(&[4, 4, 0, 2, 2]));
        assert!(is_k_skeletal_config(&p, &cfg(&[4, 4, 0, 2, 2]), 2).unwrap());

        let p = rp(4, 3);
        assert!(is_k_skeletal_config(&p, &cfg(&[2, 0, 2]), 0).unwrap());
        assert!(!is_k_skeletal_config(&p, &cfg(&[2, 0, 2]), 1).unwrap());
        assert!(!is_k_skeletal_config(&p, &cfg(&[2, 0, 2]), 2).unwrap());
        assert!(is_k_skeletal_config(&p, &cfg(&[-1, 0, 2]), 0).is_err());
    }

    #[test]
    fn special_borrow_examples() {
        assert!(special_borrow_check(&rp(8, 5), &cfg(&[1, 3, 0, 3, 5]), 2).unwrap());
        assert!(special_borrow_check(&rp(7, 5), &cfg(&[4, 4, 0, 2, 2]), 5).unwrap());
        assert!(special_borrow_check(&rp(7, 5), &cfg(&[4, 4, 0, 2, 2]), 2).is_err());
        assert!(special_borrow_check(&rp(7, 5), &cfg(&[6, 4, 0, 2, 2]), 5).is_err());
    }

    #[test]
    fn special_borrow_holds_exhaustively() {
        let p = rp(5, 3);
        let mut checked = 0;
        for d in cube(5, 3) {
            if !is_k_stable(&p, &d, 0).unwrap() {
                continue;
            }
            let xs = lpath(&p, &d).unwrap().xs().to_vec();
            for s in 1..=3 {
                if arrives_by_east(&p, &xs, s) {
                    assert!(special_borrow_check(&p, &d, s).unwrap(), "{d} s={s}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn superstabilize_examples() {
        assert_eq!(
            superstabilize(&rp(5, 3), &cfg(&[5, 5, 5])).unwrap(),
            cfg(&[0, 0, 0])
        );
        let p = rp(7, 5);
        let ss = superstabilize(&p, &cfg(&[0, 0, 3, 5, 5])).unwrap();
        assert!(is_k_stable(&p, &ss, 4).unwrap());
        assert_eq!(superstabilize(&p, &cfg(&[2, 2, 5, 0, 0])).unwrap(), ss);
        assert_eq!(superstabilize(&p, &cfg(&[4, 4, 0, 2, 2])).unwrap(), ss);
        // by actually firing
        let (fired, _) = crate::complete::k_stabilize(&p, &cfg(&[2, 2, 5, 0, 0]), 4).unwrap();
        assert_eq!(fired, ss);
        let (fired, _) = crate::complete::k_stabilize(&p, &cfg(&[4, 4, 0, 2, 2]), 4).unwrap();
        assert_eq!(fired, ss);
        assert_eq!(
            superstabilize(&p, &cfg(&[-3, 11, 0, -7, 2])).unwrap(),
            superstabilize(&p, &cfg(&[4, 4, 0, 0, 2])).unwrap()
        );
    }

    #[test]
    fn superstable_configs_are_fixed() {
        let p = rp(5, 3);
        for d in cube(5, 3) {
            if is_k_stable(&p, &d, 2).unwrap() {
                assert_eq!(superstabilize(&p, &d).unwrap(), d);
            }
        }
    }

    #[test]
    fn skeletal_finder_examples() {
        let p = rp(7, 5);
        assert_eq!(
            find_k_skeletal_config(&p, &cfg(&[0, 0, 3, 5, 5]), 2).unwrap(),
            cfg(&[4, 4, 0, 2, 2])
        );
        assert_eq!(
            find_k_skeletal_config(&rp(5, 3), &cfg(&[5, 5, 5]), 0).unwrap(),
            cfg(&[3, 3, 3])
        );
        assert!(find_k_skeletal_config(&p, &cfg(&[0; 5]), 5).is_err());
    }

    #[test]
    fn borrow_rule_does_not_change_the_endpoint() {
        let p = rp(7, 4);
        for d in cube(7, 4).step_by(5) {
            for k in 0..4 {
                let small = find_k_skeletal_config_with(&p, &d, k, BorrowRule::Smallest).unwrap();
                let large = find_k_skeletal_config_with(&p, &d, k, BorrowRule::Largest).unwrap();
                assert_eq!(small.config, large.config);
                assert!(is_k_skeletal_config(&p, &small.config, k).unwrap());
                if k == 3 {
                    assert_eq!(small.config, superstabilize(&p, &d).unwrap());
                }
            }
        }
    }

    #[test]
    fn skeletal_borrows_are_really_borrows() {
        // firing the borrowed set undoes each candidate move
        let p = rp(5, 3);
        for d in cube(5, 3) {
            for k in 0..3 {
                if !is_k_stable(&p, &d, k).unwrap() {
                    continue;
                }
                for b in skeletal_borrows(&p, &d, k).unwrap() {
                    assert_eq!(fire_complete(&p, &b.result, &b.set).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn duality() {
        assert_eq!(rp(12, 5).e(), 3);
        let p = rp(7, 5);
        let dual = dual_config(&p, &cfg(&[0; 5])).unwrap();
        assert_eq!(dual, cfg(&[5; 5]));
        assert!(is_k_skeletal_config(&p, &dual, 0).unwrap());
        assert!(dual_config(&p, &cfg(&[6, 0, 0, 0, 0])).is_err());
        assert!(dual_config(&rp(3, 1), &cfg(&[0])).is_err());
        let p = rp(5, 3);
        for d in cube(5, 3) {
            if is_k_stable(&p, &d, 2).unwrap() {
                assert_eq!(dual_config(&p, &dual_config(&p, &d).unwrap()).unwrap(), d);
            }
        }
    }

    #[test]
    fn path_duality() {
        for (a, b) in [(5, 3), (7, 5), (12, 5), (3, 2)] {
            let p = rp(a, b);
            for d in cube(a, b).step_by(3) {
                if !is_k_stable(&p, &d, 0).unwrap() {
                    continue;
                }
                let q = lpath(&p, &d).unwrap();
                let path = q.path().unwrap();
                let inverted = invert_path(&p, &path).unwrap();
                assert_eq!(invert_labeled(&p, &q).unwrap().path().unwrap(), inverted);
                assert_eq!(
                    invert_labeled(&p, &q).unwrap().run_multiset(),
                    q.run_multiset()
                );
                assert_eq!(
                    is_k_skeletal_config(&p, &d, 0).unwrap(),
                    is_inverted_dyck(&inverted),
                    "{d}"
                );
                if path.is_dyck() {
                    let rev = reverse_path(&path);
                    assert!(is_inverted_dyck(&rev));
                    // the reversed labeled Dyck path is the inverted path of the dual
                    let dual = dual_config(&p, &d).unwrap();
                    assert_eq!(
                        reverse_labeled(&q).unwrap(),
                        invert_labeled(&p, &lpath(&p, &dual).unwrap()).unwrap()
                    );
                }
            }
        }
        let p = rp(5, 3);
        let stacked = LatticePath::parse("NNNEEEEE").unwrap();
        assert!(invert_path(&p, &stacked).is_ok());
        assert!(invert_path(&p, &LatticePath::parse("NNEEEENE").unwrap()).is_err());
    }
}
