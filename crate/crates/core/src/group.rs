//! The critical group of the complete-graph model.
//!
//! Two configurations are equivalent when a sequence of fires and borrows
//! joins them. The classes form `Z^b / K` with `K` generated by
//! `a·e_1, …, a·e_b` and the all-ones vector, so `Γ ≅ Z_a^(b-1)`.

use std::fmt;

use crate::complete::{borrow_complete, fire_complete, k_stabilize, RatParams};
use crate::config::{ChipConfig, Move, MoveKind};
use crate::error::{Error, Result};
use crate::skeletal::{find_k_skeletal_config, superstabilize};

/// A class stored as its representative in `{0..a-1}^b` with last entry 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    params: RatParams,
    rep: ChipConfig,
}

/// Reduces mod `a`, then adds the multiple of the all-ones vector that
/// zeroes the last entry.
pub fn canonical_rep(p: &RatParams, d: &ChipConfig) -> Result<GroupElement> {
    d.require_len(p.n())?;
    let a = p.a();
    let last = d.counts()[p.n() - 1].rem_euclid(a);
    let t = (a - last) % a;
    let rep = d
        .counts()
        .iter()
        .map(|&x| (x.rem_euclid(a) + t) % a)
        .collect();
    Ok(GroupElement {
        params: *p,
        rep: ChipConfig::new(rep),
    })
}

pub fn identity(p: &RatParams) -> GroupElement {
    GroupElement {
        params: *p,
        rep: ChipConfig::zeros(p.n()),
    }
}

pub fn add(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    if x.params != y.params {
        return Err(Error::ParamMismatch);
    }
    let sum = x
        .rep
        .counts()
        .iter()
        .zip(y.rep.counts())
        .map(|(u, v)| u + v)
        .collect();
    canonical_rep(&x.params, &ChipConfig::new(sum))
}

pub fn neg(x: &GroupElement) -> GroupElement {
    let rep = x.rep.counts().iter().map(|&u| -u).collect();
    canonical_rep(&x.params, &ChipConfig::new(rep)).expect("same length")
}

/// Whether fires and borrows connect `d` and `e`.
pub fn equivalent(p: &RatParams, d: &ChipConfig, e: &ChipConfig) -> Result<bool> {
    Ok(canonical_rep(p, d)? == canonical_rep(p, e)?)
}

impl GroupElement {
    pub fn params(&self) -> &RatParams {
        &self.params
    }

    pub fn rep(&self) -> &ChipConfig {
        &self.rep
    }

    /// Coordinates in `Z_a^(b-1)`: the representative without its last entry.
    pub fn coordinates(&self) -> &[i64] {
        &self.rep.counts()[..self.params.n() - 1]
    }

    pub fn superstable_rep(&self) -> ChipConfig {
        superstabilize(&self.params, &self.rep).expect("representatives are valid")
    }

    /// The unique `k`-skeletal configuration in this class.
    pub fn skeletal_rep(&self, k: usize) -> Result<ChipConfig> {
        class_skeletal_rep(self, k)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

pub fn class_skeletal_rep(x: &GroupElement, k: usize) -> Result<ChipConfig> {
    find_k_skeletal_config(&x.params, &x.rep, k)
}

/// Every class, in lexicographic order of coordinates.
pub fn all_elements(p: &RatParams) -> Result<Vec<GroupElement>> {
    let order = p.group_order()?;
    if order > 1 << 24 {
        return Err(Error::InvalidParams(format!(
            "group of order {order} is too large to list"
        )));
    }
    let a = p.a();
    let free = p.n() - 1;
    let mut out = Vec::with_capacity(order as usize);
    let mut coords = vec![0i64; free];
    loop {
        let mut rep = coords.clone();
        rep.push(0);
        out.push(GroupElement {
            params: *p,
            rep: ChipConfig::new(rep),
        });
        let mut i = free;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < a {
                break;
            }
            coords[i] = 0;
        }
    }
}

/// A sequence of legal moves taking `d` to `target`: fire `d` down to the
/// common superstable configuration, then undo the firing sequence of
/// `target` as borrows.
pub fn legal_move_sequence(
    p: &RatParams,
    d: &ChipConfig,
    target: &ChipConfig,
) -> Result<Vec<Move>> {
    d.require_nonnegative()?;
    target.require_nonnegative()?;
    if !equivalent(p, d, target)? {
        return Err(Error::NotEquivalent);
    }
    let top = p.n() - 1;
    let (down, fires) = k_stabilize(p, d, top)?;
    let (up, back) = k_stabilize(p, target, top)?;
    debug_assert_eq!(down, up);
    let mut moves: Vec<Move> = fires.into_iter().map(Move::fire).collect();
    moves.extend(back.into_iter().rev().map(Move::borrow));
    Ok(moves)
}

/// Applies `moves` in order, failing on the first illegal one.
pub fn apply_legal_moves(p: &RatParams, d: &ChipConfig, moves: &[Move]) -> Result<ChipConfig> {
    d.require_nonnegative()?;
    let mut current = d.clone();
    for (i, m) in moves.iter().enumerate() {
        let next = match m.kind {
            MoveKind::Fire => fire_complete(p, &current, &m.set)?,
            MoveKind::Borrow => borrow_complete(p, &current, &m.set)?,
        };
        if !next.is_nonnegative() {
            return Err(Error::Precondition(format!(
                "move {} ({m}) is illegal",
                i + 1
            )));
        }
        current = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::is_k_stable;
    use crate::labeled::lpath;
    use crate::skeletal::is_k_skeletal_config;
    use std::collections::BTreeSet;

    fn rp(a: i64, b: i64) -> RatParams {
        RatParams::new(a, b).unwrap()
    }

    fn cfg(v: &[i64]) -> ChipConfig {
        ChipConfig::new(v.to_vec())
    }

    #[test]
    fn canonical_examples() {
        let p = rp(3, 2);
        assert_eq!(canonical_rep(&p, &cfg(&[0, 0])).unwrap(), identity(&p));
        assert_eq!(
            canonical_rep(&p, &cfg(&[1, 2])).unwrap().rep(),
            &cfg(&[2, 0])
        );
        assert_eq!(
            canonical_rep(&p, &cfg(&[-2, -7])).unwrap().rep(),
            &cfg(&[2, 0])
        );
        let p = rp(7, 5);
        let x = canonical_rep(&p, &cfg(&[0, 0, 3, 5, 5])).unwrap();
        assert_eq!(x.rep(), &cfg(&[2, 2, 5, 0, 0]));
        assert_eq!(canonical_rep(&p, &cfg(&[2, 2, 5, 0, 0])).unwrap(), x);
        assert_eq!(canonical_rep(&p, &cfg(&[4, 4, 0, 2, 2])).unwrap(), x);
        assert_eq!(x.to_string(), "2,2,5,0,0");
    }

    #[test]
    fn equivalence_examples() {
        let p = rp(7, 5);
        assert!(equivalent(&p, &cfg(&[2, 2, 5, 0, 0]), &cfg(&[4, 4, 0, 2, 2])).unwrap());
        assert!(!equivalent(&p, &cfg(&[0; 5]), &cfg(&[1, 0, 0, 0, 0])).unwrap());
        let d = cfg(&[3, -1, 4, 1, 5]);
        for mask in 1u32..32 {
            let s = (1..=5).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            assert!(equivalent(&p, &d, &borrow_complete(&p, &d, &s).unwrap()).unwrap());
            assert!(equivalent(&p, &d, &fire_complete(&p, &d, &s).unwrap()).unwrap());
        }
    }

    #[test]
    fn cayley_table_for_32_is_z3() {
        let p = rp(3, 2);
        let all = all_elements(&p).unwrap();
        assert_eq!(all.len(), 3);
        for x in &all {
            for y in &all {
                let z = add(x, y).unwrap();
                assert_eq!(
                    z.coordinates()[0],
                    (x.coordinates()[0] + y.coordinates()[0]) % 3
                );
            }
        }
    }

    #[test]
    fn group_axioms() {
        let p = rp(5, 3);
        let all = all_elements(&p).unwrap();
        assert_eq!(all.len(), 25);
        let id = identity(&p);
        for x in &all {
            assert_eq!(&add(x, &id).unwrap(), x);
            assert_eq!(add(x, &neg(x)).unwrap(), id);
            for y in &all {
                assert_eq!(add(x, y).unwrap(), add(y, x).unwrap());
            }
        }
        assert_eq!(add(&id, &identity(&rp(3, 2))), Err(Error::ParamMismatch));
    }

    #[test]
    fn skeletal_reps() {
        let p = rp(7, 5);
        assert_eq!(class_skeletal_rep(&identity(&p), 4).unwrap(), cfg(&[0; 5]));
        let x = canonical_rep(&p, &cfg(&[0, 0, 3, 5, 5])).unwrap();
        assert_eq!(class_skeletal_rep(&x, 2).unwrap(), cfg(&[4, 4, 0, 2, 2]));
        assert!(class_skeletal_rep(&x, 5).is_err());

        let p = rp(5, 3);
        for k in 0..3 {
            let reps: BTreeSet<ChipConfig> = all_elements(&p)
                .unwrap()
                .iter()
                .map(|x| x.skeletal_rep(k).unwrap())
                .collect();
            assert_eq!(reps.len(), 25);
            for r in &reps {
                assert!(is_k_skeletal_config(&p, r, k).unwrap());
            }
        }
    }

    #[test]
    fn superstable_reps_are_dyck() {
        for (a, b) in [(3, 2), (5, 3), (7, 5)] {
            let p = rp(a, b);
            for x in all_elements(&p).unwrap() {
                let ss = x.superstable_rep();
                assert!(is_k_stable(&p, &ss, p.n() - 1).unwrap());
                assert!(lpath(&p, &ss).unwrap().path().unwrap().is_dyck());
                assert_eq!(canonical_rep(&p, &ss).unwrap(), x);
            }
        }
    }

    #[test]
    fn move_sequences() {
        let p = rp(7, 5);
        let d = cfg(&[2, 2, 5, 0, 0]);
        assert!(legal_move_sequence(&p, &d, &d).unwrap().is_empty());
        let target = cfg(&[4, 4, 0, 2, 2]);
        let moves = legal_move_sequence(&p, &d, &target).unwrap();
        assert_eq!(apply_legal_moves(&p, &d, &moves).unwrap(), target);

        let p = rp(5, 3);
        let moves = legal_move_sequence(&p, &cfg(&[5, 5, 5]), &cfg(&[3, 3, 3])).unwrap();
        assert_eq!(
            apply_legal_moves(&p, &cfg(&[5, 5, 5]), &moves).unwrap(),
            cfg(&[3, 3, 3])
        );

        assert_eq!(
            legal_move_sequence(&p, &cfg(&[0, 0, 0]), &cfg(&[1, 0, 0])),
            Err(Error::NotEquivalent)
        );
        assert!(legal_move_sequence(&p, &cfg(&[-5, 0, 0]), &cfg(&[0, 0, 0])).is_err());
        assert!(apply_legal_moves(
            &p,
            &cfg(&[0, 0, 0]),
            &[Move::fire([1].into_iter().collect())]
        )
        .is_err());
    }
}
