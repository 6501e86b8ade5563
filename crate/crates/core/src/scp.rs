//! Sequences of compatible pairs (SCPs): the positive/negative root counts of
//! a polynomial and of each of its non-constant derivatives.
//!
//! An SCP of degree `d` is written `((p_d,n_d), ..., (p_1,n_1))`, where level
//! `j` describes the derivative of order `d - j` (a polynomial of degree `j`).
//! Enumeration and counting share [`step_admissible`] so the two cannot drift.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{CompatibleCouple, CompatiblePair, Sign, SignPattern};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScpError {
    #[error("an SCP needs at least one pair")]
    Empty,
    #[error("invalid SCP {0}")]
    Invalid(String),
    #[error("cannot truncate a degree-1 SCP")]
    TooShort,
}

/// Whether `next` may sit at level `j` directly above `prev` (level `j - 1`).
///
/// With `sum_bound == false` the third Rolle inequality is omitted; it is
/// implied by the other constraints, which the tests check exhaustively.
pub fn step_admissible(prev: CompatiblePair, next: CompatiblePair, j: usize, sum_bound: bool) -> bool {
    let level_ok = next.total() <= j && (j - next.total()) % 2 == 0;
    let rolle = next.pos <= prev.pos + 1 && next.neg <= prev.neg + 1;
    let sum = !sum_bound || next.total() <= prev.total() + 1;
    level_ok && rolle && sum
}

const LEVEL_ZERO: CompatiblePair = CompatiblePair::new(0, 0);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scp(Vec<CompatiblePair>);

impl Scp {
    /// Pairs in written order, `(p_d, n_d)` first.
    pub fn new(pairs: Vec<CompatiblePair>) -> Result<Self, ScpError> {
        if pairs.is_empty() {
            return Err(ScpError::Empty);
        }
        let s = Scp(pairs);
        if !s.is_valid() {
            return Err(ScpError::Invalid(s.to_string()));
        }
        Ok(s)
    }

    pub fn from_tuples(pairs: &[(usize, usize)]) -> Result<Self, ScpError> {
        Scp::new(pairs.iter().map(|&(p, n)| CompatiblePair::new(p, n)).collect())
    }

    pub(crate) fn new_unchecked(pairs: Vec<CompatiblePair>) -> Self {
        Scp(pairs)
    }

    pub fn pairs(&self) -> &[CompatiblePair] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(p_j, n_j)` for `1 <= j <= d`; level 0 is `(0, 0)`.
    pub fn level(&self, j: usize) -> CompatiblePair {
        if j == 0 {
            LEVEL_ZERO
        } else {
            self.0[self.degree() - j]
        }
    }

    pub fn top(&self) -> CompatiblePair {
        self.0[0]
    }

    pub fn is_valid(&self) -> bool {
        is_valid_scp(&self.0)
    }

    /// `sgn(b_j) = (-1)^{p_{d-j}}`.
    pub fn sign_pattern(&self) -> SignPattern {
        let signs = (0..=self.degree())
            .map(|i| Sign::parity(self.level(i).pos))
            .collect();
        SignPattern::new(signs).expect("leading entry is (-1)^0")
    }

    pub fn truncate(&self) -> Result<Scp, ScpError> {
        if self.degree() < 2 {
            return Err(ScpError::TooShort);
        }
        Ok(Scp(self.0[1..].to_vec()))
    }

    /// Extends by a new top pair (no validity check).
    pub fn extended(&self, top: CompatiblePair) -> Scp {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(top);
        v.extend_from_slice(&self.0);
        Scp(v)
    }

    pub fn im(&self) -> Scp {
        Scp(self.0.iter().map(|p| p.swapped()).collect())
    }

    pub fn couple(&self) -> CompatibleCouple {
        CompatibleCouple::new(self.sign_pattern(), self.top())
            .expect("SCP top pair is compatible with its pattern")
    }
}

impl fmt::Display for Scp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Scp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<CompatiblePair>::deserialize(d)?;
        Scp::new(pairs).map_err(serde::de::Error::custom)
    }
}

/// Checks the SCP constraints on a sequence written `(p_d, n_d)` first.
pub fn is_valid_scp(seq: &[CompatiblePair]) -> bool {
    if seq.is_empty() {
        return false;
    }
    let mut prev = LEVEL_ZERO;
    for (j, &pair) in seq.iter().rev().enumerate() {
        if !step_admissible(prev, pair, j + 1, true) {
            return false;
        }
        prev = pair;
    }
    true
}

fn level_pairs(j: usize) -> impl Iterator<Item = CompatiblePair> {
    (0..=j).flat_map(move |p| {
        (0..=j - p)
            .filter(move |n| (j - p - n) % 2 == 0)
            .map(move |n| CompatiblePair::new(p, n))
    })
}

fn enumerate_with(d: usize, sum_bound: bool) -> Vec<Scp> {
    assert!(d >= 1, "degree must be positive");
    // Built bottom-up: partial[k] lists levels 1..=k, lowest level last.
    let mut partial: Vec<Vec<CompatiblePair>> = vec![Vec::new()];
    for j in 1..=d {
        let mut next = Vec::new();
        for seq in &partial {
            let prev = seq.first().copied().unwrap_or(LEVEL_ZERO);
            for cand in level_pairs(j) {
                if step_admissible(prev, cand, j, sum_bound) {
                    let mut s = Vec::with_capacity(j);
                    s.push(cand);
                    s.extend_from_slice(seq);
                    next.push(s);
                }
            }
        }
        partial = next;
    }
    let mut out: Vec<Scp> = partial.into_iter().map(Scp).collect();
    out.sort();
    out
}

/// All degree-`d` SCPs, sorted.
pub fn enumerate_scps(d: usize) -> Vec<Scp> {
    enumerate_with(d, true)
}

/// Enumeration without the third Rolle inequality.
pub fn enumerate_scps_relaxed(d: usize) -> Vec<Scp> {
    enumerate_with(d, false)
}

/// `E_d(m,n)` for every admissible `(m,n)` and their total `F_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScpCountTable {
    pub degree: usize,
    pub entries: BTreeMap<CompatiblePair, BigUint>,
}

impl ScpCountTable {
    pub fn get(&self, m: usize, n: usize) -> BigUint {
        self.entries
            .get(&CompatiblePair::new(m, n))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }
}

fn count_json(c: &BigUint) -> serde_json::Value {
    match c.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for ScpCountTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let e: Vec<_> = self
            .entries
            .iter()
            .map(|(k, v)| serde_json::json!({"m": k.pos, "n": k.neg, "count": count_json(v)}))
            .collect();
        serde_json::json!({"d": self.degree, "E": e, "F": count_json(&self.total())}).serialize(s)
    }
}

/// Counts by the level recurrence, without enumerating.
pub fn count_scps(d: usize) -> ScpCountTable {
    assert!(d >= 1, "degree must be positive");
    let mut table: BTreeMap<CompatiblePair, BigUint> = BTreeMap::new();
    table.insert(LEVEL_ZERO, BigUint::from(1u32));
    for j in 1..=d {
        let mut next = BTreeMap::new();
        for cand in level_pairs(j) {
            let c: BigUint = table
                .iter()
                .filter(|(prev, _)| step_admissible(**prev, cand, j, false))
                .map(|(_, v)| v.clone())
                .sum();
            if !c.is_zero() {
                next.insert(cand, c);
            }
        }
        table = next;
    }
    ScpCountTable {
        degree: d,
        entries: table,
    }
}

/// Every SCP whose top pair and induced pattern give `couple`.
pub fn scps_for_couple(couple: &CompatibleCouple) -> Vec<Scp> {
    enumerate_scps(couple.degree())
        .into_iter()
        .filter(|s| s.top() == couple.pair() && &s.sign_pattern() == couple.pattern())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn scp(v: &[(usize, usize)]) -> Scp {
        Scp::from_tuples(v).unwrap()
    }

    fn s_star() -> Scp {
        scp(&[(0, 2), (1, 2), (1, 1), (1, 0)])
    }

    fn s_diamond() -> Scp {
        scp(&[(0, 2), (2, 3), (1, 3), (1, 2), (1, 1), (1, 0)])
    }

    #[test]
    fn validity_examples() {
        assert!(s_star().is_valid());
        assert!(s_diamond().is_valid());
        let bad = [(2, 0), (0, 0), (1, 0)].map(|(p, n)| CompatiblePair::new(p, n));
        assert!(!is_valid_scp(&bad));
        assert!(!is_valid_scp(&[]));
        assert!(!is_valid_scp(&[CompatiblePair::new(1, 1)]));
    }

    #[test]
    fn degree_one() {
        let all = enumerate_scps(1);
        assert_eq!(all, vec![scp(&[(0, 1)]), scp(&[(1, 0)])]);
    }

    /// Direct search over every sequence of level pairs, checking the three
    /// Rolle inequalities and per-level parity literally.
    fn brute_force_count(d: usize) -> u32 {
        fn rec(j: usize, d: usize, prev: (usize, usize)) -> u32 {
            if j > d {
                return 1;
            }
            let mut n = 0;
            for p in 0..=j {
                for q in 0..=j - p {
                    let ok = (j - p - q) % 2 == 0
                        && p <= prev.0 + 1
                        && q <= prev.1 + 1
                        && p + q <= prev.0 + prev.1 + 1;
                    if ok {
                        n += rec(j + 1, d, (p, q));
                    }
                }
            }
            n
        }
        rec(1, d, (0, 0))
    }

    #[test]
    fn brute_force_oracle_values() {
        let counts: Vec<u32> = (1..=7).map(brute_force_count).collect();
        assert_eq!(counts, vec![2, 6, 20, 82, 340, 1612, 7500]);
    }

    #[test]
    fn enumeration_matches_recurrence() {
        let expected = [2u32, 6, 20, 82, 340, 1612];
        for d in 1..=6 {
            let t = count_scps(d);
            assert_eq!(t.total(), BigUint::from(expected[d - 1]));
            assert_eq!(enumerate_scps(d).len() as u32, expected[d - 1]);
        }
    }

    #[test]
    fn degree_two_table() {
        let t = count_scps(2);
        assert_eq!(t.get(2, 0), BigUint::from(1u32));
        assert_eq!(t.get(0, 2), BigUint::from(1u32));
        assert_eq!(t.get(1, 1), BigUint::from(2u32));
        assert_eq!(t.get(0, 0), BigUint::from(2u32));
    }

    #[test]
    fn per_pair_counts_match_enumeration() {
        for d in 1..=6 {
            let t = count_scps(d);
            let mut by_top: BTreeMap<CompatiblePair, u32> = BTreeMap::new();
            for s in enumerate_scps(d) {
                *by_top.entry(s.top()).or_default() += 1;
            }
            for (k, v) in by_top {
                assert_eq!(t.get(k.pos, k.neg), BigUint::from(v));
            }
        }
    }

    #[test]
    fn third_rolle_inequality_is_redundant() {
        for d in 1..=7 {
            assert_eq!(enumerate_scps(d), enumerate_scps_relaxed(d));
        }
    }

    #[test]
    fn sign_pattern_rule() {
        let p = |s: &str| s.parse::<SignPattern>().unwrap();
        assert_eq!(scp(&[(0, 1), (2, 0), (1, 0)]).sign_pattern(), p("+-++"));
        assert_eq!(scp(&[(0, 1), (0, 0), (1, 0)]).sign_pattern(), p("+-++"));
        assert_eq!(
            s_diamond().sign_pattern(),
            SignPattern::from_blocks(&[1, 4, 2]).unwrap()
        );
    }

    #[test]
    fn truncation() {
        assert_eq!(
            s_diamond().truncate().unwrap(),
            scp(&[(2, 3), (1, 3), (1, 2), (1, 1), (1, 0)])
        );
        assert_eq!(scp(&[(2, 0), (1, 0)]).truncate().unwrap(), scp(&[(1, 0)]));
        assert_eq!(scp(&[(1, 0)]).truncate(), Err(ScpError::TooShort));
        for d in 2..=6 {
            for s in enumerate_scps(d) {
                let t = s.truncate().unwrap();
                assert!(t.is_valid());
                assert_eq!(Some(t.sign_pattern()), s.sign_pattern().truncated());
            }
        }
    }

    #[test]
    fn im_action() {
        let img = s_star().im();
        assert_eq!(img, scp(&[(2, 0), (2, 1), (1, 1), (0, 1)]));
        assert_eq!(img.im(), s_star());
        for d in 1..=6 {
            let all = enumerate_scps(d);
            let mut orbits = HashSet::new();
            for s in &all {
                let i = s.im();
                assert!(i.is_valid());
                assert_ne!(&i, s);
                assert_eq!(i.sign_pattern(), s.sign_pattern().im());
                orbits.insert(std::cmp::min(s.clone(), i));
            }
            assert_eq!(orbits.len() * 2, all.len());
        }
    }

    #[test]
    fn couples_with_single_scp() {
        let c1 = CompatibleCouple::new(
            SignPattern::from_blocks(&[1, 3, 1]).unwrap(),
            CompatiblePair::new(0, 2),
        )
        .unwrap();
        assert_eq!(scps_for_couple(&c1), vec![s_star()]);
        let c2 = CompatibleCouple::new(
            SignPattern::from_blocks(&[1, 4, 1]).unwrap(),
            CompatiblePair::new(0, 3),
        )
        .unwrap();
        assert_eq!(
            scps_for_couple(&c2),
            vec![scp(&[(0, 3), (1, 3), (1, 2), (1, 1), (1, 0)])]
        );
    }

    #[test]
    fn couples_partition_scps() {
        for d in 1..=5 {
            let mut union = BTreeSet::new();
            let mut total = 0;
            for c in crate::combinatorics::enumerate_couples(d) {
                for s in scps_for_couple(&c) {
                    assert!(s.is_valid());
                    assert_eq!(s.couple(), c);
                    union.insert(s);
                    total += 1;
                }
            }
            assert_eq!(total, union.len());
            assert_eq!(union.into_iter().collect::<Vec<_>>(), enumerate_scps(d));
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = s_star();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[[0,2],[1,2],[1,1],[1,0]]");
        assert_eq!(serde_json::from_str::<Scp>(&j).unwrap(), s);
        assert!(serde_json::from_str::<Scp>("[[2,0],[0,0],[1,0]]").is_err());
        let t = serde_json::to_value(count_scps(2)).unwrap();
        assert_eq!(t["F"], 6);
    }
}
