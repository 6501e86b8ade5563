//! Sign patterns, change-preservation words, compatible pairs and couples,
//! and the `Z2 x Z2` action generated by the involutions `i_m` and `i_r`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("sign pattern must have at least two entries, got {0}")]
    TooShort(usize),
    #[error("sign pattern must start with '+'")]
    LeadingMinus,
    #[error("unexpected character {0:?} in pattern")]
    BadChar(char),
    #[error("block lengths must be positive")]
    EmptyBlock,
    #[error("pair ({pos},{neg}) is not compatible with pattern {pattern}")]
    Incompatible { pattern: String, pos: usize, neg: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `(-1)^k`
    pub fn parity(k: usize) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Coefficient signs of a monic polynomial, leading coefficient first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern(Vec<Sign>);

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Result<Self, PatternError> {
        if signs.len() < 2 {
            return Err(PatternError::TooShort(signs.len()));
        }
        if signs[0] != Sign::Plus {
            return Err(PatternError::LeadingMinus);
        }
        Ok(SignPattern(signs))
    }

    /// Builds `Σ_{m1,...,mn}`: `m1` pluses, then `m2` minuses, and so on.
    pub fn from_blocks(blocks: &[usize]) -> Result<Self, PatternError> {
        if blocks.iter().any(|&m| m == 0) {
            return Err(PatternError::EmptyBlock);
        }
        let mut signs = Vec::new();
        let mut s = Sign::Plus;
        for &m in blocks {
            signs.extend(std::iter::repeat(s).take(m));
            s = s.flip();
        }
        SignPattern::new(signs)
    }

    /// Flips every sign if needed so the first entry is `+`.
    fn normalized(mut signs: Vec<Sign>) -> Self {
        if signs[0] == Sign::Minus {
            for s in &mut signs {
                *s = s.flip();
            }
        }
        SignPattern(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sign of the coefficient of `x^j`.
    pub fn coeff_sign(&self, j: usize) -> Sign {
        self.0[self.degree() - j]
    }

    pub fn sign_changes(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn descartes_pair(&self) -> CompatiblePair {
        let c = self.sign_changes();
        CompatiblePair::new(c, self.degree() - c)
    }

    /// All `(c - 2u, d - c - 2v)` with nonnegative entries, ordered
    /// by decreasing `pos`, then decreasing `neg`.
    pub fn compatible_pairs(&self) -> Vec<CompatiblePair> {
        let c = self.sign_changes();
        let p = self.degree() - c;
        let mut out = Vec::new();
        for pos in (0..=c).rev().step_by(2) {
            for neg in (0..=p).rev().step_by(2) {
                out.push(CompatiblePair::new(pos, neg));
            }
        }
        out
    }

    pub fn is_compatible(&self, pair: CompatiblePair) -> bool {
        let c = self.sign_changes();
        let p = self.degree() - c;
        pair.pos <= c && (c - pair.pos) % 2 == 0 && pair.neg <= p && (p - pair.neg) % 2 == 0
    }

    pub fn to_change_preservation(&self) -> ChangePreservationPattern {
        ChangePreservationPattern(
            self.0
                .windows(2)
                .map(|w| if w[0] != w[1] { CpLetter::C } else { CpLetter::P })
                .collect(),
        )
    }

    pub fn from_change_preservation(cp: &ChangePreservationPattern) -> Self {
        let mut signs = vec![Sign::Plus];
        let mut s = Sign::Plus;
        for l in &cp.0 {
            if *l == CpLetter::C {
                s = s.flip();
            }
            signs.push(s);
        }
        SignPattern(signs)
    }

    /// Pattern of `(-1)^d P(-x)`: every second sign flipped.
    pub fn im(&self) -> Self {
        SignPattern(
            self.0
                .iter()
                .enumerate()
                .map(|(i, s)| s.times(Sign::parity(i)))
                .collect(),
        )
    }

    /// Pattern of `x^d P(1/x) / P(0)`: reversed, renormalized.
    pub fn ir(&self) -> Self {
        SignPattern::normalized(self.0.iter().rev().copied().collect())
    }

    /// Prefix of length `d` (the pattern of the derivative).
    pub fn truncated(&self) -> Option<Self> {
        (self.0.len() > 2).then(|| SignPattern(self.0[..self.0.len() - 1].to_vec()))
    }

    /// Minus signs as one-bits, leading entry first; used for canonical ordering.
    pub fn bitstring(&self) -> Vec<bool> {
        self.0.iter().map(|s| *s == Sign::Minus).collect()
    }

    /// Every pattern of degree `d` in increasing bitstring order.
    pub fn all(d: usize) -> impl Iterator<Item = SignPattern> {
        assert!(d >= 1);
        (0u64..(1u64 << d)).map(move |bits| {
            let mut signs = vec![Sign::Plus];
            for i in (0..d).rev() {
                signs.push(if bits >> i & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                });
            }
            SignPattern(signs)
        })
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(PatternError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SignPattern::new(signs)
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CpLetter {
    C,
    P,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChangePreservationPattern(pub Vec<CpLetter>);

impl ChangePreservationPattern {
    pub fn letters(&self) -> &[CpLetter] {
        &self.0
    }

    pub fn count(&self, l: CpLetter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }
}

impl fmt::Display for ChangePreservationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                CpLetter::C => "c",
                CpLetter::P => "p",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ChangePreservationPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'c' | 'C' => Ok(CpLetter::C),
                'p' | 'P' => Ok(CpLetter::P),
                other => Err(PatternError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if letters.is_empty() {
            return Err(PatternError::TooShort(1));
        }
        Ok(ChangePreservationPattern(letters))
    }
}

/// Numbers of positive and negative roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompatiblePair {
    pub pos: usize,
    pub neg: usize,
}

impl CompatiblePair {
    pub const fn new(pos: usize, neg: usize) -> Self {
        CompatiblePair { pos, neg }
    }

    pub fn swapped(self) -> Self {
        CompatiblePair::new(self.neg, self.pos)
    }

    pub fn total(self) -> usize {
        self.pos + self.neg
    }
}

impl fmt::Display for CompatiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

impl Serialize for CompatiblePair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.pos, self.neg].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CompatiblePair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [pos, neg] = <[usize; 2]>::deserialize(d)?;
        Ok(CompatiblePair { pos, neg })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompatibleCouple {
    pattern: SignPattern,
    pair: CompatiblePair,
}

impl CompatibleCouple {
    pub fn new(pattern: SignPattern, pair: CompatiblePair) -> Result<Self, PatternError> {
        if !pattern.is_compatible(pair) {
            return Err(PatternError::Incompatible {
                pattern: pattern.to_string(),
                pos: pair.pos,
                neg: pair.neg,
            });
        }
        Ok(CompatibleCouple { pattern, pair })
    }

    pub fn pattern(&self) -> &SignPattern {
        &self.pattern
    }

    pub fn pair(&self) -> CompatiblePair {
        self.pair
    }

    pub fn degree(&self) -> usize {
        self.pattern.degree()
    }

    pub fn im(&self) -> Self {
        CompatibleCouple {
            pattern: self.pattern.im(),
            pair: self.pair.swapped(),
        }
    }

    pub fn ir(&self) -> Self {
        CompatibleCouple {
            pattern: self.pattern.ir(),
            pair: self.pair,
        }
    }

    fn sort_key(&self) -> (Vec<bool>, CompatiblePair) {
        (self.pattern.bitstring(), self.pair)
    }

    pub fn orbit(&self) -> Orbit {
        let members: BTreeSet<_> = [self.clone(), self.im(), self.ir(), self.im().ir()]
            .into_iter()
            .map(OrdCouple)
            .collect();
        Orbit(members.into_iter().map(|c| c.0).collect())
    }
}

impl fmt::Display for CompatibleCouple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pattern, self.pair)
    }
}

impl<'de> Deserialize<'de> for CompatibleCouple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            pattern: SignPattern,
            pair: CompatiblePair,
        }
        let raw = Raw::deserialize(d)?;
        CompatibleCouple::new(raw.pattern, raw.pair).map_err(serde::de::Error::custom)
    }
}

#[derive(PartialEq, Eq)]
struct OrdCouple(CompatibleCouple);

impl PartialOrd for OrdCouple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdCouple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.sort_key().cmp(&other.0.sort_key())
    }
}

/// An orbit of the `Z2 x Z2` action; members sorted so that the first one
/// is the representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Orbit(Vec<CompatibleCouple>);

impl Orbit {
    pub fn members(&self) -> &[CompatibleCouple] {
        &self.0
    }

    pub fn representative(&self) -> &CompatibleCouple {
        &self.0[0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: &CompatibleCouple) -> bool {
        self.0.contains(c)
    }
}

pub fn enumerate_couples(d: usize) -> Vec<CompatibleCouple> {
    SignPattern::all(d)
        .flat_map(|p| {
            p.compatible_pairs()
                .into_iter()
                .map(move |pair| CompatibleCouple {
                    pattern: p.clone(),
                    pair,
                })
        })
        .collect()
}

/// One orbit per class, sorted by representative.
pub fn enumerate_orbits(d: usize) -> Vec<Orbit> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for c in enumerate_couples(d) {
        if seen.contains(&c) {
            continue;
        }
        let o = c.orbit();
        seen.extend(o.members().iter().cloned());
        out.push(o);
    }
    out.sort_by(|a, b| a.representative().sort_key().cmp(&b.representative().sort_key()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> SignPattern {
        s.parse().unwrap()
    }

    fn blocks(b: &[usize]) -> SignPattern {
        SignPattern::from_blocks(b).unwrap()
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(pat("+---+").sign_changes(), 2);
        assert_eq!(pat("+++++").sign_changes(), 0);
        assert_eq!(pat("+-+-+").sign_changes(), 4);
    }

    #[test]
    fn descartes_pair_examples() {
        assert_eq!(blocks(&[1, 3, 1]).descartes_pair(), CompatiblePair::new(2, 2));
        assert_eq!(blocks(&[6]).descartes_pair(), CompatiblePair::new(0, 5));
        assert_eq!(pat("++---+-+").descartes_pair(), CompatiblePair::new(4, 3));
    }

    #[test]
    fn compatible_pair_examples() {
        let set = |p: &SignPattern| p.compatible_pairs().into_iter().collect::<BTreeSet<_>>();
        let exp = |v: &[(usize, usize)]| {
            v.iter()
                .map(|&(a, b)| CompatiblePair::new(a, b))
                .collect::<BTreeSet<_>>()
        };
        assert_eq!(set(&blocks(&[1, 3, 1])), exp(&[(2, 2), (2, 0), (0, 2), (0, 0)]));
        assert_eq!(set(&pat("++")), exp(&[(0, 1)]));
        assert_eq!(set(&blocks(&[1, 4, 1])), exp(&[(2, 3), (2, 1), (0, 3), (0, 1)]));
    }

    #[test]
    fn compatibility_examples() {
        assert!(blocks(&[1, 3, 1]).is_compatible(CompatiblePair::new(0, 2)));
        assert!(!blocks(&[1, 3, 1]).is_compatible(CompatiblePair::new(1, 1)));
        assert!(blocks(&[1, 4, 1]).is_compatible(CompatiblePair::new(0, 3)));
        assert!(CompatibleCouple::new(blocks(&[1, 3, 1]), CompatiblePair::new(1, 1)).is_err());
    }

    #[test]
    fn change_preservation_examples() {
        let p = pat("++---+-+");
        assert_eq!(p.to_change_preservation().to_string(), "pcppccc");
        assert_eq!(pat("++++").to_change_preservation().to_string(), "ppp");
        let cp: ChangePreservationPattern = "pcppccc".parse().unwrap();
        assert_eq!(SignPattern::from_change_preservation(&cp), p);
    }

    #[test]
    fn change_preservation_bijection_up_to_10() {
        for d in 1..=10 {
            for p in SignPattern::all(d) {
                let cp = p.to_change_preservation();
                assert_eq!(SignPattern::from_change_preservation(&cp), p);
                assert_eq!(cp.count(CpLetter::C), p.sign_changes());
            }
        }
    }

    #[test]
    fn ir_example_from_remarks() {
        let c = CompatibleCouple::new(blocks(&[2, 4, 1]), CompatiblePair::new(0, 4)).unwrap();
        let img = c.ir();
        assert_eq!(img.pattern(), &blocks(&[1, 4, 2]));
        assert_eq!(img.pair(), CompatiblePair::new(0, 4));
    }

    #[test]
    fn im_of_sigma131() {
        // x^4 - x^3 - x^2 - x + 1 -> x^4 + x^3 - x^2 + x + 1
        let c = CompatibleCouple::new(blocks(&[1, 3, 1]), CompatiblePair::new(0, 2)).unwrap();
        let img = c.im();
        assert_eq!(img.pattern(), &pat("++-++"));
        assert_eq!(img.pair(), CompatiblePair::new(2, 0));
        assert_eq!(img.im(), c);
    }

    #[test]
    fn involutions_commute_and_square_to_identity() {
        for d in 1..=8 {
            for c in enumerate_couples(d) {
                assert_eq!(c.im().im(), c);
                assert_eq!(c.ir().ir(), c);
                assert_eq!(c.im().ir(), c.ir().im());
                assert!(c.pattern.im() != c.pattern);
                assert!(c.im().pattern.is_compatible(c.im().pair));
                assert!(c.ir().pattern.is_compatible(c.ir().pair));
            }
        }
    }

    #[test]
    fn orbit_sizes() {
        let sym = CompatibleCouple::new(blocks(&[1, 3, 1]), CompatiblePair::new(0, 2)).unwrap();
        assert_eq!(sym.orbit().len(), 2);
        let generic = CompatibleCouple::new(pat("++-+-"), CompatiblePair::new(1, 1)).unwrap();
        assert_eq!(generic.orbit().len(), 4);
        for d in 1..=7 {
            for c in enumerate_couples(d) {
                let o = c.orbit();
                let fixed = c.ir() == c || c.im().ir() == c;
                assert_eq!(o.len(), if fixed { 2 } else { 4 });
                assert!(o.members().iter().all(|m| m.pattern.is_compatible(m.pair)));
            }
        }
    }

    #[test]
    fn couple_totals() {
        assert_eq!(enumerate_couples(1).len(), 2);
        let direct: usize = SignPattern::all(4).map(|p| p.compatible_pairs().len()).sum();
        assert_eq!(enumerate_couples(4).len(), direct);
        assert_eq!(SignPattern::all(4).count(), 16);
    }

    /// Burnside count over the group {id, i_m, i_r, i_m i_r}, computed from
    /// raw sign vectors without the crate's types.
    fn burnside_orbit_count(d: usize) -> usize {
        let mut total = 0;
        let mut fix_ir = 0;
        let mut fix_imir = 0;
        for bits in 0u32..(1 << d) {
            let s: Vec<i8> = std::iter::once(1)
                .chain((0..d).rev().map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }))
                .collect();
            let c = s.windows(2).filter(|w| w[0] != w[1]).count();
            let pairs: Vec<(usize, usize)> = (0..=c)
                .rev()
                .step_by(2)
                .flat_map(|p| (0..=d - c).rev().step_by(2).map(move |n| (p, n)))
                .collect();
            total += pairs.len();
            let last = s[d];
            let rev: Vec<i8> = s.iter().rev().map(|x| x * last).collect();
            if rev == s {
                fix_ir += pairs.len();
            }
            let imrev: Vec<i8> = rev
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { *x } else { -x })
                .collect();
            if imrev == s {
                fix_imir += pairs.iter().filter(|(p, n)| p == n).count();
            }
        }
        // i_m never fixes a pattern
        (total + fix_ir + fix_imir) / 4
    }

    #[test]
    fn orbit_counts_match_burnside() {
        let counts: Vec<usize> = (1..=8).map(|d| enumerate_orbits(d).len()).collect();
        let oracle: Vec<usize> = (1..=8).map(burnside_orbit_count).collect();
        assert_eq!(counts, oracle);
        assert_eq!(counts, vec![1, 3, 6, 17, 36, 91, 206, 500]);
    }

    #[test]
    fn representative_is_smallest_member() {
        for o in enumerate_orbits(5) {
            let rep = o.representative().sort_key();
            assert!(o.members().iter().all(|m| m.sort_key() >= rep));
        }
    }

    #[test]
    fn json_encoding() {
        let c = CompatibleCouple::new(blocks(&[1, 3, 1]), CompatiblePair::new(0, 2)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"pattern":"+---+","pair":[0,2]}"#);
        let back: CompatibleCouple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<CompatibleCouple>(r#"{"pattern":"+---+","pair":[1,1]}"#).is_err());
    }
}
