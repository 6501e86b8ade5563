use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::sturm::{isolate_in, Interval, SturmSequence};
use super::{PolyError, UniPoly};
use crate::combinatorics::CompatiblePair;
use crate::scp::Scp;

/// Yun's algorithm: pairwise coprime monic factors with multiplicities,
/// ordered by multiplicity. Their product equals the monic form of `p`.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    assert!(!p.is_zero(), "square-free decomposition of zero");
    let p = p.monic();
    if p.deg() == 0 {
        return Vec::new();
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        if a.deg() > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedRootCount {
    pub pos_with_mult: usize,
    pub neg_with_mult: usize,
    pub pos_distinct: usize,
    pub neg_distinct: usize,
    pub zero_mult: usize,
    /// Every real root is simple.
    pub all_real_distinct: bool,
}

impl SignedRootCount {
    pub fn distinct_pair(&self) -> CompatiblePair {
        CompatiblePair::new(self.pos_distinct, self.neg_distinct)
    }

    pub fn real_with_mult(&self) -> usize {
        self.pos_with_mult + self.neg_with_mult + self.zero_mult
    }
}

pub fn signed_root_counts(p: &UniPoly) -> SignedRootCount {
    let mut out = SignedRootCount {
        pos_with_mult: 0,
        neg_with_mult: 0,
        pos_distinct: 0,
        neg_distinct: 0,
        zero_mult: 0,
        all_real_distinct: true,
    };
    for (f, m) in squarefree_decomposition(p) {
        let st = SturmSequence::new(&f);
        let pos = st.count(&Interval::positive());
        let neg = st.count(&Interval::negative());
        let zero = usize::from(f.coeff(0).is_zero());
        out.pos_distinct += pos;
        out.neg_distinct += neg;
        out.pos_with_mult += pos * m;
        out.neg_with_mult += neg * m;
        out.zero_mult += zero * m;
        if m > 1 && pos + neg + zero > 0 {
            out.all_real_distinct = false;
        }
    }
    out
}

/// Root counts of `p` and of each non-constant derivative, as an SCP.
///
/// Levels are numbered by degree: level `j` is the derivative of order
/// `deg p - j`.
pub fn derivative_chain_scp(p: &UniPoly) -> Result<Scp, PolyError> {
    let d = p.degree().filter(|&d| d >= 1).ok_or(PolyError::Degree)?;
    let mut pairs = Vec::with_capacity(d);
    let mut q = p.clone();
    for j in (1..=d).rev() {
        let c = signed_root_counts(&q);
        if !c.all_real_distinct {
            return Err(PolyError::MultipleRealRoot(j));
        }
        if c.zero_mult > 0 {
            return Err(PolyError::ZeroRoot(j));
        }
        pairs.push(c.distinct_pair());
        q = q.derivative();
    }
    let scp = Scp::new_unchecked(pairs);
    debug_assert!(scp.is_valid(), "Rolle violated by {scp}");
    Ok(scp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModLetter {
    P,
    N,
}

/// Word over `{P, N}` listing root signs by increasing modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliOrder(pub Vec<ModLetter>);

impl ModuliOrder {
    pub fn letters(&self) -> &[ModLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: ModLetter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }
}

impl fmt::Display for ModuliOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                ModLetter::P => "P",
                ModLetter::N => "N",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ModuliOrder {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                'P' | 'p' => Ok(ModLetter::P),
                'N' | 'n' => Ok(ModLetter::N),
                other => Err(PolyError::Parse(format!("bad moduli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(ModuliOrder)
    }
}

impl Serialize for ModuliOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ModuliOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Order of moduli of a strictly hyperbolic polynomial with nonzero roots
/// of pairwise distinct moduli.
///
/// The positive roots of `p(x) p(-x)` are exactly the moduli; each
/// isolating interval holds one of them, and `p` changes sign across it iff
/// that modulus belongs to a positive root.
pub fn moduli_order(p: &UniPoly) -> Result<ModuliOrder, PolyError> {
    let d = p.degree().filter(|&d| d >= 1).ok_or(PolyError::Degree)?;
    let c = signed_root_counts(p);
    if c.real_with_mult() != d {
        return Err(PolyError::NotHyperbolic);
    }
    if !c.all_real_distinct {
        return Err(PolyError::MultipleRealRoot(d));
    }
    if c.zero_mult > 0 {
        return Err(PolyError::ZeroRoot(d));
    }
    let both = p * &p.reflect();
    let st = SturmSequence::new(&both);
    if st.squarefree().deg() != both.deg() {
        return Err(PolyError::EqualModuli);
    }
    let bound = both.root_bound();
    let ivs = isolate_in(&st, num_traits::Zero::zero(), bound);
    debug_assert_eq!(ivs.len(), d);
    let word = ivs
        .iter()
        .map(|iv| {
            if p.sign_at(&iv.lo) != p.sign_at(&iv.hi) {
                ModLetter::P
            } else {
                ModLetter::N
            }
        })
        .collect();
    Ok(ModuliOrder(word))
}

/// Monic product of the factors, each raised to its multiplicity.
pub fn expand_factors(factors: &[(UniPoly, usize)]) -> UniPoly {
    factors
        .iter()
        .fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
}
