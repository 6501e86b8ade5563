//! Witness search for the realization problems (couples, SCPs, couples of a
//! pattern with an order of moduli), with exact certificates.
//!
//! Candidates are proposed in floating point and accepted only after an
//! exact re-verification through [`crate::exactpoly`]. A search that runs out
//! of budget returns [`SearchOutcome::Exhausted`]: that is evidence, not a
//! proof of non-realizability.

mod canonical;
mod catalog;
mod numeric;
mod search;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::combinatorics::{CompatibleCouple, CpLetter, SignPattern};
use crate::exactpoly::{
    derivative_chain_scp, moduli_order, signed_root_counts, ModLetter, ModuliOrder, PolyError,
    SignedRootCount, UniPoly,
};
use crate::scp::Scp;

pub use canonical::{canonical_order, is_canonical_cp, is_canonical_pattern, order_compatible};
pub use catalog::{
    catalog, pattern_only_candidates, CatalogOrbit, CatalogScp, CatalogSource, NonRealizableCatalog,
    ResearchEntry,
};
pub use search::{realize, realize_couple, realize_order, realize_scp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("catalog is only available for degrees 1..=6, not {0}")]
    UnsupportedDegree(usize),
    #[error("{0}")]
    NotApplicable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealizationTarget {
    Couple(CompatibleCouple),
    Scp { scp: Scp },
    #[serde(rename = "order")]
    OrderCouple { pattern: SignPattern, order: ModuliOrder },
}

impl RealizationTarget {
    pub fn order_couple(pattern: SignPattern, order: ModuliOrder) -> Result<Self, RealizeError> {
        let t = RealizationTarget::OrderCouple { pattern, order };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), RealizeError> {
        match self {
            RealizationTarget::Couple(_) => Ok(()),
            RealizationTarget::Scp { scp } => {
                if scp.is_valid() {
                    Ok(())
                } else {
                    Err(RealizeError::InvalidTarget(format!("{scp} is not an SCP")))
                }
            }
            RealizationTarget::OrderCouple { pattern, order } => {
                if order_compatible(pattern, order) {
                    Ok(())
                } else {
                    Err(RealizeError::InvalidTarget(format!(
                        "order {order} is not compatible with {pattern}"
                    )))
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            RealizationTarget::Couple(c) => c.degree(),
            RealizationTarget::Scp { scp } => scp.degree(),
            RealizationTarget::OrderCouple { pattern, .. } => pattern.degree(),
        }
    }

    pub fn pattern(&self) -> SignPattern {
        match self {
            RealizationTarget::Couple(c) => c.pattern().clone(),
            RealizationTarget::Scp { scp } => scp.sign_pattern(),
            RealizationTarget::OrderCouple { pattern, .. } => pattern.clone(),
        }
    }

    /// Image under an involution, if the target kind is closed under it.
    pub fn transformed(&self, inv: Involution) -> Result<Self, RealizeError> {
        Ok(match (self, inv) {
            (RealizationTarget::Couple(c), Involution::Im) => RealizationTarget::Couple(c.im()),
            (RealizationTarget::Couple(c), Involution::Ir) => RealizationTarget::Couple(c.ir()),
            (RealizationTarget::Scp { scp }, Involution::Im) => RealizationTarget::Scp { scp: scp.im() },
            (RealizationTarget::Scp { .. }, Involution::Ir) => {
                return Err(RealizeError::NotApplicable(
                    "i_r does not act on derivative sequences".into(),
                ))
            }
            (RealizationTarget::OrderCouple { pattern, order }, Involution::Im) => {
                RealizationTarget::OrderCouple {
                    pattern: pattern.im(),
                    order: ModuliOrder(
                        order
                            .letters()
                            .iter()
                            .map(|l| match l {
                                ModLetter::P => ModLetter::N,
                                ModLetter::N => ModLetter::P,
                            })
                            .collect(),
                    ),
                }
            }
            (RealizationTarget::OrderCouple { pattern, order }, Involution::Ir) => {
                RealizationTarget::OrderCouple {
                    pattern: pattern.ir(),
                    order: ModuliOrder(order.letters().iter().rev().copied().collect()),
                }
            }
        })
    }
}

impl fmt::Display for RealizationTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationTarget::Couple(c) => write!(f, "couple {c}"),
            RealizationTarget::Scp { scp } => write!(f, "SCP {scp}"),
            RealizationTarget::OrderCouple { pattern, order } => write!(f, "order ({pattern}, {order})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_iterations: u64,
    pub rng_seed: u64,
    pub moduli_exponent_range: (i32, i32),
}

impl SearchBudget {
    pub const DEFAULT_EXPONENTS: (i32, i32) = (-6, 6);

    pub fn new(max_iterations: u64, rng_seed: u64) -> Self {
        SearchBudget {
            max_iterations: max_iterations.max(1),
            rng_seed,
            moduli_exponent_range: Self::DEFAULT_EXPONENTS,
        }
    }

    /// 10^5 iterations for couples and orders, 10^6 for SCPs of degree 6 and up.
    pub fn default_for(target: &RealizationTarget, seed: u64) -> Self {
        let n = match target {
            RealizationTarget::Scp { scp } if scp.degree() >= 6 => 1_000_000,
            _ => 100_000,
        };
        SearchBudget::new(n, seed)
    }

    pub fn with_exponents(mut self, lo: i32, hi: i32) -> Self {
        self.moduli_exponent_range = (lo.min(hi), lo.max(hi));
        self
    }
}

/// Exact facts about a polynomial, recomputed from its coefficients alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pattern: SignPattern,
    pub root_counts: SignedRootCount,
    pub complex_pairs: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub derivative_scp: Option<Scp>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub moduli_order: Option<ModuliOrder>,
}

impl Certificate {
    pub fn compute(poly: &UniPoly, target: &RealizationTarget) -> Result<Self, RealizeError> {
        let d = target.degree();
        if poly.degree() != Some(d) || !poly.is_monic() {
            return Err(RealizeError::Verification(format!(
                "expected a monic polynomial of degree {d}"
            )));
        }
        let pattern = poly
            .sign_pattern()
            .ok_or_else(|| RealizeError::Verification("a coefficient vanishes".into()))?;
        let root_counts = signed_root_counts(poly);
        let complex_pairs = (d - root_counts.real_with_mult()) / 2;
        let derivative_scp = match target {
            RealizationTarget::Scp { .. } => Some(derivative_chain_scp(poly)?),
            _ => None,
        };
        let moduli_order = match target {
            RealizationTarget::OrderCouple { .. } => Some(moduli_order(poly)?),
            _ => None,
        };
        Ok(Certificate {
            pattern,
            root_counts,
            complex_pairs,
            derivative_scp,
            moduli_order,
        })
    }

    pub fn satisfies(&self, target: &RealizationTarget) -> Result<(), RealizeError> {
        let fail = |what: String| Err(RealizeError::Verification(what));
        if self.pattern != target.pattern() {
            return fail(format!("sign pattern {} != {}", self.pattern, target.pattern()));
        }
        match target {
            RealizationTarget::Couple(c) => {
                let rc = &self.root_counts;
                if !rc.all_real_distinct || rc.zero_mult > 0 {
                    return fail("real roots are not simple and nonzero".into());
                }
                if rc.distinct_pair() != c.pair() {
                    return fail(format!("root pair {} != {}", rc.distinct_pair(), c.pair()));
                }
                Ok(())
            }
            RealizationTarget::Scp { scp } => match &self.derivative_scp {
                Some(s) if s == scp => Ok(()),
                Some(s) => fail(format!("derivative chain {s} != {scp}")),
                None => fail("derivative chain missing".into()),
            },
            RealizationTarget::OrderCouple { order, .. } => match &self.moduli_order {
                Some(o) if o == order => Ok(()),
                Some(o) => fail(format!("moduli order {o} != {order}")),
                None => fail("moduli order missing".into()),
            },
        }
    }
}

/// A polynomial together with an exact certificate that it realizes `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    poly: UniPoly,
    target: RealizationTarget,
    certificate: Certificate,
}

impl Witness {
    pub fn new(poly: UniPoly, target: RealizationTarget) -> Result<Self, RealizeError> {
        target.validate()?;
        let certificate = Certificate::compute(&poly, &target)?;
        certificate.satisfies(&target)?;
        Ok(Witness {
            poly,
            target,
            certificate,
        })
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn target(&self) -> &RealizationTarget {
        &self.target
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Recomputes the certificate from the polynomial and checks it.
    pub fn verify(&self) -> Result<(), RealizeError> {
        let fresh = Certificate::compute(&self.poly, &self.target)?;
        if fresh != self.certificate {
            return Err(RealizeError::Verification("stored certificate is stale".into()));
        }
        fresh.satisfies(&self.target)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            poly: UniPoly,
            target: RealizationTarget,
            certificate: Certificate,
        }
        let raw = Raw::deserialize(d)?;
        let w = Witness::new(raw.poly, raw.target).map_err(serde::de::Error::custom)?;
        if w.certificate != raw.certificate {
            return Err(serde::de::Error::custom("certificate does not match polynomial"));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    Im,
    Ir,
}

impl FromStr for Involution {
    type Err = RealizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "im" | "i_m" => Ok(Involution::Im),
            "ir" | "i_r" => Ok(Involution::Ir),
            other => Err(RealizeError::InvalidTarget(format!("unknown involution {other:?}"))),
        }
    }
}

/// Transports a witness along `P(x) -> (-1)^d P(-x)` or `x^d P(1/x) / P(0)`.
pub fn transform_witness(w: &Witness, inv: Involution) -> Result<Witness, RealizeError> {
    let target = w.target.transformed(inv)?;
    let p = &w.poly;
    let poly = match inv {
        Involution::Im => {
            let r = p.reflect();
            if p.deg() % 2 == 1 {
                r.scale(&-crate::rational::Rational::one())
            } else {
                r
            }
        }
        Involution::Ir => {
            let c0 = p.coeff(0);
            if c0.is_zero() {
                return Err(RealizeError::NotApplicable("P(0) = 0".into()));
            }
            p.reversed().scale(&(crate::rational::Rational::one() / c0))
        }
    };
    Witness::new(poly, target)
}

/// Closest attempt seen by an exhausted search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestPartial {
    pub matched: usize,
    pub of: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<UniPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { iterations: u64, witness: Witness },
    Exhausted {
        iterations: u64,
        best_partial: Option<BestPartial>,
        note: String,
    },
}

pub(crate) const EXHAUSTION_NOTE: &str =
    "no witness within budget; this is evidence, not a proof of non-realizability";

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::Exhausted { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.witness().is_some()
    }

    pub fn iterations(&self) -> u64 {
        match self {
            SearchOutcome::Found { iterations, .. } | SearchOutcome::Exhausted { iterations, .. } => {
                *iterations
            }
        }
    }
}

pub(crate) fn cp_to_mod(l: CpLetter) -> ModLetter {
    match l {
        CpLetter::C => ModLetter::P,
        CpLetter::P => ModLetter::N,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::CompatiblePair;
    use crate::rational::{int, rat};

    fn couple(p: &str, pos: usize, neg: usize) -> CompatibleCouple {
        CompatibleCouple::new(p.parse().unwrap(), CompatiblePair::new(pos, neg)).unwrap()
    }

    #[test]
    fn witness_checks_its_target() {
        // (x-1)(x+2)(x+3) = x^3 + 4x^2 + x - 6
        let p = UniPoly::from_i64_desc(&[1, 4, 1, -6]);
        let ok = Witness::new(p.clone(), RealizationTarget::Couple(couple("+++-", 1, 2)));
        assert!(ok.unwrap().verify().is_ok());
        let bad = Witness::new(p, RealizationTarget::Couple(couple("+++-", 1, 0)));
        assert!(matches!(bad, Err(RealizeError::Verification(_))));
    }

    #[test]
    fn order_target_needs_matching_letter_counts() {
        let pat: SignPattern = "+---+".parse().unwrap();
        assert!(RealizationTarget::order_couple(pat.clone(), "PNNP".parse().unwrap()).is_ok());
        assert!(RealizationTarget::order_couple(pat, "PPNP".parse().unwrap()).is_err());
    }

    #[test]
    fn transforms_move_the_certificate() {
        let p = UniPoly::from_roots(&[int(1)], &[int(-2), int(-3)], &[]).unwrap();
        let w = Witness::new(p, RealizationTarget::Couple(couple("+++-", 1, 2))).unwrap();
        let m = transform_witness(&w, Involution::Im).unwrap();
        assert_eq!(m.target(), &RealizationTarget::Couple(couple("+++-", 1, 2).im()));
        let r = transform_witness(&w, Involution::Ir).unwrap();
        assert_eq!(r.poly().coeff(3), int(1));
        assert_eq!(r.poly().coeff(0), rat(-1, 6));
        let back = transform_witness(&m, Involution::Im).unwrap();
        assert_eq!(back.poly(), w.poly());
    }

    #[test]
    fn witness_json_round_trip() {
        // (x-1)(x-3)(x^2+1) = x^4 - 4x^3 + 4x^2 - 4x + 3
        let p = UniPoly::from_roots(&[int(1), int(3)], &[], &[(int(0), int(1))]).unwrap();
        let w = Witness::new(p, RealizationTarget::Couple(couple("+-+-+", 2, 0))).unwrap();
        let j = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&j).unwrap();
        assert_eq!(back, w);
        let tampered = j.replacen("\"pos_distinct\":2", "\"pos_distinct\":0", 1);
        assert!(serde_json::from_str::<Witness>(&tampered).is_err());
    }
}
