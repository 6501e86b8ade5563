use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{CompatibleCouple, CompatiblePair, SignPattern};
use crate::scp::{enumerate_scps, Scp};

use super::search::realize_scp;
use super::{RealizeError, SearchBudget, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogSource {
    /// Published list of non-realizable couple orbits.
    CoupleList,
    /// The SCP's own couple is non-realizable.
    CoupleForced,
    /// The truncated SCP is non-realizable.
    Truncation,
    /// Degree-6 obstruction not implied by couples.
    Obstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogOrbit {
    pub representative: CompatibleCouple,
    pub members: Vec<CompatibleCouple>,
    pub source: CatalogSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogScp {
    pub scp: Scp,
    pub source: CatalogSource,
}

/// Couples and SCPs known not to be realizable, for one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonRealizableCatalog {
    pub degree: usize,
    pub couples: Vec<CatalogOrbit>,
    pub scps: Vec<CatalogScp>,
}

impl NonRealizableCatalog {
    pub fn contains_couple(&self, c: &CompatibleCouple) -> bool {
        self.couples.iter().any(|o| o.members.contains(c))
    }

    pub fn contains_scp(&self, s: &Scp) -> bool {
        self.scps.iter().any(|e| &e.scp == s)
    }

    /// Patterns that occur in a catalogued couple.
    pub fn patterns(&self) -> Vec<SignPattern> {
        let mut v: Vec<SignPattern> = self
            .couples
            .iter()
            .flat_map(|o| o.members.iter().map(|c| c.pattern().clone()))
            .collect();
        v.sort_by_key(|p| p.bitstring());
        v.dedup();
        v
    }
}

fn seeds(d: usize) -> Vec<(&'static [usize], (usize, usize))> {
    match d {
        4 => vec![(&[1, 3, 1], (0, 2))],
        5 => vec![(&[1, 4, 1], (0, 3))],
        6 => vec![
            (&[1, 5, 1], (0, 2)),
            (&[1, 5, 1], (0, 4)),
            (&[4, 1, 2], (2, 0)),
            (&[2, 4, 1], (0, 4)),
        ],
        _ => vec![],
    }
}

fn obstructions(d: usize) -> Vec<Scp> {
    if d != 6 {
        return vec![];
    }
    let s = Scp::from_tuples(&[(0, 2), (2, 3), (1, 3), (1, 2), (1, 1), (1, 0)]).expect("valid");
    vec![s.im(), s]
}

/// The catalog for `1 <= d <= 6`.
///
/// SCP entries are derived: an SCP is listed when its couple is listed, when
/// its truncation is listed one degree down, or when it is one of the two
/// degree-6 obstructions.
pub fn catalog(d: usize) -> Result<NonRealizableCatalog, RealizeError> {
    if !(1..=6).contains(&d) {
        return Err(RealizeError::UnsupportedDegree(d));
    }
    let couples: Vec<CatalogOrbit> = seeds(d)
        .into_iter()
        .map(|(blocks, (p, n))| {
            let pat = SignPattern::from_blocks(blocks).expect("valid blocks");
            let c = CompatibleCouple::new(pat, CompatiblePair::new(p, n)).expect("compatible");
            let orbit = c.orbit();
            CatalogOrbit {
                representative: orbit.representative().clone(),
                members: orbit.members().to_vec(),
                source: CatalogSource::CoupleList,
            }
        })
        .collect();
    let below = if d > 1 { catalog(d - 1)?.scps } else { vec![] };
    let forced = |s: &Scp| couples.iter().any(|o| o.members.contains(&s.couple()));
    let truncated = |s: &Scp| {
        s.truncate()
            .map(|t| below.iter().any(|e| e.scp == t))
            .unwrap_or(false)
    };
    let obs = obstructions(d);
    let mut scps = BTreeMap::new();
    for s in enumerate_scps(d) {
        let source = if forced(&s) {
            CatalogSource::CoupleForced
        } else if obs.contains(&s) {
            CatalogSource::Obstruction
        } else if truncated(&s) {
            CatalogSource::Truncation
        } else {
            continue;
        };
        scps.insert(s.clone(), CatalogScp { scp: s, source });
    }
    Ok(NonRealizableCatalog {
        degree: d,
        couples,
        scps: scps.into_values().collect(),
    })
}

/// An SCP that resisted search although its pattern occurs in no catalogued couple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResearchEntry {
    pub scp: Scp,
    pub pattern: SignPattern,
    pub outcome: SearchOutcome,
}

/// Searches every uncatalogued SCP of degree `d` whose sign pattern is not
/// the pattern of any catalogued couple, and returns the ones the search
/// could not realize. Those are candidates only.
pub fn pattern_only_candidates(d: usize, budget: &SearchBudget) -> Result<Vec<ResearchEntry>, RealizeError> {
    let cat = catalog(d)?;
    let pats = cat.patterns();
    let todo: Vec<Scp> = enumerate_scps(d)
        .into_iter()
        .filter(|s| !cat.contains_scp(s) && !pats.contains(&s.sign_pattern()))
        .collect();
    Ok(todo
        .par_iter()
        .filter_map(|s| {
            let outcome = realize_scp(s, budget);
            (!outcome.is_found()).then(|| ResearchEntry {
                scp: s.clone(),
                pattern: s.sign_pattern(),
                outcome,
            })
        })
        .collect())
}
