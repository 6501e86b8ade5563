//! The quintic `W = (x+1)(x+a)(x+b)(x-f)(x-g)`, its primitive `M` with
//! `M(-1) = 0`, the closed forms derived from `M`, and exact sampling of the
//! sign claims on the admissible region `0 < f < b < a < 1`, `g > 1+a+(b-f)`.
//!
//! Every closed form below is stored as text and parsed, so a typo in a
//! constant shows up as a failed identity rather than a silent fix.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::multipoly::{MultiPoly, Var};
use super::parse::parse;
use crate::rational::{format_rational, int, snap_dyadic, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("parameters (a,b,f,g) = ({0}) are not admissible")]
    Inadmissible(String),
    #[error("critical levels are not pairwise distinct")]
    DegenerateLevels,
}

pub const R: &str = "10abf-5abg+5afg-3ag^2+5bfg-3bg^2+3fg^2-2g^3+5ab-5af+4ag-5bf+4bg-4fg+3g^2-3a-3b+3f-3g+2";
pub const M_AT_BOUNDARY: &str = "-(2+a)^3a(a^2-3b^2+a+1)/12";
pub const M_STAR: &str = "30abf-20abg+20afg-15ag^2+20bfg-15bg^2+15fg^2-12g^3+10ab-10af+10ag-10bf+10bg-10fg+9g^2-5a-5b+5f-6g+3";
pub const NEG_M_STAR_AT: &str = "35a^2(b-f)+27a^3+47a^2-50abf-10fb+30a(b-f)+34a+10(b-f)+6";
pub const D_M_STAR_DG: &str = "-20a(b-f)-30ag+20bf-30g(b-f)-36g^2+10a+18g-6+10(b-f)";
pub const M_TILDE_FACTOR: &str = "10ab+5a(g-1)+5b(g-1)+(3g^2-4g+3)";
pub const V: &str = "3ab^2+5abf-4abg-5afg+3ag^2-2b^3-3b^2f+3b^2g+4bfg-3g^2b-3fg^2+2g^3-5ab-10fa+5ga+3b^2+5fb-4gb-5gf+3g^2";
pub const V_AT: &str = "5((a-b)^3+(4a-3b)(a-b)+4a+1-2ab-3b)";
pub const DV_DG: &str = "-4ab-5af+6ag+3b^2+4bf-6bg-6fg+6g^2+5a-4b-5f+6g";
pub const DV_DG_AT: &str = "(12a^2+12-10ab-11af)+3b^2+4bf+(29a-10b-11f)";
pub const D2V_DG2: &str = "6(a-b)+6(1-f)+12g";
pub const H: &str = "5a(b-g)-3b^2+4bg-3g^2-10a+5(b-g)";

fn p(text: &str) -> MultiPoly {
    parse(text).expect("built-in formula parses")
}

fn var(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

pub fn build_w() -> MultiPoly {
    let x = var(Var::X);
    [
        &x + &MultiPoly::int(1),
        &x + &var(Var::A),
        &x + &var(Var::B),
        &x - &var(Var::F),
        &x - &var(Var::G),
    ]
    .iter()
    .fold(MultiPoly::int(1), |acc, f| &acc * f)
}

/// `∫_{-1}^x W(t) dt`.
pub fn build_m() -> MultiPoly {
    let prim = build_w().integral(Var::X);
    &prim - &prim.substitute_value(Var::X, &int(-1))
}

struct Derived {
    m: MultiPoly,
    m_g: MultiPoly,
    m_neg_b: MultiPoly,
    m_star: MultiPoly,
    h: MultiPoly,
    dv_dg_fb: MultiPoly,
}

fn derived() -> &'static Derived {
    static CELL: OnceLock<Derived> = OnceLock::new();
    CELL.get_or_init(|| {
        let m = build_m();
        let m_g = m.substitute(Var::X, &var(Var::G));
        let m_neg_b = m.substitute(Var::X, &-&var(Var::B));
        let dv_dg_fb = p(V).derivative(Var::G).substitute(Var::F, &var(Var::B));
        Derived {
            m,
            m_g,
            m_neg_b,
            m_star: p(M_STAR),
            h: p(H),
            dv_dg_fb,
        }
    })
}

pub fn verify_identity(lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
    (lhs - rhs).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    /// Part of the minimal set that must hold for the certificate.
    pub core: bool,
    /// `lhs - rhs`, present only on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

fn check(name: &str, statement: &str, core: bool, lhs: MultiPoly, rhs: MultiPoly) -> IdentityCheck {
    let diff = &lhs - &rhs;
    IdentityCheck {
        name: name.to_string(),
        statement: statement.to_string(),
        holds: diff.is_zero(),
        core,
        difference: (!diff.is_zero()).then(|| diff.to_string()),
    }
}

fn at_boundary(q: &MultiPoly) -> MultiPoly {
    q.substitute(Var::G, &p("1+a"))
}

fn sixty(q: &MultiPoly) -> MultiPoly {
    q.scale(&int(60))
}

/// Identities that do not involve a derivative in a parameter.
pub fn closed_form_identities() -> Vec<IdentityCheck> {
    let d = derived();
    let w = build_w();
    let v = p(V);
    vec![
        check(
            "M_lower_bound",
            "M(-1) = 0",
            false,
            d.m.substitute_value(Var::X, &int(-1)),
            MultiPoly::zero(),
        ),
        check("M_primitive", "dM/dx = W", false, d.m.derivative(Var::X), w),
        check(
            "M_g_R",
            "60 M(g) = (g+1)^3 R",
            true,
            sixty(&d.m_g),
            &p("(g+1)^3") * &p(R),
        ),
        check(
            "M_g_boundary",
            "M(g)|_{g=1+a,f=b} = -(2+a)^3 a (a^2-3b^2+a+1)/12",
            true,
            at_boundary(&d.m_g).substitute(Var::F, &var(Var::B)),
            p(M_AT_BOUNDARY),
        ),
        check(
            "M_diamond_V",
            "60 (M(g) - M(-b)) = -(b+g)^3 V",
            true,
            sixty(&(&d.m_g - &d.m_neg_b)),
            -&(&p("(b+g)^3") * &v),
        ),
        check(
            "V_boundary",
            "V|_{g=1+a,f=b} = 5((a-b)^3+(4a-3b)(a-b)+4a+1-2ab-3b)",
            false,
            at_boundary(&v).substitute(Var::F, &var(Var::B)),
            p(V_AT),
        ),
    ]
}

/// Identities for the parameter derivatives of `M(g)` and `V`.
pub fn verify_derivative_formulas() -> Vec<IdentityCheck> {
    let d = derived();
    let v = p(V);
    let m_dagger = d.m_g.derivative(Var::G);
    let dv_dg = v.derivative(Var::G);
    vec![
        check(
            "M_dagger",
            "60 dM(g)/dg = (g+1)^2 M*",
            true,
            sixty(&m_dagger),
            &p("(g+1)^2") * &d.m_star,
        ),
        check(
            "M_star_boundary",
            "-M*|_{g=1+a} = 35a^2(b-f)+27a^3+47a^2-50abf-10fb+30a(b-f)+34a+10(b-f)+6",
            false,
            -&at_boundary(&d.m_star),
            p(NEG_M_STAR_AT),
        ),
        check(
            "M_star_dg",
            "dM*/dg = -20a(b-f)-30ag+20bf-30g(b-f)-36g^2+10a+18g-6+10(b-f)",
            false,
            d.m_star.derivative(Var::G),
            p(D_M_STAR_DG),
        ),
        check(
            "M_tilde",
            "60 dM(g)/df = (g+1)^3 (10ab+5a(g-1)+5b(g-1)+(3g^2-4g+3))",
            true,
            sixty(&d.m_g.derivative(Var::F)),
            &p("(g+1)^3") * &p(M_TILDE_FACTOR),
        ),
        check("V_dg", "dV/dg as printed", false, dv_dg.clone(), p(DV_DG)),
        check(
            "V_dg_boundary",
            "dV/dg|_{g=1+a} = (12a^2+12-10ab-11af)+3b^2+4bf+(29a-10b-11f)",
            false,
            at_boundary(&dv_dg),
            p(DV_DG_AT),
        ),
        check(
            "V_dgg",
            "d^2V/dg^2 = 6(a-b)+6(1-f)+12g",
            true,
            dv_dg.derivative(Var::G),
            p(D2V_DG2),
        ),
        check("V_df_H", "dV/df = H", true, v.derivative(Var::F), d.h.clone()),
        check(
            "M_diamond_df_H",
            "d(M(g) - M(-b))/df = -(b+g)^3 H/60",
            true,
            (&d.m_g - &d.m_neg_b).derivative(Var::F),
            (&p("(b+g)^3") * &d.h).scale(&Rational::new((-1).into(), 60.into())),
        ),
    ]
}

/// How the printed relation `dV/df = -(b+g)^3 H/60` compares with the
/// engine's own derivatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRelation {
    pub printed_form_holds_for_v: bool,
    pub dv_df_equals_h: bool,
    pub printed_form_holds_for_m_diamond: bool,
    /// `dV/df - (-(b+g)^3 H/60)`.
    pub printed_form_difference: String,
}

pub fn h_relation() -> HRelation {
    let d = derived();
    let printed = (&p("(b+g)^3") * &d.h).scale(&Rational::new((-1).into(), 60.into()));
    let dv_df = p(V).derivative(Var::F);
    let dmd_df = (&d.m_g - &d.m_neg_b).derivative(Var::F);
    HRelation {
        printed_form_holds_for_v: verify_identity(&dv_df, &printed),
        dv_df_equals_h: verify_identity(&dv_df, &d.h),
        printed_form_holds_for_m_diamond: verify_identity(&dmd_df, &printed),
        printed_form_difference: (&dv_df - &printed).to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identities: Vec<IdentityCheck>,
    pub h_relation: HRelation,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.identities.iter().find(|c| c.name == name)
    }
}

pub fn verify_identities() -> IdentityReport {
    let mut identities = closed_form_identities();
    identities.extend(verify_derivative_formulas());
    IdentityReport {
        identities,
        h_relation: h_relation(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamPoint {
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub f: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub g: Rational,
}

impl ParamPoint {
    pub fn new(a: Rational, b: Rational, f: Rational, g: Rational) -> Result<Self, TheoremError> {
        let pt = ParamPoint { a, b, f, g };
        if !pt.is_admissible() {
            return Err(TheoremError::Inadmissible(pt.describe()));
        }
        Ok(pt)
    }

    pub fn is_admissible(&self) -> bool {
        let zero = Rational::zero();
        let one = Rational::one();
        zero < self.f
            && self.f < self.b
            && self.b < self.a
            && self.a < one
            && self.g > &one + &self.a + (&self.b - &self.f)
    }

    fn describe(&self) -> String {
        [&self.a, &self.b, &self.f, &self.g]
            .iter()
            .map(|r| format_rational(r))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn values(&self, x: Rational) -> [Rational; 5] {
        [self.a.clone(), self.b.clone(), self.f.clone(), self.g.clone(), x]
    }

    fn with_f(&self, f: Rational) -> ParamPoint {
        ParamPoint { f, ..self.clone() }
    }
}

const GRID: u64 = 1024;

/// Admissible points: `f < b < a` from the grid `k/1024`, and
/// `g = 1 + a + (b - f) + δ` with `δ = 2^e`, `e` uniform in `[-10, 6]`,
/// snapped to a dyadic rational.
pub fn sample_points(n: usize, seed: u64) -> Vec<ParamPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut k: Vec<u64> = rand::seq::index::sample(&mut rng, (GRID - 1) as usize, 3)
            .into_iter()
            .map(|i| i as u64 + 1)
            .collect();
        k.sort_unstable();
        let r = |i: u64| Rational::new((i as i64).into(), (GRID as i64).into());
        let (f, b, a) = (r(k[0]), r(k[1]), r(k[2]));
        let e: f64 = rng.gen_range(-10.0..=6.0);
        let delta = 2f64.powf(e);
        let delta = snap_dyadic(delta, delta * 1e-6);
        let g = int(1) + &a + (&b - &f) + delta;
        if let Ok(pt) = ParamPoint::new(a, b, f, g) {
            out.push(pt);
        }
    }
    out
}

/// `ℓ(ξ_j) = M(ξ_j)` at `ξ = (-1, -a, -b, f, g)`; the additive constant of the
/// primitive is fixed to zero by `M(-1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalLevels {
    #[serde(with = "crate::rational::serde_vec")]
    pub levels: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub c: Rational,
}

impl CriticalLevels {
    /// `0 = ℓ1 < ℓ2 > ℓ3 < ℓ4 > ℓ5`.
    pub fn alternates(&self) -> bool {
        let l = &self.levels;
        l[0].is_zero() && l[0] < l[1] && l[1] > l[2] && l[2] < l[3] && l[3] > l[4]
    }

    /// `ℓ5 < min(ℓ1, ℓ3)`.
    pub fn fifth_below(&self) -> bool {
        let l = &self.levels;
        l[4] < l[0] && l[4] < l[2]
    }
}

pub fn critical_levels(pt: &ParamPoint) -> Result<CriticalLevels, TheoremError> {
    if !pt.is_admissible() {
        return Err(TheoremError::Inadmissible(pt.describe()));
    }
    let mx = derived().m.at_params(&pt.a, &pt.b, &pt.f, &pt.g);
    let xi = [int(-1), -pt.a.clone(), -pt.b.clone(), pt.f.clone(), pt.g.clone()];
    let levels: Vec<Rational> = xi.iter().map(|x| mx.evaluate(x)).collect();
    for i in 0..5 {
        for j in i + 1..5 {
            if levels[i] == levels[j] {
                return Err(TheoremError::DegenerateLevels);
            }
        }
    }
    Ok(CriticalLevels {
        levels,
        c: Rational::zero(),
    })
}

pub const CLAIMS: [&str; 8] = [
    "M(g) < 0",
    "M(g) < M(-b)",
    "M* < 0",
    "M*|_{f=b} < 0",
    "H < 0",
    "dV/dg|_{f=b} > 0",
    "0 = l1 < l2 > l3 < l4 > l5",
    "l5 < min(l1, l3)",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimTally {
    pub claim: String,
    pub checked: usize,
    pub violations: usize,
    /// First violating sample, in sample order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<ParamPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignClaimReport {
    pub samples: usize,
    pub seed: u64,
    /// Samples with coinciding critical levels; excluded from the level claims.
    pub degenerate: usize,
    pub claims: Vec<ClaimTally>,
}

impl SignClaimReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.violations == 0)
    }

    pub fn get(&self, claim: &str) -> Option<&ClaimTally> {
        self.claims.iter().find(|c| c.claim == claim)
    }
}

/// `None` marks a claim not checked at this point.
fn evaluate_claims(pt: &ParamPoint) -> [Option<bool>; 8] {
    let d = derived();
    let vals = pt.values(Rational::zero());
    let fb = pt.with_f(pt.b.clone()).values(Rational::zero());
    let m_g = d.m_g.evaluate(&vals);
    let m_nb = d.m_neg_b.evaluate(&vals);
    let levels = critical_levels(pt).ok();
    [
        Some(m_g < Rational::zero()),
        Some(m_g < m_nb),
        Some(d.m_star.evaluate(&vals) < Rational::zero()),
        Some(d.m_star.evaluate(&fb) < Rational::zero()),
        Some(d.h.evaluate(&vals) < Rational::zero()),
        Some(d.dv_dg_fb.evaluate(&vals) > Rational::zero()),
        levels.as_ref().map(|l| l.alternates()),
        levels.as_ref().map(|l| l.fifth_below()),
    ]
}

pub fn check_points(points: &[ParamPoint], seed: u64) -> SignClaimReport {
    let results: Vec<[Option<bool>; 8]> = points.par_iter().map(evaluate_claims).collect();
    let mut claims: Vec<ClaimTally> = CLAIMS
        .iter()
        .map(|c| ClaimTally {
            claim: c.to_string(),
            checked: 0,
            violations: 0,
            counterexample: None,
        })
        .collect();
    let mut degenerate = 0;
    for (pt, res) in points.iter().zip(&results) {
        if res[6].is_none() {
            degenerate += 1;
        }
        for (tally, r) in claims.iter_mut().zip(res) {
            if let Some(ok) = r {
                tally.checked += 1;
                if !ok {
                    tally.violations += 1;
                    tally.counterexample.get_or_insert_with(|| pt.clone());
                }
            }
        }
    }
    SignClaimReport {
        samples: points.len(),
        seed,
        degenerate,
        claims,
    }
}

pub fn check_sign_claims(samples: usize, seed: u64) -> SignClaimReport {
    check_points(&sample_points(samples.max(1), seed), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn example() -> ParamPoint {
        ParamPoint::new(rat(1, 2), rat(1, 3), rat(1, 4), int(2)).unwrap()
    }

    #[test]
    fn m_basics() {
        let m = build_m();
        assert!(m.substitute_value(Var::X, &int(-1)).is_zero());
        assert_eq!(m.derivative(Var::X), build_w());
        assert_eq!(m.degree_in(Var::X), 6);
    }

    #[test]
    fn every_identity_holds() {
        let r = verify_identities();
        for c in &r.identities {
            assert!(c.holds, "{}: {:?}", c.name, c.difference);
        }
    }

    #[test]
    fn h_belongs_to_v_and_printed_prefactor_to_m_diamond() {
        let h = h_relation();
        assert!(h.dv_df_equals_h);
        assert!(!h.printed_form_holds_for_v);
        assert!(h.printed_form_holds_for_m_diamond);
    }

    #[test]
    fn literal_m_at_one_plus_a_keeps_g() {
        // Evaluating M at x = 1+a with g still free is not the printed value.
        let lit = build_m()
            .substitute(Var::X, &p("1+a"))
            .substitute(Var::F, &var(Var::B));
        assert!(!verify_identity(&lit, &p(M_AT_BOUNDARY)));
    }

    #[test]
    fn mistyped_formula_is_caught_with_difference() {
        let c = check("t", "t", false, p(R), p("10abf"));
        assert!(!c.holds);
        assert!(c.difference.unwrap().contains("g^3"));
    }

    #[test]
    fn admissibility() {
        assert!(example().is_admissible());
        assert!(matches!(
            ParamPoint::new(rat(1, 2), rat(1, 3), rat(1, 4), int(1)),
            Err(TheoremError::Inadmissible(_))
        ));
        assert!(ParamPoint::new(rat(1, 3), rat(1, 2), rat(1, 4), int(3)).is_err());
    }

    #[test]
    fn example_point_levels() {
        let pt = example();
        let l = critical_levels(&pt).unwrap();
        assert!(l.levels[0].is_zero());
        assert!(l.alternates());
        assert!(l.fifth_below());
        // M evaluated directly from the factored quintic by Boole's rule
        // (exact through degree 5) on [-1, g].
        let w = |t: &Rational| {
            (t + int(1)) * (t + &pt.a) * (t + &pt.b) * (t - &pt.f) * (t - &pt.g)
        };
        let lo = int(-1);
        let hi = pt.g.clone();
        let h = (&hi - &lo) / int(4);
        let node = |k: i64| w(&(&lo + &h * int(k)));
        let boole = &h * rat(2, 45)
            * (int(7) * node(0) + int(32) * node(1) + int(12) * node(2) + int(32) * node(3) + int(7) * node(4));
        assert_eq!(l.levels[4], boole);
        assert!(evaluate_claims(&pt).iter().all(|c| *c == Some(true)));
    }

    #[test]
    fn sampling_is_admissible_and_deterministic() {
        let a = sample_points(50, 3);
        assert!(a.iter().all(ParamPoint::is_admissible));
        assert_eq!(a, sample_points(50, 3));
        let r = check_points(&a, 3);
        assert!(r.all_hold(), "{r:?}");
    }
}
