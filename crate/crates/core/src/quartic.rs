//! Monic quartics `x^4 + b3 x^3 + b2 x^2 + b1 x + b0` in the orthants of the
//! sign patterns `(+,-,-,-,+)` and `(+,-,-,+,+)` and on their common wall
//! `b1 = 0`: exact region labels, the parametrized families of polynomials
//! with a double root, and grid slices for plotting.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{signed_root_counts, sylvester_resultant, UniPoly};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuarticError {
    #[error("parameters outside the domain of {generator}: {condition} fails")]
    Domain {
        generator: &'static str,
        condition: &'static str,
    },
    #[error("bad slice specification: {0}")]
    Slice(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticPoint {
    #[serde(with = "crate::rational::serde_str")]
    pub b3: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b2: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b1: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b0: Rational,
}

impl QuarticPoint {
    pub fn new(b3: Rational, b2: Rational, b1: Rational, b0: Rational) -> Self {
        QuarticPoint { b3, b2, b1, b0 }
    }

    pub fn from_i64(b3: i64, b2: i64, b1: i64, b0: i64) -> Self {
        QuarticPoint::new(int(b3), int(b2), int(b1), int(b0))
    }

    /// `None` unless `p` is monic of degree 4.
    pub fn from_poly(p: &UniPoly) -> Option<Self> {
        (p.degree() == Some(4) && p.is_monic())
            .then(|| QuarticPoint::new(p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)))
    }

    pub fn poly(&self) -> UniPoly {
        UniPoly::from_ascending(vec![
            self.b0.clone(),
            self.b1.clone(),
            self.b2.clone(),
            self.b3.clone(),
            Rational::one(),
        ])
    }

    pub fn get(&self, c: Coord) -> &Rational {
        match c {
            Coord::B3 => &self.b3,
            Coord::B2 => &self.b2,
            Coord::B1 => &self.b1,
            Coord::B0 => &self.b0,
        }
    }

    fn set(&mut self, c: Coord, v: Rational) {
        match c {
            Coord::B3 => self.b3 = v,
            Coord::B2 => self.b2 = v,
            Coord::B1 => self.b1 = v,
            Coord::B0 => self.b0 = v,
        }
    }

    fn orthant(&self) -> Orthant {
        let s = |r: &Rational| {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        };
        match (s(&self.b3), s(&self.b2), s(&self.b1), s(&self.b0)) {
            (-1, -1, -1, 1) => Orthant::Sigma131,
            (-1, -1, 1, 1) => Orthant::Sigma122,
            (-1, -1, 0, 1) => Orthant::Wall,
            _ => Orthant::Outside,
        }
    }
}

impl fmt::Display for QuarticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

enum Orthant {
    Sigma131,
    Sigma122,
    Wall,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionLabel {
    R0,
    R1,
    R2,
    R01,
    R12,
    Rd0,
    Rd1plus,
    Rd1minus,
    Rd2,
    Lplus,
    Lminus,
    Mset,
    R0_01,
    R0_12,
    Other,
}

impl RegionLabel {
    pub fn name(self) -> &'static str {
        match self {
            RegionLabel::R0 => "R0",
            RegionLabel::R1 => "R1",
            RegionLabel::R2 => "R2",
            RegionLabel::R01 => "R01",
            RegionLabel::R12 => "R12",
            RegionLabel::Rd0 => "Rd0",
            RegionLabel::Rd1plus => "Rd1plus",
            RegionLabel::Rd1minus => "Rd1minus",
            RegionLabel::Rd2 => "Rd2",
            RegionLabel::Lplus => "Lplus",
            RegionLabel::Lminus => "Lminus",
            RegionLabel::Mset => "Mset",
            RegionLabel::R0_01 => "R0_01",
            RegionLabel::R0_12 => "R0_12",
            RegionLabel::Other => "Other",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a quartic sits relative to `Res(Q, Q') = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscriminantMembership {
    OffD4,
    /// Signs (`1`, `-1`, or `0` for a zero root) of the distinct real
    /// multiple roots, increasing.
    OnD4RealDouble { signs: Vec<i8> },
    OnDelta2ComplexDouble,
}

/// Monic `gcd(Q, Q')`; the constant `1` when `Q` is square-free.
fn repeated_part(q: &UniPoly) -> UniPoly {
    q.gcd(&q.derivative())
}

pub fn discriminant_membership(q: &QuarticPoint) -> DiscriminantMembership {
    let p = q.poly();
    if !sylvester_resultant(&p, &p.derivative()).is_zero() {
        return DiscriminantMembership::OffD4;
    }
    let g = repeated_part(&p);
    let c = signed_root_counts(&g);
    if c.pos_distinct + c.neg_distinct + usize::from(c.zero_mult > 0) == 0 {
        return DiscriminantMembership::OnDelta2ComplexDouble;
    }
    let mut signs = vec![-1i8; c.neg_distinct];
    if c.zero_mult > 0 {
        signs.push(0);
    }
    signs.extend(std::iter::repeat(1).take(c.pos_distinct));
    DiscriminantMembership::OnD4RealDouble { signs }
}

/// Sign of the single multiple root, when `Q` has exactly one and it is a
/// nonzero real double root.
fn single_double_root_sign(p: &UniPoly) -> Option<i8> {
    let g = repeated_part(p);
    if g.deg() != 1 {
        return None;
    }
    let r = -g.coeff(0);
    if r.is_zero() {
        None
    } else if r.is_positive() {
        Some(1)
    } else {
        Some(-1)
    }
}

/// `gcd = (x - r)(x + s)` with `r, s > 0`.
fn opposite_double_roots(p: &UniPoly) -> bool {
    let g = repeated_part(p);
    if g.deg() != 2 {
        return false;
    }
    let c = signed_root_counts(&g);
    c.pos_distinct == 1 && c.neg_distinct == 1
}

pub fn classify(q: &QuarticPoint) -> RegionLabel {
    let orthant = q.orthant();
    if matches!(orthant, Orthant::Outside) {
        return RegionLabel::Other;
    }
    let p = q.poly();
    let on_discriminant = sylvester_resultant(&p, &p.derivative()).is_zero();
    if !on_discriminant {
        let c = signed_root_counts(&p);
        let complex_pairs = (4 - c.pos_distinct - c.neg_distinct) / 2;
        return match (orthant, complex_pairs) {
            (Orthant::Sigma131, 0) => RegionLabel::R0,
            (Orthant::Sigma131, 1) => RegionLabel::R1,
            (Orthant::Sigma131, _) => RegionLabel::R2,
            (Orthant::Sigma122, 0) => RegionLabel::Rd0,
            (Orthant::Sigma122, 1) if c.pos_distinct == 2 => RegionLabel::Rd1plus,
            (Orthant::Sigma122, 1) => RegionLabel::Rd1minus,
            (Orthant::Sigma122, _) => RegionLabel::Rd2,
            _ => RegionLabel::Other,
        };
    }
    let double = single_double_root_sign(&p);
    match (orthant, double) {
        (Orthant::Sigma131, Some(-1)) => RegionLabel::R01,
        (Orthant::Sigma131, Some(1)) => RegionLabel::R12,
        (Orthant::Sigma122, Some(1)) => RegionLabel::Lplus,
        (Orthant::Sigma122, Some(-1)) => RegionLabel::Lminus,
        (Orthant::Sigma122, None) if opposite_double_roots(&p) => RegionLabel::Mset,
        (Orthant::Wall, Some(-1)) => RegionLabel::R0_01,
        (Orthant::Wall, Some(1)) => RegionLabel::R0_12,
        _ => RegionLabel::Other,
    }
}

fn require(ok: bool, generator: &'static str, condition: &'static str) -> Result<(), QuarticError> {
    if ok {
        Ok(())
    } else {
        Err(QuarticError::Domain {
            generator,
            condition,
        })
    }
}

fn quadratic(c1: Rational, c0: Rational) -> UniPoly {
    UniPoly::from_ascending(vec![c0, c1, Rational::one()])
}

fn product(p: UniPoly, q: UniPoly) -> QuarticPoint {
    QuarticPoint::from_poly(&(&p * &q)).expect("product of two monic quadratics")
}

fn half(r: &Rational) -> Rational {
    r / int(2)
}

fn quarter(r: Rational) -> Rational {
    r / int(4)
}

/// `(x + a/2)^2 (x^2 - f x + g)`, `0 < a < f`, `0 < g < min(f^2/4, af/4)`.
pub fn param_q4_minus(a: &Rational, f: &Rational, g: &Rational) -> Result<QuarticPoint, QuarticError> {
    const NAME: &str = "Q4*-";
    require(a.is_positive() && a < f, NAME, "0 < a < f")?;
    let bound = quarter(f * f).min(quarter(a * f));
    require(g.is_positive() && *g < bound, NAME, "0 < g < min(f^2/4, af/4)")?;
    Ok(family_minus(a, f, g))
}

/// `(x - f/2)^2 (x^2 + a x + b)`, `0 < f`, `f/3 < a < f`, `af/4 < b < af - f^2/4`.
pub fn param_q4_plus(a: &Rational, f: &Rational, b: &Rational) -> Result<QuarticPoint, QuarticError> {
    const NAME: &str = "Q4*+";
    require(f.is_positive(), NAME, "0 < f")?;
    require(f / int(3) < *a && a < f, NAME, "f/3 < a < f")?;
    require(
        quarter(a * f) < *b && *b < a * f - quarter(f * f),
        NAME,
        "af/4 < b < af - f^2/4",
    )?;
    Ok(family_plus(a, f, b))
}

/// `(x + a/2)^2 (x^2 - f x + g)`, `0 < a < f`, `af/4 < g < af - a^2/4`.
pub fn param_lminus(a: &Rational, f: &Rational, g: &Rational) -> Result<QuarticPoint, QuarticError> {
    const NAME: &str = "L-";
    require(a.is_positive() && a < f, NAME, "0 < a < f")?;
    require(
        quarter(a * f) < *g && *g < a * f - quarter(a * a),
        NAME,
        "af/4 < g < af - a^2/4",
    )?;
    Ok(family_minus(a, f, g))
}

/// `(x - f/2)^2 (x^2 + a x + b)`, `f/4 < a < f`, `0 < b < min(af - f^2/4, af/4)`.
pub fn param_lplus(a: &Rational, f: &Rational, b: &Rational) -> Result<QuarticPoint, QuarticError> {
    const NAME: &str = "L+";
    require(f / int(4) < *a && a < f, NAME, "f/4 < a < f")?;
    let bound = (a * f - quarter(f * f)).min(quarter(a * f));
    require(b.is_positive() && *b < bound, NAME, "0 < b < min(af - f^2/4, af/4)")?;
    Ok(family_plus(a, f, b))
}

/// `x^4 + 2(r-h)x^3 + (h^2-4rh+r^2)x^2 + 2rh(h-r)x + r^2h^2 = (x + r)^2 (x - h)^2`,
/// `0 < r < h`, `h^2 - 4rh + r^2 < 0`.
pub fn param_m(r: &Rational, h: &Rational) -> Result<QuarticPoint, QuarticError> {
    const NAME: &str = "M";
    require(r.is_positive() && r < h, NAME, "0 < r < h")?;
    require(
        (h * h - int(4) * r * h + r * r).is_negative(),
        NAME,
        "h^2 - 4rh + r^2 < 0",
    )?;
    let pr = UniPoly::linear_root(&-r.clone()).pow(2);
    let ph = UniPoly::linear_root(h).pow(2);
    Ok(product(pr, ph))
}

/// `Q4*-` on its wall `g = af/4`, where the coefficient of `x` vanishes.
pub fn q4_minus_on_wall(a: &Rational, f: &Rational) -> Result<QuarticPoint, QuarticError> {
    require(a.is_positive() && a < f, "Q4*- on g = af/4", "0 < a < f")?;
    Ok(family_minus(a, f, &quarter(a * f)))
}

/// `Q4*+` on its wall `b = af/4`.
pub fn q4_plus_on_wall(a: &Rational, f: &Rational) -> Result<QuarticPoint, QuarticError> {
    require(
        f.is_positive() && f / int(3) < *a && a < f,
        "Q4*+ on b = af/4",
        "0 < f, f/3 < a < f",
    )?;
    Ok(family_plus(a, f, &quarter(a * f)))
}

fn family_minus(a: &Rational, f: &Rational, g: &Rational) -> QuarticPoint {
    product(
        UniPoly::linear_root(&-half(a)).pow(2),
        quadratic(-f.clone(), g.clone()),
    )
}

fn family_plus(a: &Rational, f: &Rational, b: &Rational) -> QuarticPoint {
    product(
        UniPoly::linear_root(&half(f)).pow(2),
        quadratic(a.clone(), b.clone()),
    )
}

/// `T_0 = (x - 2)^2 (x + 1)^2`.
pub fn t0() -> QuarticPoint {
    QuarticPoint::from_i64(-2, -3, 4, 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coord {
    B3,
    B2,
    B1,
    B0,
}

impl FromStr for Coord {
    type Err = QuarticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "b3" => Ok(Coord::B3),
            "b2" => Ok(Coord::B2),
            "b1" => Ok(Coord::B1),
            "b0" => Ok(Coord::B0),
            other => Err(QuarticError::Slice(format!("unknown coefficient {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    pub coord: Coord,
    pub lo: Rational,
    pub hi: Rational,
    pub steps: usize,
}

impl Axis {
    /// `steps` equally spaced nodes from `lo` to `hi` inclusive.
    pub fn nodes(&self) -> Vec<Rational> {
        let n = self.steps as i64 - 1;
        (0..=n)
            .map(|k| &self.lo + (&self.hi - &self.lo) * Rational::new(k.into(), n.into()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceSpec {
    pub fixed: [(Coord, Rational); 2],
    pub vary: [Axis; 2],
}

fn split_assign(item: &str) -> Result<(Coord, &str), QuarticError> {
    let (k, v) = item
        .split_once('=')
        .ok_or_else(|| QuarticError::Slice(format!("expected name=value, got {item:?}")))?;
    Ok((k.parse()?, v))
}

fn rational_arg(s: &str) -> Result<Rational, QuarticError> {
    parse_rational(s).map_err(|e| QuarticError::Slice(e.to_string()))
}

impl SliceSpec {
    /// `fix = "b3=-2,b0=4"`, `vary = "b2=-5:-1:5,b1=2:6:5"` (`lo:hi:steps`).
    pub fn parse(fix: &str, vary: &str) -> Result<Self, QuarticError> {
        let fixed: Vec<(Coord, Rational)> = fix
            .split(',')
            .map(|item| {
                let (c, v) = split_assign(item)?;
                Ok((c, rational_arg(v)?))
            })
            .collect::<Result<_, QuarticError>>()?;
        let axes: Vec<Axis> = vary
            .split(',')
            .map(|item| {
                let (coord, v) = split_assign(item)?;
                let parts: Vec<&str> = v.split(':').collect();
                if parts.len() != 3 {
                    return Err(QuarticError::Slice(format!("expected lo:hi:steps, got {v:?}")));
                }
                let steps = parts[2]
                    .trim()
                    .parse()
                    .map_err(|_| QuarticError::Slice(format!("bad step count {:?}", parts[2])))?;
                Ok(Axis {
                    coord,
                    lo: rational_arg(parts[0])?,
                    hi: rational_arg(parts[1])?,
                    steps,
                })
            })
            .collect::<Result<_, QuarticError>>()?;
        let fixed: [(Coord, Rational); 2] = fixed
            .try_into()
            .map_err(|_| QuarticError::Slice("exactly two fixed coefficients required".into()))?;
        let vary: [Axis; 2] = axes
            .try_into()
            .map_err(|_| QuarticError::Slice("exactly two varying coefficients required".into()))?;
        let spec = SliceSpec { fixed, vary };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), QuarticError> {
        let mut seen: Vec<Coord> = self.fixed.iter().map(|f| f.0).collect();
        seen.extend(self.vary.iter().map(|a| a.coord));
        for i in 0..4 {
            if seen[i + 1..].contains(&seen[i]) {
                return Err(QuarticError::Slice("each coefficient must appear once".into()));
            }
        }
        if self.vary.iter().any(|a| a.steps < 2) {
            return Err(QuarticError::Slice("resolution must be at least 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRow {
    #[serde(with = "crate::rational::serde_str")]
    pub coord1: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub coord2: Rational,
    pub label: RegionLabel,
}

/// Exact labels on the grid, first varying coefficient outermost.
pub fn slice_grid(spec: &SliceSpec) -> Result<Vec<SliceRow>, QuarticError> {
    spec.validate()?;
    let mut base = QuarticPoint::from_i64(0, 0, 0, 0);
    for (c, v) in &spec.fixed {
        base.set(*c, v.clone());
    }
    let xs = spec.vary[0].nodes();
    let ys = spec.vary[1].nodes();
    let rows: Vec<Vec<SliceRow>> = xs
        .par_iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    let mut q = base.clone();
                    q.set(spec.vary[0].coord, x.clone());
                    q.set(spec.vary[1].coord, y.clone());
                    SliceRow {
                        coord1: x.clone(),
                        coord2: y.clone(),
                        label: classify(&q),
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn slice_csv(rows: &[SliceRow]) -> String {
    let mut out = String::from("coord1,coord2,label\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            format_rational(&r.coord1),
            format_rational(&r.coord2),
            r.label
        ));
    }
    out
}
