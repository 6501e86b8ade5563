use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;
use crate::combinatorics::{Sign, SignPattern};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Dense univariate polynomial over the rationals.
///
/// Stored lowest degree first; serialized highest degree first. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_ascending(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        UniPoly::from_ascending(vec![Rational::zero(), Rational::one()])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly::from_ascending(vec![-r.clone(), Rational::one()])
    }

    pub fn from_ascending(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Coefficients given highest degree first.
    pub fn from_descending(mut coeffs: Vec<Rational>) -> Self {
        coeffs.reverse();
        UniPoly::from_ascending(coeffs)
    }

    pub fn from_i64_desc(coeffs: &[i64]) -> Self {
        UniPoly::from_descending(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn ascending(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<Rational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::from_ascending(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        crate::rational::sign(&self.evaluate(x))
    }

    pub fn derivative(&self) -> Self {
        UniPoly::from_ascending(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut v = vec![Rational::zero()];
        v.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / int(i as i64 + 1)),
        );
        UniPoly::from_ascending(v)
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        UniPoly::from_ascending(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^d p(1/x)` for `d = deg p`.
    pub fn reversed(&self) -> Self {
        UniPoly::from_descending(self.coeffs.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UniPoly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_ascending(quot), UniPoly::from_ascending(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of `(x - r)` over real roots and `(x^2 - s x + q)` over
    /// complex pairs with `s^2 < 4q`.
    pub fn from_roots(
        pos_roots: &[Rational],
        neg_roots: &[Rational],
        complex_pairs: &[(Rational, Rational)],
    ) -> Result<UniPoly, PolyError> {
        if let Some(r) = pos_roots.iter().find(|r| !r.is_positive()) {
            return Err(PolyError::InvalidRoot(format!(
                "{} is not positive",
                format_rational(r)
            )));
        }
        if let Some(r) = neg_roots.iter().find(|r| !r.is_negative()) {
            return Err(PolyError::InvalidRoot(format!(
                "{} is not negative",
                format_rational(r)
            )));
        }
        let mut p = UniPoly::one();
        for r in pos_roots.iter().chain(neg_roots) {
            p = &p * &UniPoly::linear_root(r);
        }
        for (s, q) in complex_pairs {
            if s * s >= int(4) * q {
                return Err(PolyError::InvalidPair(format!(
                    "x^2 - ({})x + ({}) has real roots",
                    format_rational(s),
                    format_rational(q)
                )));
            }
            p = &p * &UniPoly::from_ascending(vec![q.clone(), -s.clone(), Rational::one()]);
        }
        Ok(p)
    }

    /// Coefficient sign pattern, normalized so the leading sign is `+`;
    /// `None` if some coefficient vanishes.
    pub fn sign_pattern(&self) -> Option<SignPattern> {
        if self.coeffs.len() < 2 || self.coeffs.iter().any(|c| c.is_zero()) {
            return None;
        }
        let flip = self.leading().is_negative();
        let signs = self
            .coeffs
            .iter()
            .rev()
            .map(|c| {
                let s = if c.is_positive() { Sign::Plus } else { Sign::Minus };
                if flip {
                    s.flip()
                } else {
                    s
                }
            })
            .collect();
        SignPattern::new(signs).ok()
    }

    /// Strict upper bound on the modulus of every complex root.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| (c / &lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({})", format_rational(&a))?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_vec::serialize(&self.descending(), s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c = v
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(UniPoly::from_descending(c))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_ascending((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_ascending((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_ascending(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::from_ascending(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
