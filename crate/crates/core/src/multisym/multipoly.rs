use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exactpoly::UniPoly;
use crate::rational::{format_rational, int, pow, Rational};

/// The five variables of the identity engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A = 0,
    B = 1,
    F = 2,
    G = 3,
    X = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::A, Var::B, Var::F, Var::G, Var::X];

    pub fn name(self) -> char {
        match self {
            Var::A => 'a',
            Var::B => 'b',
            Var::F => 'f',
            Var::G => 'g',
            Var::X => 'x',
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == c)
    }
}

pub type Exponents = [u32; 5];

/// Sparse polynomial in `a, b, f, g, x` with rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so two polynomials
/// are equal exactly when their canonical forms are.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; 5], c);
        p
    }

    pub fn int(c: i64) -> Self {
        MultiPoly::constant(int(c))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v as usize] = 1;
        let mut p = MultiPoly::zero();
        p.add_term(e, Rational::one());
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v as usize]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = MultiPoly::zero();
        for (e, k) in &self.terms {
            out.add_term(*e, k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(MultiPoly::int(1), |acc, _| &acc * self)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = *e;
                ne[i] -= 1;
                out.add_term(ne, c * int(e[i] as i64));
            }
        }
        out
    }

    /// Antiderivative in `v` with no `v`-free constant added.
    pub fn integral(&self, v: Var) -> Self {
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] += 1;
            out.add_term(ne, c / int(ne[i] as i64));
        }
        out
    }

    /// Replaces `v` by the polynomial `by`.
    pub fn substitute(&self, v: Var, by: &MultiPoly) -> Self {
        let i = v as usize;
        let maxd = self.degree_in(v);
        let mut powers = vec![MultiPoly::int(1)];
        for k in 1..=maxd as usize {
            powers.push(&powers[k - 1] * by);
        }
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[i] = 0;
            let mut mono = MultiPoly::zero();
            mono.add_term(rest, c.clone());
            out = &out + &(&mono * &powers[e[i] as usize]);
        }
        out
    }

    pub fn substitute_value(&self, v: Var, val: &Rational) -> Self {
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out.add_term(ne, c * pow(val, e[i]));
        }
        out
    }

    /// Full evaluation; `values` is indexed by [`Var`].
    pub fn evaluate(&self, values: &[Rational; 5]) -> Rational {
        // Reuse powers across terms.
        let mut cache: Vec<Vec<Rational>> = (0..5)
            .map(|i| vec![Rational::one(), values[i].clone()])
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..5 {
                let k = e[i] as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &values[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t *= &cache[i][k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Univariate polynomial in `v` when every other variable is absent.
    pub fn to_univariate(&self, v: Var) -> Option<UniPoly> {
        let i = v as usize;
        let mut coeffs = vec![Rational::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[e[i] as usize] += c;
        }
        Some(UniPoly::from_ascending(coeffs))
    }

    /// Partial evaluation at `a, b, f, g`, leaving a polynomial in `x`.
    pub fn at_params(&self, a: &Rational, b: &Rational, f: &Rational, g: &Rational) -> UniPoly {
        let vals = [a, b, f, g];
        let mut coeffs = vec![Rational::zero(); self.degree_in(Var::X) as usize + 1];
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in vals.iter().enumerate() {
                if e[i] > 0 {
                    t *= pow(v, e[i]);
                }
            }
            coeffs[e[4] as usize] += t;
        }
        UniPoly::from_ascending(coeffs)
    }
}

impl fmt::Display for MultiPoly {
    /// Graded by total degree, highest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[**v as usize] > 0)
                .map(|v| match e[*v as usize] {
                    1 => v.name().to_string(),
                    n => format!("{}^{}", v.name(), n),
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else {
                if !a.is_one() {
                    if a.denom().is_one() {
                        write!(f, "{}*", a.numer())?;
                    } else {
                        write!(f, "({})*", format_rational(&a))?;
                    }
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..5 {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
