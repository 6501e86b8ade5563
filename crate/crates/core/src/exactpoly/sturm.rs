//! Sturm sequences and exact real root counting / isolation.

use num_traits::{Signed, Zero};

use super::UniPoly;
use crate::rational::{int, Rational};

/// An endpoint of a real interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Rational),
}

/// Open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo: Bound::At(lo),
            hi: Bound::At(hi),
        }
    }

    pub fn positive() -> Self {
        Interval {
            lo: Bound::At(Rational::zero()),
            hi: Bound::PosInf,
        }
    }

    pub fn negative() -> Self {
        Interval {
            lo: Bound::NegInf,
            hi: Bound::At(Rational::zero()),
        }
    }

    pub fn real_line() -> Self {
        Interval {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<UniPoly>,
}

impl SturmSequence {
    /// Built on the square-free part so that counts are of distinct roots.
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let g = p.gcd(&p.derivative());
        let sf = p.exact_div(&g).expect("gcd divides p");
        let mut seq = vec![sf.clone(), sf.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            seq.push(-&r);
        }
        seq.pop();
        SturmSequence { seq }
    }

    pub fn squarefree(&self) -> &UniPoly {
        &self.seq[0]
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, b: &Bound) -> usize {
        match b {
            Bound::At(x) => Self::variations(self.seq.iter().map(|q| q.sign_at(x))),
            Bound::PosInf => Self::variations(
                self.seq
                    .iter()
                    .map(|q| if q.leading().is_positive() { 1 } else { -1 }),
            ),
            Bound::NegInf => Self::variations(self.seq.iter().map(|q| {
                let s = if q.leading().is_positive() { 1 } else { -1 };
                if q.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })),
        }
    }

    /// Distinct real roots in the open interval.
    ///
    /// `V(a) - V(b)` counts roots in `(a, b]` for a square-free sequence even
    /// when `a` or `b` is a root, so an exact endpoint test is enough.
    pub fn count(&self, iv: &Interval) -> usize {
        if let (Bound::At(a), Bound::At(b)) = (&iv.lo, &iv.hi) {
            if a >= b {
                return 0;
            }
        }
        let va = self.variations_at(&iv.lo);
        let vb = self.variations_at(&iv.hi);
        let hi_root = matches!(&iv.hi, Bound::At(b) if self.seq[0].evaluate(b).is_zero());
        va - vb - usize::from(hi_root)
    }
}

/// Number of distinct real roots of `p` in the open interval.
pub fn count_roots_in(p: &UniPoly, iv: &Interval) -> usize {
    SturmSequence::new(p).count(iv)
}

/// Open interval with rational ends holding exactly one simple root of
/// `poly` (the square-free part it was isolated for). Endpoints are never
/// roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Shrinks to width at most `width`; `squarefree` must be the polynomial
    /// the interval was isolated for.
    pub fn refine(&self, squarefree: &UniPoly, width: &Rational) -> RootInterval {
        assert!(width.is_positive(), "refinement width must be positive");
        let mut iv = self.clone();
        let slo = squarefree.sign_at(&iv.lo);
        while iv.width() > *width {
            let m = iv.midpoint();
            match squarefree.sign_at(&m) {
                0 => {
                    let half = (width / int(4)).min((&m - &iv.lo) / int(2));
                    return RootInterval {
                        lo: &m - &half,
                        hi: &m + &half,
                    };
                }
                s if s == slo => iv.lo = m,
                _ => iv.hi = m,
            }
        }
        iv
    }
}

/// Sorted isolating intervals for the distinct real roots of `p`.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<RootInterval> {
    let st = SturmSequence::new(p);
    let b = st.squarefree().root_bound();
    isolate_in(&st, -b.clone(), b)
}

/// Isolating intervals for the roots inside `(lo, hi)`; neither end may be
/// a root.
pub fn isolate_in(st: &SturmSequence, lo: Rational, hi: Rational) -> Vec<RootInterval> {
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = st.count(&Interval::open(a.clone(), b.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let m = split_point(st.squarefree(), &a, &b);
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

fn split_point(p: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    // deg + 2 distinct candidates in [1/2, 3/4); at most deg of them are roots.
    let n = p.deg() as i64 + 2;
    for k in 0..n {
        let t = Rational::new(1.into(), 2.into()) + Rational::new(k.into(), (4 * n).into());
        let m = a + &w * t;
        if &m < b && !p.evaluate(&m).is_zero() {
            return m;
        }
    }
    unreachable!("more candidate split points than roots")
}
