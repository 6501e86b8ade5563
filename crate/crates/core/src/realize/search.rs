use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{CompatibleCouple, CompatiblePair, Sign, SignPattern};
use crate::exactpoly::{ModLetter, ModuliOrder, UniPoly};
use crate::rational::{int, snap_dyadic, to_f64, Rational};
use crate::scp::Scp;

use super::numeric::{eval, expand, half_line_counts, roots_between, scaled_antiderivative, sign_vector};
use super::{
    BestPartial, RealizationTarget, RealizeError, SearchBudget, SearchOutcome, Witness,
    EXHAUSTION_NOTE,
};

/// Dispatches on the target kind.
pub fn realize(target: &RealizationTarget, budget: &SearchBudget) -> Result<SearchOutcome, RealizeError> {
    target.validate()?;
    Ok(match target {
        RealizationTarget::Couple(c) => realize_couple(c, budget),
        RealizationTarget::Scp { scp } => realize_scp(scp, budget),
        RealizationTarget::OrderCouple { pattern, order } => realize_order(pattern, order, budget)?,
    })
}

/// Alternates two proposals: a walk up the derivative levels that only fixes
/// the sign of each constant term, and roots drawn with log-uniform moduli.
pub fn realize_couple(couple: &CompatibleCouple, budget: &SearchBudget) -> SearchOutcome {
    let target = RealizationTarget::Couple(couple.clone());
    let want: Vec<bool> = couple.pattern().bitstring();
    let d = couple.degree();
    let mut s = Sampler::new(budget);
    let mut best = Best::default();
    for it in 0..budget.max_iterations {
        let found = if it % 2 == 0 {
            s.climb(d, &Goal::Couple(couple))
                .ok()
                .and_then(|cs| Witness::new(build_from_constants(&cs), target.clone()).ok())
        } else {
            s.couple_by_roots(couple, &want, &mut best)
                .and_then(|p| Witness::new(p, target.clone()).ok())
        };
        if let Some(witness) = found {
            return SearchOutcome::Found {
                iterations: it + 1,
                witness,
            };
        }
    }
    best.exhausted(budget.max_iterations, d + 1, "coefficient signs matched with the target root pair")
}

/// Walks up the derivative levels: `Q_1 = x + c_1`, `Q_j = j * int Q_{j-1} + c_j`,
/// choosing each `c_j` in a range where `Q_j` has the prescribed root counts.
pub fn realize_scp(scp: &Scp, budget: &SearchBudget) -> SearchOutcome {
    let target = RealizationTarget::Scp { scp: scp.clone() };
    let d = scp.degree();
    let mut s = Sampler::new(budget);
    let mut reached = 0usize;
    for it in 0..budget.max_iterations {
        match s.climb(d, &Goal::Scp(scp)) {
            Ok(cs) => {
                if let Ok(witness) = Witness::new(build_from_constants(&cs), target.clone()) {
                    return SearchOutcome::Found {
                        iterations: it + 1,
                        witness,
                    };
                }
            }
            Err(k) => reached = reached.max(k),
        }
    }
    let detail = if reached < d {
        format!(
            "levels 1..={reached} realized; level {} ({}) never reached",
            reached + 1,
            scp.level(reached + 1)
        )
    } else {
        "all levels reached in floating point, exact check failed".into()
    };
    SearchOutcome::Exhausted {
        iterations: budget.max_iterations,
        best_partial: Some(BestPartial {
            matched: reached,
            of: d,
            detail,
            poly: None,
        }),
        note: EXHAUSTION_NOTE.into(),
    }
}

/// Samples sorted log-uniform moduli, signed by the order's letters.
pub fn realize_order(
    pattern: &SignPattern,
    order: &ModuliOrder,
    budget: &SearchBudget,
) -> Result<SearchOutcome, RealizeError> {
    let target = RealizationTarget::order_couple(pattern.clone(), order.clone())?;
    let want = pattern.bitstring();
    let d = pattern.degree();
    let mut s = Sampler::new(budget);
    let mut best = Best::default();
    for it in 0..budget.max_iterations {
        if let Some(p) = s.hyperbolic_by_order(order, &want, &mut best) {
            if let Ok(witness) = Witness::new(p, target.clone()) {
                return Ok(SearchOutcome::Found {
                    iterations: it + 1,
                    witness,
                });
            }
        }
    }
    Ok(best.exhausted(budget.max_iterations, d + 1, "coefficient signs matched with the target order"))
}

enum Goal<'a> {
    Scp(&'a Scp),
    Couple(&'a CompatibleCouple),
}

impl Goal<'_> {
    fn accepts(&self, d: usize, j: usize, counts: (usize, usize), c: f64) -> bool {
        match self {
            Goal::Scp(s) => CompatiblePair::new(counts.0, counts.1) == s.level(j),
            Goal::Couple(cp) => {
                let plus = cp.pattern().coeff_sign(d - j) == Sign::Plus;
                (c > 0.0) == plus
                    && (j < d || CompatiblePair::new(counts.0, counts.1) == cp.pair())
            }
        }
    }
}

#[derive(Default)]
struct Best {
    matched: usize,
    poly: Option<UniPoly>,
}

impl Best {
    fn offer(&mut self, matched: usize, poly: impl FnOnce() -> Option<UniPoly>) {
        if matched > self.matched || self.poly.is_none() && matched == self.matched {
            if let Some(p) = poly() {
                self.matched = matched;
                self.poly = Some(p);
            }
        }
    }

    fn exhausted(self, iterations: u64, of: usize, what: &str) -> SearchOutcome {
        SearchOutcome::Exhausted {
            iterations,
            best_partial: self.poly.map(|p| BestPartial {
                matched: self.matched,
                of,
                detail: what.into(),
                poly: Some(p),
            }),
            note: EXHAUSTION_NOTE.into(),
        }
    }
}

/// `x + c_1`, then `j * int + c_j` for each further constant.
fn build_from_constants(cs: &[Rational]) -> UniPoly {
    let mut q = UniPoly::from_ascending(vec![cs[0].clone(), int(1)]);
    for (k, c) in cs.iter().enumerate().skip(1) {
        let j = int(k as i64 + 1);
        q = &q.integral().scale(&j) + &UniPoly::constant(c.clone());
    }
    q
}

fn snapped(x: f64, tol: f64) -> (f64, Rational) {
    let r = snap_dyadic(x, tol);
    (to_f64(&r), r)
}

struct Sampler {
    rng: ChaCha8Rng,
    lo: f64,
    hi: f64,
}

impl Sampler {
    fn new(budget: &SearchBudget) -> Self {
        let (lo, hi) = budget.moduli_exponent_range;
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(budget.rng_seed),
            lo: lo as f64,
            hi: hi.max(lo + 1) as f64,
        }
    }

    /// `2^e`, `e` uniform in the exponent range (tripled when `wide`).
    fn modulus(&mut self, wide: bool) -> f64 {
        let k = if wide { 3.0 } else { 1.0 };
        2f64.powf(self.rng.gen_range(k * self.lo..k * self.hi))
    }

    fn root(&mut self, wide: bool) -> (f64, Rational) {
        let m = self.modulus(wide);
        snapped(m, m / 256.0)
    }

    fn couple_by_roots(&mut self, c: &CompatibleCouple, want: &[bool], best: &mut Best) -> Option<UniPoly> {
        let pair = c.pair();
        let ncomplex = (c.degree() - pair.total()) / 2;
        let wide = self.rng.gen_bool(0.25);
        let mut pos = Vec::with_capacity(pair.pos);
        let mut neg = Vec::with_capacity(pair.neg);
        for _ in 0..pair.pos {
            pos.push(self.root(wide));
        }
        for _ in 0..pair.neg {
            let (x, r) = self.root(wide);
            neg.push((-x, -r));
        }
        let mut cpx = Vec::with_capacity(ncomplex);
        for _ in 0..ncomplex {
            let rho = self.modulus(wide);
            let theta = self.rng.gen_range(0.0..std::f64::consts::PI);
            let (s, sr) = snapped(2.0 * rho * theta.cos(), rho / 256.0);
            let (q, qr) = snapped(rho * rho, rho * rho / 256.0);
            if s * s >= 4.0 * q {
                return None;
            }
            cpx.push(((s, q), (sr, qr)));
        }
        let mut real: Vec<f64> = pos.iter().chain(&neg).map(|p| p.0).collect();
        real.sort_by(f64::total_cmp);
        if real.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let coeffs = expand(&real, &cpx.iter().map(|p| p.0).collect::<Vec<_>>());
        let signs = sign_vector(&coeffs)?;
        let matched = signs.iter().zip(want).filter(|(a, b)| a == b).count();
        let exact = || {
            let pr: Vec<Rational> = pos.iter().map(|p| p.1.clone()).collect();
            let nr: Vec<Rational> = neg.iter().map(|p| p.1.clone()).collect();
            let cr: Vec<(Rational, Rational)> = cpx.iter().map(|p| p.1.clone()).collect();
            UniPoly::from_roots(&pr, &nr, &cr).ok()
        };
        if matched == want.len() {
            return exact();
        }
        best.offer(matched, exact);
        None
    }

    fn hyperbolic_by_order(&mut self, order: &ModuliOrder, want: &[bool], best: &mut Best) -> Option<UniPoly> {
        let wide = self.rng.gen_bool(0.5);
        let mut moduli: Vec<(f64, Rational)> = (0..order.len()).map(|_| self.root(wide)).collect();
        moduli.sort_by(|a, b| a.0.total_cmp(&b.0));
        if moduli.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        let mut real = Vec::with_capacity(order.len());
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for ((m, r), l) in moduli.into_iter().zip(order.letters()) {
            match l {
                ModLetter::P => {
                    real.push(m);
                    pos.push(r);
                }
                ModLetter::N => {
                    real.push(-m);
                    neg.push(-r);
                }
            }
        }
        let signs = sign_vector(&expand(&real, &[]))?;
        let matched = signs.iter().zip(want).filter(|(a, b)| a == b).count();
        let exact = || UniPoly::from_roots(&pos, &neg, &[]).ok();
        if matched == want.len() {
            return exact();
        }
        best.offer(matched, exact);
        None
    }

    /// One walk up the levels. On failure returns the number of levels that
    /// were realized before no admissible constant remained.
    fn climb(&mut self, d: usize, goal: &Goal) -> Result<Vec<Rational>, usize> {
        let c1 = match goal {
            Goal::Scp(s) => {
                if s.level(1).pos == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
            Goal::Couple(c) => {
                if c.pattern().coeff_sign(d - 1) == Sign::Plus {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        if d == 1 && !goal.accepts(d, 1, if c1 < 0.0 { (1, 0) } else { (0, 1) }, c1) {
            return Err(0);
        }
        let mut cs = vec![int(c1 as i64)];
        let mut q = vec![c1, 1.0];
        let mut roots = vec![-c1];
        for j in 2..=d {
            let a = scaled_antiderivative(&q, j);
            let mut bps: Vec<f64> = roots.iter().map(|&x| -eval(&a, x)).collect();
            bps.push(0.0);
            bps.sort_by(f64::total_cmp);
            bps.dedup();
            let probe = |c: f64| half_line_counts(&a, c, &roots);
            let n = bps.len();
            let mut ok = Vec::new();
            for k in 0..=n {
                let rep = match (k, k == n) {
                    (0, _) => bps[0] - 1.0 - bps[0].abs(),
                    (_, true) => bps[n - 1] + 1.0 + bps[n - 1].abs(),
                    _ => 0.5 * (bps[k - 1] + bps[k]),
                };
                if let Some(cnt) = probe(rep) {
                    if goal.accepts(d, j, cnt, rep) {
                        ok.push(k);
                    }
                }
            }
            if ok.is_empty() {
                return Err(j - 1);
            }
            let k = ok[self.rng.gen_range(0..ok.len())];
            let scale = bps
                .iter()
                .fold(eval(&a, 1.0).abs().max(eval(&a, -1.0).abs()), |m, b| m.max(b.abs()))
                .max(1e-12);
            let (c, cr) = self.pick(&bps, k, scale);
            match probe(c) {
                Some(cnt) if goal.accepts(d, j, cnt, c) => {}
                _ => return Err(j - 1),
            }
            q = a;
            q[0] = c;
            roots = roots_between(&q, &roots);
            cs.push(cr);
        }
        Ok(cs)
    }

    /// A snapped point strictly inside the `k`-th gap of the breakpoints.
    fn pick(&mut self, bps: &[f64], k: usize, scale: f64) -> (f64, Rational) {
        let n = bps.len();
        if k == 0 || k == n {
            let off = scale * 2f64.powf(self.rng.gen_range(-8.0..6.0));
            let c = if k == 0 { bps[0] - off } else { bps[n - 1] + off };
            return snapped(c, off * 1e-3);
        }
        let (lo, hi) = (bps[k - 1], bps[k]);
        let w = hi - lo;
        let t = if self.rng.gen_bool(0.5) {
            self.rng.gen_range(0.02..0.98)
        } else {
            let e = 0.5 * 2f64.powf(-self.rng.gen_range(0.0..10.0));
            if self.rng.gen_bool(0.5) {
                e
            } else {
                1.0 - e
            }
        };
        let c = lo + w * t;
        snapped(c, w * t.min(1.0 - t) * 1e-3)
    }
}
