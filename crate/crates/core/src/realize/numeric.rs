//! Floating-point helpers for proposing candidates. Nothing here is trusted:
//! every candidate is re-checked exactly.

/// Horner evaluation, coefficients lowest degree first.
pub fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// Product of `(x - r)` and `(x^2 - s x + q)` factors.
pub fn expand(real: &[f64], pairs: &[(f64, f64)]) -> Vec<f64> {
    let mut p = vec![1.0];
    for &r in real {
        p = mul(&p, &[-r, 1.0]);
    }
    for &(s, q) in pairs {
        p = mul(&p, &[q, -s, 1.0]);
    }
    p
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Signs of the coefficients, leading first; `None` if one is negligibly small.
pub fn sign_vector(c: &[f64]) -> Option<Vec<bool>> {
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tiny = scale * 1e-12;
    c.iter()
        .rev()
        .map(|&x| (x.abs() > tiny).then_some(x < 0.0))
        .collect()
}

/// `j * integral_0^x q`.
pub fn scaled_antiderivative(q: &[f64], j: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(q.len() + 1);
    out.push(0.0);
    out.extend(q.iter().enumerate().map(|(k, &a)| j as f64 * a / (k as f64 + 1.0)));
    out
}

/// Sign-change count of `a + c` on the negative and positive half-lines,
/// given the sorted real critical points of `a` (degree `j`, positive leading
/// coefficient). `None` when `a + c` vanishes at a sample point.
pub fn half_line_counts(a: &[f64], c: f64, crit: &[f64]) -> Option<(usize, usize)> {
    let j = a.len() - 1;
    let sgn = |v: f64| if v > 0.0 { Some(1i8) } else if v < 0.0 { Some(-1) } else { None };
    let mut pts: Vec<f64> = crit.to_vec();
    pts.push(0.0);
    pts.sort_by(f64::total_cmp);
    let mut prev_sign = if j % 2 == 0 { 1i8 } else { -1 };
    let (mut pos, mut neg) = (0, 0);
    for &t in &pts {
        let s = sgn(eval(a, t) + c)?;
        if s != prev_sign {
            if t <= 0.0 {
                neg += 1;
            } else {
                pos += 1;
            }
        }
        prev_sign = s;
    }
    if prev_sign != 1 {
        pos += 1;
    }
    Some((pos, neg))
}

/// Real roots of `p` (positive leading coefficient) by bisection on the
/// monotone pieces cut out by the sorted critical points.
pub fn roots_between(p: &[f64], crit: &[f64]) -> Vec<f64> {
    let lead = *p.last().expect("nonzero");
    let bound = 1.0 + p[..p.len() - 1].iter().fold(0.0f64, |m, x| m.max((x / lead).abs()));
    let mut cuts = vec![-bound];
    cuts.extend(crit.iter().copied().filter(|x| x.abs() < bound));
    cuts.push(bound);
    cuts.sort_by(f64::total_cmp);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(p, lo), eval(p, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() || fhi == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = eval(p, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_matches_hand_product() {
        // (x - 1)(x + 2)(x^2 - 2x + 5)
        let p = expand(&[1.0, -2.0], &[(2.0, 5.0)]);
        assert_eq!(p, vec![-10.0, 9.0, 1.0, -1.0, 1.0]);
        assert_eq!(sign_vector(&p), Some(vec![false, true, false, false, true]));
    }

    #[test]
    fn counts_and_roots_of_a_cubic() {
        // a = x^3 - 3x has critical points -1, 1; a + c with c = 1 has
        // roots near -1.88, 0.35, 1.53
        let a = [0.0, -3.0, 0.0, 1.0];
        assert_eq!(half_line_counts(&a, 1.0, &[-1.0, 1.0]), Some((2, 1)));
        assert_eq!(half_line_counts(&a, 5.0, &[-1.0, 1.0]), Some((0, 1)));
        let r = roots_between(&[1.0, -3.0, 0.0, 1.0], &[-1.0, 1.0]);
        assert_eq!(r.len(), 3);
        for x in r {
            assert!(eval(&[1.0, -3.0, 0.0, 1.0], x).abs() < 1e-12);
        }
    }

    #[test]
    fn antiderivative_scaling() {
        // 3 * int_0^x (x^2 - 1) = x^3 - 3x
        assert_eq!(scaled_antiderivative(&[-1.0, 0.0, 1.0], 3), vec![0.0, -3.0, 0.0, 1.0]);
    }
}
