use crate::combinatorics::{CpLetter, SignPattern};
use crate::exactpoly::{ModLetter, ModuliOrder};

use super::cp_to_mod;

/// The change-preservation word read from the right, with `c -> P`, `p -> N`.
pub fn canonical_order(pattern: &SignPattern) -> ModuliOrder {
    ModuliOrder(
        pattern
            .to_change_preservation()
            .letters()
            .iter()
            .rev()
            .map(|&l| cp_to_mod(l))
            .collect(),
    )
}

/// Same length, and as many `P` letters as sign changes.
pub fn order_compatible(pattern: &SignPattern, order: &ModuliOrder) -> bool {
    order.len() == pattern.degree() && order.count(ModLetter::P) == pattern.sign_changes()
}

/// No window of four consecutive signs equal to `++--`, `--++`, `+--+` or `-++-`.
pub fn is_canonical_pattern(pattern: &SignPattern) -> bool {
    !pattern.signs().windows(4).any(|w| {
        let (a, b, c, e) = (w[0], w[1], w[2], w[3]);
        a == b && c == e && a != c || a == e && b == c && a != b
    })
}

/// No isolated change or preservation: neither `pcp` nor `cpc` occurs.
pub fn is_canonical_cp(pattern: &SignPattern) -> bool {
    use CpLetter::{C, P};
    !pattern
        .to_change_preservation()
        .letters()
        .windows(3)
        .any(|w| w == [P, C, P] || w == [C, P, C])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ChangePreservationPattern;

    fn sigma(blocks: &[usize]) -> SignPattern {
        SignPattern::from_blocks(blocks).unwrap()
    }

    #[test]
    fn canonical_order_of_example_word() {
        let cp: ChangePreservationPattern = "pcppccc".parse().unwrap();
        let pat = SignPattern::from_change_preservation(&cp);
        assert_eq!(pat.to_string(), "++---+-+");
        assert_eq!(canonical_order(&pat).to_string(), "PPPNNPN");
    }

    #[test]
    fn all_preservations_give_all_n() {
        let pat: SignPattern = "+++++".parse().unwrap();
        assert_eq!(canonical_order(&pat).to_string(), "NNNN");
    }

    #[test]
    fn canonical_order_is_compatible() {
        for d in 1..=8 {
            for p in SignPattern::all(d) {
                assert!(order_compatible(&p, &canonical_order(&p)));
            }
        }
    }

    #[test]
    fn named_patterns() {
        for b in [&[1, 3, 1][..], &[1, 4, 1], &[1, 5, 1], &[4, 1, 2]] {
            assert!(is_canonical_pattern(&sigma(b)), "{b:?}");
        }
        assert!(!is_canonical_pattern(&sigma(&[2, 4, 1])));
    }

    #[test]
    fn both_criteria_agree_up_to_degree_ten() {
        for d in 1..=10 {
            for p in SignPattern::all(d) {
                assert_eq!(is_canonical_pattern(&p), is_canonical_cp(&p), "{p}");
            }
        }
    }

    #[test]
    fn short_patterns_have_no_forbidden_window() {
        for d in 1..=2 {
            assert!(SignPattern::all(d).all(|p| is_canonical_pattern(&p)));
        }
        let bad: Vec<String> = SignPattern::all(3)
            .filter(|p| !is_canonical_pattern(p))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(bad, ["++--", "+--+"]);
    }
}
