//! Jaro and Jaro-Winkler string similarity.
//!
//! The canonical definitions: match window floor(max(|s1|,|s2|)/2) - 1,
//! transpositions counted as half the matched-but-out-of-order characters,
//! Winkler prefix boost with scale 0.1 and the prefix capped at 4.

/// Jaro similarity in [0, 1] over Unicode code points.
pub fn jaro(s1: &str, s2: &str) -> f64 {
    let a: Vec<char> = s1.chars().collect();
    let b: Vec<char> = s2.chars().collect();
    if a == b {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }

    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut a_matched = vec![false; a.len()];
    let mut b_matched = vec![false; b.len()];
    let mut matches = 0usize;
    for (i, &ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_matched[j] && b[j] == ca {
                a_matched[i] = true;
                b_matched[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }

    let mut transposed = 0usize;
    let mut j = 0usize;
    for (i, &ca) in a.iter().enumerate() {
        if !a_matched[i] {
            continue;
        }
        while !b_matched[j] {
            j += 1;
        }
        if ca != b[j] {
            transposed += 1;
        }
        j += 1;
    }
    let c = matches as f64;
    let tau = transposed as f64 / 2.0;
    ((c / a.len() as f64) + (c / b.len() as f64) + ((c - tau) / c)) / 3.0
}

/// Jaro-Winkler similarity: the Jaro value boosted by the common prefix
/// length (capped at 4) scaled by 0.1.
pub fn jaro_winkler(s1: &str, s2: &str) -> f64 {
    let phi = jaro(s1, s2);
    let prefix = s1
        .chars()
        .zip(s2.chars())
        .take(4)
        .take_while(|(a, b)| a == b)
        .count();
    phi + prefix as f64 * 0.1 * (1.0 - phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_and_disjoint_strings() {
        assert_eq!(jaro("abc", "abc"), 1.0);
        assert_eq!(jaro("abc", "xyz"), 0.0);
        assert_eq!(jaro("", ""), 1.0);
        assert_eq!(jaro("", "abc"), 0.0);
        assert_eq!(jaro_winkler("abc", "abc"), 1.0);
    }

    #[test]
    fn martha_oracle() {
        // Hand evaluation: 6 matches, 2 matched characters out of order
        // (T/H), so tau = 1 and Jaro = (1 + 1 + 5/6) / 3 = 17/18.
        let phi = jaro("MARTHA", "MARHTA");
        assert!((phi - 17.0 / 18.0).abs() < 1e-12, "{phi}");
        // Common prefix "MAR" (3): 17/18 + 3 * 0.1 * (1/18) = 0.96111...
        let phi_n = jaro_winkler("MARTHA", "MARHTA");
        assert!((phi_n - 0.9611).abs() < 1e-4, "{phi_n}");
    }

    #[test]
    fn zero_prefix_pair_gets_no_boost() {
        let phi = jaro("DWAYNE", "DUANE");
        let phi_n = jaro_winkler("XWAYNE", "YUANE");
        assert!(phi > 0.0);
        assert_eq!(jaro("XWAYNE", "YUANE"), phi_n);
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded(s1 in "[a-f]{0,12}", s2 in "[a-f]{0,12}") {
            let phi = jaro(&s1, &s2);
            prop_assert!((0.0..=1.0).contains(&phi));
            prop_assert!((phi - jaro(&s2, &s1)).abs() < 1e-15);
            let phi_n = jaro_winkler(&s1, &s2);
            prop_assert!((0.0..=1.0).contains(&phi_n));
            prop_assert!(phi_n >= phi - 1e-15);
        }
    }
}
