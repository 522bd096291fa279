//! The matcher must agree occurrence-for-occurrence with a brute-force
//! oracle that enumerates every injective node map and validates it from
//! the definition. Disagreement in either direction is a bug.

use bigraph_core::matches;
use testkit::{oracle_matches, planted_pattern, random_ground, random_pattern, rng};

/// Independent pattern/target pairs: most fail to match, exercising the
/// matcher's rejection paths.
#[test]
fn matcher_agrees_with_oracle_on_independent_pairs() {
    let mut r = rng(0x5eed_0001);
    let mut hits = 0usize;
    for _ in 0..300 {
        let target = random_ground(&mut r, 6);
        let pattern = random_pattern(&mut r, 3);
        let got = matches(&pattern, &target);
        let want = oracle_matches(&pattern, &target);
        assert_eq!(
            got,
            want,
            "matcher/oracle disagree\npattern:\n{}\ntarget:\n{}",
            pattern.display_term(),
            target.display_term()
        );
        hits += usize::from(!got.is_empty());
    }
    // The corpus must exercise both outcomes to mean anything.
    assert!(hits > 10, "too few matching pairs: {hits}");
}

/// Patterns carved out of the target itself: guaranteed-matching cases
/// with sites and shared links, exercising the matcher's acceptance paths.
#[test]
fn matcher_agrees_with_oracle_on_planted_patterns() {
    let mut r = rng(0x5eed_0002);
    let mut planted = 0usize;
    let mut produced = 0usize;
    while planted < 250 {
        let target = random_ground(&mut r, 6);
        let Some(pattern) = planted_pattern(&mut r, &target) else {
            continue;
        };
        planted += 1;
        let got = matches(&pattern, &target);
        let want = oracle_matches(&pattern, &target);
        assert_eq!(
            got,
            want,
            "matcher/oracle disagree\npattern:\n{}\ntarget:\n{}",
            pattern.display_term(),
            target.display_term()
        );
        assert!(
            !got.is_empty(),
            "planted pattern failed to match\npattern:\n{}\ntarget:\n{}",
            pattern.display_term(),
            target.display_term()
        );
        produced += got.len();
    }
    assert!(produced >= planted, "planted matches went missing");
}

/// Occurrences are reported without duplicates and in a stable order.
#[test]
fn occurrences_are_deduplicated_and_sorted() {
    let mut r = rng(0x5eed_0003);
    for _ in 0..100 {
        let target = random_ground(&mut r, 5);
        let pattern = random_pattern(&mut r, 3);
        let got = matches(&pattern, &target);
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(got, sorted, "occurrence list not sorted or has duplicates");
    }
}
