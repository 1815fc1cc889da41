mod common;

use common::random_programs::{arb_program, sample_programs};
use common::{answer_strings, is_subsequence, tree_from_source};
use proptest::prelude::*;
use sldtree::fixtures::find;
use sldtree::NodeStatus;

fn strip_cuts(source: &str) -> String {
    source
        .lines()
        .map(|l| {
            l.replace("!, ", "")
                .replace(", !.", ".")
                .replace(":- !.", ".")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn listing_cut_answers_are_a_subsequence() {
    let src = find("cut-abc").unwrap().source;
    let stripped = strip_cuts(src);
    assert!(!stripped.contains('!'), "{stripped}");
    let with_cut = tree_from_source(src, "a(A)");
    let without = tree_from_source(&stripped, "a(A)");
    let a = answer_strings(&with_cut);
    let b = answer_strings(&without);
    assert_eq!(a.len(), 3);
    assert_eq!(b.len(), 5);
    assert!(is_subsequence(&a, &b), "{a:?} vs {b:?}");
}

#[test]
fn library_cut_removal_agrees_with_text_removal() {
    for p in sample_programs(30) {
        let program = sldtree::parse_program(&p.source(true)).unwrap();
        let text = sldtree::parse_program(&p.source(false)).unwrap();
        let q = sldtree::parse_query(&p.query()).unwrap();
        let opts = sldtree::EngineOptions::default();
        let a = sldtree::build_tree(&program.without_cuts(), &q, &opts).unwrap();
        let b = sldtree::build_tree(&text, &q, &opts).unwrap();
        assert_eq!(answer_strings(&a), answer_strings(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 100,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn cut_answers_are_a_subsequence(p in arb_program()) {
        let with_cut = tree_from_source(&p.source(true), &p.query());
        let without = tree_from_source(&p.source(false), &p.query());
        prop_assert!(!with_cut.is_truncated() && !without.is_truncated());
        let a = answer_strings(&with_cut);
        let b = answer_strings(&without);
        prop_assert!(is_subsequence(&a, &b), "{}\n{:?}\n{:?}", p.source(true), a, b);
        if !p.has_cut() {
            prop_assert_eq!(with_cut.count(NodeStatus::Pruned), 0);
        }
    }
}
