mod common;

use common::{fixture_tree, tree_from_source};
use sldtree::fixtures::find;
use sldtree::{build_tree, parse_program, EngineOptions, Goal, NodeStatus, Program, SearchTree};

const EXTRA: &str = "
p(1).
p(2).
q(2).
r(X) :- p(X), \\+ q(X).
s(X) :- p(X), \\+ (q(Y), Y < X).
t :- \\+ \\+ p(1).
u(X) :- \\+ p(X).
";

fn negation_nodes(tree: &SearchTree) -> Vec<sldtree::NodeId> {
    tree.preorder()
        .into_iter()
        .filter(|&id| {
            let n = tree.node(id);
            !n.children().is_empty() && matches!(n.goals().first(), Some(Goal::Negation(_)))
        })
        .collect()
}

/// At every negation node, \+ G succeeds exactly when G on its own has no
/// successful branch.
fn check_soundness(program: &Program, tree: &SearchTree) -> usize {
    let mut checked = 0;
    for id in negation_nodes(tree) {
        let node = tree.node(id);
        let Some(Goal::Negation(inner)) = node.goals().first().cloned() else {
            unreachable!()
        };
        let children = node.children();
        assert_eq!(children.len(), 2);
        let negation_holds = tree.node(children[1]).status() != NodeStatus::Pruned;
        let independent = build_tree(program, &inner, &EngineOptions::default()).unwrap();
        assert!(!independent.is_truncated());
        let g_succeeds = independent.count(NodeStatus::Success) > 0;
        assert_eq!(negation_holds, !g_succeeds, "at {}", node.goals_text());
        checked += 1;
    }
    checked
}

#[test]
fn soundness_on_youngest() {
    let program = parse_program(find("youngest").unwrap().source).unwrap();
    let tree = fixture_tree("youngest", None);
    assert_eq!(check_soundness(&program, &tree), 3);
}

#[test]
fn soundness_on_small_programs() {
    let program = parse_program(EXTRA).unwrap();
    let mut total = 0;
    for q in [
        "r(X)", "s(X)", "t", "u(3)", "u(1)", "\\+ p(X)", "\\+ fail", "\\+ true",
    ] {
        let tree = tree_from_source(EXTRA, q);
        total += check_soundness(&program, &tree);
    }
    assert!(total >= 10, "{total}");
}

#[test]
fn negation_answers() {
    assert_eq!(
        common::values_of(&tree_from_source(EXTRA, "r(X)"), "X"),
        ["1"]
    );
    assert_eq!(
        common::values_of(&tree_from_source(EXTRA, "s(X)"), "X"),
        ["1", "2"]
    );
    assert_eq!(tree_from_source(EXTRA, "t").count(NodeStatus::Success), 1);
    assert_eq!(
        tree_from_source(EXTRA, "u(3)").count(NodeStatus::Success),
        1
    );
    assert_eq!(
        tree_from_source(EXTRA, "u(1)").count(NodeStatus::Success),
        0
    );
}

/// Bindings made while proving the negated goal never reach the branch
/// that continues after the negation.
#[test]
fn opacity() {
    for (src, q) in [
        (find("youngest").unwrap().source, "youngest(W)"),
        (EXTRA, "r(X)"),
        (EXTRA, "s(X)"),
        (EXTRA, "\\+ p(X), X = X"),
    ] {
        let Ok(program) = parse_program(src) else {
            continue;
        };
        let Ok(goals) = sldtree::parse_query(q) else {
            continue;
        };
        let tree = build_tree(&program, &goals, &EngineOptions::default()).unwrap();
        for id in negation_nodes(&tree) {
            let node = tree.node(id);
            let rest = node.goals()[1..].to_vec();
            let second = tree.node(node.children()[1]);
            assert!(second.label().is_empty());
            assert!(second.mgu().is_empty());
            match second.status() {
                NodeStatus::Success | NodeStatus::Pruned => {}
                _ => assert_eq!(second.goals(), rest),
            }
            let first = tree.node(node.children()[0]);
            assert!(first.mgu().is_empty());
        }
    }
}

#[test]
fn answer_does_not_leak_inner_bindings() {
    // Y is bound to 2 inside the negation of s(1); the answer must not mention it.
    let tree = tree_from_source(EXTRA, "s(1)");
    let answers = sldtree::solutions(&tree);
    assert_eq!(answers.len(), 1);
    assert!(answers[0].display_bindings().is_empty());
}
