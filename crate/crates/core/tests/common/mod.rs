#![allow(dead_code)]

pub mod oracle;
pub mod random_programs;

use sldtree::fixtures::find;
use sldtree::{build_tree, parse_program, parse_query, solutions, EngineOptions, SearchTree};

pub fn options_for(name: &str) -> EngineOptions {
    EngineOptions {
        rename: find(name).expect("fixture").rename,
        ..EngineOptions::default()
    }
}

/// Builds the tree for a bundled fixture, with its own query unless one is given.
pub fn fixture_tree(name: &str, query: Option<&str>) -> SearchTree {
    let f = find(name).unwrap_or_else(|| panic!("no fixture {name}"));
    let program = parse_program(f.source).unwrap();
    let goals = parse_query(query.unwrap_or(f.query)).unwrap();
    build_tree(&program, &goals, &options_for(name)).unwrap()
}

pub fn tree_from_source(source: &str, query: &str) -> SearchTree {
    let program = parse_program(source).unwrap();
    let goals = parse_query(query).unwrap();
    build_tree(&program, &goals, &EngineOptions::default()).unwrap()
}

/// Each answer as `Var=term` strings in query-variable order.
pub fn answer_strings(tree: &SearchTree) -> Vec<Vec<String>> {
    solutions(tree)
        .iter()
        .map(|a| {
            a.bindings
                .iter()
                .map(|(v, t)| format!("{}={}", v.name(), t))
                .collect()
        })
        .collect()
}

/// Value bound to `var` in every answer, in order.
pub fn values_of(tree: &SearchTree, var: &str) -> Vec<String> {
    solutions(tree)
        .iter()
        .map(|a| a.get(var).map(|t| t.to_string()).unwrap_or_default())
        .collect()
}

pub fn is_subsequence<T: PartialEq>(small: &[T], big: &[T]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}
