//! Small random programs with cuts and no negation.
//!
//! Predicates `p0`..`p2` are unary and clauses of `pi` only call `pj` with
//! `j < i`. With at most two clauses per predicate and two calls per body a
//! tree has at most a few hundred nodes.

use std::fmt::Write as _;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub const PREDICATES: usize = 3;
const CONSTANTS: [&str; 3] = ["a", "b", "c"];

#[derive(Clone, Debug)]
pub enum Arg {
    X,
    Y,
    Const(usize),
}

#[derive(Clone, Debug)]
pub enum Item {
    Call(usize, Arg),
    Cut,
}

#[derive(Clone, Debug)]
pub struct RandomClause {
    pub pred: usize,
    pub head: Arg,
    pub body: Vec<Item>,
}

#[derive(Clone, Debug)]
pub struct RandomProgram {
    pub clauses: Vec<RandomClause>,
    pub query_pred: usize,
}

fn arg_text(a: &Arg) -> String {
    match a {
        Arg::X => "X".into(),
        Arg::Y => "Y".into(),
        Arg::Const(k) => CONSTANTS[*k].into(),
    }
}

impl RandomProgram {
    pub fn source(&self, keep_cuts: bool) -> String {
        let mut out = String::new();
        for c in &self.clauses {
            let body: Vec<String> = c
                .body
                .iter()
                .filter_map(|item| match item {
                    Item::Call(j, a) => Some(format!("p{j}({})", arg_text(a))),
                    Item::Cut if keep_cuts => Some("!".into()),
                    Item::Cut => None,
                })
                .collect();
            let head = format!("p{}({})", c.pred, arg_text(&c.head));
            if body.is_empty() {
                let _ = writeln!(out, "{head}.");
            } else {
                let _ = writeln!(out, "{head} :- {}.", body.join(", "));
            }
        }
        out
    }

    pub fn query(&self) -> String {
        format!("p{}(Q)", self.query_pred)
    }

    pub fn has_cut(&self) -> bool {
        self.clauses
            .iter()
            .any(|c| c.body.iter().any(|i| matches!(i, Item::Cut)))
    }
}

fn arb_arg(allow_y: bool) -> BoxedStrategy<Arg> {
    let consts = (0..CONSTANTS.len()).prop_map(Arg::Const);
    if allow_y {
        prop_oneof![Just(Arg::X), Just(Arg::Y), consts].boxed()
    } else {
        prop_oneof![Just(Arg::X), consts].boxed()
    }
}

fn arb_clause(pred: usize) -> BoxedStrategy<RandomClause> {
    let head = arb_arg(false);
    if pred == 0 {
        return head
            .prop_map(|head| RandomClause {
                pred: 0,
                head,
                body: Vec::new(),
            })
            .boxed();
    }
    let item = prop_oneof![
        3 => ((0..pred), arb_arg(true)).prop_map(|(j, a)| Item::Call(j, a)),
        1 => Just(Item::Cut),
    ];
    (head, prop::collection::vec(item, 0..=4))
        .prop_map(move |(head, body)| RandomClause { pred, head, body })
        .prop_filter("at most two calls", |c| {
            c.body
                .iter()
                .filter(|i| matches!(i, Item::Call(..)))
                .count()
                <= 2
        })
        .boxed()
}

pub fn arb_program() -> impl Strategy<Value = RandomProgram> {
    let per_pred: Vec<_> = (0..PREDICATES)
        .map(|p| prop::collection::vec(arb_clause(p), 1..=2))
        .collect();
    (per_pred, 1..PREDICATES).prop_map(|(groups, query_pred)| RandomProgram {
        clauses: groups.into_iter().flatten().collect(),
        query_pred,
    })
}

/// `n` programs from a fixed seed, each containing at least one cut.
pub fn sample_programs(n: usize) -> Vec<RandomProgram> {
    let mut runner = TestRunner::deterministic();
    let strategy = arb_program();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = strategy.new_tree(&mut runner).expect("strategy").current();
        if p.has_cut() {
            out.push(p);
        }
    }
    out
}
