//! Naive bottom-up evaluation of definite programs over a finite universe.
//!
//! Every clause is instantiated with every assignment of universe elements to
//! its variables until no new ground atoms appear. Query answers are the
//! assignments to the query's variables whose instances are all derived.
//! Only meaningful for programs without cut, negation or comparisons.

use std::collections::{BTreeMap, BTreeSet};

use sldtree::{Goal, Program, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ground {
    Atom(String),
    Int(i64),
    App(String, Vec<Ground>),
}

impl Ground {
    pub fn from_term(t: &Term) -> Option<Ground> {
        match t {
            Term::Var(_) => None,
            Term::Atom(a) => Some(Ground::Atom(a.clone())),
            Term::Int(i) => Some(Ground::Int(*i)),
            Term::Compound(f, args) => Some(Ground::App(
                f.clone(),
                args.iter().map(Ground::from_term).collect::<Option<_>>()?,
            )),
        }
    }
}

fn collect_ground_subterms(t: &Term, out: &mut BTreeSet<Ground>) {
    if let Some(g) = Ground::from_term(t) {
        out.insert(g);
    }
    if let Term::Compound(_, args) = t {
        for a in args {
            collect_ground_subterms(a, out);
        }
    }
}

fn calls(goals: &[Goal]) -> Vec<&Term> {
    goals
        .iter()
        .map(|g| match g {
            Goal::Call(t) => t,
            Goal::True => panic!("oracle: `true` not supported"),
            other => panic!("oracle: unsupported goal {other}"),
        })
        .collect()
}

fn var_ids(t: &Term, out: &mut Vec<(u64, String)>) {
    match t {
        Term::Var(v) => {
            if !out.iter().any(|(id, _)| *id == v.id()) {
                out.push((v.id(), v.name().to_string()));
            }
        }
        Term::Compound(_, args) => args.iter().for_each(|a| var_ids(a, out)),
        _ => {}
    }
}

fn instantiate(t: &Term, env: &BTreeMap<u64, Ground>) -> Ground {
    match t {
        Term::Var(v) => env[&v.id()].clone(),
        Term::Atom(a) => Ground::Atom(a.clone()),
        Term::Int(i) => Ground::Int(*i),
        Term::Compound(f, args) => Ground::App(
            f.clone(),
            args.iter().map(|a| instantiate(a, env)).collect(),
        ),
    }
}

/// Calls `f` with every assignment of `universe` elements to `vars`.
fn for_each_assignment(
    vars: &[(u64, String)],
    universe: &[Ground],
    mut f: impl FnMut(&BTreeMap<u64, Ground>),
) {
    if universe.is_empty() && !vars.is_empty() {
        return;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let env: BTreeMap<u64, Ground> = vars
            .iter()
            .zip(&idx)
            .map(|((id, _), &i)| (*id, universe[i].clone()))
            .collect();
        f(&env);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < universe.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The universe: every ground subterm occurring in the program or the query.
pub fn universe(program: &Program, query: &[Goal]) -> Vec<Ground> {
    let mut set = BTreeSet::new();
    for c in program.clauses() {
        if let Term::Compound(_, args) = &c.head {
            args.iter()
                .for_each(|a| collect_ground_subterms(a, &mut set));
        }
        for t in calls(&c.body) {
            if let Term::Compound(_, args) = t {
                args.iter()
                    .for_each(|a| collect_ground_subterms(a, &mut set));
            }
        }
    }
    for t in calls(query) {
        if let Term::Compound(_, args) = t {
            args.iter()
                .for_each(|a| collect_ground_subterms(a, &mut set));
        }
    }
    set.into_iter().collect()
}

pub fn saturate(program: &Program, universe: &[Ground]) -> BTreeSet<Ground> {
    let mut facts = BTreeSet::new();
    loop {
        let mut added = false;
        for c in program.clauses() {
            let body = calls(&c.body);
            let mut vars = Vec::new();
            var_ids(&c.head, &mut vars);
            body.iter().for_each(|t| var_ids(t, &mut vars));
            let mut new = Vec::new();
            for_each_assignment(&vars, universe, |env| {
                if body.iter().all(|b| facts.contains(&instantiate(b, env))) {
                    let head = instantiate(&c.head, env);
                    if !facts.contains(&head) {
                        new.push(head);
                    }
                }
            });
            for h in new {
                added |= facts.insert(h);
            }
        }
        if !added {
            return facts;
        }
    }
}

/// Set of answers, each a map from named query variable to its value.
pub fn answers(program: &Program, query: &[Goal]) -> BTreeSet<BTreeMap<String, Ground>> {
    let universe = universe(program, query);
    let facts = saturate(program, &universe);
    let goals = calls(query);
    let mut vars = Vec::new();
    goals.iter().for_each(|t| var_ids(t, &mut vars));
    let mut out = BTreeSet::new();
    for_each_assignment(&vars, &universe, |env| {
        if goals.iter().all(|g| facts.contains(&instantiate(g, env))) {
            out.insert(
                vars.iter()
                    .filter(|(_, name)| name != "_")
                    .map(|(id, name)| (name.clone(), env[id].clone()))
                    .collect(),
            );
        }
    });
    out
}

/// The engine's answers in the same shape. Panics on a non-ground binding.
pub fn engine_answers(tree: &sldtree::SearchTree) -> BTreeSet<BTreeMap<String, Ground>> {
    sldtree::solutions(tree)
        .iter()
        .map(|a| {
            a.bindings
                .iter()
                .map(|(v, t)| {
                    let g = Ground::from_term(t)
                        .unwrap_or_else(|| panic!("non-ground answer {}={t}", v.name()));
                    (v.name().to_string(), g)
                })
                .collect()
        })
        .collect()
}
