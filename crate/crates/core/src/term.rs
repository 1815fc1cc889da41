//! Term algebra: variables, atoms, integers, compounds, and the goals,
//! clauses and programs built from them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Functor of the list cell `'.'/2`.
pub const CONS: &str = ".";
/// The empty list atom.
pub const NIL: &str = "[]";
/// Display name given to every anonymous variable.
pub const ANONYMOUS: &str = "_";

/// A logic variable.
///
/// Identity is the numeric id only; the name is what gets printed.
#[derive(Clone, Debug)]
pub struct Var {
    id: u64,
    name: Arc<str>,
}

impl Var {
    pub fn new(id: u64, name: impl Into<Arc<str>>) -> Self {
        Var {
            id,
            name: name.into(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_anonymous(&self) -> bool {
        &*self.name == ANONYMOUS
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.id.cmp(&other.id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Atom(String),
    Int(i64),
    /// Always has at least one argument; zero-arity symbols are atoms.
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn atom(name: impl Into<String>) -> Term {
        Term::Atom(name.into())
    }

    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    /// Builds a compound term, collapsing to an atom when `args` is empty.
    pub fn compound(functor: impl Into<String>, args: Vec<Term>) -> Term {
        if args.is_empty() {
            Term::Atom(functor.into())
        } else {
            Term::Compound(functor.into(), args)
        }
    }

    pub fn nil() -> Term {
        Term::Atom(NIL.to_string())
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::Compound(CONS.to_string(), vec![head, tail])
    }

    pub fn is_callable(&self) -> bool {
        matches!(self, Term::Atom(_) | Term::Compound(..))
    }

    /// Name and arity for callable terms.
    pub fn indicator(&self) -> Option<(&str, usize)> {
        match self {
            Term::Atom(name) => Some((name, 0)),
            Term::Compound(name, args) => Some((name, args.len())),
            _ => None,
        }
    }

    /// Splits a list term into its items and the final tail.
    ///
    /// A proper list ends in `[]`; anything else is returned as the tail.
    pub fn list_parts(&self) -> (Vec<&Term>, &Term) {
        let mut items = Vec::new();
        let mut cur = self;
        while let Term::Compound(f, args) = cur {
            if f != CONS || args.len() != 2 {
                break;
            }
            items.push(&args[0]);
            cur = &args[1];
        }
        (items, cur)
    }

    /// Every variable in the term, first occurrence first, without duplicates.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    /// Rebuilds the term with every variable passed through `f`.
    pub fn map_vars(&self, f: &mut impl FnMut(&Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::Compound(name, args) => {
                Term::Compound(name.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
            other => other.clone(),
        }
    }
}

/// See [`Term::variables`].
pub fn variables_of(t: &Term) -> Vec<Var> {
    t.variables()
}

/// Right-folds `items` over `tail` with `'.'/2`.
pub fn list_term(items: Vec<Term>, tail: Term) -> Term {
    items
        .into_iter()
        .rev()
        .fold(tail, |acc, item| Term::cons(item, acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Less,
    Greater,
    LessEq,
    GreaterEq,
}

impl CompareOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Less => "<",
            CompareOp::Greater => ">",
            CompareOp::LessEq => "=<",
            CompareOp::GreaterEq => ">=",
        }
    }

    pub fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            CompareOp::Less => lhs < rhs,
            CompareOp::Greater => lhs > rhs,
            CompareOp::LessEq => lhs <= rhs,
            CompareOp::GreaterEq => lhs >= rhs,
        }
    }
}

/// One entry of a goal list. Conjunction is the list itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    Call(Term),
    Disjunction(Vec<Goal>, Vec<Goal>),
    /// Inner sequence is never empty.
    Negation(Vec<Goal>),
    Cut,
    True,
    Fail,
    Compare(CompareOp, Term, Term),
}

impl Goal {
    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Goal::Call(t) => t.collect_vars(out),
            Goal::Disjunction(l, r) => {
                l.iter().for_each(|g| g.collect_vars(out));
                r.iter().for_each(|g| g.collect_vars(out));
            }
            Goal::Negation(inner) => inner.iter().for_each(|g| g.collect_vars(out)),
            Goal::Compare(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Goal::Cut | Goal::True | Goal::Fail => {}
        }
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Goal {
        match self {
            Goal::Call(t) => Goal::Call(f(t)),
            Goal::Disjunction(l, r) => Goal::Disjunction(
                l.iter().map(|g| g.map_terms(f)).collect(),
                r.iter().map(|g| g.map_terms(f)).collect(),
            ),
            Goal::Negation(inner) => Goal::Negation(inner.iter().map(|g| g.map_terms(f)).collect()),
            Goal::Compare(op, l, r) => Goal::Compare(*op, f(l), f(r)),
            Goal::Cut => Goal::Cut,
            Goal::True => Goal::True,
            Goal::Fail => Goal::Fail,
        }
    }

    /// True if a cut occurs anywhere, including inside disjunctions and negations.
    pub fn contains_cut(&self) -> bool {
        match self {
            Goal::Cut => true,
            Goal::Disjunction(l, r) => l.iter().chain(r).any(Goal::contains_cut),
            Goal::Negation(inner) => inner.iter().any(Goal::contains_cut),
            _ => false,
        }
    }

    /// Removes every `!` from the goal. Returns `None` when nothing is left.
    pub fn without_cuts(&self) -> Option<Goal> {
        match self {
            Goal::Cut => None,
            Goal::Disjunction(l, r) => Some(Goal::Disjunction(
                strip_cuts_or_true(l),
                strip_cuts_or_true(r),
            )),
            Goal::Negation(inner) => Some(Goal::Negation(strip_cuts_or_true(inner))),
            other => Some(other.clone()),
        }
    }
}

fn strip_cuts_or_true(goals: &[Goal]) -> Vec<Goal> {
    let out: Vec<Goal> = goals.iter().filter_map(Goal::without_cuts).collect();
    if out.is_empty() {
        vec![Goal::True]
    } else {
        out
    }
}

/// Variables of a goal sequence in first-occurrence order.
pub fn goal_variables(goals: &[Goal]) -> Vec<Var> {
    let mut out = Vec::new();
    for g in goals {
        g.collect_vars(&mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub head: Term,
    /// Empty for facts.
    pub body: Vec<Goal>,
}

impl Clause {
    pub fn fact(head: Term) -> Self {
        Clause {
            head,
            body: Vec::new(),
        }
    }

    pub fn rule(head: Term, body: Vec<Goal>) -> Self {
        Clause { head, body }
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.head.collect_vars(&mut out);
        for g in &self.body {
            g.collect_vars(&mut out);
        }
        out
    }

    pub(crate) fn max_var_id(&self) -> u64 {
        self.variables().iter().map(Var::id).max().unwrap_or(0)
    }
}

/// Predicate name plus arity, e.g. `loves/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredicateKey {
    pub name: String,
    pub arity: usize,
}

impl fmt::Display for PredicateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Clauses grouped by predicate, each group in source order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    predicates: BTreeMap<PredicateKey, Vec<Clause>>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a clause after any existing clauses of its predicate.
    ///
    /// Panics if the head is not callable; the reader never produces such clauses.
    pub fn push(&mut self, clause: Clause) {
        let (name, arity) = clause
            .head
            .indicator()
            .expect("clause head must be callable");
        let key = PredicateKey {
            name: name.to_string(),
            arity,
        };
        self.predicates.entry(key).or_default().push(clause);
    }

    pub fn clauses_for(&self, name: &str, arity: usize) -> Option<&[Clause]> {
        self.predicates
            .get(&PredicateKey {
                name: name.to_string(),
                arity,
            })
            .map(Vec::as_slice)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&PredicateKey, &[Clause])> {
        self.predicates.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.predicates.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.predicates.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty()
    }

    /// The same program with every cut removed from every clause body.
    pub fn without_cuts(&self) -> Program {
        let predicates = self
            .predicates
            .iter()
            .map(|(k, clauses)| {
                let stripped = clauses
                    .iter()
                    .map(|c| {
                        if !c.body.iter().any(Goal::contains_cut) {
                            return c.clone();
                        }
                        Clause::rule(c.head.clone(), strip_cuts_or_true(&c.body))
                    })
                    .collect();
                (k.clone(), stripped)
            })
            .collect();
        Program { predicates }
    }

    pub(crate) fn max_var_id(&self) -> u64 {
        self.clauses().map(Clause::max_var_id).max().unwrap_or(0)
    }
}
