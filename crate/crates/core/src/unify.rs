//! Unification, substitutions and fresh renaming of clauses.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::term::{Clause, Goal, Term, Var};

/// Raised when resolving a binding would build an infinite term.
///
/// Unification runs without an occurs check, so `X = f(X)` produces a
/// cyclic binding; it is reported here instead of looping.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cyclic term: {var} occurs in its own binding")]
pub struct CyclicTerm {
    pub var: String,
}

/// Finite, idempotent mapping from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an idempotent substitution from raw (possibly chained) pairs.
    ///
    /// Chains like `X -> Y, Y -> a` are resolved to `X -> a, Y -> a`.
    /// Later pairs for an already bound variable are ignored.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Result<Self, CyclicTerm> {
        let mut raw: HashMap<Var, Term> = HashMap::new();
        for (v, t) in pairs {
            raw.entry(v).or_insert(t);
        }
        Self::resolve(raw)
    }

    fn resolve(raw: HashMap<Var, Term>) -> Result<Self, CyclicTerm> {
        let mut done: HashMap<Var, Term> = HashMap::new();
        let mut bindings = BTreeMap::new();
        for v in raw.keys() {
            let mut visiting = HashSet::new();
            let t = resolve_var(v, &raw, &mut done, &mut visiting)?;
            if t != Term::Var(v.clone()) {
                bindings.insert(v.clone(), t);
            }
        }
        Ok(Substitution { bindings })
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.bindings.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.bindings.keys()
    }

    /// Replaces every bound variable by its image in one pass.
    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        t.map_vars(&mut |v| {
            self.bindings
                .get(v)
                .cloned()
                .unwrap_or_else(|| Term::Var(v.clone()))
        })
    }

    pub fn apply_goal(&self, g: &Goal) -> Goal {
        g.map_terms(&mut |t| self.apply(t))
    }

    /// `self` first, then `other`: `compose(a, b).apply(t) == b.apply(&a.apply(t))`.
    ///
    /// The result is idempotent whenever no variable bound by `self` occurs
    /// in the range of `other`, which holds along any resolution path.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut bindings = BTreeMap::new();
        for (v, t) in &self.bindings {
            let image = other.apply(t);
            if image != Term::Var(v.clone()) {
                bindings.insert(v.clone(), image);
            }
        }
        for (v, t) in &other.bindings {
            if !self.bindings.contains_key(v) {
                bindings.insert(v.clone(), t.clone());
            }
        }
        Substitution { bindings }
    }

    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| t.variables().iter().all(|v| !self.bindings.contains_key(v)))
    }
}

fn resolve_var(
    v: &Var,
    raw: &HashMap<Var, Term>,
    done: &mut HashMap<Var, Term>,
    visiting: &mut HashSet<Var>,
) -> Result<Term, CyclicTerm> {
    if let Some(t) = done.get(v) {
        return Ok(t.clone());
    }
    let Some(t) = raw.get(v) else {
        return Ok(Term::Var(v.clone()));
    };
    if !visiting.insert(v.clone()) {
        return Err(CyclicTerm {
            var: v.name().to_string(),
        });
    }
    let resolved = resolve_term(t, raw, done, visiting)?;
    visiting.remove(v);
    done.insert(v.clone(), resolved.clone());
    Ok(resolved)
}

fn resolve_term(
    t: &Term,
    raw: &HashMap<Var, Term>,
    done: &mut HashMap<Var, Term>,
    visiting: &mut HashSet<Var>,
) -> Result<Term, CyclicTerm> {
    match t {
        Term::Var(v) => resolve_var(v, raw, done, visiting),
        Term::Compound(f, args) => {
            let args = args
                .iter()
                .map(|a| resolve_term(a, raw, done, visiting))
                .collect::<Result<_, _>>()?;
            Ok(Term::Compound(f.clone(), args))
        }
        other => Ok(other.clone()),
    }
}

/// Most general unifier of `left` and `right`, or `Ok(None)` if they clash.
///
/// A variable/variable pair binds the left one to the right one, so passing
/// `(goal, clause_head)` orients bindings goal-side first.
pub fn unify(left: &Term, right: &Term) -> Result<Option<Substitution>, CyclicTerm> {
    let mut raw: HashMap<Var, Term> = HashMap::new();
    let mut stack = vec![(left.clone(), right.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = walk(&a, &raw);
        let b = walk(&b, &raw);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                // A binding that would make a cyclic term is reported now;
                // left alone it could send two cyclic terms round forever.
                if occurs(&x, &t, &raw) {
                    return Err(CyclicTerm {
                        var: x.name().to_string(),
                    });
                }
                raw.insert(x, t);
            }
            (Term::Atom(x), Term::Atom(y)) if x == y => {}
            (Term::Int(x), Term::Int(y)) if x == y => {}
            (Term::Compound(f, xs), Term::Compound(g, ys)) if f == g && xs.len() == ys.len() => {
                stack.extend(xs.into_iter().zip(ys).rev());
            }
            _ => return Ok(None),
        }
    }
    Substitution::resolve(raw).map(Some)
}

/// Whether `x` appears in `t` once the bindings in `raw` are followed.
fn occurs(x: &Var, t: &Term, raw: &HashMap<Var, Term>) -> bool {
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            Term::Var(v) if v == x => return true,
            Term::Var(v) => stack.extend(raw.get(v)),
            Term::Compound(_, args) => stack.extend(args),
            _ => {}
        }
    }
    false
}

/// Dereferences variable chains at the top of a term only.
fn walk(t: &Term, raw: &HashMap<Var, Term>) -> Term {
    let mut cur = t;
    let mut seen = 0usize;
    while let Term::Var(v) = cur {
        match raw.get(v) {
            Some(next) if seen <= raw.len() => {
                cur = next;
                seen += 1;
            }
            _ => break,
        }
    }
    cur.clone()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RenameStyle {
    /// `X`, `X'`, `X''`, ...
    #[default]
    Prime,
    /// `Z`, `Z1`, `Z2`, ...
    Numeric,
}

impl RenameStyle {
    fn candidate(self, base: &str, k: usize) -> String {
        match self {
            RenameStyle::Prime => format!("{base}{}", "'".repeat(k)),
            RenameStyle::Numeric => format!("{base}{k}"),
        }
    }
}

/// Source of fresh variable ids plus the naming style for renamed clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenameCounter {
    next_id: u64,
    style: RenameStyle,
}

impl RenameCounter {
    /// `first_id` must be larger than any id already in use.
    pub fn new(first_id: u64, style: RenameStyle) -> Self {
        RenameCounter {
            next_id: first_id.max(1),
            style,
        }
    }

    pub fn next_id(&self) -> u64 {
        self.next_id
    }

    pub fn style(&self) -> RenameStyle {
        self.style
    }
}

/// Copies `clause` with fresh variables.
///
/// A variable keeps its name unless that name is in `avoid`; otherwise the
/// first free name in the counter's style is taken. Anonymous variables stay
/// `_`. Ids always come from the counter.
pub fn rename_clause(
    clause: &Clause,
    ctr: RenameCounter,
    avoid: &HashSet<String>,
) -> (Clause, RenameCounter) {
    let vars = clause.variables();
    let originals: HashSet<&str> = vars.iter().map(Var::name).collect();
    let mut taken: HashSet<String> = avoid.clone();
    let mut next_id = ctr.next_id;
    let mut mapping: HashMap<Var, Term> = HashMap::new();

    for v in &vars {
        let name = if v.is_anonymous() || !taken.contains(v.name()) {
            v.name().to_string()
        } else {
            let base = base_name(v.name());
            (1..)
                .map(|k| ctr.style.candidate(base, k))
                .find(|c| !taken.contains(c) && !originals.contains(c.as_str()))
                .expect("an unused name always exists")
        };
        if !v.is_anonymous() {
            taken.insert(name.clone());
        }
        mapping.insert(v.clone(), Term::Var(Var::new(next_id, name)));
        next_id += 1;
    }

    let mut rename = |v: &Var| mapping[v].clone();
    let head = clause.head.map_vars(&mut rename);
    let body = clause
        .body
        .iter()
        .map(|g| g.map_terms(&mut |t| t.map_vars(&mut rename)))
        .collect();
    (
        Clause { head, body },
        RenameCounter {
            next_id,
            style: ctr.style,
        },
    )
}

fn base_name(name: &str) -> &str {
    name.trim_end_matches('\'')
}
