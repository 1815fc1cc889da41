//! Construction of the complete search tree for a query.
//!
//! The tree is grown depth-first, leftmost goal first, clauses in source
//! order. Every branch is kept: failed unifications become `x` leaves,
//! branches cut away become `X` leaves, and branches stopped by a resource
//! limit become `...` leaves.
//!
//! Cuts are scoped by a barrier stored next to every pending goal. A rule
//! body spliced in by the node that selected a call carries that node as its
//! barrier; a cut prunes every still-unexplored branch below its barrier.
//! Disjunctions are transparent to cut. A negation opens two barriers: the
//! goals inside it are scoped to its first child, and the trailing `!, fail`
//! is scoped to the negation node itself, so it can remove the negation's
//! success branch.

use std::collections::HashSet;

use thiserror::Error;

use crate::term::{goal_variables, CompareOp, Goal, PredicateKey, Program, Term, Var};
use crate::unify::{rename_clause, unify, CyclicTerm, RenameCounter, RenameStyle, Substitution};
use crate::write::GoalList;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    /// Unexpanded, or an expanded internal node.
    Open,
    /// Empty goal list.
    Success,
    Fail,
    /// Removed by a cut before it was explored.
    Pruned,
    /// Not explored because a depth or node limit was reached.
    Truncated,
}

impl NodeStatus {
    pub fn glyph(self) -> &'static str {
        match self {
            NodeStatus::Open => "?",
            NodeStatus::Success => "[]",
            NodeStatus::Fail => "x",
            NodeStatus::Pruned => "X",
            NodeStatus::Truncated => "...",
        }
    }
}

/// Bindings shown on the branch into a node, e.g. `A=vincent`, `C=mia`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabel {
    pub bindings: Vec<(String, Term)>,
}

impl EdgeLabel {
    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        self.bindings
            .iter()
            .map(|(name, t)| format!("{name}={t}"))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: 500,
            max_nodes: 10_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnknownPolicy {
    /// Calls to undefined predicates fail.
    #[default]
    Fail,
    /// Calls to undefined predicates raise an existence error.
    Error,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    pub limits: Limits,
    pub unknown: UnknownPolicy,
    pub rename: RenameStyle,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("empty query")]
    EmptyQuery,
    #[error("limits must be at least 1 (max-depth {max_depth}, max-nodes {max_nodes})")]
    InvalidLimits { max_depth: usize, max_nodes: usize },
    #[error("in goal `{goal}`: {source}")]
    Cyclic {
        goal: String,
        #[source]
        source: CyclicTerm,
    },
    #[error("instantiation error in goal `{goal}`: arguments are not sufficiently instantiated")]
    Instantiation { goal: String },
    #[error("type error in goal `{goal}`: expected integer, found `{found}`")]
    Type { goal: String, found: String },
    #[error("existence error in goal `{goal}`: unknown procedure {predicate}")]
    Existence {
        goal: String,
        predicate: PredicateKey,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ScopedGoal {
    goal: Goal,
    barrier: NodeId,
}

impl ScopedGoal {
    fn new(goal: Goal, barrier: NodeId) -> Self {
        ScopedGoal { goal, barrier }
    }
}

/// One box of the search tree.
#[derive(Clone, Debug)]
pub struct SearchNode {
    goals: Vec<ScopedGoal>,
    status: NodeStatus,
    children: Vec<NodeId>,
    label: EdgeLabel,
    mgu: Substitution,
    parent: Option<NodeId>,
    depth: usize,
    barrier: Option<NodeId>,
    /// Clause index still to be resolved against the parent's selected goal.
    pending: Option<usize>,
}

impl SearchNode {
    fn new(parent: Option<NodeId>, depth: usize) -> Self {
        SearchNode {
            goals: Vec::new(),
            status: NodeStatus::Open,
            children: Vec::new(),
            label: EdgeLabel::default(),
            mgu: Substitution::new(),
            parent,
            depth,
            barrier: None,
            pending: None,
        }
    }

    pub fn goals(&self) -> Vec<Goal> {
        self.goals.iter().map(|g| g.goal.clone()).collect()
    }

    /// The goal list as drawn in a box, e.g. `[loves(A,C),loves(B,C)]`.
    pub fn goals_text(&self) -> String {
        GoalList(&self.goals()).to_string()
    }

    pub fn status(&self) -> NodeStatus {
        self.status
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    /// Bindings on the edge from the parent.
    pub fn label(&self) -> &EdgeLabel {
        &self.label
    }

    /// Unifier of the resolution step that produced this node.
    pub fn mgu(&self) -> &Substitution {
        &self.mgu
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Set when this node opened a cut scope (a call or a negation).
    pub fn barrier(&self) -> Option<NodeId> {
        self.barrier
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// A finished search tree. Node 0 is the root.
#[derive(Clone, Debug)]
pub struct SearchTree {
    nodes: Vec<SearchNode>,
    query: Vec<Goal>,
    truncated: bool,
}

impl SearchTree {
    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node(&self, id: NodeId) -> &SearchNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn query(&self) -> &[Goal] {
        &self.query
    }

    /// Named variables of the query, first occurrence first.
    pub fn query_variables(&self) -> Vec<Var> {
        goal_variables(&self.query)
            .into_iter()
            .filter(|v| !v.is_anonymous())
            .collect()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Node ids in depth-first, left-to-right order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root()];
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.nodes[id].children.iter().rev());
        }
        out
    }

    /// Leaf statuses, left to right.
    pub fn leaves(&self) -> Vec<NodeStatus> {
        self.preorder()
            .into_iter()
            .filter(|&id| self.nodes[id].is_leaf())
            .map(|id| self.nodes[id].status)
            .collect()
    }

    pub fn count(&self, status: NodeStatus) -> usize {
        self.leaves().into_iter().filter(|&s| s == status).count()
    }

    /// Child indices from the root down to `id`.
    pub fn path_to(&self, id: NodeId) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            let idx = self.nodes[p]
                .children
                .iter()
                .position(|&c| c == cur)
                .expect("child is listed by its parent");
            path.push(idx);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Composition of every unifier from the root down to `id`.
    pub fn path_substitution(&self, id: NodeId) -> Substitution {
        let mut chain = Vec::new();
        let mut cur = Some(id);
        while let Some(n) = cur {
            chain.push(n);
            cur = self.nodes[n].parent;
        }
        chain.iter().rev().fold(Substitution::new(), |acc, &n| {
            acc.compose(&self.nodes[n].mgu)
        })
    }
}

/// One solution: the query's variables as bound along a path to a `[]` leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub bindings: Vec<(Var, Term)>,
    pub path: Vec<usize>,
}

impl Answer {
    pub fn get(&self, name: &str) -> Option<&Term> {
        self.bindings
            .iter()
            .find(|(v, _)| v.name() == name)
            .map(|(_, t)| t)
    }

    /// Bindings as `Name = term` strings, dropping variables left unbound.
    pub fn display_bindings(&self) -> Vec<String> {
        self.bindings
            .iter()
            .filter(|(v, t)| *t != Term::Var(v.clone()))
            .map(|(v, t)| format!("{} = {}", v.name(), t))
            .collect()
    }
}

/// Every answer of the tree in the order Prolog would report them.
pub fn solutions(tree: &SearchTree) -> Vec<Answer> {
    let vars = tree.query_variables();
    tree.preorder()
        .into_iter()
        .filter(|&id| tree.node(id).status == NodeStatus::Success)
        .map(|id| {
            let sub = tree.path_substitution(id);
            Answer {
                bindings: vars
                    .iter()
                    .map(|v| (v.clone(), sub.apply(&Term::Var(v.clone()))))
                    .collect(),
                path: tree.path_to(id),
            }
        })
        .collect()
}

/// Builds the exhaustive search tree of `query` against `program`.
pub fn build_tree(
    program: &Program,
    query: &[Goal],
    opts: &EngineOptions,
) -> Result<SearchTree, EngineError> {
    if query.is_empty() {
        return Err(EngineError::EmptyQuery);
    }
    let Limits {
        max_depth,
        max_nodes,
    } = opts.limits;
    if max_depth == 0 || max_nodes == 0 {
        return Err(EngineError::InvalidLimits {
            max_depth,
            max_nodes,
        });
    }
    let first_id = program
        .max_var_id()
        .max(goal_variables(query).iter().map(Var::id).max().unwrap_or(0))
        + 1;
    let mut builder = Builder {
        program,
        opts,
        nodes: Vec::new(),
        stack: Vec::new(),
        ctr: RenameCounter::new(first_id, opts.rename),
        truncated: false,
    };
    let mut root = SearchNode::new(None, 0);
    root.goals = query
        .iter()
        .map(|g| ScopedGoal::new(g.clone(), 0))
        .collect();
    builder.nodes.push(root);
    builder.stack.push(0);
    builder.run()?;
    Ok(SearchTree {
        nodes: builder.nodes,
        query: query.to_vec(),
        truncated: builder.truncated,
    })
}

struct Builder<'a> {
    program: &'a Program,
    opts: &'a EngineOptions,
    nodes: Vec<SearchNode>,
    /// Unexplored branches; the top is the next one depth-first.
    stack: Vec<NodeId>,
    ctr: RenameCounter,
    truncated: bool,
}

impl Builder<'_> {
    fn run(&mut self) -> Result<(), EngineError> {
        while let Some(id) = self.stack.pop() {
            if self.nodes[id].status == NodeStatus::Open {
                self.visit(id)?;
            }
        }
        Ok(())
    }

    fn visit(&mut self, id: NodeId) -> Result<(), EngineError> {
        if let Some(clause_index) = self.nodes[id].pending.take() {
            self.resolve(id, clause_index)?;
            if self.nodes[id].status != NodeStatus::Open {
                return Ok(());
            }
        }
        if self.nodes[id].goals.is_empty() {
            self.nodes[id].status = NodeStatus::Success;
            return Ok(());
        }
        let limits = self.opts.limits;
        if self.nodes[id].depth >= limits.max_depth || self.nodes.len() >= limits.max_nodes {
            self.nodes[id].status = NodeStatus::Truncated;
            self.truncated = true;
            return Ok(());
        }
        self.expand(id)
    }

    /// Variable names visible on the path from the root to `id`.
    fn names_in_scope(&self, id: NodeId) -> HashSet<String> {
        let mut names = HashSet::new();
        let mut cur = Some(id);
        while let Some(n) = cur {
            let node = &self.nodes[n];
            let goals: Vec<Goal> = node.goals();
            for v in goal_variables(&goals) {
                if !v.is_anonymous() {
                    names.insert(v.name().to_string());
                }
            }
            cur = node.parent;
        }
        names
    }

    /// Resolves the parent's selected call against one clause.
    fn resolve(&mut self, id: NodeId, clause_index: usize) -> Result<(), EngineError> {
        let parent = self.nodes[id].parent.expect("pending nodes have a parent");
        let (selected, rest) = self.nodes[parent]
            .goals
            .split_first()
            .expect("parent had a selected goal");
        let Goal::Call(call) = &selected.goal else {
            unreachable!("only calls create pending children");
        };
        let (name, arity) = call.indicator().expect("calls are callable");
        let clause = &self
            .program
            .clauses_for(name, arity)
            .expect("pending children exist only for defined predicates")[clause_index];
        let avoid = self.names_in_scope(parent);
        let (renamed, ctr) = rename_clause(clause, self.ctr, &avoid);
        self.ctr = ctr;

        let mgu = unify(call, &renamed.head).map_err(|source| EngineError::Cyclic {
            goal: call.to_string(),
            source,
        })?;
        let Some(mgu) = mgu else {
            self.nodes[id].status = NodeStatus::Fail;
            return Ok(());
        };

        let label = EdgeLabel {
            bindings: call
                .variables()
                .into_iter()
                .filter(|v| !v.is_anonymous())
                .filter_map(|v| mgu.get(&v).map(|t| (v.name().to_string(), t.clone())))
                .collect(),
        };
        let goals = renamed
            .body
            .iter()
            .map(|g| ScopedGoal::new(mgu.apply_goal(g), parent))
            .chain(
                rest.iter()
                    .map(|g| ScopedGoal::new(mgu.apply_goal(&g.goal), g.barrier)),
            )
            .collect();

        let node = &mut self.nodes[id];
        node.goals = goals;
        node.label = label;
        node.mgu = mgu;
        Ok(())
    }

    fn add_child(&mut self, parent: NodeId, goals: Vec<ScopedGoal>, status: NodeStatus) -> NodeId {
        let id = self.nodes.len();
        let mut node = SearchNode::new(Some(parent), self.nodes[parent].depth + 1);
        node.goals = goals;
        node.status = status;
        self.nodes.push(node);
        self.nodes[parent].children.push(id);
        id
    }

    fn push_children(&mut self, id: NodeId) {
        let open: Vec<NodeId> = self.nodes[id]
            .children
            .iter()
            .copied()
            .filter(|&c| self.nodes[c].status == NodeStatus::Open)
            .collect();
        self.stack.extend(open.into_iter().rev());
    }

    fn expand(&mut self, id: NodeId) -> Result<(), EngineError> {
        let (selected, rest) = {
            let goals = &self.nodes[id].goals;
            (goals[0].clone(), goals[1..].to_vec())
        };
        match selected.goal {
            Goal::Call(ref call) => {
                let (name, arity) = call.indicator().expect("calls are callable");
                match self.program.clauses_for(name, arity) {
                    Some(clauses) => {
                        self.nodes[id].barrier = Some(id);
                        for i in 0..clauses.len() {
                            let child = self.add_child(id, Vec::new(), NodeStatus::Open);
                            self.nodes[child].pending = Some(i);
                        }
                    }
                    None => match self.opts.unknown {
                        UnknownPolicy::Fail => {
                            self.add_child(id, Vec::new(), NodeStatus::Fail);
                        }
                        UnknownPolicy::Error => {
                            return Err(EngineError::Existence {
                                goal: call.to_string(),
                                predicate: PredicateKey {
                                    name: name.to_string(),
                                    arity,
                                },
                            })
                        }
                    },
                }
            }
            Goal::True => {
                self.add_child(id, rest, NodeStatus::Open);
            }
            Goal::Fail => {
                self.add_child(id, Vec::new(), NodeStatus::Fail);
            }
            Goal::Cut => {
                self.prune_below(selected.barrier);
                self.add_child(id, rest, NodeStatus::Open);
            }
            Goal::Disjunction(ref left, ref right) => {
                for branch in [left, right] {
                    let goals = branch
                        .iter()
                        .map(|g| ScopedGoal::new(g.clone(), selected.barrier))
                        .chain(rest.iter().cloned())
                        .collect();
                    self.add_child(id, goals, NodeStatus::Open);
                }
            }
            Goal::Negation(ref inner) => {
                self.nodes[id].barrier = Some(id);
                let attempt = self.nodes.len();
                let goals = inner
                    .iter()
                    .map(|g| ScopedGoal::new(g.clone(), attempt))
                    .chain([
                        ScopedGoal::new(Goal::Cut, id),
                        ScopedGoal::new(Goal::Fail, id),
                    ])
                    .collect();
                let created = self.add_child(id, goals, NodeStatus::Open);
                debug_assert_eq!(created, attempt);
                self.add_child(id, rest, NodeStatus::Open);
            }
            Goal::Compare(op, ref lhs, ref rhs) => {
                let holds = compare(op, lhs, rhs, &selected.goal)?;
                if holds {
                    self.add_child(id, rest, NodeStatus::Open);
                } else {
                    self.add_child(id, Vec::new(), NodeStatus::Fail);
                }
            }
        }
        self.push_children(id);
        Ok(())
    }

    /// Marks every unexplored branch strictly below `barrier` as pruned.
    ///
    /// Branches below the barrier were all pushed after the barrier node was
    /// expanded, so they sit on top of the stack.
    fn prune_below(&mut self, barrier: NodeId) {
        while let Some(&top) = self.stack.last() {
            if !self.is_strict_descendant(top, barrier) {
                break;
            }
            self.stack.pop();
            let node = &mut self.nodes[top];
            node.status = NodeStatus::Pruned;
            node.pending = None;
        }
    }

    fn is_strict_descendant(&self, node: NodeId, ancestor: NodeId) -> bool {
        let mut cur = self.nodes[node].parent;
        while let Some(p) = cur {
            if p == ancestor {
                return true;
            }
            cur = self.nodes[p].parent;
        }
        false
    }
}

fn compare(op: CompareOp, lhs: &Term, rhs: &Term, goal: &Goal) -> Result<bool, EngineError> {
    let as_int = |t: &Term| match t {
        Term::Int(n) => Ok(*n),
        Term::Var(_) => Err(EngineError::Instantiation {
            goal: goal.to_string(),
        }),
        other => Err(EngineError::Type {
            goal: goal.to_string(),
            found: other.to_string(),
        }),
    };
    Ok(op.eval(as_int(lhs)?, as_int(rhs)?))
}
