//! Builds complete SLD search trees for a small Prolog subset, draws them
//! as text, and lists the answers in the order Prolog finds them.
//!
//! ```
//! use sldtree::{build_tree, parse_program, parse_query, solutions, EngineOptions};
//!
//! let kb = parse_program("c(1).\nc(2).").unwrap();
//! let query = parse_query("c(X)").unwrap();
//! let tree = build_tree(&kb, &query, &EngineOptions::default()).unwrap();
//! let xs: Vec<String> = solutions(&tree).iter().map(|a| a.get("X").unwrap().to_string()).collect();
//! assert_eq!(xs, ["1", "2"]);
//! ```

pub mod canonical;
pub mod cli;
pub mod engine;
pub mod fixtures;
pub mod reader;
pub mod render;
pub mod term;
pub mod unify;
pub mod write;

pub use canonical::{deserialize, serialize, FormatError, TreeView};
pub use engine::{
    build_tree, solutions, Answer, EdgeLabel, EngineError, EngineOptions, Limits, NodeId,
    NodeStatus, SearchNode, SearchTree, UnknownPolicy,
};
pub use reader::{parse_program, parse_query, parse_term, ParseError, SourcePosition};
pub use render::{render_text, render_view, RenderOptions};
pub use term::{list_term, variables_of, Clause, CompareOp, Goal, Program, Term, Var};
pub use unify::{rename_clause, unify, CyclicTerm, RenameCounter, RenameStyle, Substitution};
