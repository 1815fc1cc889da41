//! Canonical text serialization of search trees.
//!
//! The format is line oriented. Each line is two spaces of indentation per
//! nesting level, a keyword, and its arguments. Strings are written as JSON
//! string literals.
//!
//! ```text
//! sldtree 1
//! query "jealous(X,Y)"
//! truncated false
//! node open
//!   goal "jealous(X,Y)"
//!   edge
//!     bind "X" "A"
//!     bind "Y" "B"
//!     node open
//!       goal "loves(A,C)"
//!       ...
//! end
//! ```
//!
//! A `node` line is followed by its `goal` lines and then its `edge` blocks,
//! all one level deeper. An `edge` holds `bind` lines and exactly one `node`,
//! also one level deeper. Statuses are `open` (expanded internal node),
//! `success`, `fail`, `pruned` and `truncated`. An `end` line at level zero
//! closes the document; anything after it is ignored. Without it the
//! document runs to the end of the input.
//!
//! Parsing is iterative, so arbitrarily deep trees round-trip.

use std::fmt::Write as _;

use thiserror::Error;

use crate::engine::{NodeId, NodeStatus, SearchTree};
use crate::write::query_text;

pub const FORMAT_HEADER: &str = "sldtree 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeView {
    pub query: String,
    pub truncated: bool,
    pub root: NodeView,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeView {
    pub status: NodeStatus,
    pub goals: Vec<String>,
    pub children: Vec<EdgeView>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeView {
    /// `(variable name, term text)` pairs in label order.
    pub bindings: Vec<(String, String)>,
    pub node: NodeView,
}

impl EdgeView {
    pub fn label_lines(&self) -> Vec<String> {
        self.bindings
            .iter()
            .map(|(v, t)| format!("{v}={t}"))
            .collect()
    }
}

impl NodeView {
    /// Leaf statuses in left-to-right order.
    pub fn leaves(&self) -> Vec<NodeStatus> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            if n.children.is_empty() {
                out.push(n.status);
            }
            stack.extend(n.children.iter().rev().map(|e| &e.node));
        }
        out
    }
}

impl From<&SearchTree> for TreeView {
    fn from(tree: &SearchTree) -> Self {
        // Built bottom-up over a post-order so that deep trees need no recursion.
        let order = tree.preorder();
        let mut built: Vec<Option<NodeView>> = vec![None; tree.len()];
        for &id in order.iter().rev() {
            let node = tree.node(id);
            let children = node
                .children()
                .iter()
                .map(|&c| EdgeView {
                    bindings: tree
                        .node(c)
                        .label()
                        .bindings
                        .iter()
                        .map(|(v, t)| (v.clone(), t.to_string()))
                        .collect(),
                    node: built[c].take().expect("children are built first"),
                })
                .collect();
            built[id] = Some(NodeView {
                status: node.status(),
                goals: node.goals().iter().map(ToString::to_string).collect(),
                children,
            });
        }
        let root: NodeId = tree.root();
        TreeView {
            query: query_text(tree.query()),
            truncated: tree.is_truncated(),
            root: built[root].take().expect("root is built"),
        }
    }
}

fn status_word(s: NodeStatus) -> &'static str {
    match s {
        NodeStatus::Open => "open",
        NodeStatus::Success => "success",
        NodeStatus::Fail => "fail",
        NodeStatus::Pruned => "pruned",
        NodeStatus::Truncated => "truncated",
    }
}

fn parse_status(word: &str) -> Option<NodeStatus> {
    Some(match word {
        "open" => NodeStatus::Open,
        "success" => NodeStatus::Success,
        "fail" => NodeStatus::Fail,
        "pruned" => NodeStatus::Pruned,
        "truncated" => NodeStatus::Truncated,
        _ => return None,
    })
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

pub fn serialize(tree: &SearchTree) -> String {
    serialize_view(&TreeView::from(tree))
}

pub fn serialize_view(view: &TreeView) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_HEADER}");
    let _ = writeln!(out, "query {}", quote(&view.query));
    let _ = writeln!(out, "truncated {}", view.truncated);

    enum Item<'a> {
        Node(&'a NodeView, usize),
        Edge(&'a EdgeView, usize),
    }
    let mut stack = vec![Item::Node(&view.root, 0)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Node(n, level) => {
                indent(&mut out, level);
                let _ = writeln!(out, "node {}", status_word(n.status));
                for g in &n.goals {
                    indent(&mut out, level + 1);
                    let _ = writeln!(out, "goal {}", quote(g));
                }
                stack.extend(n.children.iter().rev().map(|e| Item::Edge(e, level + 1)));
            }
            Item::Edge(e, level) => {
                indent(&mut out, level);
                out.push_str("edge\n");
                for (v, t) in &e.bindings {
                    indent(&mut out, level + 1);
                    let _ = writeln!(out, "bind {} {}", quote(v), quote(t));
                }
                stack.push(Item::Node(&e.node, level + 1));
            }
        }
    }
    out.push_str("end\n");
    out
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("format error at {line}:{column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct LineCursor<'a> {
    line_no: usize,
    rest: &'a str,
    column: usize,
}

impl<'a> LineCursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError {
            line: self.line_no,
            column: self.column,
            message: message.into(),
        })
    }

    fn skip_spaces(&mut self) {
        let trimmed = self.rest.trim_start_matches(' ');
        self.column += self.rest.len() - trimmed.len();
        self.rest = trimmed;
    }

    fn word(&mut self) -> Result<&'a str, FormatError> {
        self.skip_spaces();
        let end = self.rest.find(' ').unwrap_or(self.rest.len());
        if end == 0 {
            return self.err("expected a word");
        }
        let (w, rest) = self.rest.split_at(end);
        self.rest = rest;
        self.column += end;
        Ok(w)
    }

    fn string(&mut self) -> Result<String, FormatError> {
        self.skip_spaces();
        if !self.rest.starts_with('"') {
            return self.err("expected a quoted string");
        }
        let mut de = serde_json::Deserializer::from_str(self.rest).into_iter::<String>();
        match de.next() {
            Some(Ok(s)) => {
                let used = de.byte_offset();
                self.rest = &self.rest[used..];
                self.column += used;
                Ok(s)
            }
            _ => self.err("malformed string literal"),
        }
    }

    fn end(&mut self) -> Result<(), FormatError> {
        self.skip_spaces();
        if self.rest.is_empty() {
            Ok(())
        } else {
            self.err("unexpected trailing text")
        }
    }
}

enum Frame {
    Node(usize, NodeView),
    Edge(usize, Vec<(String, String)>, Option<NodeView>),
}

fn frame_level(f: &Frame) -> usize {
    match f {
        Frame::Node(l, _) | Frame::Edge(l, _, _) => *l,
    }
}

/// Reads text in the format produced by [`serialize`].
pub fn deserialize(text: &str) -> Result<TreeView, FormatError> {
    let mut query = None;
    let mut truncated = None;
    let mut root: Option<NodeView> = None;
    let mut stack: Vec<Frame> = Vec::new();
    let mut header_seen = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        if raw.trim().is_empty() {
            continue;
        }
        let spaces = raw.len() - raw.trim_start_matches(' ').len();
        let mut cur = LineCursor {
            line_no,
            rest: &raw[spaces..],
            column: spaces + 1,
        };
        if spaces % 2 != 0 {
            return cur.err("indentation must be a multiple of two spaces");
        }
        let level = spaces / 2;

        if !header_seen {
            if raw != FORMAT_HEADER {
                return cur.err(format!("expected header `{FORMAT_HEADER}`"));
            }
            header_seen = true;
            continue;
        }

        // Close every frame at this level or deeper.
        while stack.last().is_some_and(|f| frame_level(f) >= level) {
            close_frame(&mut stack, &mut root, &cur)?;
        }

        let keyword = cur.word()?;
        if keyword == "end" && level == 0 {
            cur.end()?;
            last_line = line_no - 1;
            break;
        }
        match keyword {
            "query" | "truncated" if level == 0 && root.is_none() && stack.is_empty() => {
                if keyword == "query" {
                    query = Some(cur.string()?);
                } else {
                    truncated = Some(match cur.word()? {
                        "true" => true,
                        "false" => false,
                        _ => return cur.err("expected true or false"),
                    });
                }
            }
            "node" => {
                let status = match parse_status(cur.word()?) {
                    Some(s) => s,
                    None => return cur.err("unknown node status"),
                };
                match stack.last() {
                    None if level == 0 && root.is_none() => {}
                    Some(Frame::Edge(l, _, None)) if *l + 1 == level => {}
                    _ => return cur.err("`node` not allowed here"),
                }
                stack.push(Frame::Node(
                    level,
                    NodeView {
                        status,
                        goals: Vec::new(),
                        children: Vec::new(),
                    },
                ));
            }
            "goal" => {
                let g = cur.string()?;
                match stack.last_mut() {
                    Some(Frame::Node(l, n)) if *l + 1 == level && n.children.is_empty() => {
                        n.goals.push(g)
                    }
                    _ => return cur.err("`goal` not allowed here"),
                }
            }
            "edge" => {
                match stack.last() {
                    Some(Frame::Node(l, _)) if *l + 1 == level => {}
                    _ => return cur.err("`edge` not allowed here"),
                }
                stack.push(Frame::Edge(level, Vec::new(), None));
            }
            "bind" => {
                let v = cur.string()?;
                let t = cur.string()?;
                match stack.last_mut() {
                    Some(Frame::Edge(l, b, None)) if *l + 1 == level => b.push((v, t)),
                    _ => return cur.err("`bind` not allowed here"),
                }
            }
            other => return cur.err(format!("unknown keyword `{other}`")),
        }
        cur.end()?;
    }

    let eof = LineCursor {
        line_no: last_line + 1,
        rest: "",
        column: 1,
    };
    if !header_seen {
        return eof.err("empty input");
    }
    while !stack.is_empty() {
        close_frame(&mut stack, &mut root, &eof)?;
    }
    Ok(TreeView {
        query: match query {
            Some(q) => q,
            None => return eof.err("missing `query` line"),
        },
        truncated: match truncated {
            Some(t) => t,
            None => return eof.err("missing `truncated` line"),
        },
        root: match root {
            Some(r) => r,
            None => return eof.err("missing root node"),
        },
    })
}

fn close_frame(
    stack: &mut Vec<Frame>,
    root: &mut Option<NodeView>,
    cur: &LineCursor<'_>,
) -> Result<(), FormatError> {
    match stack.pop().expect("caller checked the stack") {
        Frame::Node(_, node) => match stack.last_mut() {
            Some(Frame::Edge(_, _, slot @ None)) => *slot = Some(node),
            None => *root = Some(node),
            _ => return cur.err("misplaced node"),
        },
        Frame::Edge(_, bindings, node) => {
            let Some(node) = node else {
                return cur.err("edge without a node");
            };
            match stack.last_mut() {
                Some(Frame::Node(_, parent)) => parent.children.push(EdgeView { bindings, node }),
                _ => return cur.err("misplaced edge"),
            }
        }
    }
    Ok(())
}
