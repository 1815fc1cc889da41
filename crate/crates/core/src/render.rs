//! Text drawing of search trees.
//!
//! Subtree widths are computed bottom-up and each parent box is centred over
//! the span of its children's anchors. Sibling subtrees are separated by a three column gutter:
//!
//! ```text
//!               [a(A)]
//!       /---------+---------\
//!       | A=X               | A=X
//!     [b(X)]              [c(X)]
//! ```
//!
//! Edge labels sit to the right of the branch stem, one binding per line.
//! A node whose children would not fit in `max_width` columns stacks them
//! vertically instead:
//!
//! ```text
//! [p(X)]
//! |
//! |\__ X=a
//! |    []
//! |
//! \___ X=b
//!      []
//! ```

use crate::canonical::{NodeView, TreeView};
use crate::engine::{NodeStatus, SearchTree};

const GUTTER: usize = 3;
const STACK_INDENT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// At least 40.
    pub max_width: usize,
    /// Draw goal lists inside `[...]`.
    pub show_boxes: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            max_width: 120,
            show_boxes: true,
        }
    }
}

impl RenderOptions {
    pub const MIN_WIDTH: usize = 40;

    pub fn with_width(max_width: usize) -> Self {
        RenderOptions {
            max_width: max_width.max(Self::MIN_WIDTH),
            ..Self::default()
        }
    }
}

pub fn render_text(tree: &SearchTree, opts: &RenderOptions) -> String {
    render_view(&TreeView::from(tree), opts)
}

pub fn render_view(view: &TreeView, opts: &RenderOptions) -> String {
    let opts = RenderOptions {
        max_width: opts.max_width.max(RenderOptions::MIN_WIDTH),
        ..*opts
    };
    let block = layout(&view.root, &opts);
    let mut out = String::new();
    for row in &block.rows {
        let line: String = row.iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn node_text(node: &NodeView, opts: &RenderOptions) -> String {
    match node.status {
        NodeStatus::Open if !node.children.is_empty() || !node.goals.is_empty() => {
            let inner = node.goals.join(",");
            if opts.show_boxes {
                format!("[{inner}]")
            } else {
                inner
            }
        }
        status => status.glyph().to_string(),
    }
}

#[derive(Debug, Default)]
struct Block {
    rows: Vec<Vec<char>>,
    width: usize,
    anchor: usize,
    /// Columns of leaf texts in left-to-right order (side-by-side layout).
    leaf_cols: Vec<usize>,
}

impl Block {
    fn put(&mut self, row: usize, col: usize, text: &str) {
        if self.rows.len() <= row {
            self.rows.resize(row + 1, Vec::new());
        }
        let r = &mut self.rows[row];
        for (i, c) in text.chars().enumerate() {
            let at = col + i;
            if r.len() <= at {
                r.resize(at + 1, ' ');
            }
            r[at] = c;
        }
        self.width = self.width.max(col + text.chars().count());
    }

    fn put_char(&mut self, row: usize, col: usize, c: char) {
        let mut buf = [0u8; 4];
        self.put(row, col, c.encode_utf8(&mut buf));
    }

    fn paste(&mut self, row: usize, col: usize, other: &Block) {
        for (i, r) in other.rows.iter().enumerate() {
            for (j, &c) in r.iter().enumerate() {
                if c != ' ' {
                    self.put_char(row + i, col + j, c);
                }
            }
        }
        self.width = self.width.max(col + other.width);
    }
}

fn text_len(s: &str) -> usize {
    s.chars().count()
}

fn layout(node: &NodeView, opts: &RenderOptions) -> Block {
    let text = node_text(node, opts);
    if node.children.is_empty() {
        let mut b = Block::default();
        b.put(0, 0, &text);
        b.anchor = text_len(&text) / 2;
        b.leaf_cols = vec![0];
        return b;
    }
    let kids: Vec<(Block, Vec<String>)> = node
        .children
        .iter()
        .map(|e| (layout(&e.node, opts), e.label_lines()))
        .collect();
    let side = side_by_side(&text, &kids);
    if side.width <= opts.max_width {
        side
    } else {
        stacked(&text, kids)
    }
}

fn side_by_side(text: &str, kids: &[(Block, Vec<String>)]) -> Block {
    let mut offsets = Vec::with_capacity(kids.len());
    let mut x = 0usize;
    for (block, label) in kids {
        offsets.push(x);
        let label_width = label.iter().map(|l| text_len(l)).max().unwrap_or(0);
        let column_width = if label_width > 0 {
            block.width.max(block.anchor + 2 + label_width)
        } else {
            block.width
        };
        x += column_width + GUTTER;
    }
    let first = offsets[0] + kids[0].0.anchor;
    let last = offsets[kids.len() - 1] + kids[kids.len() - 1].0.anchor;
    let center = (first + last) / 2;
    let half = text_len(text) / 2;
    let shift = half.saturating_sub(center);
    let center = center + shift;
    let anchors: Vec<usize> = offsets
        .iter()
        .zip(kids)
        .map(|(o, (b, _))| o + shift + b.anchor)
        .collect();

    let mut out = Block::default();
    out.put(0, center - half, text);
    out.anchor = center;

    if kids.len() == 1 {
        out.put_char(1, center, '|');
    } else {
        let (lo, hi) = (anchors[0], anchors[anchors.len() - 1]);
        out.put(1, lo, &"-".repeat(hi - lo + 1));
        if !anchors.contains(&center) {
            out.put_char(1, center, '+');
        }
        for &a in &anchors {
            let glyph = match a.cmp(&center) {
                std::cmp::Ordering::Less => '/',
                std::cmp::Ordering::Equal => '|',
                std::cmp::Ordering::Greater => '\\',
            };
            out.put_char(1, a, glyph);
        }
    }

    let stem_rows = kids.iter().map(|(_, l)| l.len()).max().unwrap_or(0).max(1);
    for ((_, label), &a) in kids.iter().zip(&anchors) {
        for r in 0..stem_rows {
            out.put_char(2 + r, a, '|');
            if let Some(line) = label.get(r) {
                out.put(2 + r, a + 2, line);
            }
        }
    }
    let top = 2 + stem_rows;
    for ((block, _), &o) in kids.iter().zip(&offsets) {
        out.paste(top, o + shift, block);
        out.leaf_cols
            .extend(block.leaf_cols.iter().map(|c| c + o + shift));
    }
    out
}

fn stacked(text: &str, kids: Vec<(Block, Vec<String>)>) -> Block {
    let mut out = Block::default();
    out.put(0, 0, text);
    out.anchor = 0;
    let mut row = 1;
    let n = kids.len();
    for (i, (block, label)) in kids.into_iter().enumerate() {
        let last = i + 1 == n;
        let trunk = if last { ' ' } else { '|' };
        out.put_char(row, 0, '|');
        row += 1;
        let branch = if last { "\\___" } else { "|\\__" };
        out.put(row, 0, branch);
        if let Some(first) = label.first() {
            out.put(row, STACK_INDENT, first);
        }
        row += 1;
        for line in label.iter().skip(1) {
            out.put_char(row, 0, trunk);
            out.put(row, STACK_INDENT, line);
            row += 1;
        }
        for r in 0..block.rows.len() {
            out.put_char(row + r, 0, trunk);
        }
        out.paste(row, STACK_INDENT, &block);
        out.leaf_cols
            .extend(block.leaf_cols.iter().map(|c| c + STACK_INDENT));
        row += block.rows.len();
    }
    out
}
