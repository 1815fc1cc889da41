//! Canonical text form of terms and goals.
//!
//! Output is re-readable by [`crate::reader`] except for primed variable
//! names, which the reader also accepts.

use std::fmt::{self, Display, Formatter, Write as _};

use crate::term::{Goal, Term, CONS, NIL};

fn is_plain_atom(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

pub(crate) fn write_atom(f: &mut impl fmt::Write, name: &str) -> fmt::Result {
    if name == NIL || is_plain_atom(name) {
        return f.write_str(name);
    }
    f.write_char('\'')?;
    for c in name.chars() {
        match c {
            '\'' => f.write_str("\\'")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('\'')
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v.name()),
            Term::Atom(name) => write_atom(f, name),
            Term::Int(n) => write!(f, "{n}"),
            Term::Compound(name, args) if name == CONS && args.len() == 2 => {
                let (items, tail) = self.list_parts();
                f.write_char('[')?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    write!(f, "{item}")?;
                }
                if !matches!(tail, Term::Atom(n) if n == NIL) {
                    write!(f, "|{tail}")?;
                }
                f.write_char(']')
            }
            Term::Compound(name, args) => {
                write_atom(f, name)?;
                f.write_char('(')?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_char(')')
            }
        }
    }
}

fn write_seq(f: &mut Formatter<'_>, goals: &[Goal], sep: &str) -> fmt::Result {
    for (i, g) in goals.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

impl Display for Goal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Goal::Call(t) => write!(f, "{t}"),
            Goal::Cut => f.write_str("!"),
            Goal::True => f.write_str("true"),
            Goal::Fail => f.write_str("fail"),
            Goal::Compare(op, l, r) => write!(f, "{l} {} {r}", op.symbol()),
            Goal::Disjunction(l, r) => {
                f.write_char('(')?;
                write_seq(f, l, ",")?;
                f.write_char(';')?;
                write_seq(f, r, ",")?;
                f.write_char(')')
            }
            Goal::Negation(inner) => match inner.as_slice() {
                [single @ (Goal::Call(_) | Goal::Cut | Goal::True | Goal::Fail)] => {
                    write!(f, "\\+ {single}")
                }
                [single @ Goal::Disjunction(..)] => write!(f, "\\+ {single}"),
                _ => {
                    f.write_str("\\+ (")?;
                    write_seq(f, inner, ", ")?;
                    f.write_char(')')
                }
            },
        }
    }
}

/// A goal list in box form: `[g1,g2,...]`.
pub struct GoalList<'a>(pub &'a [Goal]);

impl Display for GoalList<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_char('[')?;
        write_seq(f, self.0, ",")?;
        f.write_char(']')
    }
}

/// A goal sequence as a query: `g1, g2`.
pub fn query_text(goals: &[Goal]) -> String {
    let mut s = String::new();
    for (i, g) in goals.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{g}");
    }
    s
}
