//! Reader for the Prolog subset: facts, rules, queries, lists, `\+`,
//! `not/1`, cut, disjunction and integer comparisons.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::term::{list_term, Clause, CompareOp, Goal, Program, Term, Var, ANONYMOUS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at {pos}: {message}")]
pub struct ParseError {
    pub pos: SourcePosition,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(String),
    Name(String),
    Quoted(String),
    Int(i64),
    /// `(`; the flag says whether it directly follows the previous token.
    Open(bool),
    Close,
    OpenList,
    CloseList,
    Comma,
    Bar,
    Semicolon,
    End,
    Neck,
    NotProvable,
    Bang,
    Cmp(CompareOp),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(n) | Tok::Name(n) => format!("`{n}`"),
            Tok::Quoted(n) => format!("'{n}'"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Open(_) => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::OpenList => "`[`".into(),
            Tok::CloseList => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Semicolon => "`;`".into(),
            Tok::End => "`.`".into(),
            Tok::Neck => "`:-`".into(),
            Tok::NotProvable => "`\\+`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Cmp(op) => format!("`{}`", op.symbol()),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    pos: SourcePosition,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    last_end: Option<(usize, usize)>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
            last_end: None,
        }
    }

    fn pos(&self) -> SourcePosition {
        SourcePosition {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn err(pos: SourcePosition, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) -> Result<(), ParseError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                Some('/') if self.peek2() == Some('*') => {
                    let start = self.pos();
                    self.bump();
                    self.bump();
                    loop {
                        match self.bump() {
                            Some('*') if self.peek() == Some('/') => {
                                self.bump();
                                break;
                            }
                            Some(_) => {}
                            None => return Err(Self::err(start, "unterminated block comment")),
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn integer(&mut self, pos: SourcePosition, negative: bool) -> Result<Tok, ParseError> {
        let mut digits = String::new();
        if negative {
            digits.push('-');
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        digits
            .parse::<i64>()
            .map(Tok::Int)
            .map_err(|_| Self::err(pos, format!("integer out of range: {digits}")))
    }

    fn quoted(&mut self, pos: SourcePosition) -> Result<Tok, ParseError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(Self::err(pos, "unterminated quoted atom")),
                Some('\'') => {
                    if self.peek() == Some('\'') {
                        self.bump();
                        s.push('\'');
                    } else {
                        return Ok(Tok::Quoted(s));
                    }
                }
                Some('\\') => match self.bump() {
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some(c @ ('\\' | '\'')) => s.push(c),
                    _ => return Err(Self::err(pos, "bad escape in quoted atom")),
                },
                Some(c) => s.push(c),
            }
        }
    }

    fn next_token(&mut self) -> Result<Option<Spanned>, ParseError> {
        self.skip_trivia()?;
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = match c {
            c if c.is_uppercase() || c == '_' => {
                let mut name = self.ident();
                while self.peek() == Some('\'') {
                    name.push('\'');
                    self.bump();
                }
                Tok::Var(name)
            }
            c if c.is_alphabetic() => Tok::Name(self.ident()),
            c if c.is_ascii_digit() => self.integer(pos, false)?,
            '\'' => self.quoted(pos)?,
            '-' if self.peek2().is_some_and(|d| d.is_ascii_digit()) => {
                self.bump();
                self.integer(pos, true)?
            }
            '(' => {
                self.bump();
                Tok::Open(self.last_end == Some((pos.line, pos.column)))
            }
            ':' if self.peek2() == Some('-') => {
                self.bump();
                self.bump();
                Tok::Neck
            }
            '\\' if self.peek2() == Some('+') => {
                self.bump();
                self.bump();
                Tok::NotProvable
            }
            '=' if self.peek2() == Some('<') => {
                self.bump();
                self.bump();
                Tok::Cmp(CompareOp::LessEq)
            }
            '>' if self.peek2() == Some('=') => {
                self.bump();
                self.bump();
                Tok::Cmp(CompareOp::GreaterEq)
            }
            _ => {
                self.bump();
                match c {
                    ')' => Tok::Close,
                    '[' => Tok::OpenList,
                    ']' => Tok::CloseList,
                    ',' => Tok::Comma,
                    '|' => Tok::Bar,
                    ';' => Tok::Semicolon,
                    '.' => Tok::End,
                    '!' => Tok::Bang,
                    '<' => Tok::Cmp(CompareOp::Less),
                    '>' => Tok::Cmp(CompareOp::Greater),
                    other => {
                        return Err(Self::err(pos, format!("unsupported character `{other}`")))
                    }
                }
            }
        };
        self.last_end = Some((self.line, self.column));
        Ok(Some(Spanned { tok, pos }))
    }

    fn tokenize(mut self) -> Result<(Vec<Spanned>, SourcePosition), ParseError> {
        let mut out = Vec::new();
        while let Some(t) = self.next_token()? {
            out.push(t);
        }
        Ok((out, self.pos()))
    }
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    eof: SourcePosition,
    next_id: u64,
    scope: HashMap<String, Var>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let (toks, eof) = Lexer::new(text).tokenize()?;
        Ok(Parser {
            toks,
            at: 0,
            eof,
            next_id: 1,
            scope: HashMap::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn pos(&self) -> SourcePosition {
        self.toks.get(self.at).map_or(self.eof, |s| s.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|s| s.tok.clone());
        self.at += 1;
        t
    }

    fn at_eof(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        let matches = match (self.peek(), &tok) {
            (Some(Tok::Open(_)), Tok::Open(_)) => true,
            (Some(t), want) => t == want,
            (None, _) => false,
        };
        if matches {
            self.bump();
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn fresh(&mut self, name: &str) -> Var {
        let v = Var::new(self.next_id, name);
        self.next_id += 1;
        v
    }

    fn variable(&mut self, name: &str) -> Term {
        if name == ANONYMOUS {
            return Term::Var(self.fresh(ANONYMOUS));
        }
        if let Some(v) = self.scope.get(name) {
            return Term::Var(v.clone());
        }
        let v = self.fresh(name);
        self.scope.insert(name.to_string(), v.clone());
        Term::Var(v)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Var(name)) => {
                self.bump();
                Ok(self.variable(&name))
            }
            Some(Tok::Int(n)) => {
                self.bump();
                Ok(Term::Int(n))
            }
            Some(Tok::Name(name) | Tok::Quoted(name)) => {
                self.bump();
                if let Some(Tok::Open(true)) = self.peek() {
                    self.bump();
                    let args = self.arguments()?;
                    Ok(Term::Compound(name, args))
                } else {
                    Ok(Term::Atom(name))
                }
            }
            Some(Tok::OpenList) => {
                self.bump();
                self.list()
            }
            _ => self.unexpected("a term"),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.bump();
                    args.push(self.term()?);
                }
                Some(Tok::Close) => {
                    self.bump();
                    return Ok(args);
                }
                _ => return self.unexpected("`,` or `)`"),
            }
        }
    }

    fn list(&mut self) -> Result<Term, ParseError> {
        if let Some(Tok::CloseList) = self.peek() {
            self.bump();
            return Ok(Term::nil());
        }
        let mut items = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.bump();
                    items.push(self.term()?);
                }
                Some(Tok::Bar) => {
                    self.bump();
                    let tail = self.term()?;
                    self.expect(Tok::CloseList, "`]`")?;
                    return Ok(list_term(items, tail));
                }
                Some(Tok::CloseList) => {
                    self.bump();
                    return Ok(list_term(items, Term::nil()));
                }
                _ => return self.unexpected("`,`, `|` or `]`"),
            }
        }
    }

    /// `;`-separated alternatives; `;` is the loosest operator.
    fn disjunction(&mut self) -> Result<Vec<Goal>, ParseError> {
        let left = self.conjunction()?;
        if let Some(Tok::Semicolon) = self.peek() {
            self.bump();
            let right = self.disjunction()?;
            Ok(vec![Goal::Disjunction(left, right)])
        } else {
            Ok(left)
        }
    }

    fn conjunction(&mut self) -> Result<Vec<Goal>, ParseError> {
        let mut goals = self.unary()?;
        while let Some(Tok::Comma) = self.peek() {
            self.bump();
            goals.extend(self.unary()?);
        }
        Ok(goals)
    }

    fn unary(&mut self) -> Result<Vec<Goal>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::NotProvable) => {
                self.bump();
                let inner = self.unary()?;
                Ok(vec![Goal::Negation(inner)])
            }
            Some(Tok::Open(_)) => {
                self.bump();
                let inner = self.disjunction()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Bang) => {
                self.bump();
                Ok(vec![Goal::Cut])
            }
            Some(Tok::Name(name))
                if name == "not"
                    && matches!(
                        self.toks.get(self.at + 1),
                        Some(Spanned {
                            tok: Tok::Open(true),
                            ..
                        })
                    ) =>
            {
                self.bump();
                self.bump();
                let inner = self.disjunction()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(vec![Goal::Negation(inner)])
            }
            _ => self.simple_goal().map(|g| vec![g]),
        }
    }

    fn simple_goal(&mut self) -> Result<Goal, ParseError> {
        let pos = self.pos();
        let lhs = self.term()?;
        if let Some(Tok::Cmp(op)) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            return Ok(Goal::Compare(op, lhs, rhs));
        }
        match lhs {
            Term::Atom(ref name) if name == "true" => Ok(Goal::True),
            Term::Atom(ref name) if name == "fail" || name == "false" => Ok(Goal::Fail),
            t if t.is_callable() => Ok(Goal::Call(t)),
            t => Err(ParseError {
                pos,
                message: format!("goal `{t}` is not callable"),
            }),
        }
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        self.scope.clear();
        let pos = self.pos();
        let head = self.term()?;
        if !head.is_callable() {
            return Err(ParseError {
                pos,
                message: format!("clause head `{head}` is not callable"),
            });
        }
        let body = match self.peek() {
            Some(Tok::Neck) => {
                self.bump();
                self.disjunction()?
            }
            _ => Vec::new(),
        };
        self.expect(Tok::End, "`.` at end of clause")?;
        Ok(Clause { head, body })
    }
}

/// Parses a knowledge base. Clause order within a predicate follows the text.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(text)?;
    let mut program = Program::new();
    while !p.at_eof() {
        program.push(p.clause()?);
    }
    Ok(program)
}

/// Parses a query such as `age(X,Y), \+ (age(_,Z), Z < Y)`; a final `.` is optional.
pub fn parse_query(text: &str) -> Result<Vec<Goal>, ParseError> {
    let mut p = Parser::new(text)?;
    if p.at_eof() {
        return p.error("empty query");
    }
    let goals = p.disjunction()?;
    if let Some(Tok::End) = p.peek() {
        p.bump();
    }
    if !p.at_eof() {
        return p.unexpected("end of query");
    }
    Ok(goals)
}

/// Parses a single term, e.g. `[a,b|T]`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    if let Some(Tok::End) = p.peek() {
        p.bump();
    }
    if !p.at_eof() {
        return p.unexpected("end of term");
    }
    Ok(t)
}
