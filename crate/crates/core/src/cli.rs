//! Command-line driver.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::canonical::serialize;
use crate::engine::{build_tree, solutions, Answer, EngineOptions, Limits, UnknownPolicy};
use crate::fixtures::{self, Fixture};
use crate::reader::{parse_program, parse_query};
use crate::render::{render_text, RenderOptions};
use crate::unify::RenameStyle;

pub const EXIT_ANSWERS: i32 = 0;
pub const EXIT_NO_ANSWERS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Canonical,
    AnswersOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum UnknownArg {
    Fail,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RenameArg {
    Prime,
    Numeric,
}

/// Draw the SLD search tree of a query against a Prolog knowledge base.
#[derive(Debug, Parser)]
#[command(name = "sldtree", version)]
struct Args {
    /// Knowledge base file.
    #[arg(long, value_name = "PATH", conflicts_with = "fixture")]
    db: Option<PathBuf>,

    /// Use a bundled knowledge base; its usual query applies unless --query is given.
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,

    /// Query text, e.g. "jealous(X,Y)".
    #[arg(long)]
    query: Option<String>,

    #[arg(long, value_enum, default_value = "ascii")]
    format: Format,

    #[arg(long, value_name = "N", default_value_t = Limits::default().max_depth)]
    max_depth: usize,

    #[arg(long, value_name = "N", default_value_t = Limits::default().max_nodes)]
    max_nodes: usize,

    /// What a call to an undefined predicate does.
    #[arg(long, value_enum, default_value = "fail")]
    unknown: UnknownArg,

    /// How renamed clause variables are named.
    #[arg(long, value_enum)]
    rename: Option<RenameArg>,

    /// Widest ASCII drawing before children are stacked vertically.
    #[arg(long, value_name = "N", default_value_t = 120,
          value_parser = clap::value_parser!(u16).range(40..))]
    width: u16,

    /// Print the bundled knowledge bases and their queries.
    #[arg(long)]
    list_fixtures: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Fixture(&'static Fixture),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub source: Source,
    pub query: String,
    pub format: Format,
    pub engine: EngineOptions,
    pub render: RenderOptions,
}

enum Command {
    List,
    Run(RunConfig),
}

fn resolve(args: Args) -> Result<Command, String> {
    if args.list_fixtures {
        return Ok(Command::List);
    }
    let (source, default_query, default_rename) = match (&args.db, &args.fixture) {
        (Some(path), _) => (Source::File(path.clone()), None, RenameStyle::Prime),
        (None, Some(name)) => {
            let f = fixtures::find(name)
                .ok_or_else(|| format!("unknown fixture `{name}` (see --list-fixtures)"))?;
            (Source::Fixture(f), Some(f.query), f.rename)
        }
        (None, None) => return Err("one of --db or --fixture is required".into()),
    };
    let query = match (args.query, default_query) {
        (Some(q), _) => q,
        (None, Some(q)) => q.to_string(),
        (None, None) => return Err("--query is required with --db".into()),
    };
    if query.trim().is_empty() {
        return Err("query is empty".into());
    }
    let rename = match args.rename {
        Some(RenameArg::Prime) => RenameStyle::Prime,
        Some(RenameArg::Numeric) => RenameStyle::Numeric,
        None => default_rename,
    };
    Ok(Command::Run(RunConfig {
        source,
        query,
        format: args.format,
        engine: EngineOptions {
            limits: Limits {
                max_depth: args.max_depth,
                max_nodes: args.max_nodes,
            },
            unknown: match args.unknown {
                UnknownArg::Fail => UnknownPolicy::Fail,
                UnknownArg::Error => UnknownPolicy::Error,
            },
            rename,
        },
        render: RenderOptions {
            max_width: usize::from(args.width),
            show_boxes: true,
        },
    }))
}

/// Parses `argv` (including the program name) and runs. Returns the exit code.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_ANSWERS
            };
        }
    };
    match resolve(args) {
        Ok(Command::List) => match out.write_all(fixtures::listing().as_bytes()) {
            Ok(()) => EXIT_ANSWERS,
            Err(_) => EXIT_ERROR,
        },
        Ok(Command::Run(cfg)) => run(&cfg, out, err),
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

/// Runs one query. Output goes to `out`, diagnostics to `err`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(cfg, out, err) {
        Ok(code) => code,
        Err(Failure::Message(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_ERROR
        }
    }
}

enum Failure {
    Message(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn run_inner(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let (origin, text) = match &cfg.source {
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Message(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        Source::Fixture(f) => (format!("fixture {}", f.name), f.source.to_string()),
    };
    let program = parse_program(&text).map_err(|e| Failure::Message(format!("{origin}: {e}")))?;
    let query = parse_query(&cfg.query).map_err(|e| Failure::Message(format!("query: {e}")))?;
    let tree =
        build_tree(&program, &query, &cfg.engine).map_err(|e| Failure::Message(e.to_string()))?;

    match cfg.format {
        Format::Ascii => {
            out.write_all(render_text(&tree, &cfg.render).as_bytes())?;
            out.write_all(b"\n")?;
        }
        Format::Canonical => {
            out.write_all(serialize(&tree).as_bytes())?;
            out.write_all(b"\n")?;
        }
        Format::AnswersOnly => {}
    }
    let answers = solutions(&tree);
    write_answers(&answers, out)?;
    out.flush()?;

    if tree.is_truncated() {
        let _ = writeln!(
            err,
            "warning: search tree truncated (max-depth {}, max-nodes {}); answers may be incomplete",
            cfg.engine.limits.max_depth, cfg.engine.limits.max_nodes
        );
        Ok(EXIT_TRUNCATED)
    } else if answers.is_empty() {
        Ok(EXIT_NO_ANSWERS)
    } else {
        Ok(EXIT_ANSWERS)
    }
}

/// Blocks of `Var = term` lines separated by blank lines; `true.` for an
/// answer without bindings, `false.` when there are no answers.
pub fn format_answers(answers: &[Answer]) -> String {
    if answers.is_empty() {
        return "false.\n".to_string();
    }
    let blocks: Vec<String> = answers
        .iter()
        .map(|a| {
            let lines = a.display_bindings();
            if lines.is_empty() {
                "true.\n".to_string()
            } else {
                lines.iter().map(|l| format!("{l}\n")).collect()
            }
        })
        .collect();
    blocks.join("\n")
}

fn write_answers(answers: &[Answer], out: &mut dyn Write) -> io::Result<()> {
    out.write_all(format_answers(answers).as_bytes())
}
