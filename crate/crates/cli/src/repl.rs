//! Line-oriented session over the same commands, with named bindings.
//!
//! A line is one of
//! - `let NAME = EXPR`, binding `NAME` for later lines,
//! - a subcommand with its arguments, split with shell quoting rules,
//! - a bare expression, echoed in canonical form,
//! - `help`, `exit` or `quit`.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use clap::Parser;
use infinitesimals::format;
use infinitesimals::parser::Bindings;

use crate::commands::{self, parse_expr};
use crate::report::{Binding, Canonical, Report};
use crate::{emit, Cli, CliError, Command, EXIT_OK};

const SUBCOMMANDS: [&str; 7] = [
    "classify",
    "cmp",
    "st",
    "decompose",
    "map",
    "witness",
    "help",
];
const RESERVED: [&str; 2] = ["n", "per"];

pub struct Session {
    bindings: Bindings,
    json: bool,
}

impl Session {
    pub fn new(json: bool) -> Self {
        Session {
            bindings: Bindings::new(),
            json,
        }
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    /// Handles one line; `None` asks the caller to stop.
    pub fn eval_line(
        &mut self,
        line: &str,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> io::Result<Option<i32>> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(Some(EXIT_OK));
        }
        if line == "exit" || line == "quit" {
            return Ok(None);
        }
        if let Some(rest) = line.strip_prefix("let ") {
            let outcome = self.bind(rest);
            return emit(outcome, self.json, out, err).map(Some);
        }
        let Some(words) = shlex::split(line) else {
            let e = CliError::Usage("unbalanced quotes\n".into());
            return emit(Err(e), self.json, out, err).map(Some);
        };
        let is_command = words
            .first()
            .is_some_and(|w| SUBCOMMANDS.contains(&w.as_str()) || w == "repl");
        if !is_command {
            let outcome = parse_expr(line, &self.bindings)
                .map(|x| Report::Canonical(Canonical { expr: format(&x) }));
            return emit(outcome, self.json, out, err).map(Some);
        }
        let argv = std::iter::once("infinitesimals".to_owned()).chain(words);
        match Cli::try_parse_from(argv) {
            Ok(cli) => {
                let json = self.json || cli.json;
                let outcome = match cli.command {
                    Command::Repl { .. } => Err(CliError::Usage("already in a session\n".into())),
                    command => commands::execute(&command, &self.bindings),
                };
                emit(outcome, json, out, err).map(Some)
            }
            Err(e) if !e.use_stderr() => {
                write!(out, "{}", e.render())?;
                Ok(Some(EXIT_OK))
            }
            Err(e) => emit(
                Err(CliError::Usage(e.render().to_string())),
                self.json,
                out,
                err,
            )
            .map(Some),
        }
    }

    fn bind(&mut self, rest: &str) -> Result<Report, CliError> {
        let (name, expr) = rest
            .split_once('=')
            .ok_or_else(|| CliError::Usage("expected `let NAME = EXPR`\n".into()))?;
        let name = name.trim();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || RESERVED.contains(&name) {
            return Err(CliError::Usage(format!("`{name}` cannot be bound\n")));
        }
        let x = parse_expr(expr.trim(), &self.bindings)?;
        let value = format(&x);
        self.bindings.insert(name.to_owned(), x);
        Ok(Report::Binding(Binding {
            name: name.to_owned(),
            value,
        }))
    }
}

/// Runs a session from `script`, or from standard input. A script's exit
/// code is the largest code of any of its lines; an interactive session
/// always exits 0.
pub fn run(
    script: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut session = Session::new(json);
    match script {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let mut worst = EXIT_OK;
            for line in text.lines() {
                match session.eval_line(line, out, err)? {
                    Some(code) => worst = worst.max(code),
                    None => break,
                }
            }
            Ok(worst)
        }
        None => {
            let stdin = io::stdin();
            let mut lines = stdin.lock().lines();
            loop {
                if !json {
                    write!(out, "> ")?;
                    out.flush()?;
                }
                let Some(line) = lines.next() else { break };
                if session.eval_line(&line?, out, err)?.is_none() {
                    break;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
