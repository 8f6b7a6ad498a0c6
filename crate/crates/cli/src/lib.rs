//! Command-line front-end for the `infinitesimals` library.
//!
//! Every subcommand produces a [`report::Report`], rendered as text or, with
//! `--json`, as one line of JSON. Exit codes: 0 on success, 1 when an
//! operation's precondition fails (an unbounded operand, a missing standard
//! part, a failed witness check), 2 on unparsable input or bad usage.

pub mod commands;
pub mod repl;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infinitesimals::hyperreal::Selector;
use infinitesimals::ParseError;
use serde::Serialize;

pub use report::{Report, System};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "infinitesimals",
    version,
    about = "Compare and classify infinitesimals across four number systems"
)]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounded, finite, infinitesimal, in o, little-oh and nilpotency index.
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare two elements in one number system.
    Cmp {
        system: System,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        selector: SelectorArgs,
    },
    /// Standard part.
    St {
        system: System,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        selector: SelectorArgs,
    },
    /// Split a little-oh polynomial into standard part, infinitesimal terms
    /// and the part in o.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply i (into fR) or j (into the hyperreals) and compare the image with 0.
    Map {
        map: MapKind,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        selector: SelectorArgs,
    },
    /// Print a named example with its claims checked at runtime.
    Witness { name: WitnessKind },
    /// Interactive session; `let a = 1/n` binds a name.
    Repl {
        /// Read commands from a file instead of standard input.
        #[arg(long)]
        script: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    I,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    ZeroDivisors,
    ReverseMap,
    MainProposition,
}

#[derive(Clone, Debug, Default, Args)]
pub struct SelectorArgs {
    /// Base m of the selector: the class of n ≡ m (mod P) is chosen for every modulus P.
    #[arg(long, value_name = "m", default_value_t = 0)]
    pub selector: u64,
    /// Force the class n ≡ R (mod P). With overrides the selected index is
    /// z = r + L·m, where r solves the table mod L, the lcm of its moduli.
    #[arg(long = "residue", value_name = "P:R", value_parser = parse_residue)]
    pub residues: Vec<(u64, u64)>,
}

fn parse_residue(s: &str) -> Result<(u64, u64), String> {
    let (p, r) = s.split_once(':').ok_or("expected P:R")?;
    let p = p.trim().parse().map_err(|_| format!("bad modulus `{p}`"))?;
    let r = r.trim().parse().map_err(|_| format!("bad residue `{r}`"))?;
    Ok((p, r))
}

impl SelectorArgs {
    pub fn build(&self) -> Result<Selector, CliError> {
        if self.residues.is_empty() {
            return Ok(Selector::new(self.selector));
        }
        Selector::with_overrides(self.selector, self.residues.iter().copied())
            .map_err(|e| CliError::Domain(e.to_string()))
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse { input: String, error: ParseError },
    Domain(String),
    Usage(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_PARSE,
        }
    }

    fn body(&self) -> ErrorBody<'_> {
        match self {
            CliError::Parse { input, error } => ErrorBody {
                kind: "parse",
                message: error.to_string(),
                input: Some(input),
                position: Some(error.position()),
            },
            CliError::Domain(message) => ErrorBody {
                kind: "domain",
                message: message.clone(),
                input: None,
                position: None,
            },
            CliError::Usage(message) => ErrorBody {
                kind: "usage",
                message: message.clone(),
                input: None,
                position: None,
            },
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string(&ErrorReport { error: self.body() }).expect("errors serialize")
    }

    pub fn text(&self) -> String {
        match self {
            CliError::Parse { input, error } => {
                let caret = " ".repeat(error.position().min(input.len()));
                format!("parse error {error}\n  {input}\n  {caret}^\n")
            }
            CliError::Domain(message) => format!("error: {message}\n"),
            CliError::Usage(message) => message.clone(),
        }
    }
}

/// Writes a report or error in the selected format and returns the exit code.
pub fn emit(
    outcome: Result<Report, CliError>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    match outcome {
        Ok(report) => {
            if json {
                writeln!(out, "{}", report.json())?;
            } else {
                write!(out, "{}", report.text())?;
            }
            Ok(if report.failed() {
                EXIT_DOMAIN
            } else {
                EXIT_OK
            })
        }
        Err(e) => {
            if json {
                writeln!(out, "{}", e.json())?;
            } else {
                write!(err, "{}", e.text())?;
            }
            Ok(e.exit_code())
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Repl { script } => repl::run(script.as_deref(), cli.json, out, err),
        command => emit(
            commands::execute(command, &Default::default()),
            cli.json,
            out,
            err,
        ),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_DOMAIN
    })
}
