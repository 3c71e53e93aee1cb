//! The `k3fib` command line.
//!
//! Exit codes: 0 when everything requested was computed and agrees with the
//! expectations, 1 on a mismatch (or unreadable data), 2 on a usage error.

mod classify_cmd;
mod incidence_cmd;
mod verify_cmd;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming a directory with replacement data files
/// (`niemeier.txt`, `models.txt`).
pub const DATA_ENV: &str = "K3FIB_DATA";

#[derive(Parser, Debug)]
#[command(
    name = "k3fib",
    version,
    about = "Genus-one fibrations on the supersingular K3 surface of Artin invariant 1 in characteristic 2"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Report progress of long computations on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputArgs {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "md")]
    pub json: bool,
    /// Emit Markdown (the default).
    #[arg(long, global = true)]
    pub md: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl OutputArgs {
    pub fn format(self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Markdown
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reproduce the classification table and compare it with the printed one.
    Classify,
    /// Verify Weierstrass models: ids 1..18, labels such as 5a, or "all".
    Verify {
        #[arg(required = true, num_args = 1..)]
        ids: Vec<String>,
    },
    /// Incidence geometry of P²(F4).
    Incidence {
        #[command(subcommand)]
        command: incidence_cmd::IncidenceCommand,
    },
}

/// Where the data files come from.
#[derive(Clone, Debug, Default)]
pub struct DataSource {
    pub dir: Option<PathBuf>,
}

impl DataSource {
    pub fn from_env() -> Self {
        DataSource {
            dir: std::env::var_os(DATA_ENV).map(PathBuf::from),
        }
    }

    /// Contents of a replacement data file, if one is configured and present.
    pub fn read(&self, name: &str) -> Result<Option<String>, String> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let path = dir.join(name);
        if !path.exists() {
            return Ok(None);
        }
        std::fs::read_to_string(&path)
            .map(Some)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))
    }
}

/// Output sinks and settings shared by the commands.
pub struct Context<'a> {
    pub format: Format,
    pub progress: bool,
    pub data: DataSource,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Context<'_> {
    pub fn json<T: Serialize>(&mut self, value: &T) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(value).expect("reports serialize");
        writeln!(self.out, "{text}")
    }

    pub fn note_progress(&mut self, msg: &str) {
        if self.progress {
            let _ = writeln!(self.err, "{msg}");
        }
    }

    pub fn usage(&mut self, msg: &str) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_USAGE
    }

    pub fn failure(&mut self, msg: &str) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_MISMATCH
    }
}

/// Parse arguments and run, returning the exit code.
pub fn run<I, T>(args: I, data: DataSource, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut ctx = Context {
        format: cfg.output.format(),
        progress: cfg.progress,
        data,
        out,
        err,
    };
    let result = match cfg.command {
        Command::Classify => classify_cmd::run(&mut ctx),
        Command::Verify { ids } => verify_cmd::run(&mut ctx, &ids),
        Command::Incidence { command } => incidence_cmd::run(&mut ctx, command),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(ctx.err, "error: {e}");
        EXIT_MISMATCH
    })
}

/// Markdown table with a header row.
pub(crate) fn md_table(
    out: &mut dyn Write,
    header: &[&str],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    writeln!(out, "| {} |", header.join(" | "))?;
    writeln!(
        out,
        "|{}|",
        header.iter().map(|_| "---").collect::<Vec<_>>().join("|")
    )?;
    for r in rows {
        writeln!(out, "| {} |", r.join(" | "))?;
    }
    Ok(())
}

pub(crate) fn fmt_torsion(t: &[u64]) -> String {
    if t.is_empty() {
        "0".into()
    } else {
        t.iter()
            .map(|n| format!("Z/{n}"))
            .collect::<Vec<_>>()
            .join(" × ")
    }
}
