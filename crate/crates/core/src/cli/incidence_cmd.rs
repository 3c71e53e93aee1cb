use clap::Subcommand;
use serde::Serialize;

use super::{md_table, Context, Format, EXIT_MISMATCH, EXIT_OK};
use crate::plane::{
    analyze_config, chordless_cycles, cycle_case_split, find_config, plain_cycle,
    plain_cycle_count, plane, Configuration, CycleSearch, DiagramType, Vertex,
};

/// Lengths covered by `cycles --all`.
const TABLE_RANGE: std::ops::RangeInclusive<usize> = 3..=10;
/// The `n` with a chordless `2n`-cycle.
const EXPECTED_CYCLES: [usize; 6] = [3, 4, 5, 6, 8, 9];

#[derive(Subcommand, Debug)]
pub enum IncidenceCommand {
    /// Vertex, edge, degree and girth counts.
    Stats,
    /// Chordless 2n-cycles (n points and n lines).
    Cycles {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=21), required_unless_present = "all")]
        n: Option<u64>,
        /// Existence table for n = 3..10.
        #[arg(long, conflicts_with = "n")]
        all: bool,
    },
    /// Search for an extended Dynkin configuration such as D20 (read as D̃20).
    Config {
        #[arg(long = "type")]
        diagram: String,
    },
    /// Count the disjoint roots and sections of a configuration.
    Analyze {
        /// Vertices separated by ';' (or spaces): P3, L7, (x, y), [x, y, z], <a, b, c>.
        #[arg(long)]
        vertices: String,
        /// Claimed type, e.g. A5 or D7 (read as extended).
        #[arg(long = "type")]
        diagram: String,
    },
    /// Group all chordless 2n-cycles by their analysis, up to duality.
    Split {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=21))]
        n: u64,
    },
}

/// Read a diagram type; configurations are extended, so `D20` means `D̃20`.
fn parse_extended(s: &str) -> Result<DiagramType, String> {
    let d: DiagramType = s.parse().map_err(|e| format!("{e}"))?;
    DiagramType::extended(d.tag)
        .validate()
        .map_err(|e| e.to_string())
}

fn parse_vertices(s: &str) -> Result<Vec<Vertex>, String> {
    let parts: Vec<&str> = if s.contains(';') {
        s.split(';').collect()
    } else if s.contains(['(', '[', '<', '⟨']) {
        return Err("separate coordinate vertices with ';'".into());
    } else {
        s.split_whitespace().collect()
    };
    let vs: Vec<Vertex> = parts
        .iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse().map_err(|e| format!("{e}")))
        .collect::<Result<_, _>>()?;
    if vs.is_empty() {
        return Err("empty vertex list".into());
    }
    Ok(vs)
}

fn join_vertices(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Serialize)]
struct PlainCycle {
    exists: bool,
    /// Known only up to the enumeration bound.
    cycle_count: Option<u64>,
    witness: Option<Vec<Vertex>>,
}

#[derive(Serialize)]
struct CycleOutput {
    chordless: CycleSearch,
    plain: PlainCycle,
}

fn cycle_output(n: usize) -> CycleOutput {
    let witness = plain_cycle(n);
    CycleOutput {
        chordless: chordless_cycles(n),
        plain: PlainCycle {
            exists: witness.is_some(),
            cycle_count: plain_cycle_count(n),
            witness,
        },
    }
}

#[derive(Serialize)]
struct CycleTable {
    rows: Vec<CycleOutput>,
    exists_for: Vec<usize>,
    expected: Vec<usize>,
    verdict: &'static str,
}

pub(super) fn run(ctx: &mut Context<'_>, cmd: IncidenceCommand) -> std::io::Result<i32> {
    match cmd {
        IncidenceCommand::Stats => {
            let s = plane().stats();
            let ok = (s.points, s.lines, s.edges, s.regular_degree, s.girth)
                == (21, 21, 105, Some(5), Some(6));
            match ctx.format {
                Format::Json => ctx.json(&s)?,
                Format::Markdown => writeln!(
                    ctx.out,
                    "points {}, lines {}, edges {}, {}, {}, girth {}",
                    s.points,
                    s.lines,
                    s.edges,
                    s.regular_degree
                        .map_or_else(|| "not regular".to_string(), |d| format!("{d}-regular")),
                    if s.bipartite {
                        "bipartite"
                    } else {
                        "not bipartite"
                    },
                    s.girth.map_or_else(|| "∞".to_string(), |g| g.to_string())
                )?,
            }
            Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
        }
        IncidenceCommand::Cycles { n: Some(n), .. } => {
            let n = n as usize;
            ctx.note_progress(&format!("searching 2n-cycles for n = {n}"));
            let c = cycle_output(n);
            match ctx.format {
                Format::Json => ctx.json(&c)?,
                Format::Markdown => {
                    match &c.chordless.witness {
                        Some(w) => writeln!(
                            ctx.out,
                            "chordless {}-cycles: {} ({} ordered point tuples), e.g. {}",
                            2 * n,
                            c.chordless.cycle_count,
                            c.chordless.tuple_count,
                            join_vertices(w)
                        )?,
                        None => writeln!(ctx.out, "chordless {}-cycles: none", 2 * n)?,
                    }
                    match (&c.plain.witness, c.plain.cycle_count) {
                        (Some(w), Some(k)) => writeln!(
                            ctx.out,
                            "cycles with chords allowed: {k}, e.g. {}",
                            join_vertices(w)
                        )?,
                        (Some(w), None) => writeln!(
                            ctx.out,
                            "cycles with chords allowed: e.g. {}",
                            join_vertices(w)
                        )?,
                        (None, _) => writeln!(ctx.out, "cycles with chords allowed: none")?,
                    }
                }
            }
            Ok(EXIT_OK)
        }
        IncidenceCommand::Cycles { .. } => {
            let mut rows = Vec::new();
            for n in TABLE_RANGE {
                ctx.note_progress(&format!("searching 2n-cycles for n = {n}"));
                rows.push(cycle_output(n));
            }
            let exists_for: Vec<usize> = rows
                .iter()
                .filter(|r| r.chordless.exists)
                .map(|r| r.chordless.n)
                .collect();
            let ok = exists_for == EXPECTED_CYCLES;
            let table = CycleTable {
                rows,
                exists_for,
                expected: EXPECTED_CYCLES.to_vec(),
                verdict: if ok { "pass" } else { "fail" },
            };
            match ctx.format {
                Format::Json => ctx.json(&table)?,
                Format::Markdown => {
                    let rows: Vec<Vec<String>> = table
                        .rows
                        .iter()
                        .map(|r| {
                            let c = &r.chordless;
                            vec![
                                c.n.to_string(),
                                (2 * c.n).to_string(),
                                if c.exists {
                                    "yes".into()
                                } else {
                                    "none".into()
                                },
                                c.cycle_count.to_string(),
                                c.tuple_count.to_string(),
                                match (r.plain.exists, r.plain.cycle_count) {
                                    (true, Some(k)) => k.to_string(),
                                    (true, None) => "yes".into(),
                                    (false, _) => "none".into(),
                                },
                            ]
                        })
                        .collect();
                    md_table(
                        ctx.out,
                        &[
                            "n",
                            "length",
                            "chordless",
                            "cycles",
                            "point tuples",
                            "with chords",
                        ],
                        &rows,
                    )?;
                    writeln!(ctx.out, "\nverdict: {}", table.verdict)?;
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
        }
        IncidenceCommand::Config { diagram } => {
            let d = match parse_extended(&diagram) {
                Ok(d) => d,
                Err(e) => return Ok(ctx.usage(&e)),
            };
            ctx.note_progress(&format!("searching for {d}"));
            let r = find_config(d);
            match ctx.format {
                Format::Json => ctx.json(&r)?,
                Format::Markdown => match &r.witness {
                    Some(w) => writeln!(ctx.out, "{d}: found: {}", join_vertices(&w.vertices))?,
                    None => writeln!(ctx.out, "{d}: impossible")?,
                },
            }
            Ok(EXIT_OK)
        }
        IncidenceCommand::Analyze { vertices, diagram } => {
            let d = match parse_extended(&diagram) {
                Ok(d) => d,
                Err(e) => return Ok(ctx.usage(&e)),
            };
            let vs = match parse_vertices(&vertices) {
                Ok(v) => v,
                Err(e) => return Ok(ctx.usage(&e)),
            };
            let c = match Configuration::new(vs, d) {
                Ok(c) => c,
                Err(e) => return Ok(ctx.failure(&e.to_string())),
            };
            let a = match analyze_config(&c) {
                Ok(a) => a,
                Err(e) => return Ok(ctx.failure(&e.to_string())),
            };
            match ctx.format {
                Format::Json => ctx.json(&a)?,
                Format::Markdown => {
                    writeln!(ctx.out, "{d}: {a}; meeting two or more: {}", a.multiple)?
                }
            }
            Ok(EXIT_OK)
        }
        IncidenceCommand::Split { n } => {
            let n = n as usize;
            ctx.note_progress(&format!("analyzing all chordless {}-cycles", 2 * n));
            let sigs = match cycle_case_split(n) {
                Ok(s) => s,
                Err(e) => return Ok(ctx.failure(&e.to_string())),
            };
            match ctx.format {
                Format::Json => ctx.json(&sigs)?,
                Format::Markdown => {
                    if sigs.is_empty() {
                        writeln!(ctx.out, "no chordless {}-cycles", 2 * n)?;
                    }
                    let rows: Vec<Vec<String>> = sigs
                        .iter()
                        .map(|s| {
                            let a = &s.analysis;
                            vec![
                                a.disjoint.to_string(),
                                a.disjoint_type
                                    .iter()
                                    .map(|t| t.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" "),
                                a.sections.to_string(),
                                s.cycles.to_string(),
                            ]
                        })
                        .collect();
                    if !rows.is_empty() {
                        md_table(
                            ctx.out,
                            &["disjoint", "disjoint type", "sections", "cycles"],
                            &rows,
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}
