use serde::Serialize;

use super::{fmt_torsion, md_table, Context, Format, EXIT_MISMATCH, EXIT_OK};
use crate::classify::{d4_targets, fibration_class, FibrationClass, TableRow, TABLE};
use crate::lattices::{AdeTag, RootType};
use crate::niemeier::{self, NiemeierLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct RowSummary {
    niemeier: String,
    component: String,
    r_m: String,
    mw_rank: usize,
    torsion: Vec<u64>,
    fibration: &'static str,
}

fn fibration(qe: bool) -> &'static str {
    if qe {
        "qe"
    } else {
        "e"
    }
}

impl RowSummary {
    fn expected(row: &TableRow) -> Self {
        let canon = |s: &str| {
            s.parse::<RootType>()
                .map_or_else(|_| s.to_string(), |r| r.to_string())
        };
        RowSummary {
            niemeier: canon(row.niemeier),
            component: row.component.to_string(),
            r_m: canon(row.r_m),
            mw_rank: row.mw_rank,
            torsion: row.torsion.to_vec(),
            fibration: fibration(row.quasi_elliptic),
        }
    }

    fn computed(c: &FibrationClass) -> Self {
        RowSummary {
            niemeier: c.niemeier_root_type.to_string(),
            component: c.embedded_component.to_string(),
            r_m: c.r_m.to_string(),
            mw_rank: c.mw_rank,
            torsion: c.torsion.clone(),
            fibration: fibration(c.quasi_elliptic),
        }
    }

    fn diff(&self, other: &RowSummary) -> Vec<String> {
        let mut d = Vec::new();
        let mut cmp = |name: &str, a: String, b: String| {
            if a != b {
                d.push(format!("{name}: expected {a}, found {b}"));
            }
        };
        cmp("R(M)", self.r_m.clone(), other.r_m.clone());
        cmp(
            "MW rank",
            self.mw_rank.to_string(),
            other.mw_rank.to_string(),
        );
        cmp(
            "torsion",
            fmt_torsion(&self.torsion),
            fmt_torsion(&other.torsion),
        );
        cmp("fibration", self.fibration.into(), other.fibration.into());
        d
    }
}

#[derive(Debug, Serialize)]
struct ClassifyRow {
    id: usize,
    expected: RowSummary,
    computed: Option<RowSummary>,
    kodaira: Vec<String>,
    complement_discriminant: Vec<u64>,
    complement_q_values: Vec<String>,
    matches: bool,
    diff: Vec<String>,
}

#[derive(Debug, Serialize)]
struct ClassifyReport {
    rows: Vec<ClassifyRow>,
    unmatched: Vec<RowSummary>,
    errors: Vec<String>,
    verdict: &'static str,
}

fn load_entries(ctx: &mut Context<'_>) -> Result<(Vec<NiemeierLattice>, Vec<String>), String> {
    match ctx.data.read("niemeier.txt")? {
        None => Ok((niemeier::catalog().to_vec(), Vec::new())),
        Some(text) => {
            let (good, bad) =
                niemeier::load_lenient(&text).map_err(|e| format!("niemeier.txt: {e}"))?;
            Ok((
                good,
                bad.into_iter()
                    .map(|e| format!("niemeier.txt: {e}"))
                    .collect(),
            ))
        }
    }
}

fn classify_with_progress(
    ctx: &mut Context<'_>,
    entries: &[NiemeierLattice],
) -> (Vec<FibrationClass>, Vec<String>) {
    let jobs: Vec<(&NiemeierLattice, AdeTag)> = entries
        .iter()
        .flat_map(|n| d4_targets(n).into_iter().map(move |t| (n, t)))
        .collect();
    let total = jobs.len();
    let (mut classes, mut errors) = (Vec::new(), Vec::new());
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(n, t)| (n, t, s.spawn(move || fibration_class(n, t))))
            .collect();
        for (k, (n, t, h)) in handles.into_iter().enumerate() {
            match h.join().expect("classification thread") {
                Ok(c) => classes.push(c),
                Err(e) => errors.push(e.to_string()),
            }
            ctx.note_progress(&format!("[{}/{total}] {} / {t}", k + 1, n.root_type));
        }
    });
    (classes, errors)
}

pub(super) fn run(ctx: &mut Context<'_>) -> std::io::Result<i32> {
    let (entries, mut errors) = match load_entries(ctx) {
        Ok(x) => x,
        Err(e) => return Ok(ctx.failure(&e)),
    };
    let (classes, class_errors) = classify_with_progress(ctx, &entries);
    errors.extend(class_errors);

    let mut used = vec![false; classes.len()];
    let mut rows = Vec::new();
    for row in &TABLE {
        let expected = RowSummary::expected(row);
        let n: RootType = row.niemeier.parse().expect("table root type");
        let comp: AdeTag = row.component.parse().expect("table component");
        let hit = classes
            .iter()
            .position(|c| c.niemeier_root_type == n && c.embedded_component == comp);
        let r = match hit {
            Some(i) => {
                used[i] = true;
                let c = &classes[i];
                let computed = RowSummary::computed(c);
                let diff = expected.diff(&computed);
                ClassifyRow {
                    id: row.id,
                    matches: diff.is_empty() && c.id == row.id,
                    diff,
                    kodaira: c.kodaira_types.iter().map(|(_, k)| k.clone()).collect(),
                    complement_discriminant: c.complement_discriminant.clone(),
                    complement_q_values: c.complement_q_values.clone(),
                    computed: Some(computed),
                    expected,
                }
            }
            None => ClassifyRow {
                id: row.id,
                expected,
                computed: None,
                kodaira: Vec::new(),
                complement_discriminant: Vec::new(),
                complement_q_values: Vec::new(),
                matches: false,
                diff: vec![format!(
                    "no embedding of D4 into {} realizes this row",
                    row.niemeier
                )],
            },
        };
        rows.push(r);
    }
    let unmatched: Vec<RowSummary> = classes
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(c, _)| RowSummary::computed(c))
        .collect();
    let ok = rows.iter().all(|r| r.matches) && unmatched.is_empty() && errors.is_empty();
    let report = ClassifyReport {
        rows,
        unmatched,
        errors,
        verdict: if ok { "pass" } else { "fail" },
    };

    match ctx.format {
        Format::Json => ctx.json(&report)?,
        Format::Markdown => write_markdown(ctx, &report)?,
    }
    if !ok {
        for r in report.rows.iter().filter(|r| !r.matches) {
            writeln!(ctx.err, "row {} differs: {}", r.id, r.diff.join("; "))?;
        }
        for u in &report.unmatched {
            writeln!(
                ctx.err,
                "unexpected class {} / {}: R(M) {}",
                u.niemeier, u.component, u.r_m
            )?;
        }
        for e in &report.errors {
            writeln!(ctx.err, "{e}")?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn write_markdown(ctx: &mut Context<'_>, report: &ClassifyReport) -> std::io::Result<()> {
    writeln!(ctx.out, "# Genus-one fibrations\n")?;
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let shown = r.computed.as_ref().unwrap_or(&r.expected);
            vec![
                r.id.to_string(),
                shown.niemeier.clone(),
                shown.component.clone(),
                shown.r_m.clone(),
                shown.mw_rank.to_string(),
                fmt_torsion(&shown.torsion),
                r.kodaira.join(" "),
                shown.fibration.to_string(),
                if r.matches {
                    "ok".into()
                } else {
                    format!("MISMATCH: {}", r.diff.join("; "))
                },
            ]
        })
        .collect();
    md_table(
        ctx.out,
        &[
            "#", "R(N)", "D4 in", "R(M)", "MW rank", "torsion", "fibers", "e/qe", "table",
        ],
        &rows,
    )?;
    for u in &report.unmatched {
        writeln!(
            ctx.out,
            "\nunexpected class: {} / {}: R(M) = {}",
            u.niemeier, u.component, u.r_m
        )?;
    }
    for e in &report.errors {
        writeln!(ctx.out, "\nerror: {e}")?;
    }
    writeln!(ctx.out, "\nverdict: {}", report.verdict)
}
