use serde::Serialize;

use super::{fmt_torsion, md_table, Context, Format, EXIT_MISMATCH, EXIT_OK};
use crate::genusone::catalog::{catalog_models, parse_models, CatalogModel};
use crate::genusone::verify::verify_catalog_model;
use crate::genusone::ModelReport;

#[derive(Debug, Serialize)]
struct VerifyOutput {
    reports: Vec<ModelReport>,
    errors: Vec<String>,
    verdict: &'static str,
}

fn select<'a>(models: &'a [CatalogModel], ids: &[String]) -> Result<Vec<&'a CatalogModel>, String> {
    if ids.iter().any(|s| s == "all") {
        if ids.len() > 1 {
            return Err("\"all\" cannot be combined with other ids".into());
        }
        return Ok(models.iter().collect());
    }
    let mut out: Vec<&CatalogModel> = Vec::new();
    for id in ids {
        let by_label: Vec<&CatalogModel> = models.iter().filter(|m| m.label == *id).collect();
        let picked = if !by_label.is_empty() {
            by_label
        } else {
            match id.parse::<usize>() {
                Ok(n) if (1..=18).contains(&n) => models.iter().filter(|m| m.id == n).collect(),
                _ => {
                    return Err(format!(
                        "unknown model id {id:?}; expected 1..18, a label such as 5a, or all"
                    ))
                }
            }
        };
        if picked.is_empty() {
            return Err(format!("the catalog has no model for {id:?}"));
        }
        for m in picked {
            if !out.iter().any(|o| o.label == m.label) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

pub(super) fn run(ctx: &mut Context<'_>, ids: &[String]) -> std::io::Result<i32> {
    let owned;
    let models: &[CatalogModel] = match ctx.data.read("models.txt") {
        Err(e) => return Ok(ctx.failure(&e)),
        Ok(None) => catalog_models(),
        Ok(Some(text)) => match parse_models(&text) {
            Ok(m) => {
                owned = m;
                &owned
            }
            Err(e) => return Ok(ctx.failure(&format!("models.txt: {e}"))),
        },
    };
    let chosen = match select(models, ids) {
        Ok(c) => c,
        Err(e) => return Ok(ctx.usage(&e)),
    };
    let total = chosen.len();
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = chosen
            .iter()
            .map(|&m| s.spawn(move || verify_catalog_model(m)))
            .collect();
        handles
            .into_iter()
            .zip(&chosen)
            .enumerate()
            .map(|(k, (h, m))| {
                let r = h.join().expect("verification thread");
                ctx.note_progress(&format!("[{}/{total}] model {}", k + 1, m.label));
                r.map_err(|e| format!("model {}: {e}", m.label))
            })
            .collect()
    });
    let (mut reports, mut errors) = (Vec::new(), Vec::new());
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(e),
        }
    }
    let ok = errors.is_empty() && reports.iter().all(ModelReport::passed);
    let output = VerifyOutput {
        reports,
        errors,
        verdict: if ok { "pass" } else { "fail" },
    };
    match ctx.format {
        Format::Json => ctx.json(&output)?,
        Format::Markdown => {
            for r in &output.reports {
                write_report(ctx, r)?;
            }
            for e in &output.errors {
                writeln!(ctx.out, "error: {e}\n")?;
            }
            let passed = output.reports.iter().filter(|r| r.passed()).count();
            writeln!(
                ctx.out,
                "{passed}/{} models pass; verdict: {}",
                total, output.verdict
            )?;
        }
    }
    for r in output.reports.iter().filter(|r| !r.passed()) {
        let failing: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        writeln!(ctx.err, "model {} fails: {}", r.label, failing.join(", "))?;
    }
    for e in &output.errors {
        writeln!(ctx.err, "{e}")?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn write_report(ctx: &mut Context<'_>, r: &ModelReport) -> std::io::Result<()> {
    let out = &mut *ctx.out;
    writeln!(
        out,
        "## Model {} (row {}, {}): {}\n",
        r.label,
        r.id,
        if r.quasi_elliptic {
            "quasi-elliptic"
        } else {
            "elliptic"
        },
        r.verdict
    )?;
    writeln!(
        out,
        "coefficients [a1, a2, a3, a4, a6] = [{}]\n",
        r.coefficients.join(", ")
    )?;
    let fibers: Vec<Vec<String>> = r
        .fibers
        .iter()
        .map(|f| {
            vec![
                f.place.clone(),
                f.kodaira.clone(),
                f.m.to_string(),
                f.vdelta.to_string(),
                f.delta.to_string(),
            ]
        })
        .collect();
    md_table(out, &["place", "type", "m", "v(Δ)", "δ"], &fibers)?;
    writeln!(
        out,
        "\nEuler sum: {} (expected {})",
        r.euler.found, r.euler.expected
    )?;
    write!(out, "torsion: {}", fmt_torsion(&r.torsion))?;
    if let Some(n) = r.section_count {
        write!(out, "; sections: {n}")?;
    }
    writeln!(out, "\n")?;
    if !r.sections.is_empty() {
        let opt = |found: &Option<String>, expected: &Option<String>| match (found, expected) {
            (Some(f), Some(e)) => format!("{f} (expected {e})"),
            (Some(f), None) => f.clone(),
            (None, Some(e)) => format!("? (expected {e})"),
            (None, None) => "".into(),
        };
        let rows: Vec<Vec<String>> = r
            .sections
            .iter()
            .map(|s| {
                vec![
                    s.section.clone(),
                    opt(
                        &s.order.map(|o| o.to_string()),
                        &s.expected_order.map(|o| o.to_string()),
                    ),
                    opt(&s.height, &s.expected_height),
                    s.meets_zero.map_or_else(String::new, |m| m.to_string()),
                    if s.passed { "ok".into() } else { "FAIL".into() },
                ]
            })
            .collect();
        md_table(
            out,
            &["section", "order", "height", "(P·O)", "check"],
            &rows,
        )?;
        writeln!(out)?;
    }
    let checks: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.passed { "ok".into() } else { "FAIL".into() },
                c.detail.clone(),
            ]
        })
        .collect();
    md_table(out, &["check", "result", "detail"], &checks)?;
    for n in &r.notes {
        writeln!(out, "\nnote: {n}")?;
    }
    writeln!(out)
}
