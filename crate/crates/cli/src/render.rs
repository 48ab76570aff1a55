//! JSON, CSV and Markdown serialization of report envelopes.

use crate::config::Format;
use crate::report::{Check, Payload, ReportEnvelope};
use crate::CliError;

/// A header row and data rows.
type Table = (Vec<String>, Vec<Vec<String>>);

fn strings<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn dims_string(d: &[usize]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn payload_table(payload: &Payload) -> Table {
    match payload {
        Payload::Cohomology(c) => (
            strings(["degree", "dimension", "cocycle_dim", "coboundary_rank", "representatives"]),
            c.degrees
                .iter()
                .map(|d| {
                    let reps: Vec<String> = d
                        .representatives
                        .iter()
                        .map(|r| match &r.cochain {
                            Some(c) => format!("{} = {}", r.label, c),
                            None => r.label.clone(),
                        })
                        .collect();
                    vec![
                        d.degree.to_string(),
                        d.dimension.to_string(),
                        d.cocycle_dim.to_string(),
                        d.coboundary_rank.to_string(),
                        reps.join("; "),
                    ]
                })
                .collect(),
        ),
        Payload::Homology(h) => (
            strings(["degree", "dimension", "chain_dim", "representatives"]),
            (0..3)
                .map(|k| {
                    vec![
                        k.to_string(),
                        h.dims[k].to_string(),
                        h.chain_dims[k].to_string(),
                        h.representatives.as_ref().map(|r| r[k].join("; ")).unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Payload::Ring(r) => {
            let mut header = vec!["⌣".to_string()];
            header.extend(r.basis.iter().map(|b| b.label.clone()));
            let render = |coords: &[String]| -> String {
                let terms: Vec<String> = coords
                    .iter()
                    .zip(&r.basis)
                    .filter(|(c, _)| c.as_str() != "0")
                    .map(|(c, b)| match c.as_str() {
                        "1" => b.label.clone(),
                        "-1" => format!("-{}", b.label),
                        _ => format!("{c}*{}", b.label),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            };
            let rows = r
                .products
                .iter()
                .zip(&r.basis)
                .map(|(row, b)| {
                    let mut cells = vec![b.label.clone()];
                    cells.extend(row.iter().map(|c| render(c)));
                    cells
                })
                .collect();
            (header, rows)
        }
        Payload::Duality(d) => (
            strings(["degree", "HP^k", "HP_k(M_nu)", "HP_{2-k}", "twisted_duality", "poincare_duality"]),
            d.rows
                .iter()
                .map(|r| {
                    vec![
                        r.degree.to_string(),
                        r.cohomology.to_string(),
                        r.nakayama_homology.to_string(),
                        r.trivial_homology_complementary.to_string(),
                        r.twisted_duality.to_string(),
                        r.poincare_duality.to_string(),
                    ]
                })
                .collect(),
        ),
        Payload::Sweep(s) => (
            strings(["a", "b", "h0", "h1", "h2", "euler", "theorem_checks"]),
            s.rows
                .iter()
                .map(|r| {
                    vec![
                        r.a.to_string(),
                        r.b.to_string(),
                        r.h0.to_string(),
                        r.h1.to_string(),
                        r.h2.to_string(),
                        r.euler.to_string(),
                        r.theorem_checks.clone(),
                    ]
                })
                .collect(),
        ),
        Payload::Verify(v) => (
            strings(["checks_run", "checks_passed"]),
            vec![vec![v.checks_run.to_string(), v.checks_passed.to_string()]],
        ),
    }
}

fn check_table(checks: &[Check]) -> Table {
    (
        strings(["check", "passed", "detail"]),
        checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]).collect(),
    )
}

fn write_csv(table: &Table, out: &mut String) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.0)?;
    for row in &table.1 {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))?);
    Ok(())
}

fn write_markdown(table: &Table, out: &mut String) {
    let escape = |s: &str| s.replace('|', "\\|");
    out.push_str(&format!("| {} |\n", table.0.iter().map(|h| escape(h)).collect::<Vec<_>>().join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(table.0.len())));
    for row in &table.1 {
        out.push_str(&format!("| {} |\n", row.iter().map(|c| escape(c)).collect::<Vec<_>>().join(" | ")));
    }
}

fn params_line(env: &ReportEnvelope) -> String {
    let p = &env.params;
    let mut parts = Vec::new();
    if let (Some(a), Some(b)) = (p.a, p.b) {
        parts.push(format!("a={a}, b={b}"));
    }
    if let (Some(ar), Some(br)) = (p.a_range, p.b_range) {
        parts.push(format!("a in {}..{}, b in {}..{}", ar[0], ar[1], br[0], br[1]));
    }
    if let Some(c) = p.complex {
        parts.push(format!("complex={c}"));
    }
    if let Some(t) = &p.twist {
        parts.push(format!("twist={t}"));
    }
    parts.join(", ")
}

/// Serializes an envelope. Output always ends with a newline.
pub fn render(env: &ReportEnvelope, format: Format) -> Result<String, CliError> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(env)?);
            out.push('\n');
        }
        Format::Csv => {
            write_csv(&payload_table(&env.payload), &mut out)?;
            out.push('\n');
            write_csv(&check_table(&env.verification), &mut out)?;
        }
        Format::Markdown => {
            out.push_str(&format!("## {} ({})\n\n", env.command, params_line(env)));
            if let Payload::Cohomology(c) = &env.payload {
                out.push_str(&format!("dims: {}\n\n", dims_string(&c.dims)));
            }
            if let Payload::Homology(h) = &env.payload {
                out.push_str(&format!(
                    "twist: {} (α = {}, β = {}); dims: {}\n\n",
                    h.twist.kind,
                    h.twist.alpha,
                    h.twist.beta,
                    dims_string(&h.dims)
                ));
            }
            write_markdown(&payload_table(&env.payload), &mut out);
            out.push_str("\n### verification\n\n");
            write_markdown(&check_table(&env.verification), &mut out);
        }
    }
    Ok(out)
}
