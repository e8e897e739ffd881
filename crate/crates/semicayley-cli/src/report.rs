//! Report documents: one structured value rendered both as JSON and as
//! text, so the two carry identical numbers.

use serde::Serialize;

use semicayley::chartable::CharacterTable;
use semicayley::cyclotomic::CycNum;
use semicayley::multiset::GMultiset;
use semicayley::oracle;
use semicayley::splitting::DegreeReport;

use crate::input::Job;

#[derive(Debug, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub approx: String,
}

impl ExactValue {
    pub fn of(x: &CycNum) -> Self {
        let z = x.to_complex();
        ExactValue {
            exact: x.to_string(),
            approx: format_complex(z.re, z.im),
        }
    }
}

pub fn format_complex(re: f64, im: f64) -> String {
    if im.abs() < 5e-11 {
        format!("{re:.10}")
    } else if im >= 0.0 {
        format!("{re:.10}+{im:.10}i")
    } else {
        format!("{re:.10}-{:.10}i", -im)
    }
}

#[derive(Debug, Serialize)]
pub struct SetEcho {
    pub elements: Vec<String>,
    pub class_representatives: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct MultisetEcho {
    pub entries: Vec<(String, u64)>,
    pub size: u64,
}

#[derive(Debug, Serialize)]
pub struct CharacterRow {
    pub index: usize,
    pub degree: u64,
    pub chi_i1: ExactValue,
    pub radicand: ExactValue,
    pub eigenvalue_pair: String,
    pub plus_approx: String,
    pub minus_approx: String,
    pub collapsed: bool,
    pub multiplicity_per_sign: u64,
}

#[derive(Debug, Serialize)]
pub struct OracleResults {
    pub spectrum_identity: bool,
    pub bruteforce_integral: bool,
    pub pipeline_integral: bool,
    pub integrality_agrees: bool,
    pub numeric_pass: bool,
    pub numeric_worst_pairing: f64,
    pub numeric_worst_discriminant: f64,
}

impl OracleResults {
    pub fn all_ok(&self) -> bool {
        self.spectrum_identity && self.integrality_agrees && self.numeric_pass
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    /// The resolved input rendered back in its own schema; parsing this
    /// string reproduces the job.
    pub input_echo: String,
    pub group: String,
    pub group_order: usize,
    pub exponent: u64,
    pub undirected: bool,
    pub sets: Vec<(String, SetEcho)>,
    pub i_multisets: Vec<(String, MultisetEcho)>,
    pub characters: Vec<CharacterRow>,
    pub t: Vec<u64>,
    pub t_is_full: bool,
    pub k_degree: u64,
    pub square_class_basis: Vec<ExactValue>,
    pub square_class_order: u64,
    pub splitting_field: String,
    pub degree: u64,
    pub integral: bool,
    pub confidence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResults>,
}

fn echo_set(job: &Job, set: &GMultiset) -> SetEcho {
    let g = &job.group;
    let cc = g.conjugacy_classes();
    SetEcho {
        elements: set.support().iter().map(|&e| g.label(e).to_string()).collect(),
        class_representatives: set
            .touched_classes()
            .iter()
            .map(|&ci| g.label(cc.representative(ci)).to_string())
            .collect(),
    }
}

fn echo_multiset(job: &Job, ms: &GMultiset) -> MultisetEcho {
    let g = &job.group;
    MultisetEcho {
        entries: ms
            .support()
            .iter()
            .map(|&e| (g.label(e).to_string(), ms.count(e)))
            .collect(),
        size: ms.size(),
    }
}

pub fn build_report(
    job: &Job,
    table: &CharacterTable,
    degree_report: &DegreeReport,
    with_oracle: bool,
) -> Result<ReportDocument, semicayley::Error> {
    let digraph = &job.digraph;
    let i = digraph.i_multisets();
    let characters = degree_report
        .eigenvalues
        .iter()
        .map(|e| {
            let (plus, minus) = e.approx_pair();
            CharacterRow {
                index: e.char_index,
                degree: e.degree,
                chi_i1: ExactValue::of(&e.trace_part),
                radicand: ExactValue::of(&e.radicand),
                eigenvalue_pair: format!(
                    "(({}) +- sqrt({})) / {}",
                    e.trace_part,
                    e.radicand,
                    2 * e.degree
                ),
                plus_approx: format_complex(plus.re, plus.im),
                minus_approx: format_complex(minus.re, minus.im),
                collapsed: e.is_collapsed(),
                multiplicity_per_sign: e.multiplicity_per_sign(),
            }
        })
        .collect();

    let oracle_results = if with_oracle {
        let spectrum = oracle::spectrum_identity_check(digraph, table)?;
        let brute = oracle::integrality_bruteforce(digraph)?;
        let numeric = oracle::numeric_spectrum_check(digraph, table, 1e-9)?;
        Some(OracleResults {
            spectrum_identity: spectrum.matches,
            bruteforce_integral: brute,
            pipeline_integral: degree_report.integral,
            integrality_agrees: brute == degree_report.integral,
            numeric_pass: numeric.pass,
            numeric_worst_pairing: numeric.worst_pairing,
            numeric_worst_discriminant: numeric.worst_discriminant,
        })
    } else {
        None
    };

    Ok(ReportDocument {
        input_echo: crate::input::render_document(&job.document),
        group: describe_group(job),
        group_order: job.group.order(),
        exponent: degree_report.modulus,
        undirected: digraph.is_undirected(),
        sets: vec![
            ("t11".into(), echo_set(job, digraph.t11())),
            ("t22".into(), echo_set(job, digraph.t22())),
            ("t12".into(), echo_set(job, digraph.t12())),
            ("t21".into(), echo_set(job, digraph.t21())),
        ],
        i_multisets: vec![
            ("I1".into(), echo_multiset(job, &i.i1)),
            ("I2".into(), echo_multiset(job, &i.i2)),
            ("I3".into(), echo_multiset(job, &i.i3)),
        ],
        characters,
        t: degree_report.t.elements().to_vec(),
        t_is_full: degree_report.t.is_full(),
        k_degree: degree_report.k_degree,
        square_class_basis: degree_report
            .square_classes
            .basis()
            .iter()
            .map(ExactValue::of)
            .collect(),
        square_class_order: degree_report.square_classes.order(),
        splitting_field: degree_report.splitting_field_description(),
        degree: degree_report.degree,
        integral: degree_report.integral,
        confidence: if degree_report.all_verdicts_exact() {
            "all squareness verdicts exact".into()
        } else {
            format!(
                "{} probabilistic non-square verdicts",
                degree_report.square_classes.probabilistic_verdicts()
            )
        },
        oracle: oracle_results,
    })
}

pub fn describe_group(job: &Job) -> String {
    let spec = &job.document.group;
    match (&spec.n, &spec.factors) {
        (Some(n), _) => format!("{}({n})", spec.kind),
        (None, Some(fs)) => format!(
            "{}({})",
            spec.kind,
            fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x")
        ),
        _ => spec.kind.clone(),
    }
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    use std::fmt::Write;
    for line in doc.input_echo.lines() {
        let _ = writeln!(out, "input | {line}");
    }
    let _ = writeln!(out, "group: {} (order {})", doc.group, doc.group_order);
    let _ = writeln!(out, "exponent m = {}", doc.exponent);
    let _ = writeln!(out, "undirected: {}", doc.undirected);
    for (name, set) in &doc.sets {
        let _ = writeln!(
            out,
            "{name}: {{{}}} (classes of {})",
            set.elements.join(", "),
            if set.class_representatives.is_empty() {
                "-".to_string()
            } else {
                set.class_representatives.join(", ")
            }
        );
    }
    for (name, ms) in &doc.i_multisets {
        let body: Vec<String> = ms
            .entries
            .iter()
            .map(|(l, c)| format!("{c}*{l}"))
            .collect();
        let _ = writeln!(out, "{name} = [{}] (size {})", body.join(", "), ms.size);
    }
    let _ = writeln!(out, "character rows (w = primitive {}th root of unity):", doc.exponent);
    for row in &doc.characters {
        let _ = writeln!(
            out,
            "  chi_{}: d = {}, chi(I1) = {}, radicand = {}, pair {} ~ {} / {}, multiplicity {}{}",
            row.index,
            row.degree,
            row.chi_i1.exact,
            row.radicand.exact,
            row.eigenvalue_pair,
            row.plus_approx,
            row.minus_approx,
            row.multiplicity_per_sign,
            if row.collapsed {
                " per sign (collapsed: one eigenvalue, doubled)"
            } else {
                " per sign"
            }
        );
    }
    let _ = writeln!(
        out,
        "T = {{{}}} (order {}, full: {})",
        doc.t.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "),
        doc.t.len(),
        doc.t_is_full
    );
    let _ = writeln!(out, "[K:Q] = {}", doc.k_degree);
    let basis: Vec<String> = doc
        .square_class_basis
        .iter()
        .map(|v| v.exact.clone())
        .collect();
    let _ = writeln!(
        out,
        "square classes M: order {}, basis {{{}}}",
        doc.square_class_order,
        basis.join(", ")
    );
    let _ = writeln!(out, "SF = {}", doc.splitting_field);
    let _ = writeln!(out, "deg = {}", doc.degree);
    let _ = writeln!(out, "integral: {}", doc.integral);
    let _ = writeln!(out, "confidence: {}", doc.confidence);
    if let Some(oracle) = &doc.oracle {
        let _ = writeln!(out, "oracle:");
        let _ = writeln!(out, "  spectrum identity (exact): {}", oracle.spectrum_identity);
        let _ = writeln!(
            out,
            "  integrality: pipeline {} vs brute force {} (agree: {})",
            oracle.pipeline_integral, oracle.bruteforce_integral, oracle.integrality_agrees
        );
        let _ = writeln!(
            out,
            "  numeric: pass {} (pairing {:.3e}, discriminant {:.3e})",
            oracle.numeric_pass, oracle.numeric_worst_pairing, oracle.numeric_worst_discriminant
        );
    }
    out
}

/// Character table rendering for the `chartable` subcommand.
#[derive(Debug, Serialize)]
pub struct TableDocument {
    pub group: String,
    pub order: usize,
    pub exponent: u64,
    pub classes: Vec<(String, usize)>,
    pub rows: Vec<(u64, Vec<String>)>,
    pub orthogonality_ok: bool,
}

pub fn build_table_document(job: &Job, table: &CharacterTable) -> TableDocument {
    let g = &job.group;
    let cc = g.conjugacy_classes();
    TableDocument {
        group: describe_group(job),
        order: g.order(),
        exponent: table.modulus(),
        classes: (0..cc.count())
            .map(|ci| (g.label(cc.representative(ci)).to_string(), cc.class(ci).len()))
            .collect(),
        rows: table
            .characters()
            .iter()
            .map(|c| {
                (
                    c.degree(),
                    c.values().iter().map(|v| v.to_string()).collect(),
                )
            })
            .collect(),
        orthogonality_ok: table.check_orthogonality().is_ok(),
    }
}

pub fn render_table_text(doc: &TableDocument) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{} (order {}, exponent {})", doc.group, doc.order, doc.exponent);
    let headers: Vec<String> = doc
        .classes
        .iter()
        .map(|(l, s)| format!("{l} (x{s})"))
        .collect();
    let _ = writeln!(out, "classes: {}", headers.join("  "));
    for (i, (d, values)) in doc.rows.iter().enumerate() {
        let _ = writeln!(out, "chi_{i} (d={d}): {}", values.join("  "));
    }
    let _ = writeln!(out, "orthogonality: {}", if doc.orthogonality_ok { "ok" } else { "FAILED" });
    out
}
