//! The input document: a TOML file describing a group, four connection sets
//! and options.
//!
//! ```toml
//! [group]
//! kind = "symmetric"        # cyclic | abelian | dihedral | symmetric |
//! n = 3                     # alternating | table | permutation
//!
//! [sets]
//! t11 = ["(12)"]            # class representatives, expanded to g^G
//! t22 = ["(123)"]
//! t12 = ["(12)"]
//! t21 = ["(12)"]
//!
//! [options]
//! strict = false            # reject non-closed literal sets at parse time
//! verify = false            # run oracle cross-checks in reports
//! literal_elements = false  # entries are literal elements, no expansion
//! ```
//!
//! Set entries are element labels (cycle notation for permutation groups,
//! `a^i` / `ba^i` words for dihedral groups, residues or tuples for abelian
//! groups) or the shorthands `all`, `nonidentity`, `rotations`,
//! `reflections`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use semicayley::digraph::SemiCayleyDigraph;
use semicayley::group::FiniteGroup;
use semicayley::multiset::GMultiset;
use semicayley::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobDocument {
    pub group: GroupSpec,
    #[serde(default)]
    pub sets: SetsSpec,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SetsSpec {
    #[serde(default)]
    pub t11: Vec<String>,
    #[serde(default)]
    pub t22: Vec<String>,
    #[serde(default)]
    pub t12: Vec<String>,
    #[serde(default)]
    pub t21: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OptionsSpec {
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub literal_elements: bool,
}

/// Resolved input: the group and the validated digraph, with the document
/// kept for echoing back into reports.
#[derive(Debug)]
pub struct Job {
    pub document: JobDocument,
    pub group: Arc<FiniteGroup>,
    pub digraph: SemiCayleyDigraph,
}

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::error::Error for InputError {}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

pub fn parse_document(text: &str) -> Result<JobDocument, InputError> {
    toml::from_str(text).map_err(|e| InputError(format!("malformed input document: {e}")))
}

pub fn render_document(doc: &JobDocument) -> String {
    toml::to_string(doc).expect("documents serialize")
}

pub fn build_group(spec: &GroupSpec) -> Result<(Arc<FiniteGroup>, Option<usize>), InputError> {
    let need_n = || {
        spec.n
            .ok_or_else(|| InputError(format!("group kind `{}` needs `n`", spec.kind)))
    };
    let group = match spec.kind.as_str() {
        "cyclic" => FiniteGroup::cyclic(need_n()? as usize),
        "abelian" => {
            let factors = spec
                .factors
                .clone()
                .ok_or_else(|| InputError("abelian groups need `factors`".into()))?;
            FiniteGroup::abelian(&factors)
        }
        "dihedral" => FiniteGroup::dihedral(need_n()? as usize),
        "symmetric" => FiniteGroup::symmetric(need_n()? as usize),
        "alternating" => FiniteGroup::alternating(need_n()? as usize),
        "table" => {
            let table = spec
                .table
                .clone()
                .ok_or_else(|| InputError("table groups need `table`".into()))?;
            FiniteGroup::from_table(table, spec.labels.clone())
        }
        "permutation" => {
            let gens = spec
                .generators
                .clone()
                .ok_or_else(|| InputError("permutation groups need `generators`".into()))?;
            let degree = spec.points.unwrap_or_else(|| {
                gens.iter()
                    .flat_map(|g| {
                        g.split(|c: char| !c.is_ascii_digit())
                            .filter_map(|t| t.parse::<usize>().ok())
                    })
                    .max()
                    .unwrap_or(1)
            });
            let parsed: Result<Vec<Permutation>, _> = gens
                .iter()
                .map(|g| Permutation::parse(g, degree))
                .collect();
            parsed.and_then(|ps| FiniteGroup::from_generators(&ps))
        }
        other => return err(format!("unknown group kind `{other}`")),
    }
    .map_err(|e| InputError(e.to_string()))?;
    let perm_degree = match spec.kind.as_str() {
        "symmetric" | "alternating" => Some(spec.n.unwrap_or(1) as usize),
        "permutation" => Some(
            spec.points.unwrap_or_else(|| {
                spec.generators
                    .iter()
                    .flatten()
                    .flat_map(|g| {
                        g.split(|c: char| !c.is_ascii_digit())
                            .filter_map(|t| t.parse::<usize>().ok())
                    })
                    .max()
                    .unwrap_or(1)
            }),
        ),
        _ => None,
    };
    Ok((Arc::new(group), perm_degree))
}

/// Resolves one set entry to element indices.
fn resolve_entry(
    group: &Arc<FiniteGroup>,
    perm_degree: Option<usize>,
    entry: &str,
) -> Result<Vec<usize>, InputError> {
    let entry = entry.trim();
    match entry {
        "all" => return Ok((0..group.order()).collect()),
        "nonidentity" => return Ok((1..group.order()).collect()),
        "rotations" => {
            // dihedral shorthand: <a> minus the identity
            let n = group.order() / 2;
            return Ok((1..n).collect());
        }
        "reflections" => {
            let n = group.order() / 2;
            return Ok((n..2 * n).collect());
        }
        _ => {}
    }
    if let Some(e) = group.element_by_label(entry) {
        return Ok(vec![e]);
    }
    // permutation groups also accept unnormalized cycle notation
    if let Some(degree) = perm_degree {
        if let Ok(p) = Permutation::parse(entry, degree) {
            if let Some(e) = group.element_by_label(&p.cycle_notation()) {
                return Ok(vec![e]);
            }
        }
    }
    err(format!("unknown element label `{entry}`"))
}

fn resolve_set(
    group: &Arc<FiniteGroup>,
    perm_degree: Option<usize>,
    entries: &[String],
    name: &str,
    options: &OptionsSpec,
) -> Result<GMultiset, InputError> {
    let mut elements = Vec::new();
    for entry in entries {
        let resolved = resolve_entry(group, perm_degree, entry)?;
        if options.literal_elements || resolved.len() > 1 {
            // shorthands and literal entries go in as-is
            elements.extend(resolved);
        } else {
            // class-representative mode: expand to the full conjugacy class
            let cc = group.conjugacy_classes();
            elements.extend(cc.class(cc.class_of(resolved[0])).iter().copied());
        }
    }
    let set = GMultiset::from_set(group, &elements);
    if options.strict && options.literal_elements {
        if let Some(witness) = set.conjugate_closure_witness() {
            return err(format!(
                "{name} is not conjugate-closed (witness {})",
                group.label(witness)
            ));
        }
    }
    Ok(set)
}

pub fn resolve(document: JobDocument) -> Result<Job, InputError> {
    let (group, perm_degree) = build_group(&document.group)?;
    let t11 = resolve_set(&group, perm_degree, &document.sets.t11, "t11", &document.options)?;
    let t22 = resolve_set(&group, perm_degree, &document.sets.t22, "t22", &document.options)?;
    let t12 = resolve_set(&group, perm_degree, &document.sets.t12, "t12", &document.options)?;
    let t21 = resolve_set(&group, perm_degree, &document.sets.t21, "t21", &document.options)?;
    let digraph = SemiCayleyDigraph::new(&group, t11, t22, t12, t21)
        .map_err(|e| InputError(e.to_string()))?;
    Ok(Job {
        document,
        group,
        digraph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3_EXAMPLE: &str = r#"
[group]
kind = "symmetric"
n = 3

[sets]
t11 = ["(12)"]
t22 = ["(123)"]
t12 = ["(12)"]
t21 = ["(12)"]
"#;

    #[test]
    fn parses_and_expands_classes() {
        let job = resolve(parse_document(S3_EXAMPLE).unwrap()).unwrap();
        assert_eq!(job.group.order(), 6);
        assert_eq!(job.digraph.t11().size(), 3);
        assert_eq!(job.digraph.t22().size(), 2);
    }

    #[test]
    fn round_trip_document() {
        let doc = parse_document(S3_EXAMPLE).unwrap();
        let rendered = render_document(&doc);
        assert_eq!(parse_document(&rendered).unwrap(), doc);
    }

    #[test]
    fn dihedral_shorthands() {
        let text = r#"
[group]
kind = "dihedral"
n = 5

[sets]
t11 = ["rotations"]
t22 = ["reflections"]
t12 = ["1"]
t21 = ["1"]
"#;
        let job = resolve(parse_document(text).unwrap()).unwrap();
        assert_eq!(job.digraph.t11().size(), 4);
        assert_eq!(job.digraph.t22().size(), 5);
        assert_eq!(job.digraph.t12().size(), 1);
    }

    #[test]
    fn strict_literal_mode_rejects_split_classes() {
        let text = r#"
[group]
kind = "symmetric"
n = 3

[sets]
t11 = ["(12)"]

[options]
strict = true
literal_elements = true
"#;
        assert!(resolve(parse_document(text).unwrap()).is_err());
        // without strict, validation still rejects it later
        let lenient = text.replace("strict = true", "strict = false");
        assert!(resolve(parse_document(&lenient).unwrap()).is_err());
    }

    #[test]
    fn unknown_labels_are_reported() {
        let bad = S3_EXAMPLE.replace("(123)", "(1234)");
        let e = resolve(parse_document(&bad).unwrap()).unwrap_err();
        assert!(e.0.contains("unknown element label"), "{e}");
    }
}
