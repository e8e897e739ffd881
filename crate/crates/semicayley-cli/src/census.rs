//! Census runs: enumerate every quasi-abelian semi-Cayley digraph over a
//! group with each connection set a union of at most `max_classes` classes,
//! push each through the degree pipeline, optionally cross-check with the
//! brute-force oracle, and tabulate.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use semicayley::chartable::CharacterTable;
use semicayley::digraph::SemiCayleyDigraph;
use semicayley::group::FiniteGroup;
use semicayley::multiset::GMultiset;
use semicayley::oracle;
use semicayley::splitting::{algebraic_degree, DegreeConfig, VerdictCache};

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub index: u64,
    pub t11: Vec<String>,
    pub t22: Vec<String>,
    pub t12: Vec<String>,
    pub t21: Vec<String>,
    pub undirected: bool,
    pub degree: u64,
    pub integral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_integral: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct CensusDocument {
    pub group_order: usize,
    pub class_count: usize,
    pub max_classes: usize,
    pub candidates: u64,
    pub rows: Vec<CensusRow>,
    pub shown: usize,
    pub integral_count: usize,
    pub undirected_only: bool,
    pub integral_only: bool,
    pub oracle_mismatches: usize,
}

pub struct CensusOptions {
    pub max_classes: usize,
    pub undirected_only: bool,
    pub integral_only: bool,
    pub max_rows: u64,
    pub with_oracle: bool,
    pub config: DegreeConfig,
}

#[derive(Debug)]
pub enum CensusError {
    TooManyRows { candidates: u64, cap: u64 },
    Pipeline(semicayley::Error),
}

impl std::fmt::Display for CensusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CensusError::TooManyRows { candidates, cap } => write!(
                f,
                "enumeration would produce {candidates} digraphs, above the cap {cap}; \
                 raise --max-rows or lower --max-classes"
            ),
            CensusError::Pipeline(e) => write!(f, "{e}"),
        }
    }
}

/// All unions of at most `max_classes` conjugacy classes, as sorted index sets.
fn class_unions(class_count: usize, max_classes: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut current: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_classes.min(class_count) {
        let mut next = Vec::new();
        for base in &current {
            let start = base.last().map_or(0, |&l| l + 1);
            for c in start..class_count {
                let mut grown = base.clone();
                grown.push(c);
                next.push(grown.clone());
                out.push(grown);
            }
        }
        current = next;
    }
    out
}

pub fn run_census(
    group: &Arc<FiniteGroup>,
    table: &CharacterTable,
    options: &CensusOptions,
) -> Result<CensusDocument, CensusError> {
    let cc = group.conjugacy_classes();
    let unions = class_unions(cc.count(), options.max_classes);
    let per_set = unions.len() as u64;
    let candidates = per_set.pow(4);
    if candidates > options.max_rows {
        return Err(CensusError::TooManyRows {
            candidates,
            cap: options.max_rows,
        });
    }
    let sets: Vec<GMultiset> = unions
        .iter()
        .map(|u| GMultiset::from_classes(group, u))
        .collect();
    let labels: Vec<Vec<String>> = unions
        .iter()
        .map(|u| {
            u.iter()
                .map(|&ci| group.label(cc.representative(ci)).to_string())
                .collect()
        })
        .collect();

    let cache = Arc::new(VerdictCache::new());
    let config = options.config.clone().with_cache(cache);

    let rows: Result<Vec<Option<CensusRow>>, CensusError> = (0..candidates)
        .into_par_iter()
        .map(|index| {
            let mut rest = index;
            let mut pick = [0usize; 4];
            for slot in pick.iter_mut() {
                *slot = (rest % per_set) as usize;
                rest /= per_set;
            }
            let digraph = SemiCayleyDigraph::new(
                group,
                sets[pick[0]].clone(),
                sets[pick[1]].clone(),
                sets[pick[2]].clone(),
                sets[pick[3]].clone(),
            )
            .expect("class unions are conjugate-closed");
            let undirected = digraph.is_undirected();
            if options.undirected_only && !undirected {
                return Ok(None);
            }
            let report =
                algebraic_degree(&digraph, table, &config).map_err(CensusError::Pipeline)?;
            if options.integral_only && !report.integral {
                return Ok(None);
            }
            let oracle_integral = if options.with_oracle {
                Some(oracle::integrality_bruteforce(&digraph).map_err(CensusError::Pipeline)?)
            } else {
                None
            };
            Ok(Some(CensusRow {
                index,
                t11: labels[pick[0]].clone(),
                t22: labels[pick[1]].clone(),
                t12: labels[pick[2]].clone(),
                t21: labels[pick[3]].clone(),
                undirected,
                degree: report.degree,
                integral: report.integral,
                oracle_integral,
            }))
        })
        .collect();
    let rows: Vec<CensusRow> = rows?.into_iter().flatten().collect();
    let integral_count = rows.iter().filter(|r| r.integral).count();
    let oracle_mismatches = rows
        .iter()
        .filter(|r| r.oracle_integral.map_or(false, |o| o != r.integral))
        .count();
    Ok(CensusDocument {
        group_order: group.order(),
        class_count: cc.count(),
        max_classes: options.max_classes,
        candidates,
        shown: rows.len(),
        integral_count,
        undirected_only: options.undirected_only,
        integral_only: options.integral_only,
        oracle_mismatches,
        rows,
    })
}

pub fn render_census_text(doc: &CensusDocument) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "census over group of order {} ({} classes, unions of <= {} classes per set)",
        doc.group_order, doc.class_count, doc.max_classes
    );
    let _ = writeln!(
        out,
        "{} candidate digraphs, {} shown, {} integral, oracle mismatches: {}",
        doc.candidates, doc.shown, doc.integral_count, doc.oracle_mismatches
    );
    let fmt_set = |v: &Vec<String>| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.join("+")
        }
    };
    for row in &doc.rows {
        let _ = writeln!(
            out,
            "#{}: T11={} T22={} T12={} T21={} undirected={} deg={} integral={}{}",
            row.index,
            fmt_set(&row.t11),
            fmt_set(&row.t22),
            fmt_set(&row.t12),
            fmt_set(&row.t21),
            row.undirected,
            row.degree,
            row.integral,
            match row.oracle_integral {
                Some(o) => format!(" oracle={o}"),
                None => String::new(),
            }
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_enumeration_counts() {
        // 1 + C(4,1) + C(4,2) = 11
        assert_eq!(class_unions(4, 2).len(), 11);
        assert_eq!(class_unions(3, 3).len(), 8);
        assert_eq!(class_unions(5, 0).len(), 1);
    }

    #[test]
    fn trivial_group_census_is_sixteen_integral_rows() {
        let g = Arc::new(FiniteGroup::cyclic(1).unwrap());
        let tbl = CharacterTable::for_group(&g).unwrap();
        let doc = run_census(
            &g,
            &tbl,
            &CensusOptions {
                max_classes: 1,
                undirected_only: false,
                integral_only: false,
                max_rows: 100,
                with_oracle: true,
                config: DegreeConfig::default(),
            },
        )
        .unwrap();
        assert_eq!(doc.candidates, 16);
        assert_eq!(doc.shown, 16);
        // 14 of the 16: the two Fibonacci-shaped rows ([[1,1],[1,0]] and its
        // transpose pattern) have spectrum (1 +- sqrt(5))/2
        assert_eq!(doc.integral_count, 14);
        assert_eq!(doc.oracle_mismatches, 0);
        let nonintegral: Vec<&CensusRow> = doc.rows.iter().filter(|r| !r.integral).collect();
        assert_eq!(nonintegral.len(), 2);
        for row in nonintegral {
            assert_eq!(row.degree, 2);
            assert_eq!(row.oracle_integral, Some(false));
        }
    }

    #[test]
    fn row_cap_is_enforced() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let tbl = CharacterTable::for_group(&g).unwrap();
        let err = run_census(
            &g,
            &tbl,
            &CensusOptions {
                max_classes: 3,
                undirected_only: false,
                integral_only: false,
                max_rows: 10,
                with_oracle: false,
                config: DegreeConfig::default(),
            },
        )
        .unwrap_err();
        assert!(matches!(err, CensusError::TooManyRows { candidates: 4096, .. }));
    }
}
