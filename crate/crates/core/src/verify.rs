//! Cross-checking harness: every counting route over a corpus of families.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{
    brute_force_classes_with_limit, swap_closure_classes_with_limit, DEFAULT_EDGE_LIMIT,
    HARD_EDGE_CAP,
};
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec, PartKind, StemPart};
use crate::formulas::{formula_count, lattice_for, CountBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "AGREE")]
    Agree,
    /// Computed counts agree but some route was unavailable.
    #[serde(rename = "AGREE-partial")]
    AgreePartial,
    #[serde(rename = "DISAGREE")]
    Disagree,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "AGREE",
            Verdict::AgreePartial => "AGREE-partial",
            Verdict::Disagree => "DISAGREE",
        })
    }
}

/// Wall-clock milliseconds spent in each route.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timings {
    pub formula: f64,
    pub lattice: f64,
    pub brute: f64,
    pub swap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRow {
    pub family: String,
    pub edges: usize,
    pub formula: Option<u64>,
    pub formula_basis: CountBasis,
    pub lattice: Option<u64>,
    pub brute: Option<u64>,
    pub swap: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<Timings>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_edges: usize,
    /// Largest graph handed to the exhaustive routes.
    pub brute_limit: usize,
    pub hard_cap: usize,
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_edges: 6,
            brute_limit: DEFAULT_EDGE_LIMIT,
            hard_cap: HARD_EDGE_CAP,
            timing: true,
        }
    }
}

/// Families with at most `max_edges` edges, sorted by their spec string.
///
/// Diasters are listed with `1 <= a <= b`; stems are listed once per mirror pair.
pub fn verify_corpus(max_edges: usize) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for a in 1..max_edges {
        for b in a..max_edges {
            if a + b < max_edges {
                specs.push(FamilySpec::Diaster(a, b));
            }
        }
    }
    for k in 1..=max_edges {
        specs.extend([
            FamilySpec::Star(k),
            FamilySpec::Beachball(k),
            FamilySpec::Daisy(k),
        ]);
    }
    for left in PartKind::ALL {
        for right in PartKind::ALL {
            for a in 1..max_edges {
                for b in 1..max_edges - a {
                    let spec = FamilySpec::Stem(StemPart::new(left, a), StemPart::new(right, b));
                    let mirror = FamilySpec::Stem(StemPart::new(right, b), StemPart::new(left, a));
                    if spec.to_string() <= mirror.to_string() {
                        specs.push(spec);
                    }
                }
            }
        }
    }
    sort_by_spec_string(&mut specs);
    specs
}

fn sort_by_spec_string(specs: &mut Vec<FamilySpec>) {
    specs.sort_by_key(|s| s.to_string());
    specs.dedup();
}

pub fn verify(options: &VerifyOptions) -> Result<Vec<VerificationRow>> {
    let cap = options.hard_cap.min(HARD_EDGE_CAP);
    if options.max_edges > cap {
        return Err(Error::LimitExceeded {
            what: "max edges",
            value: options.max_edges,
            limit: cap,
        });
    }
    let specs = verify_corpus(options.max_edges);
    verify_specs(&specs, options)
}

/// Rows for an explicit list of families, in the given order.
pub fn verify_specs(specs: &[FamilySpec], options: &VerifyOptions) -> Result<Vec<VerificationRow>> {
    specs
        .par_iter()
        .map(|spec| verify_family(spec, options))
        .collect()
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let value = f()?;
    Ok((value, start.elapsed().as_secs_f64() * 1e3))
}

pub fn verify_family(spec: &FamilySpec, options: &VerifyOptions) -> Result<VerificationRow> {
    let graph = generate(spec)?;
    let limit = options.brute_limit.min(options.hard_cap).min(HARD_EDGE_CAP);
    let exhaustive = graph.edge_count() <= limit;

    let (formula, formula_ms) = timed(|| formula_count(spec))?;
    let (lattice, lattice_ms) = timed(|| lattice_for(spec))?;
    let (brute, brute_ms) = if exhaustive {
        let (p, ms) = timed(|| brute_force_classes_with_limit(&graph, limit))?;
        (Some(p.class_count() as u64), ms)
    } else {
        (None, 0.0)
    };
    let (swap, swap_ms) = if exhaustive {
        let (p, ms) = timed(|| swap_closure_classes_with_limit(&graph, limit))?;
        (Some(p.class_count() as u64), ms)
    } else {
        (None, 0.0)
    };

    let lattice = lattice.and_then(|l| l.value);
    let computed: Vec<u64> = [formula.value, lattice, brute, swap]
        .into_iter()
        .flatten()
        .collect();
    let verdict = if computed.windows(2).any(|w| w[0] != w[1]) {
        Verdict::Disagree
    } else if formula.is_covered() && exhaustive {
        Verdict::Agree
    } else {
        Verdict::AgreePartial
    };

    Ok(VerificationRow {
        family: spec.to_string(),
        edges: graph.edge_count(),
        formula: formula.value,
        formula_basis: formula.basis,
        lattice,
        brute,
        swap,
        verdict,
        elapsed_ms: options.timing.then_some(Timings {
            formula: formula_ms,
            lattice: lattice_ms,
            brute: brute_ms,
            swap: swap_ms,
        }),
    })
}

/// Fixed-width text table, one row per family.
pub fn render_table(rows: &[VerificationRow]) -> String {
    let cell = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let timing = rows.iter().any(|r| r.elapsed_ms.is_some());
    let mut out = format!(
        "{:<28} {:>5} {:>11} {:>7} {:>7} {:>7}  {:<13}",
        "family", "edges", "formula", "lattice", "brute", "swap", "verdict"
    );
    if timing {
        out.push_str(&format!(" {:>10} {:>10}", "brute_ms", "swap_ms"));
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for row in rows {
        let formula = match row.formula {
            Some(v) => v.to_string(),
            None => "not-covered".to_string(),
        };
        out.push_str(&format!(
            "{:<28} {:>5} {:>11} {:>7} {:>7} {:>7}  {:<13}",
            row.family,
            row.edges,
            formula,
            cell(row.lattice),
            cell(row.brute),
            cell(row.swap),
            row.verdict.to_string()
        ));
        if let Some(t) = row.elapsed_ms {
            out.push_str(&format!(" {:>10.2} {:>10.2}", t.brute, t.swap));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn untimed(max_edges: usize) -> VerifyOptions {
        VerifyOptions {
            max_edges,
            timing: false,
            ..VerifyOptions::default()
        }
    }

    fn row<'a>(rows: &'a [VerificationRow], family: &str) -> &'a VerificationRow {
        rows.iter().find(|r| r.family == family).unwrap()
    }

    #[test]
    fn diaster_one_two_row() {
        let rows = verify(&untimed(4)).unwrap();
        let r = row(&rows, "diaster:1,2");
        assert_eq!(
            (r.formula, r.lattice, r.brute, r.swap, r.verdict),
            (Some(6), Some(6), Some(6), Some(6), Verdict::Agree)
        );
    }

    #[test]
    fn daisy_row() {
        let rows = verify(&untimed(3)).unwrap();
        let r = row(&rows, "daisy:3");
        assert_eq!(
            (r.formula, r.lattice, r.brute, r.swap, r.verdict),
            (Some(1), None, Some(1), Some(1), Verdict::Agree)
        );
    }

    #[test]
    fn corpus_is_sorted_and_capped() {
        let specs = verify_corpus(5);
        let names: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(specs.iter().all(|s| s.edge_count() <= 5));
        assert!(names.contains(&"stem:beachball:1/daisy:3".to_string()));
        assert!(!names.contains(&"stem:daisy:3/beachball:1".to_string()));
        assert!(verify(&untimed(11)).is_err());
        let lowered = VerifyOptions {
            hard_cap: 4,
            ..untimed(5)
        };
        assert!(verify(&lowered).is_err());
    }

    #[test]
    fn over_limit_rows_are_partial() {
        let options = VerifyOptions {
            brute_limit: 3,
            ..untimed(4)
        };
        let rows = verify(&options).unwrap();
        let r = row(&rows, "diaster:1,2");
        assert_eq!((r.brute, r.verdict), (None, Verdict::AgreePartial));
    }
}
