//! Exhaustive checks of the small-order statements relating `n`, `χ` and
//! `f = χ - ω`, plus filtered scans of graph6 streams.
//!
//! Graphs come from the built-in enumerator (`n <= 7`), a graph6 stream, or
//! an explicit list. Work is spread over a rayon pool in fixed-size chunks
//! and merged back in input order, so reports do not depend on `jobs`.

mod enumerate;
mod predicate;

pub use enumerate::{enumerate_graphs, KNOWN_COUNTS, MAX_BUILTIN_N};
pub use predicate::{Comparison, Field, Op, Predicate};

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::build_family;
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::invariants::{chromatic_number, clique_number, colour_count, greedy_coloring};
use crate::structure::{classify_extremal, is_isomorphic, FamilyKind, StructureError};

/// Listed violations, equality cases and matches are capped at these
/// lengths; the totals are always exact.
pub const VIOLATION_LIST_CAP: usize = 100;
pub const LIST_CAP: usize = 1000;

const CHUNK: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("built-in enumeration supports n <= {MAX_BUILTIN_N}, got {0}")]
    EnumerationTooLarge(usize),
    #[error("invalid vertex range {min}..={max}")]
    InvalidRange { min: usize, max: usize },
    #[error("invalid predicate: {0}")]
    Predicate(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl From<std::io::Error> for VerifyError {
    fn from(e: std::io::Error) -> Self {
        VerifyError::Io(e.to_string())
    }
}

/// Which statement to check on every input graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `f >= 1` implies `n >= χ + 2`, with equality only for `K_{χ-3} + C5`.
    Dirac,
    /// `f >= 2` implies `n >= 10` and `n >= χ + 4`; equality only for
    /// `K_{χ-6} + C5 + C5`, and `n = 10` only for `C5 + C5`.
    Gap2,
    /// `f >= 3` implies `n >= 13` and `n >= χ + 6`; equality only for
    /// `K_m + Q` and `K_m + C5 + C5 + C5`.
    Gap3,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Dirac => "dirac",
            Check::Gap2 => "gap2",
            Check::Gap3 => "gap3",
        }
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dirac" => Ok(Check::Dirac),
            "gap2" => Ok(Check::Gap2),
            "gap3" => Ok(Check::Gap3),
            other => Err(VerifyError::Predicate(format!("unknown check {other:?}"))),
        }
    }
}

/// One input record. `line` is the 1-based line for stream input.
#[derive(Clone, Debug)]
pub struct SourceItem {
    pub line: Option<usize>,
    pub graph: Result<Graph, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub graph6: String,
    /// Family expression the graph is isomorphic to, e.g. `K1+C5`.
    pub classification: String,
    /// Extremal kind for `f >= 3` equality cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<FamilyKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanMatch {
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseFailure {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `dirac`, `gap2`, `gap3` or `scan`.
    pub theorem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicate: Option<String>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub graph_count: usize,
    pub counts_by_n: BTreeMap<usize, usize>,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub equality_count: usize,
    pub equality_cases: Vec<EqualityCase>,
    pub match_count: usize,
    pub matches: Vec<ScanMatch>,
    pub parse_errors: Vec<ParseFailure>,
    /// No violations and no unreadable input.
    pub passed: bool,
}

impl VerificationReport {
    fn new(check: &str, predicate: Option<String>) -> Self {
        Self {
            theorem: check.to_string(),
            predicate,
            n_min: None,
            n_max: None,
            graph_count: 0,
            counts_by_n: BTreeMap::new(),
            violation_count: 0,
            violations: Vec::new(),
            equality_count: 0,
            equality_cases: Vec::new(),
            match_count: 0,
            matches: Vec::new(),
            parse_errors: Vec::new(),
            passed: true,
        }
    }
}

#[derive(Default)]
struct Outcome {
    violation: Option<String>,
    equality: Option<String>,
    extremal: Option<(FamilyKind, Option<usize>)>,
    matched: bool,
}

/// All graphs with `min_n <= n <= max_n`, one per isomorphism class.
pub fn builtin_graphs(min_n: usize, max_n: usize) -> Result<Vec<Graph>, VerifyError> {
    if min_n > max_n {
        return Err(VerifyError::InvalidRange {
            min: min_n,
            max: max_n,
        });
    }
    let mut out = Vec::new();
    for n in min_n..=max_n {
        out.extend(enumerate_graphs(n)?);
    }
    Ok(out)
}

pub fn graphs_source(graphs: Vec<Graph>) -> impl Iterator<Item = SourceItem> {
    graphs.into_iter().map(|g| SourceItem {
        line: None,
        graph: Ok(g),
    })
}

/// One graph6 record per non-blank line.
pub fn graph6_source<R: BufRead>(reader: R) -> impl Iterator<Item = SourceItem> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line_no = i + 1;
            match line {
                Err(e) => Some(SourceItem {
                    line: Some(line_no),
                    graph: Err(format!("read error: {e}")),
                }),
                Ok(text) if text.trim().is_empty() => None,
                Ok(text) => Some(SourceItem {
                    line: Some(line_no),
                    graph: parse_graph6(text.trim()).map_err(|e| e.to_string()),
                }),
            }
        })
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, VerifyError> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Evaluates `eval` over `items` in parallel chunks and merges in order.
/// `jobs = 0` uses rayon's global pool.
fn drive<I, F>(
    mut report: VerificationReport,
    items: I,
    jobs: usize,
    eval: F,
) -> Result<VerificationReport, VerifyError>
where
    I: Iterator<Item = SourceItem> + Send,
    F: Fn(&Graph) -> Outcome + Sync + Send,
{
    with_pool(jobs, move || {
        let mut items = items;
        loop {
            let chunk: Vec<SourceItem> = items.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let outcomes: Vec<Option<Outcome>> = chunk
                .par_iter()
                .map(|it| it.graph.as_ref().ok().map(&eval))
                .collect();
            for (item, outcome) in chunk.into_iter().zip(outcomes) {
                merge(&mut report, item, outcome);
            }
        }
        report.passed = report.violation_count == 0 && report.parse_errors.is_empty();
        report
    })
}

fn merge(report: &mut VerificationReport, item: SourceItem, outcome: Option<Outcome>) {
    let g = match item.graph {
        Ok(g) => g,
        Err(message) => {
            report.parse_errors.push(ParseFailure {
                line: item.line.unwrap_or(0),
                message,
            });
            return;
        }
    };
    let outcome = outcome.expect("parsed graphs are evaluated");
    let n = g.n();
    report.graph_count += 1;
    *report.counts_by_n.entry(n).or_default() += 1;
    report.n_min = Some(report.n_min.map_or(n, |m| m.min(n)));
    report.n_max = Some(report.n_max.map_or(n, |m| m.max(n)));
    if let Some(detail) = outcome.violation {
        report.violation_count += 1;
        if report.violations.len() < VIOLATION_LIST_CAP {
            report.violations.push(Violation {
                graph6: emit_graph6(&g),
                line: item.line,
                detail,
            });
        }
    }
    if let Some(classification) = outcome.equality {
        report.equality_count += 1;
        if report.equality_cases.len() < LIST_CAP {
            report.equality_cases.push(EqualityCase {
                graph6: emit_graph6(&g),
                classification,
                kind: outcome.extremal.map(|e| e.0),
                m: outcome.extremal.and_then(|e| e.1),
            });
        }
    }
    if outcome.matched {
        report.match_count += 1;
        if report.matches.len() < LIST_CAP {
            report.matches.push(ScanMatch {
                graph6: emit_graph6(&g),
                line: item.line,
            });
        }
    }
}

/// `(ω, χ)` when `χ - ω >= min_f`, skipping the exact colouring whenever
/// the greedy colouring already shows `χ < ω + min_f`.
fn gap_at_least(g: &Graph, min_f: usize) -> Option<(usize, usize)> {
    if g.n() == 0 {
        return None;
    }
    let omega = clique_number(g);
    if colour_count(&greedy_coloring(g)) < omega + min_f {
        return None;
    }
    let chi = chromatic_number(g);
    (chi >= omega + min_f).then_some((omega, chi))
}

fn family_with_complete_part(m: usize, rest: &str) -> String {
    if m == 0 {
        rest.to_string()
    } else {
        format!("K{m}+{rest}")
    }
}

fn matches_family(g: &Graph, expr: &str) -> bool {
    build_family(expr).is_ok_and(|h| h.n() == g.n() && is_isomorphic(g, &h))
}

fn check_dirac(g: &Graph) -> Outcome {
    let Some((omega, chi)) = gap_at_least(g, 1) else {
        return Outcome::default();
    };
    let n = g.n();
    let f = chi - omega;
    if n < chi + 2 {
        return Outcome {
            violation: Some(format!("f = {f} but n = {n} < chi + 2 = {}", chi + 2)),
            ..Outcome::default()
        };
    }
    if n > chi + 2 {
        return Outcome::default();
    }
    let expr = family_with_complete_part(chi - 3, "C5");
    if matches_family(g, &expr) {
        Outcome {
            equality: Some(expr),
            ..Outcome::default()
        }
    } else {
        Outcome {
            violation: Some(format!("n = chi + 2 = {n} but graph is not {expr}")),
            ..Outcome::default()
        }
    }
}

fn check_gap2(g: &Graph) -> Outcome {
    let Some((omega, chi)) = gap_at_least(g, 2) else {
        return Outcome::default();
    };
    let n = g.n();
    let f = chi - omega;
    let violation = |detail: String| Outcome {
        violation: Some(detail),
        ..Outcome::default()
    };
    if n < 10 {
        return violation(format!("f = {f} but n = {n} < 10"));
    }
    if n < chi + 4 {
        return violation(format!("f = {f} but n = {n} < chi + 4 = {}", chi + 4));
    }
    if n == 10 && !matches_family(g, "C5+C5") {
        return violation("f >= 2 and n = 10 but graph is not C5+C5".into());
    }
    if n > chi + 4 {
        return Outcome::default();
    }
    let expr = family_with_complete_part(chi - 6, "C5+C5");
    if matches_family(g, &expr) {
        Outcome {
            equality: Some(expr),
            ..Outcome::default()
        }
    } else {
        violation(format!("n = chi + 4 = {n} but graph is not {expr}"))
    }
}

fn check_gap3(g: &Graph) -> Outcome {
    let Some((omega, chi)) = gap_at_least(g, 3) else {
        return Outcome::default();
    };
    let n = g.n();
    let f = chi - omega;
    let violation = |detail: String| Outcome {
        violation: Some(detail),
        ..Outcome::default()
    };
    if n < 13 {
        return violation(format!("f = {f} but n = {n} < 13"));
    }
    if n < chi + 6 {
        return violation(format!("f = {f} but n = {n} < chi + 6 = {}", chi + 6));
    }
    if n > chi + 6 {
        return Outcome::default();
    }
    match classify_extremal(g) {
        Ok(c) => match c.family_expr() {
            Some(expr) => Outcome {
                equality: Some(expr),
                extremal: Some((c.kind, c.m)),
                ..Outcome::default()
            },
            None => violation("n = chi + 6 with f >= 3 but classified as not extremal".into()),
        },
        Err(StructureError::TheoremViolation { detail, .. }) => violation(detail),
        Err(e) => violation(e.to_string()),
    }
}

/// Runs `check` over every item.
pub fn verify<I>(check: Check, items: I, jobs: usize) -> Result<VerificationReport, VerifyError>
where
    I: Iterator<Item = SourceItem> + Send,
{
    let report = VerificationReport::new(check.name(), None);
    match check {
        Check::Dirac => drive(report, items, jobs, check_dirac),
        Check::Gap2 => drive(report, items, jobs, check_gap2),
        Check::Gap3 => drive(report, items, jobs, check_gap3),
    }
}

/// Runs `check` over all graphs of order `min_n..=max_n` (at most 7).
pub fn verify_builtin(
    check: Check,
    min_n: usize,
    max_n: usize,
    jobs: usize,
) -> Result<VerificationReport, VerifyError> {
    verify(check, graphs_source(builtin_graphs(min_n, max_n)?), jobs)
}

pub fn verify_dirac(max_n: usize, jobs: usize) -> Result<VerificationReport, VerifyError> {
    verify_builtin(Check::Dirac, 1, max_n, jobs)
}

/// Runs `check` over a graph6 file.
pub fn verify_file(check: Check, path: &Path, jobs: usize) -> Result<VerificationReport, VerifyError> {
    let reader = BufReader::new(File::open(path)?);
    verify(check, graph6_source(reader), jobs)
}

/// Lists graphs in a graph6 stream that satisfy `predicate`. Unparseable
/// lines are reported and skipped.
pub fn scan_reader<R: BufRead + Send>(
    reader: R,
    predicate: &Predicate,
    jobs: usize,
) -> Result<VerificationReport, VerifyError> {
    let report = VerificationReport::new("scan", Some(predicate.to_string()));
    drive(report, graph6_source(reader), jobs, |g| Outcome {
        matched: predicate.matches(g),
        ..Outcome::default()
    })
}

pub fn scan_stream(
    path: &Path,
    predicate: &Predicate,
    jobs: usize,
) -> Result<VerificationReport, VerifyError> {
    scan_reader(BufReader::new(File::open(path)?), predicate, jobs)
}
