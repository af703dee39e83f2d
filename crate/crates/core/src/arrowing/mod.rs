//! Edge arrowing `G -> (a_1, ..., a_r)`: every `r`-colouring of `E(G)` has a
//! monochromatic `a_i`-clique in some colour `i`.
//!
//! A *good* colouring has no such clique; it is the certificate of
//! non-arrowing and is always re-checked by [`check_coloring`] before it is
//! returned.

mod cnf;
mod ledger;
mod search;

pub use cnf::{build_cnf, export_cnf, parse_dimacs, var_index, Cnf, CnfSummary};
pub use ledger::{normalize_targets, FolkmanEntry, Ledger, Provenance, RamseyEntry};

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::FamilyExpr;
use crate::graph::{Graph, GraphError};
use crate::graph6::emit_graph6;
use crate::invariants::{chromatic_number, clique_number};

/// Default node cap for one search.
pub const DEFAULT_MAX_NODES: u64 = 1_000_000_000;
/// Default wall-clock cap for one search.
pub const DEFAULT_MAX_TIME: Duration = Duration::from_secs(600);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrowingError {
    #[error("invalid targets: {0}")]
    InvalidTargets(String),
    #[error("malformed colouring: {0}")]
    MalformedColoring(String),
    #[error("search budget exceeded ({reason}) after {nodes} nodes, {elapsed_ms} ms")]
    BudgetExceeded {
        reason: String,
        nodes: u64,
        elapsed_ms: u64,
    },
    #[error("no Ramsey value known for targets {0:?}")]
    UnknownRamsey(Vec<usize>),
    #[error("invalid Ramsey value {value} for targets {targets:?}: {reason}")]
    InvalidRamsey {
        targets: Vec<usize>,
        value: usize,
        reason: String,
    },
    #[error("chromatic bound violated: chi(G) = {chi} < R{targets:?} = {ramsey} for arrowing graph {graph6}")]
    ChromaticBoundViolated {
        graph6: String,
        targets: Vec<usize>,
        chi: usize,
        ramsey: usize,
    },
    #[error("ledger inconsistency: {0}")]
    Ledger(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<std::io::Error> for ArrowingError {
    fn from(e: std::io::Error) -> Self {
        ArrowingError::Io(e.to_string())
    }
}

pub fn validate_targets(targets: &[usize]) -> Result<(), ArrowingError> {
    if targets.is_empty() {
        return Err(ArrowingError::InvalidTargets("no targets given".into()));
    }
    if targets.len() > 16 {
        return Err(ArrowingError::InvalidTargets(format!(
            "{} colours requested, at most 16 supported",
            targets.len()
        )));
    }
    if let Some(&a) = targets.iter().find(|&&a| a < 2) {
        return Err(ArrowingError::InvalidTargets(format!(
            "clique size {a} < 2"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowingInstance {
    graph: Graph,
    targets: Vec<usize>,
}

impl ArrowingInstance {
    pub fn new(graph: Graph, targets: Vec<usize>) -> Result<Self, ArrowingError> {
        validate_targets(&targets)?;
        Ok(Self { graph, targets })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn colours(&self) -> usize {
        self.targets.len()
    }
}

/// Assignment of a colour in `1..=r` to each edge `(u, v)`, `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<(usize, usize, usize)>", into = "Vec<(usize, usize, usize)>")]
pub struct EdgeColoring {
    colors: BTreeMap<(usize, usize), usize>,
}

impl From<Vec<(usize, usize, usize)>> for EdgeColoring {
    fn from(v: Vec<(usize, usize, usize)>) -> Self {
        Self::from_pairs(v.into_iter().map(|(u, w, c)| ((u, w), c)))
    }
}

impl From<EdgeColoring> for Vec<(usize, usize, usize)> {
    fn from(c: EdgeColoring) -> Self {
        c.colors.into_iter().map(|((u, v), c)| (u, v, c)).collect()
    }
}

impl EdgeColoring {
    /// Edges are normalized to `(min, max)`.
    pub fn from_pairs<I: IntoIterator<Item = ((usize, usize), usize)>>(pairs: I) -> Self {
        Self {
            colors: pairs
                .into_iter()
                .map(|((u, v), c)| ((u.min(v), u.max(v)), c))
                .collect(),
        }
    }

    /// Every edge of `g` in colour `colour`.
    pub fn uniform(g: &Graph, colour: usize) -> Self {
        Self::from_pairs(g.edges().map(|e| (e, colour)))
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    /// Spanning subgraph of the edges with colour `colour`.
    pub fn class_graph(&self, n: usize, colour: usize) -> Result<Graph, GraphError> {
        Graph::from_edges(n, self.iter().filter(|&(_, c)| c == colour).map(|(e, _)| e))
    }

    /// graph6 of each colour class `1..=r`, joined by commas.
    pub fn to_class_graph6(&self, n: usize, r: usize) -> Result<String, GraphError> {
        let parts = (1..=r)
            .map(|c| self.class_graph(n, c).map(|g| emit_graph6(&g)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(parts.join(","))
    }

    pub fn from_class_graph6(text: &str) -> Result<(usize, Self), GraphError> {
        let mut pairs = Vec::new();
        let mut n = None;
        for (i, part) in text.split(',').enumerate() {
            let g = crate::graph6::parse_graph6(part)?;
            if *n.get_or_insert(g.n()) != g.n() {
                return Err(GraphError::Graph6("colour classes differ in order".into()));
            }
            pairs.extend(g.edges().map(|e| (e, i + 1)));
        }
        Ok((n.unwrap_or(0), Self::from_pairs(pairs)))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowingVerdict {
    pub arrows: bool,
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_MAX_NODES,
            max_time: Some(DEFAULT_MAX_TIME),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Worker threads; results do not depend on this.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            jobs: 1,
        }
    }
}

/// True iff `col` is good: no colour `i` contains a monochromatic
/// `a_i`-clique.
pub fn check_coloring(inst: &ArrowingInstance, col: &EdgeColoring) -> Result<bool, ArrowingError> {
    let g = inst.graph();
    let r = inst.colours();
    if col.len() != g.edge_count() {
        return Err(ArrowingError::MalformedColoring(format!(
            "{} coloured edges, graph has {}",
            col.len(),
            g.edge_count()
        )));
    }
    for ((u, v), c) in col.iter() {
        if v >= g.n() || !g.has_edge(u, v) {
            return Err(ArrowingError::MalformedColoring(format!(
                "({u}, {v}) is not an edge"
            )));
        }
        if c == 0 || c > r {
            return Err(ArrowingError::MalformedColoring(format!(
                "colour {c} on ({u}, {v}) outside 1..={r}"
            )));
        }
    }
    for (i, &a) in inst.targets().iter().enumerate() {
        if clique_number(&col.class_graph(g.n(), i + 1)?) >= a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides arrowing by exhaustive search. A negative verdict carries a
/// verified good colouring.
pub fn arrows(inst: &ArrowingInstance, opts: &SearchOptions) -> Result<ArrowingVerdict, ArrowingError> {
    let (outcome, stats) = search::run(inst, &opts.budget, opts.jobs.max(1))?;
    match outcome {
        search::Outcome::Exhausted => Ok(ArrowingVerdict {
            arrows: true,
            witness: None,
            stats,
        }),
        search::Outcome::Good(w) => {
            if !check_coloring(inst, &w)? {
                return Err(ArrowingError::Internal(
                    "search produced a colouring rejected by the checker".into(),
                ));
            }
            Ok(ArrowingVerdict {
                arrows: false,
                witness: Some(w),
                stats,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub targets: Vec<usize>,
    pub value: usize,
    /// Good colouring of `K_{value-1}`.
    pub witness: EdgeColoring,
    pub stats: SearchStats,
}

impl RamseyResult {
    pub fn ledger_entry(&self) -> Result<RamseyEntry, ArrowingError> {
        let n = self.value - 1;
        Ok(RamseyEntry {
            targets: self.targets.clone(),
            value: self.value,
            provenance: Provenance::Computed,
            witness_graph6: Some(self.witness.to_class_graph6(n, self.targets.len())?),
        })
    }
}

/// Least `n` with `K_n -> targets`, scanning `n = 1, 2, ...`.
pub fn ramsey(targets: &[usize], opts: &SearchOptions) -> Result<RamseyResult, ArrowingError> {
    validate_targets(targets)?;
    let mut witness = EdgeColoring::default();
    let mut total = SearchStats::default();
    for n in 1..=crate::graph::MAX_VERTICES {
        let inst = ArrowingInstance::new(Graph::complete(n)?, targets.to_vec())?;
        let v = arrows(&inst, opts)?;
        total.nodes += v.stats.nodes;
        total.elapsed_ms += v.stats.elapsed_ms;
        if v.arrows {
            return Ok(RamseyResult {
                targets: targets.to_vec(),
                value: n,
                witness,
                stats: total,
            });
        }
        witness = v.witness.expect("negative verdicts carry a witness");
    }
    Err(ArrowingError::InvalidTargets(format!(
        "R{targets:?} exceeds the {}-vertex capacity",
        crate::graph::MAX_VERTICES
    )))
}

/// Membership in `H_e(targets; q)`: `ω(G) < q` and `G -> targets`.
pub fn he_member(
    g: &Graph,
    targets: &[usize],
    q: usize,
    opts: &SearchOptions,
) -> Result<bool, ArrowingError> {
    validate_targets(targets)?;
    if q < 2 {
        return Err(ArrowingError::InvalidTargets(format!("q = {q} < 2")));
    }
    if clique_number(g) >= q {
        return Ok(false);
    }
    Ok(arrows(&ArrowingInstance::new(g.clone(), targets.to_vec())?, opts)?.arrows)
}

/// The edge Folkman number `F_e(targets; q)` exists iff `q > max(targets)`.
pub fn folkman_existence(targets: &[usize], q: usize) -> Result<bool, ArrowingError> {
    validate_targets(targets)?;
    Ok(q > *targets.iter().max().expect("targets non-empty"))
}

fn require_folkman_targets(targets: &[usize]) -> Result<(), ArrowingError> {
    validate_targets(targets)?;
    if targets.len() < 2 || targets.iter().any(|&a| a < 3) {
        return Err(ArrowingError::InvalidTargets(format!(
            "need r >= 2 and every target >= 3, got {targets:?}"
        )));
    }
    Ok(())
}

/// Lower bound `F_e(targets; R - 2) >= R + 6`.
pub fn folkman_lower_bound(targets: &[usize], ramsey: usize) -> Result<usize, ArrowingError> {
    require_folkman_targets(targets)?;
    let max = *targets.iter().max().expect("non-empty");
    if ramsey <= max + 2 {
        return Err(ArrowingError::InvalidRamsey {
            targets: targets.to_vec(),
            value: ramsey,
            reason: format!("must exceed max target + 2 = {}", max + 2),
        });
    }
    Ok(ramsey + 6)
}

/// Same bound, recorded in the ledger as a derived lower bound for
/// `F_e(targets; R - 2)`.
pub fn record_folkman_lower_bound(
    ledger: &mut Ledger,
    targets: &[usize],
) -> Result<FolkmanEntry, ArrowingError> {
    let r = ledger
        .ramsey_value(targets)
        .ok_or_else(|| ArrowingError::UnknownRamsey(targets.to_vec()))?;
    let bound = folkman_lower_bound(targets, r)?;
    ledger.record_folkman_lower(targets, r - 2, bound, Provenance::Derived, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BranchOutcome {
    /// `R` is below the family's smallest member.
    Inapplicable,
    Arrows { stats: SearchStats },
    DoesNotArrow { witness: EdgeColoring, stats: SearchStats },
    BudgetExceeded { reason: String, nodes: u64, elapsed_ms: u64 },
}

impl BranchOutcome {
    pub fn arrows(&self) -> bool {
        matches!(self, BranchOutcome::Arrows { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalBranch {
    /// `K<R-7>+Q` or `K<R-9>+C5+C5+C5`; absent when inapplicable.
    pub family: Option<String>,
    pub vertices: Option<usize>,
    pub outcome: BranchOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalTestReport {
    pub targets: Vec<usize>,
    pub ramsey: usize,
    /// `q = R - 2`.
    pub q: usize,
    /// `R + 6`.
    pub lower_bound: usize,
    pub q_branch: ExtremalBranch,
    pub triple_c5_branch: ExtremalBranch,
    /// `Some(R + 6)` when some branch arrows, which pins `F_e(targets; R - 2)`.
    pub folkman_value: Option<usize>,
    pub note: String,
}

fn run_branch(
    expr: Option<FamilyExpr>,
    targets: &[usize],
    opts: &SearchOptions,
) -> Result<ExtremalBranch, ArrowingError> {
    let Some(expr) = expr else {
        return Ok(ExtremalBranch {
            family: None,
            vertices: None,
            outcome: BranchOutcome::Inapplicable,
        });
    };
    let g = expr.build()?;
    let inst = ArrowingInstance::new(g, targets.to_vec())?;
    let outcome = match arrows(&inst, opts) {
        Ok(v) if v.arrows => BranchOutcome::Arrows { stats: v.stats },
        Ok(v) => BranchOutcome::DoesNotArrow {
            witness: v.witness.expect("negative verdicts carry a witness"),
            stats: v.stats,
        },
        Err(ArrowingError::BudgetExceeded {
            reason,
            nodes,
            elapsed_ms,
        }) => BranchOutcome::BudgetExceeded {
            reason,
            nodes,
            elapsed_ms,
        },
        Err(e) => return Err(e),
    };
    Ok(ExtremalBranch {
        family: Some(expr.to_string()),
        vertices: Some(expr.vertex_count()),
        outcome,
    })
}

/// Tests whether `K_{R-7} + Q` or `K_{R-9} + C5 + C5 + C5` arrows `targets`;
/// `F_e(targets; R - 2) = R + 6` holds exactly when one of them does.
pub fn extremal_arrowing_test(
    targets: &[usize],
    ramsey: usize,
    opts: &SearchOptions,
) -> Result<ExtremalTestReport, ArrowingError> {
    let lower_bound = folkman_lower_bound(targets, ramsey)?;
    let q_expr = (ramsey >= 7).then(|| FamilyExpr::km_q(ramsey - 7));
    let c5_expr = (ramsey >= 9).then(|| FamilyExpr::km_triple_c5(ramsey - 9));
    let q_branch = run_branch(q_expr, targets, opts)?;
    let triple_c5_branch = run_branch(c5_expr, targets, opts)?;
    let any = q_branch.outcome.arrows() || triple_c5_branch.outcome.arrows();
    let undecided = [&q_branch, &triple_c5_branch]
        .iter()
        .any(|b| matches!(b.outcome, BranchOutcome::BudgetExceeded { .. }));
    let applicable = [&q_branch, &triple_c5_branch]
        .iter()
        .any(|b| b.outcome != BranchOutcome::Inapplicable);
    let note = if !applicable {
        "no family instance exists for this R".to_string()
    } else if any {
        format!("F_e({targets:?}; {}) = {lower_bound}", ramsey - 2)
    } else if undecided {
        "undecided within budget; export the branch graphs as CNF".to_string()
    } else {
        format!("F_e({targets:?}; {}) > {lower_bound}", ramsey - 2)
    };
    Ok(ExtremalTestReport {
        targets: targets.to_vec(),
        ramsey,
        q: ramsey - 2,
        lower_bound,
        q_branch,
        triple_c5_branch,
        folkman_value: any.then_some(lower_bound),
        note,
    })
}

/// Checks `χ(G) >= R(targets)` for a graph already known to arrow `targets`.
/// A failure means either the solvers or the inequality is wrong, so it is
/// an error rather than `Ok(false)`.
pub fn lin_consistency(g: &Graph, targets: &[usize], ledger: &Ledger) -> Result<bool, ArrowingError> {
    let r = ledger
        .ramsey_value(targets)
        .ok_or_else(|| ArrowingError::UnknownRamsey(targets.to_vec()))?;
    let chi = chromatic_number(g);
    if chi >= r {
        Ok(true)
    } else {
        Err(ArrowingError::ChromaticBoundViolated {
            graph6: emit_graph6(g),
            targets: targets.to_vec(),
            chi,
            ramsey: r,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(g: Graph, t: &[usize]) -> ArrowingInstance {
        ArrowingInstance::new(g, t.to_vec()).unwrap()
    }

    #[test]
    fn target_validation() {
        let g = Graph::complete(3).unwrap();
        assert!(ArrowingInstance::new(g.clone(), vec![]).is_err());
        assert!(ArrowingInstance::new(g.clone(), vec![3, 1]).is_err());
        assert!(ArrowingInstance::new(g, vec![2, 2]).is_ok());
    }

    #[test]
    fn checker_examples() {
        let k6 = Graph::complete(6).unwrap();
        assert!(!check_coloring(&inst(k6.clone(), &[3, 3]), &EdgeColoring::uniform(&k6, 1)).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        for colour in [1, 2] {
            assert!(check_coloring(&inst(c5.clone(), &[3, 3]), &EdgeColoring::uniform(&c5, colour)).unwrap());
        }
        let k5 = Graph::complete(5).unwrap();
        let pentagon = EdgeColoring::from_pairs(
            k5.edges()
                .map(|(u, v)| ((u, v), if (v - u) % 5 == 1 || (v - u) % 5 == 4 { 1 } else { 2 })),
        );
        assert!(check_coloring(&inst(k5, &[3, 3]), &pentagon).unwrap());
    }

    #[test]
    fn checker_rejects_malformed() {
        let k3 = Graph::complete(3).unwrap();
        let i = inst(k3.clone(), &[3, 3]);
        let short = EdgeColoring::from_pairs([((0, 1), 1)]);
        assert!(matches!(check_coloring(&i, &short), Err(ArrowingError::MalformedColoring(_))));
        let bad_colour = EdgeColoring::uniform(&k3, 3);
        assert!(check_coloring(&i, &bad_colour).is_err());
        let non_edge = EdgeColoring::from_pairs([((0, 1), 1), ((1, 2), 1), ((0, 5), 1)]);
        assert!(check_coloring(&i, &non_edge).is_err());
    }

    #[test]
    fn small_verdicts() {
        let o = SearchOptions::default();
        assert!(arrows(&inst(Graph::complete(6).unwrap(), &[3, 3]), &o).unwrap().arrows);
        let v = arrows(&inst(Graph::complete(5).unwrap(), &[3, 3]), &o).unwrap();
        assert!(!v.arrows);
        assert_eq!(v.witness.unwrap().len(), 10);
        assert!(!arrows(&inst(Graph::cycle(5).unwrap(), &[3, 3]), &o).unwrap().arrows);
        // no edges: the empty colouring is good unless some target is 2 ... which needs an edge too
        assert!(!arrows(&inst(Graph::empty(4).unwrap(), &[2]), &o).unwrap().arrows);
        assert!(arrows(&inst(Graph::complete(2).unwrap(), &[2]), &o).unwrap().arrows);
    }

    #[test]
    fn ramsey_small() {
        let o = SearchOptions::default();
        assert_eq!(ramsey(&[3, 3], &o).unwrap().value, 6);
        for k in 2..=6 {
            assert_eq!(ramsey(&[2, k], &o).unwrap().value, k);
        }
        assert_eq!(ramsey(&[4], &o).unwrap().value, 4);
    }

    #[test]
    fn he_membership() {
        let o = SearchOptions::default();
        let k6 = Graph::complete(6).unwrap();
        assert!(he_member(&k6, &[3, 3], 7, &o).unwrap());
        assert!(!he_member(&k6, &[3, 3], 6, &o).unwrap());
        assert!(!he_member(&Graph::cycle(5).unwrap(), &[3, 3], 3, &o).unwrap());
    }

    #[test]
    fn existence_and_bounds() {
        assert!(folkman_existence(&[3, 3], 4).unwrap());
        assert!(!folkman_existence(&[3, 3], 3).unwrap());
        assert!(folkman_existence(&[3, 5], 12).unwrap());
        assert_eq!(folkman_lower_bound(&[3, 5], 14).unwrap(), 20);
        assert_eq!(folkman_lower_bound(&[4, 4], 18).unwrap(), 24);
        assert_eq!(folkman_lower_bound(&[3, 4], 9).unwrap(), 15);
        assert!(folkman_lower_bound(&[2, 4], 4).is_err());
        assert!(folkman_lower_bound(&[3], 3).is_err());
        assert!(folkman_lower_bound(&[3, 3], 5).is_err());
    }

    #[test]
    fn extremal_test_inapplicable_below_seven() {
        let r = extremal_arrowing_test(&[3, 3], 6, &SearchOptions::default()).unwrap();
        assert_eq!(r.q_branch.outcome, BranchOutcome::Inapplicable);
        assert_eq!(r.triple_c5_branch.outcome, BranchOutcome::Inapplicable);
        assert_eq!(r.folkman_value, None);
        assert_eq!(r.note, "no family instance exists for this R");
    }

    #[test]
    fn class_graph6_roundtrip() {
        let k5 = Graph::complete(5).unwrap();
        let v = arrows(&inst(k5, &[3, 3]), &SearchOptions::default()).unwrap();
        let w = v.witness.unwrap();
        let text = w.to_class_graph6(5, 2).unwrap();
        let (n, back) = EdgeColoring::from_class_graph6(&text).unwrap();
        assert_eq!(n, 5);
        assert_eq!(back, w);
    }
}
