//! Join structure of graphs and classification of the extremal graphs with
//! `f(G) >= 3` and `|V(G)| = χ(G) + 6`.
//!
//! A graph is a join `G1 + G2` exactly when its complement is disconnected,
//! so join factors are read off the complement's connected components.

mod iso;

pub use iso::{find_isomorphism, is_isomorphic};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Graph, GraphError};
use crate::graph6::emit_graph6;
use crate::invariants::{chromatic_number, clique_number, full_vertex_count, is_vertex_critical};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("operation needs a non-empty graph")]
    EmptyGraph,
    /// A graph with `f >= 3` and `n = χ + 6` that is neither `K_m + Q` nor
    /// `K_m + C5 + C5 + C5`.
    #[error("extremal pattern violated by graph {graph6}: {detail}")]
    TheoremViolation { graph6: String, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecomposition {
    /// Induced subgraphs on each block, each with a connected complement.
    pub factors: Vec<Graph>,
    /// Original vertex ids of each factor, ascending; together a partition of `0..n`.
    pub factor_vertex_sets: Vec<Vec<usize>>,
}

impl JoinDecomposition {
    /// Iterated join of the factors; vertex `i` of the result is
    /// `vertex_order()[i]` of the input.
    pub fn rebuild(&self) -> Result<Graph, GraphError> {
        let mut acc = Graph::empty(0)?;
        for f in &self.factors {
            acc = acc.join(f)?;
        }
        Ok(acc)
    }

    pub fn vertex_order(&self) -> Vec<usize> {
        self.factor_vertex_sets.iter().flatten().copied().collect()
    }

    /// Number of single-vertex factors, i.e. full vertices.
    pub fn singleton_count(&self) -> usize {
        self.factor_vertex_sets.iter().filter(|s| s.len() == 1).count()
    }
}

pub fn join_decompose(g: &Graph) -> Result<JoinDecomposition, StructureError> {
    if g.n() == 0 {
        return Err(StructureError::EmptyGraph);
    }
    let comps = g.complement().components();
    Ok(JoinDecomposition {
        factors: comps.iter().map(|&c| g.induced(c)).collect(),
        factor_vertex_sets: comps.iter().map(|&c| Bits(c).collect()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    KmQ,
    KmTripleC5,
    NotExtremal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyClassification {
    pub kind: FamilyKind,
    /// Size of the complete join part; present for extremal kinds.
    pub m: Option<usize>,
    pub chi: usize,
}

impl FamilyClassification {
    /// `K<m>+Q` or `K<m>+C5+C5+C5` (no `K` term when `m = 0`), when extremal.
    pub fn family_expr(&self) -> Option<String> {
        match (self.kind, self.m) {
            (FamilyKind::KmQ, Some(0)) => Some("Q".into()),
            (FamilyKind::KmQ, Some(m)) => Some(format!("K{m}+Q")),
            (FamilyKind::KmTripleC5, Some(0)) => Some("C5+C5+C5".into()),
            (FamilyKind::KmTripleC5, Some(m)) => Some(format!("K{m}+C5+C5+C5")),
            _ => None,
        }
    }
}

/// Decides whether `g` is one of `K_m + Q`, `K_m + C5 + C5 + C5`, or not
/// extremal at all. A graph with `f >= 3` and `n = χ + 6` matching neither
/// pattern is reported as [`StructureError::TheoremViolation`].
pub fn classify_extremal(g: &Graph) -> Result<FamilyClassification, StructureError> {
    let n = g.n();
    let omega = clique_number(g);
    let chi = chromatic_number(g);
    let not_extremal = FamilyClassification {
        kind: FamilyKind::NotExtremal,
        m: None,
        chi,
    };
    if chi < omega + 3 || n != chi + 6 {
        return Ok(not_extremal);
    }
    let violation = |detail: String| StructureError::TheoremViolation {
        graph6: emit_graph6(g),
        detail,
    };
    let dec = join_decompose(g)?;
    let m = dec.singleton_count();
    let blocks: Vec<&Graph> = dec.factors.iter().filter(|f| f.n() > 1).collect();
    let q = Graph::kery_q();
    let c5 = Graph::cycle(5).expect("C5 is valid");
    let (kind, expected_chi) = match blocks.as_slice() {
        [b] if b.n() == 13 && is_isomorphic(b, &q) => (FamilyKind::KmQ, m + 7),
        [a, b, c] if [a, b, c].iter().all(|f| f.n() == 5 && is_isomorphic(f, &c5)) => {
            (FamilyKind::KmTripleC5, m + 9)
        }
        _ => {
            let sizes: Vec<usize> = blocks.iter().map(|b| b.n()).collect();
            return Err(violation(format!(
                "n={n}, chi={chi}, omega={omega}; {m} full vertices and non-trivial join factors of sizes {sizes:?}"
            )));
        }
    };
    if chi != expected_chi {
        return Err(violation(format!(
            "pattern {kind:?} with m={m} implies chi={expected_chi}, solver gave {chi}"
        )));
    }
    Ok(FamilyClassification {
        kind,
        m: Some(m),
        chi,
    })
}

/// `ceil(3/2 * (5/3 k - n)) = ceil((5k - 3n) / 2)`, the guaranteed number of
/// full vertices in a vertex-critical `k`-chromatic graph on `n` vertices.
pub fn gallai_bound(k: usize, n: usize) -> i64 {
    let num = 5 * k as i64 - 3 * n as i64;
    num.div_euclid(2) + i64::from(num.rem_euclid(2) != 0)
}

/// Checks the full-vertex count of a vertex-critical graph with `χ >= 3`
/// against [`gallai_bound`]. Vacuously true when the bound is not positive.
pub fn gallai_full_vertex_check(g: &Graph) -> Result<bool, StructureError> {
    if g.n() == 0 {
        return Err(StructureError::EmptyGraph);
    }
    let k = chromatic_number(g);
    if k < 3 {
        return Err(StructureError::Precondition(format!(
            "chromatic number {k} < 3"
        )));
    }
    if !is_vertex_critical(g).map_err(|_| StructureError::EmptyGraph)? {
        return Err(StructureError::Precondition(
            "graph is not vertex-critical".into(),
        ));
    }
    let bound = gallai_bound(k, g.n());
    Ok(bound <= 0 || full_vertex_count(g) as i64 >= bound)
}
