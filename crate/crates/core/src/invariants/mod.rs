//! Exact graph parameters: `ω`, `χ`, `α`, the gap `f = χ - ω`,
//! vertex-criticality, the Sperner property and full vertices.
//!
//! Conventions for the empty graph: `ω = χ = α = f = 0`, not vertex-critical,
//! not Sperner.

mod clique;
mod coloring;

pub use clique::{
    clique_number, cliques_of_size, greedy_clique, independence_number, max_clique,
    max_independent_set,
};
pub use coloring::{
    chromatic_number, colour_count, greedy_coloring, is_k_colorable, is_proper_coloring,
    k_coloring, optimal_coloring,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("vertex-criticality is undefined for the empty graph")]
    EmptyGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub omega: usize,
    pub chi: usize,
    pub alpha: usize,
    pub f: usize,
    pub vertex_critical: bool,
    pub sperner: bool,
    pub full_vertices: usize,
}

/// `f(G) = χ(G) - ω(G)`.
pub fn f_value(g: &Graph) -> usize {
    chromatic_number(g) - clique_number(g)
}

/// True iff deleting any single vertex lowers the chromatic number.
pub fn is_vertex_critical(g: &Graph) -> Result<bool, InvariantError> {
    if g.n() == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    Ok(vertex_critical_with_chi(g, chromatic_number(g)))
}

/// Only `(χ-1)`-colourability of each `G - v` is tested.
fn vertex_critical_with_chi(g: &Graph, chi: usize) -> bool {
    let all = g.vertex_mask();
    (0..g.n()).all(|v| is_k_colorable(&g.induced(all & !(1u64 << v)), chi - 1))
}

/// True iff `N(u) ⊆ N(v)` for some ordered pair of distinct vertices.
pub fn is_sperner(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|u| (0..n).any(|v| u != v && g.adj(u) & !g.adj(v) == 0))
}

/// Ordered pairs `(u, v)` with `N(u) ⊆ N(v)`.
pub fn sperner_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && g.adj(u) & !g.adj(v) == 0)
        .collect()
}

/// Number of vertices of degree `n - 1`.
pub fn full_vertex_count(g: &Graph) -> usize {
    Bits(g.full_vertices()).len()
}

pub fn report(g: &Graph) -> InvariantReport {
    let n = g.n();
    let omega = clique_number(g);
    let chi = chromatic_number(g);
    InvariantReport {
        n,
        omega,
        chi,
        alpha: independence_number(g),
        f: chi - omega,
        vertex_critical: n > 0 && vertex_critical_with_chi(g, chi),
        sperner: is_sperner(g),
        full_vertices: full_vertex_count(g),
    }
}
