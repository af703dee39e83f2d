//! Exact combinatorics for graphs whose chromatic number exceeds the clique
//! number by at least three, and for edge-Folkman arrowing at desk scale.
//!
//! * [`graph`]: bitset graphs on at most 64 vertices and their constructors.
//! * [`invariants`]: exact `ω`, `χ`, `α` and related predicates.
//! * [`structure`]: join decomposition, isomorphism, extremal classification.
//! * [`arrowing`]: edge-colouring search, Ramsey/Folkman bookkeeping, CNF export.
//! * [`verify`]: exhaustive small-graph verification and graph6 stream scans.

pub mod family;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod structure;
pub mod arrowing;
pub mod verify;

pub use family::{build_family, FamilyAtom, FamilyExpr};
pub use graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6};
pub use invariants::InvariantReport;
