//! Immutable simple graphs on at most 64 vertices.
//!
//! Each vertex owns one `u64` adjacency row, so neighbourhood intersections,
//! complements and induced subgraphs are all word operations.

use std::fmt;

use thiserror::Error;

/// Hard vertex capacity: one machine word per adjacency row.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices encoded as a bitmask (bit `v` set means `v` is present).
pub type VertexSet = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("capacity exceeded: {0} vertices requested, at most {MAX_VERTICES} supported")]
    Capacity(usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("circulant needs at least 1 vertex")]
    EmptyCirculant,
    #[error("circulant residue {residue} out of range 1..={max}")]
    ResidueOutOfRange { residue: usize, max: usize },
    #[error("invalid vertex id {vertex} for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("family expression: {0}")]
    Family(String),
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Simple undirected graph with vertices `0..n`.
///
/// Equality compares vertex count and edges only; the label is provenance.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Graph");
        s.field("n", &self.n);
        if let Some(l) = &self.label {
            s.field("label", l);
        }
        s.field("edges", &self.edges().collect::<Vec<_>>());
        s.finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        Ok(Self {
            n,
            adj: vec![0; n],
            label: None,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and irreflexivity.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let mask = low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let v = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::InvalidVertex { vertex: v, n });
            }
            if row & bit(u) != 0 {
                return Err(GraphError::Loop(u));
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Self {
            n,
            adj: rows,
            label: None,
        })
    }

    /// Rows are trusted to be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Self {
            n: adj.len(),
            adj,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitmask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> VertexSet {
        low_mask(self.n)
    }

    /// Neighbourhood `N(v)` as a bitmask.
    #[inline]
    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u` (the graph6 bit order).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| Bits(self.adj[v] & low_mask(v)).map(move |u| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::InvalidVertex { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Complete graph `K_m`.
    pub fn complete(m: usize) -> Result<Self, GraphError> {
        if m > MAX_VERTICES {
            return Err(GraphError::Capacity(m));
        }
        let full = low_mask(m);
        let adj = (0..m).map(|v| full & !bit(v)).collect();
        Ok(Self::from_rows_unchecked(adj).with_label(format!("K{m}")))
    }

    /// Cycle `C_m` on `0-1-...-(m-1)-0`.
    pub fn cycle(m: usize) -> Result<Self, GraphError> {
        if m < 3 {
            return Err(GraphError::CycleTooShort(m));
        }
        let g = Self::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))?;
        Ok(g.with_label(format!("C{m}")))
    }

    /// Path on `m` vertices.
    pub fn path(m: usize) -> Result<Self, GraphError> {
        Self::from_edges(m, (1..m).map(|i| (i - 1, i)))
    }

    /// Circulant graph: `u ~ v` iff `(u - v) mod m` is in the connection set.
    ///
    /// The connection set is closed under `d -> m - d`; the returned flag is
    /// `true` when closure added residues that were not supplied.
    pub fn circulant(m: usize, connections: &[usize]) -> Result<(Self, bool), GraphError> {
        if m == 0 {
            return Err(GraphError::EmptyCirculant);
        }
        if m > MAX_VERTICES {
            return Err(GraphError::Capacity(m));
        }
        let mut set = 0u64;
        for &d in connections {
            if d == 0 || d >= m {
                return Err(GraphError::ResidueOutOfRange {
                    residue: d,
                    max: m - 1,
                });
            }
            set |= bit(d);
        }
        let mut closed = set;
        for d in Bits(set) {
            closed |= bit(m - d);
        }
        let mut adj = vec![0u64; m];
        for (u, row) in adj.iter_mut().enumerate() {
            for d in Bits(closed) {
                *row |= bit((u + d) % m);
            }
        }
        let mut residues: Vec<usize> = Bits(closed).collect();
        residues.sort_unstable();
        let label = format!(
            "Circ{m}({})",
            residues
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok((Self::from_rows_unchecked(adj).with_label(label), closed != set))
    }

    /// The 13-vertex graph with independence number 2 and clique number 4,
    /// realized as the complement of the circulant `C13(1, 5)`.
    pub fn kery_q() -> Self {
        let (c, _) = Self::circulant(13, &[1, 5, 8, 12]).expect("fixed parameters are valid");
        c.complement().with_label("Q")
    }

    pub fn complement(&self) -> Self {
        let full = self.vertex_mask();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &row)| !row & full & !bit(v))
            .collect();
        let g = Self::from_rows_unchecked(adj);
        match &self.label {
            Some(l) => g.with_label(format!("co({l})")),
            None => g,
        }
    }

    /// Join: disjoint copies of `self` and `other` plus every cross edge.
    /// Vertices of `other` are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Result<Self, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let left = self.vertex_mask();
        let right = low_mask(n) & !left;
        let mut adj = Vec::with_capacity(n);
        adj.extend(self.adj.iter().map(|&r| r | right));
        adj.extend(other.adj.iter().map(|&r| (r << self.n) | left));
        let g = Self::from_rows_unchecked(adj);
        Ok(match (&self.label, &other.label) {
            (Some(a), Some(b)) => g.with_label(format!("{a}+{b}")),
            _ => g,
        })
    }

    /// Disjoint union, with `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Self::from_rows_unchecked(adj))
    }

    /// Subgraph induced by `keep`, relabeled densely in increasing vertex order.
    pub fn induced(&self, keep: VertexSet) -> Self {
        let keep = keep & self.vertex_mask();
        let old: Vec<usize> = Bits(keep).collect();
        let adj = old
            .iter()
            .map(|&u| {
                let row = self.adj[u] & keep;
                old.iter()
                    .enumerate()
                    .filter(|(_, &w)| row & bit(w) != 0)
                    .fold(0u64, |acc, (i, _)| acc | bit(i))
            })
            .collect();
        Self::from_rows_unchecked(adj)
    }

    /// `G - V`: deletes the listed vertices, relabeling the rest densely and
    /// order-preservingly.
    pub fn remove_vertices(&self, vs: &[usize]) -> Result<Self, GraphError> {
        let mut drop = 0u64;
        for &v in vs {
            self.check_vertex(v)?;
            drop |= bit(v);
        }
        Ok(self.induced(self.vertex_mask() & !drop))
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidVertex {
                vertex: perm.len(),
                n: self.n,
            });
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            if seen & bit(p) != 0 {
                return Err(GraphError::InvalidVertex { vertex: p, n: self.n });
            }
            seen |= bit(p);
        }
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Ok(Self::from_rows_unchecked(adj))
    }

    /// Vertices adjacent to every other vertex.
    pub fn full_vertices(&self) -> VertexSet {
        let full = self.vertex_mask();
        (0..self.n)
            .filter(|&v| self.adj[v] | bit(v) == full)
            .fold(0, |acc, v| acc | bit(v))
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0u64;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        (0..self.n)
            .map(|v| {
                Bits(self.adj[v])
                    .map(|u| (self.adj[u] & self.adj[v]).count_ones() as usize)
                    .sum::<usize>()
                    / 2
            })
            .collect()
    }
}
