//! Maximum clique by bitset branch and bound with a greedy-colouring bound.

use crate::graph::{bit, low_mask, Bits, Graph, VertexSet};

/// Partitions `cand` greedily into independent classes (lowest id first).
/// Returns vertices in class order with the class index (1-based) of each,
/// which bounds the clique size reachable from that suffix.
fn colour_sort(g: &Graph, cand: VertexSet, order: &mut Vec<usize>, bounds: &mut Vec<usize>) {
    order.clear();
    bounds.clear();
    let mut left = cand;
    let mut k = 0;
    while left != 0 {
        k += 1;
        let mut q = left;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !g.adj(v) & !bit(v);
            left &= !bit(v);
            order.push(v);
            bounds.push(k);
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: VertexSet,
    best_size: usize,
}

impl Search<'_> {
    fn expand(&mut self, current: VertexSet, size: usize, mut cand: VertexSet) {
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut bounds = Vec::with_capacity(order.capacity());
        colour_sort(self.g, cand, &mut order, &mut bounds);
        for i in (0..order.len()).rev() {
            if size + bounds[i] <= self.best_size {
                return;
            }
            let v = order[i];
            let next = cand & self.g.adj(v);
            if next == 0 {
                if size + 1 > self.best_size {
                    self.best = current | bit(v);
                    self.best_size = size + 1;
                }
            } else {
                self.expand(current | bit(v), size + 1, next);
            }
            cand &= !bit(v);
        }
    }
}

/// A maximum clique of `g` as a vertex mask.
pub fn max_clique(g: &Graph) -> VertexSet {
    if g.n() == 0 {
        return 0;
    }
    let seed = greedy_clique(g);
    let mut s = Search {
        g,
        best: seed,
        best_size: seed.count_ones() as usize,
    };
    s.expand(0, 0, g.vertex_mask());
    s.best
}

/// Clique number `ω(G)`; 0 for the empty graph.
pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).count_ones() as usize
}

/// Independence number `α(G) = ω(complement)`.
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

pub fn max_independent_set(g: &Graph) -> VertexSet {
    max_clique(&g.complement())
}

/// A maximal clique grown greedily by candidate degree (lowest id on ties).
pub fn greedy_clique(g: &Graph) -> VertexSet {
    let mut clique = 0u64;
    let mut cand = g.vertex_mask();
    while cand != 0 {
        let v = Bits(cand)
            .max_by_key(|&v| ((g.adj(v) & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("cand non-empty");
        clique |= bit(v);
        cand &= g.adj(v);
    }
    clique
}

/// Every clique of exactly `size` vertices, in lexicographic order of sorted
/// vertex lists.
pub fn cliques_of_size(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    fn rec(
        g: &Graph,
        size: usize,
        cand: VertexSet,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        if current.len() + (cand.count_ones() as usize) < size {
            return;
        }
        for v in Bits(cand) {
            current.push(v);
            // only higher-numbered neighbours, so each clique appears once
            let above = !low_mask(v + 1);
            rec(g, size, cand & g.adj(v) & above, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(g, size, g.vertex_mask(), &mut Vec::with_capacity(size), &mut out);
    out
}
