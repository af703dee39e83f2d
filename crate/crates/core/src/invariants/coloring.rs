//! Exact vertex colouring: DSATUR-ordered backtracking over bitset colour
//! classes, with new colours opened only in increasing order.

use crate::graph::{bit, Bits, Graph, VertexSet};

const UNCOLORED: u8 = u8::MAX;

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<u8>,
    classes: Vec<VertexSet>,
    uncoloured: VertexSet,
    used: usize,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        Self {
            g,
            k,
            colour: vec![UNCOLORED; g.n()],
            classes: vec![0; k],
            uncoloured: g.vertex_mask(),
            used: 0,
        }
    }

    fn forbidden(&self, v: usize) -> u64 {
        let nb = self.g.adj(v);
        self.classes[..self.used]
            .iter()
            .enumerate()
            .filter(|(_, &cls)| cls & nb != 0)
            .fold(0u64, |acc, (c, _)| acc | bit(c))
    }

    /// Most saturated uncoloured vertex; ties by uncoloured degree, then lowest id.
    fn pick(&self) -> (usize, u64) {
        let mut best = (0usize, 0u64);
        let mut key = (-1i64, -1i64);
        for v in Bits(self.uncoloured) {
            let f = self.forbidden(v);
            let k = (
                f.count_ones() as i64,
                (self.g.adj(v) & self.uncoloured).count_ones() as i64,
            );
            if k > key {
                key = k;
                best = (v, f);
            }
        }
        best
    }

    fn solve(&mut self) -> bool {
        if self.uncoloured == 0 {
            return true;
        }
        let (v, forbidden) = self.pick();
        if forbidden.count_ones() as usize >= self.k {
            return false;
        }
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if forbidden & bit(c) != 0 {
                continue;
            }
            let opened = c == self.used;
            if opened {
                self.used += 1;
            }
            self.colour[v] = c as u8;
            self.classes[c] |= bit(v);
            self.uncoloured &= !bit(v);
            if self.solve() {
                return true;
            }
            self.uncoloured |= bit(v);
            self.classes[c] &= !bit(v);
            self.colour[v] = UNCOLORED;
            if opened {
                self.used -= 1;
            }
        }
        false
    }
}

/// A proper colouring with at most `k` colours (values `0..k`), if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if g.n() == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut s = Dsatur::new(g, k.min(g.n()));
    if s.solve() {
        Some(s.colour.iter().map(|&c| c as usize).collect())
    } else {
        None
    }
}

pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    k_coloring(g, k).is_some()
}

/// Greedy DSATUR colouring (no backtracking).
pub fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut s = Dsatur::new(g, g.n().max(1));
    while s.uncoloured != 0 {
        let (v, forbidden) = s.pick();
        let c = (!forbidden).trailing_zeros() as usize;
        if c == s.used {
            s.used += 1;
        }
        s.colour[v] = c as u8;
        s.classes[c] |= bit(v);
        s.uncoloured &= !bit(v);
    }
    s.colour.iter().map(|&c| c as usize).collect()
}

pub fn colour_count(colouring: &[usize]) -> usize {
    colouring.iter().max().map_or(0, |&m| m + 1)
}

pub fn is_proper_coloring(g: &Graph, colouring: &[usize]) -> bool {
    colouring.len() == g.n() && g.edges().all(|(u, v)| colouring[u] != colouring[v])
}

/// An optimal colouring. Starts from the greedy colouring and tightens `k`
/// downward until `k`-colourability fails or reaches the clique bound.
pub fn optimal_coloring(g: &Graph) -> Vec<usize> {
    let mut best = greedy_coloring(g);
    let lower = super::clique::clique_number(g);
    let mut k = colour_count(&best);
    while k > lower {
        match k_coloring(g, k - 1) {
            Some(c) => {
                k = colour_count(&c);
                best = c;
            }
            None => break,
        }
    }
    best
}

/// Chromatic number `χ(G)`; 0 for the empty graph.
pub fn chromatic_number(g: &Graph) -> usize {
    colour_count(&optimal_coloring(g))
}
