//! Backtracking search for a good edge colouring.
//!
//! Every target clique of every colour carries two counters: edges already
//! in that colour and edges in some other colour. A clique that is one edge
//! short of monochromatic, and still pure, forbids its last edge that colour.
//! Forced edges (one colour left) are taken before the static edge order.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{ArrowingError, ArrowingInstance, Budget, EdgeColoring, SearchStats};
use crate::graph::{Bits, Graph};
use crate::invariants::cliques_of_size;

const NONE: u8 = u8::MAX;
const CHECK_EVERY: u64 = 1 << 12;

/// All target cliques of one size, as lists of edge indices.
struct CliqueTable {
    edges_per_clique: usize,
    cliques: Vec<Vec<u32>>,
    of_edge: Vec<Vec<u32>>,
}

pub(crate) struct Problem {
    pub(crate) edges: Vec<(usize, usize)>,
    r: usize,
    tables: Vec<CliqueTable>,
    table_of_colour: Vec<usize>,
    first_edge_colours: u64,
}

/// Colour classes of equal target size; the lowest colour of each class
/// represents it.
pub(crate) fn class_representatives(targets: &[usize]) -> u64 {
    (0..targets.len())
        .filter(|&c| !targets[..c].contains(&targets[c]))
        .fold(0u64, |acc, c| acc | (1 << c))
}

pub(crate) fn edge_index(g: &Graph) -> (Vec<(usize, usize)>, Vec<Vec<u32>>) {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut index = vec![vec![u32::MAX; g.n()]; g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        index[u][v] = i as u32;
        index[v][u] = i as u32;
    }
    (edges, index)
}

/// Edge-index lists of every `size`-clique of `g`.
pub(crate) fn clique_edge_lists(g: &Graph, index: &[Vec<u32>], size: usize) -> Vec<Vec<u32>> {
    cliques_of_size(g, size)
        .into_iter()
        .map(|vs| {
            let mut es = Vec::with_capacity(size * (size - 1) / 2);
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    es.push(index[u][v]);
                }
            }
            es
        })
        .collect()
}

impl Problem {
    pub(crate) fn new(inst: &ArrowingInstance) -> Self {
        let g = inst.graph();
        let targets = inst.targets();
        let (edges, index) = edge_index(g);
        let mut sizes: Vec<usize> = Vec::new();
        let mut table_of_colour = Vec::with_capacity(targets.len());
        for &a in targets {
            let t = sizes.iter().position(|&s| s == a).unwrap_or_else(|| {
                sizes.push(a);
                sizes.len() - 1
            });
            table_of_colour.push(t);
        }
        let tables = sizes
            .iter()
            .map(|&a| {
                let cliques = clique_edge_lists(g, &index, a);
                let mut of_edge = vec![Vec::new(); edges.len()];
                for (qi, q) in cliques.iter().enumerate() {
                    for &e in q {
                        of_edge[e as usize].push(qi as u32);
                    }
                }
                CliqueTable {
                    edges_per_clique: a * (a - 1) / 2,
                    cliques,
                    of_edge,
                }
            })
            .collect();
        Self {
            edges,
            r: targets.len(),
            tables,
            table_of_colour,
            first_edge_colours: class_representatives(targets),
        }
    }

    fn table(&self, colour: usize) -> &CliqueTable {
        &self.tables[self.table_of_colour[colour]]
    }
}

enum Halt {
    Budget(&'static str),
    Cancelled,
}

struct State<'p> {
    p: &'p Problem,
    colour: Vec<u8>,
    same: Vec<Vec<u16>>,
    other: Vec<Vec<u16>>,
    forbidden: Vec<u32>,
    trail: Vec<(u32, u8)>,
    nodes: u64,
    reported: u64,
}

impl<'p> State<'p> {
    fn new(p: &'p Problem) -> Self {
        let r = p.r;
        let mut s = Self {
            p,
            colour: vec![NONE; p.edges.len()],
            same: (0..r).map(|c| vec![0; p.table(c).cliques.len()]).collect(),
            other: (0..r).map(|c| vec![0; p.table(c).cliques.len()]).collect(),
            forbidden: vec![0; p.edges.len() * r],
            trail: Vec::new(),
            nodes: 0,
            reported: 0,
        };
        // a 2-clique is a single edge: such colours are never usable
        for c in 0..r {
            let t = p.table(c);
            if t.edges_per_clique == 1 {
                for q in &t.cliques {
                    s.forbidden[q[0] as usize * r + c] += 1;
                }
            }
        }
        if !p.edges.is_empty() {
            for c in 0..r {
                if p.first_edge_colours & (1 << c) == 0 {
                    s.forbidden[c] += 1;
                }
            }
        }
        s
    }

    fn allowed(&self, e: usize) -> u64 {
        let r = self.p.r;
        (0..r)
            .filter(|&c| self.forbidden[e * r + c] == 0)
            .fold(0u64, |acc, c| acc | (1 << c))
    }

    /// Next edge to branch on: a dead edge, else a forced edge, else the first
    /// uncoloured edge in static order. `None` when all edges are coloured.
    fn select(&self) -> Option<(usize, u64)> {
        let mut first = None;
        for e in 0..self.colour.len() {
            if self.colour[e] != NONE {
                continue;
            }
            let a = self.allowed(e);
            if a.count_ones() <= 1 {
                return Some((e, a));
            }
            if first.is_none() {
                first = Some((e, a));
            }
        }
        first
    }

    fn apply(&mut self, e: usize, c: usize) {
        let p = self.p;
        self.colour[e] = c as u8;
        for d in 0..p.r {
            let t = p.table(d);
            for &q in &t.of_edge[e] {
                let q = q as usize;
                if d == c {
                    self.same[d][q] += 1;
                    if self.other[d][q] == 0 && self.same[d][q] as usize + 1 == t.edges_per_clique
                    {
                        let last = t.cliques[q]
                            .iter()
                            .copied()
                            .find(|&f| self.colour[f as usize] == NONE)
                            .expect("one edge of a pure near-complete clique is uncoloured");
                        self.forbidden[last as usize * p.r + d] += 1;
                        self.trail.push((last, d as u8));
                    }
                } else {
                    self.other[d][q] += 1;
                }
            }
        }
    }

    fn undo(&mut self, e: usize, c: usize, mark: usize) {
        let p = self.p;
        while self.trail.len() > mark {
            let (f, d) = self.trail.pop().expect("trail above mark");
            self.forbidden[f as usize * p.r + d as usize] -= 1;
        }
        for d in 0..p.r {
            for &q in &p.table(d).of_edge[e] {
                if d == c {
                    self.same[d][q as usize] -= 1;
                } else {
                    self.other[d][q as usize] -= 1;
                }
            }
        }
        self.colour[e] = NONE;
    }

    fn dfs(&mut self, ctl: &Control<'_>) -> Result<bool, Halt> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CHECK_EVERY) {
            ctl.tick(self.nodes - self.reported)?;
            self.reported = self.nodes;
        }
        let Some((e, allowed)) = self.select() else {
            return Ok(true);
        };
        for c in Bits(allowed) {
            let mark = self.trail.len();
            self.apply(e, c);
            if self.dfs(ctl)? {
                return Ok(true);
            }
            self.undo(e, c, mark);
        }
        Ok(false)
    }

    /// Search tree prefixes at `depth`, in depth-first order.
    fn frontier(&mut self, depth: usize, prefix: &mut Vec<(u32, u8)>, out: &mut Vec<Vec<(u32, u8)>>) {
        let next = self.select();
        match next {
            Some((e, allowed)) if depth > 0 => {
                for c in Bits(allowed) {
                    let mark = self.trail.len();
                    self.apply(e, c);
                    prefix.push((e as u32, c as u8));
                    self.frontier(depth - 1, prefix, out);
                    prefix.pop();
                    self.undo(e, c, mark);
                }
            }
            _ => out.push(prefix.clone()),
        }
    }

    fn witness(&self) -> EdgeColoring {
        EdgeColoring::from_pairs(
            self.p
                .edges
                .iter()
                .zip(&self.colour)
                .map(|(&(u, v), &c)| ((u, v), c as usize + 1)),
        )
    }
}

/// Shared budget accounting and cancellation for one search.
struct Control<'a> {
    budget: &'a Budget,
    start: Instant,
    nodes: &'a AtomicU64,
    /// Index of the lowest subtree known to contain a witness.
    best: &'a AtomicUsize,
    subtree: usize,
}

impl Control<'_> {
    fn tick(&self, delta: u64) -> Result<(), Halt> {
        let total = self.nodes.fetch_add(delta, Ordering::Relaxed) + delta;
        if self.best.load(Ordering::Relaxed) < self.subtree {
            return Err(Halt::Cancelled);
        }
        if total > self.budget.max_nodes {
            return Err(Halt::Budget("node cap"));
        }
        if let Some(t) = self.budget.max_time {
            if self.start.elapsed() > t {
                return Err(Halt::Budget("wall-clock cap"));
            }
        }
        Ok(())
    }
}

pub(crate) enum Outcome {
    Good(EdgeColoring),
    Exhausted,
}

pub(crate) fn run(
    inst: &ArrowingInstance,
    budget: &Budget,
    jobs: usize,
) -> Result<(Outcome, SearchStats), ArrowingError> {
    let start = Instant::now();
    let problem = Problem::new(inst);
    let nodes = AtomicU64::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let stats = |nodes: &AtomicU64| SearchStats {
        nodes: nodes.load(Ordering::Relaxed),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let exceeded = |reason: &'static str, nodes: &AtomicU64| {
        let s = stats(nodes);
        ArrowingError::BudgetExceeded {
            reason: reason.to_string(),
            nodes: s.nodes,
            elapsed_ms: s.elapsed_ms,
        }
    };

    if jobs <= 1 {
        let ctl = Control {
            budget,
            start,
            nodes: &nodes,
            best: &best,
            subtree: 0,
        };
        let mut st = State::new(&problem);
        let found = st.dfs(&ctl);
        nodes.fetch_add(st.nodes - st.reported, Ordering::Relaxed);
        return match found {
            Ok(true) => Ok((Outcome::Good(st.witness()), stats(&nodes))),
            Ok(false) => Ok((Outcome::Exhausted, stats(&nodes))),
            Err(Halt::Budget(reason)) => Err(exceeded(reason, &nodes)),
            Err(Halt::Cancelled) => unreachable!("sequential search is never cancelled"),
        };
    }

    let mut prefixes = Vec::new();
    {
        let mut st = State::new(&problem);
        let want = 8 * jobs;
        let mut depth = 1;
        loop {
            prefixes.clear();
            st.frontier(depth, &mut Vec::new(), &mut prefixes);
            if prefixes.len() >= want || prefixes.is_empty() || depth >= 24 {
                break;
            }
            depth += 1;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| ArrowingError::Internal(e.to_string()))?;
    let results: Vec<Result<Option<EdgeColoring>, Halt>> = pool.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(i, prefix)| {
                let ctl = Control {
                    budget,
                    start,
                    nodes: &nodes,
                    best: &best,
                    subtree: i,
                };
                if best.load(Ordering::Relaxed) < i {
                    return Err(Halt::Cancelled);
                }
                let mut st = State::new(&problem);
                for &(e, c) in prefix {
                    st.apply(e as usize, c as usize);
                }
                let r = st.dfs(&ctl);
                nodes.fetch_add(st.nodes - st.reported, Ordering::Relaxed);
                match r {
                    Ok(true) => {
                        best.fetch_min(i, Ordering::Relaxed);
                        Ok(Some(st.witness()))
                    }
                    Ok(false) => Ok(None),
                    Err(h) => Err(h),
                }
            })
            .collect()
    });
    for r in results {
        match r {
            Ok(Some(w)) => return Ok((Outcome::Good(w), stats(&nodes))),
            Ok(None) => {}
            Err(Halt::Budget(reason)) => return Err(exceeded(reason, &nodes)),
            Err(Halt::Cancelled) => {
                unreachable!("only subtrees after a witness are cancelled")
            }
        }
    }
    Ok((Outcome::Exhausted, stats(&nodes)))
}
