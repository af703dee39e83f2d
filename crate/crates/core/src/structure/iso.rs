//! Exact isomorphism for small graphs: invariant pre-screen, joint colour
//! refinement, then backtracking restricted to matching colour classes.

use std::collections::BTreeMap;

use crate::graph::{bit, Graph};

/// Per-vertex starting invariant: (degree, triangles through the vertex).
fn local_invariants(g: &Graph) -> Vec<(usize, usize)> {
    let tri = g.triangle_counts();
    (0..g.n()).map(|v| (g.degree(v), tri[v])).collect()
}

/// Refines both graphs' vertex colourings together so colour ids are
/// comparable. Returns `None` as soon as class sizes differ.
fn joint_refinement(g1: &Graph, g2: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g1.n();
    let init1 = local_invariants(g1);
    let init2 = local_invariants(g2);
    let relabel = |keys1: &[Vec<usize>], keys2: &[Vec<usize>]| {
        let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
        for k in keys1.iter().chain(keys2) {
            ids.entry(k).or_insert(0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let c1: Vec<usize> = keys1.iter().map(|k| ids[k]).collect();
        let c2: Vec<usize> = keys2.iter().map(|k| ids[k]).collect();
        (c1, c2, ids.len())
    };
    let k1: Vec<Vec<usize>> = init1.iter().map(|&(d, t)| vec![d, t]).collect();
    let k2: Vec<Vec<usize>> = init2.iter().map(|&(d, t)| vec![d, t]).collect();
    let (mut c1, mut c2, mut classes) = relabel(&k1, &k2);
    loop {
        let mut h1 = vec![0usize; classes];
        let mut h2 = vec![0usize; classes];
        c1.iter().for_each(|&c| h1[c] += 1);
        c2.iter().for_each(|&c| h2[c] += 1);
        if h1 != h2 {
            return None;
        }
        let sig = |g: &Graph, c: &[usize]| -> Vec<Vec<usize>> {
            (0..n)
                .map(|v| {
                    let mut s: Vec<usize> = g.neighbors(v).map(|u| c[u]).collect();
                    s.sort_unstable();
                    s.insert(0, c[v]);
                    s
                })
                .collect()
        };
        let (s1, s2) = (sig(g1, &c1), sig(g2, &c2));
        let (n1, n2, next) = relabel(&s1, &s2);
        c1 = n1;
        c2 = n2;
        if next == classes {
            let mut h1 = vec![0usize; classes];
            let mut h2 = vec![0usize; classes];
            c1.iter().for_each(|&c| h1[c] += 1);
            c2.iter().for_each(|&c| h2[c] += 1);
            return (h1 == h2).then_some((c1, c2));
        }
        classes = next;
    }
}

/// A bijection `map` with `u ~ v` in `g1` iff `map[u] ~ map[v]` in `g2`.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.n();
    if n != g2.n() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut a = local_invariants(g1);
    let mut b = local_invariants(g2);
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let (c1, c2) = joint_refinement(g1, g2)?;

    let class_size = |c: usize| c1.iter().filter(|&&x| x == c).count();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed & bit(v) == 0)
            .min_by_key(|&v| {
                (
                    std::cmp::Reverse((g1.adj(v) & placed).count_ones()),
                    class_size(c1[v]),
                    v,
                )
            })
            .expect("unplaced vertex exists");
        order.push(next);
        placed |= bit(next);
    }

    struct Ctx<'a> {
        g1: &'a Graph,
        g2: &'a Graph,
        c1: &'a [usize],
        c2: &'a [usize],
        order: &'a [usize],
        map: Vec<usize>,
        used: u64,
    }

    fn extend(ctx: &mut Ctx<'_>, depth: usize) -> bool {
        if depth == ctx.order.len() {
            return true;
        }
        let u = ctx.order[depth];
        let mut expected = 0u64;
        for &p in &ctx.order[..depth] {
            if ctx.g1.has_edge(u, p) {
                expected |= bit(ctx.map[p]);
            }
        }
        for w in 0..ctx.g2.n() {
            if ctx.used & bit(w) != 0 || ctx.c2[w] != ctx.c1[u] {
                continue;
            }
            if ctx.g2.adj(w) & ctx.used != expected {
                continue;
            }
            ctx.map[u] = w;
            ctx.used |= bit(w);
            if extend(ctx, depth + 1) {
                return true;
            }
            ctx.used &= !bit(w);
        }
        false
    }

    let mut ctx = Ctx {
        g1,
        g2,
        c1: &c1,
        c2: &c2,
        order: &order,
        map: vec![usize::MAX; n],
        used: 0,
    };
    extend(&mut ctx, 0).then_some(ctx.map)
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}
