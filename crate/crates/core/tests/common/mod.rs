//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's solvers.

#![allow(dead_code)]

use folkman_core::Graph;

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Largest clique by scanning every vertex subset.
pub fn brute_clique_number(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() > best && is_clique(g, &vs) {
            best = vs.len();
        }
    }
    best
}

pub fn brute_independence_number(g: &Graph) -> usize {
    brute_clique_number(&g.complement())
}

/// Least `k` admitting a proper colouring, trying all `k^n` assignments.
pub fn brute_chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for k in 1..=n {
        let mut col = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| col[u] != col[v]) {
                return k;
            }
            let mut i = 0;
            while i < n {
                col[i] += 1;
                if col[i] < k {
                    break;
                }
                col[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// All `size`-cliques as vertex lists.
pub fn brute_cliques(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if is_clique(g, &vs) {
            out.push(vs);
        }
    }
    out
}

/// Decides arrowing by enumerating all `r^|E|` edge colourings. Returns
/// `true` when no good colouring exists.
pub fn brute_arrows(g: &Graph, targets: &[usize]) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let r = targets.len();
    let idx = |u: usize, v: usize| edges.iter().position(|&e| e == (u, v)).unwrap();
    let cliques: Vec<Vec<Vec<usize>>> = targets
        .iter()
        .map(|&a| {
            brute_cliques(g, a)
                .into_iter()
                .map(|vs| {
                    let mut es = Vec::new();
                    for i in 0..vs.len() {
                        for j in i + 1..vs.len() {
                            es.push(idx(vs[i], vs[j]));
                        }
                    }
                    es
                })
                .collect()
        })
        .collect();
    let m = edges.len();
    let total = (r as u64).pow(m as u32);
    assert!(total <= 1 << 15, "brute force limited to 2^15 colourings");
    let mut col = vec![0usize; m];
    for code in 0..total {
        let mut c = code;
        for slot in col.iter_mut() {
            *slot = (c % r as u64) as usize;
            c /= r as u64;
        }
        let good = cliques
            .iter()
            .enumerate()
            .all(|(i, qs)| qs.iter().all(|q| !q.iter().all(|&e| col[e] == i)));
        if good {
            return false;
        }
    }
    true
}

/// Tiny DPLL with unit propagation over DIMACS clauses; returns a model.
pub fn dpll(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    fn value(assign: &[i8], lit: i32) -> i8 {
        let v = assign[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            -v
        }
    }
    fn solve(assign: &mut Vec<i8>, clauses: &[Vec<i32>]) -> bool {
        let mut trail = Vec::new();
        loop {
            let mut unit = None;
            let mut branch = None;
            for c in clauses {
                let mut sat = false;
                let mut free = 0;
                let mut last = 0;
                for &l in c {
                    match value(assign, l) {
                        1 => {
                            sat = true;
                            break;
                        }
                        0 => {
                            free += 1;
                            last = l;
                        }
                        _ => {}
                    }
                }
                if sat {
                    continue;
                }
                if free == 0 {
                    for v in trail {
                        assign[v] = 0;
                    }
                    return false;
                }
                if free == 1 {
                    unit = Some(last);
                    break;
                }
                if branch.is_none() {
                    branch = Some(last);
                }
            }
            match (unit, branch) {
                (Some(l), _) => {
                    let v = l.unsigned_abs() as usize;
                    assign[v] = if l > 0 { 1 } else { -1 };
                    trail.push(v);
                }
                (None, None) => return true,
                (None, Some(l)) => {
                    let v = l.unsigned_abs() as usize;
                    for val in [1i8, -1] {
                        assign[v] = val;
                        if solve(assign, clauses) {
                            return true;
                        }
                    }
                    assign[v] = 0;
                    for v in trail {
                        assign[v] = 0;
                    }
                    return false;
                }
            }
        }
    }
    let mut assign = vec![0i8; num_vars + 1];
    if solve(&mut assign, clauses) {
        Some(assign[1..].iter().map(|&v| v > 0).collect())
    } else {
        None
    }
}

/// Uniformly random graph on `n` vertices.
pub fn random_graph<R: rand::Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_perm<R: rand::Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
