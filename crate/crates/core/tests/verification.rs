mod common;

use std::collections::HashMap;
use std::io::Write;

use folkman_core::structure::is_isomorphic;
use folkman_core::verify::{
    enumerate_graphs, graph6_source, graphs_source, scan_reader, scan_stream, verify,
    verify_builtin, verify_dirac, Check, Predicate, VerifyError,
};
use folkman_core::{build_family, emit_graph6, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Key = (usize, Vec<usize>);

fn key(g: &Graph) -> Key {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    (g.edge_count(), d)
}

fn labelled(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> k & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Isomorphism classes among all labelled graphs on `n` vertices.
fn brute_class_count(n: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut classes: HashMap<Key, Vec<Graph>> = HashMap::new();
    for mask in 0u64..(1u64 << pairs) {
        let g = labelled(n, mask);
        let bucket = classes.entry(key(&g)).or_default();
        if !bucket.iter().any(|h| is_isomorphic(h, &g)) {
            bucket.push(g);
        }
    }
    classes.values().map(Vec::len).sum()
}

/// Orbit count of the symmetric group on labelled graphs:
/// `(1/n!) * sum over permutations of 2^(cycles on vertex pairs)`.
fn burnside_count(n: usize) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: u64 = 0;
    let mut count: u64 = 0;
    loop {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut seen = vec![false; pairs.len()];
        let index = |a: usize, b: usize| {
            let (u, v) = (a.min(b), a.max(b));
            v * (v - 1) / 2 + u
        };
        let mut cycles = 0;
        for start in 0..pairs.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                let (u, v) = pairs[p];
                p = index(perm[u], perm[v]);
            }
        }
        total += 1u64 << cycles;
        count += 1;
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total / count
}

fn pairwise_distinct(gs: &[Graph]) -> bool {
    let mut buckets: HashMap<Key, Vec<&Graph>> = HashMap::new();
    for g in gs {
        buckets.entry(key(g)).or_default().push(g);
    }
    buckets
        .values()
        .all(|b| (0..b.len()).all(|i| (i + 1..b.len()).all(|j| !is_isomorphic(b[i], b[j]))))
}

#[test]
fn enumeration_matches_brute_force_dedup() {
    for n in 1..=6 {
        let gs = enumerate_graphs(n).unwrap();
        assert_eq!(gs.len(), brute_class_count(n), "n={n}");
        assert!(pairwise_distinct(&gs));
    }
}

#[test]
fn enumeration_at_seven_matches_orbit_count() {
    let gs = enumerate_graphs(7).unwrap();
    assert_eq!(burnside_count(7), 1044);
    assert_eq!(gs.len() as u64, burnside_count(7));
    assert!(pairwise_distinct(&gs));
    assert!(gs.iter().all(|g| g.n() == 7));
}

#[test]
fn enumeration_refuses_large_orders() {
    assert_eq!(enumerate_graphs(8).unwrap_err(), VerifyError::EnumerationTooLarge(8));
    assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
    assert_eq!(enumerate_graphs(4).unwrap().len(), 11);
}

#[test]
fn dirac_over_all_classes_up_to_seven() {
    let r = verify_dirac(7, 0).unwrap();
    assert!(r.passed && r.violations.is_empty());
    let counts: Vec<usize> = r.counts_by_n.values().copied().collect();
    assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
    let eq: Vec<&str> = r.equality_cases.iter().map(|e| e.classification.as_str()).collect();
    assert_eq!(eq, ["C5", "K1+C5", "K2+C5"]);
    for e in &r.equality_cases {
        let g = folkman_core::parse_graph6(&e.graph6).unwrap();
        assert!(is_isomorphic(&g, &build_family(&e.classification).unwrap()));
    }
    let small = verify_builtin(Check::Dirac, 1, 4, 1).unwrap();
    assert_eq!(small.equality_count, 0);
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let a = verify_builtin(Check::Dirac, 1, 6, 1).unwrap();
    let b = verify_builtin(Check::Dirac, 1, 6, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn no_small_graph_has_gap_two() {
    for check in [Check::Gap2, Check::Gap3] {
        let r = verify_builtin(check, 1, 7, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.equality_count, 0);
        assert_eq!(r.graph_count, 1252);
    }
    let p: Predicate = "f >= 2".parse().unwrap();
    assert!(enumerate_graphs(7).unwrap().iter().all(|g| !p.matches(g)));
}

#[test]
fn gap_checks_on_injected_family_members() {
    let q = Graph::kery_q();
    let k1q = build_family("K1+Q").unwrap();
    let r = verify(Check::Gap3, graphs_source(vec![q, k1q]), 1).unwrap();
    assert!(r.passed);
    let got: Vec<(Option<usize>, &str)> = r
        .equality_cases
        .iter()
        .map(|e| (e.m, e.classification.as_str()))
        .collect();
    assert_eq!(got, [(Some(0), "Q"), (Some(1), "K1+Q")]);
    let r = verify(Check::Gap2, graphs_source(vec![build_family("C5+C5").unwrap()]), 1).unwrap();
    assert_eq!(r.equality_cases[0].classification, "C5+C5");
}

#[test]
fn scan_examples() {
    let dir = tempfile::tempdir().unwrap();
    let five = dir.path().join("five.g6");
    let mut f = std::fs::File::create(&five).unwrap();
    for g in enumerate_graphs(5).unwrap() {
        writeln!(f, "{}", emit_graph6(&g)).unwrap();
    }
    drop(f);
    let r = scan_stream(&five, &"f>=1".parse().unwrap(), 2).unwrap();
    assert_eq!(r.graph_count, 34);
    assert_eq!(r.match_count, 1);
    let m = folkman_core::parse_graph6(&r.matches[0].graph6).unwrap();
    assert!(is_isomorphic(&m, &Graph::cycle(5).unwrap()));

    let empty = dir.path().join("empty.g6");
    std::fs::write(&empty, "").unwrap();
    let r = scan_stream(&empty, &"n >= 0".parse().unwrap(), 1).unwrap();
    assert!(r.passed && r.graph_count == 0 && r.matches.is_empty());

    assert!(scan_stream(&dir.path().join("missing"), &"n>=0".parse().unwrap(), 1).is_err());
}

#[test]
fn scan_ten_vertex_stream_finds_only_double_c5() {
    // synthetic stream: relabelled C5+C5 copies among random 10-vertex graphs
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let c = build_family("C5+C5").unwrap();
    let mut lines = Vec::new();
    for i in 0..200 {
        let g = if i % 25 == 0 {
            c.permute(&common::random_perm(&mut rng, 10)).unwrap()
        } else {
            common::random_graph(&mut rng, 10, 0.5)
        };
        lines.push(emit_graph6(&g));
    }
    let text = lines.join("\n");
    let r = scan_reader(text.as_bytes(), &"f>=2 and n<=10".parse().unwrap(), 3).unwrap();
    assert_eq!(r.match_count, 8);
    for m in &r.matches {
        assert!(is_isomorphic(&folkman_core::parse_graph6(&m.graph6).unwrap(), &c));
    }
    let v = verify(Check::Gap2, graph6_source(text.as_bytes()), 3).unwrap();
    assert!(v.passed);
    assert_eq!(v.equality_count, 8);
}
