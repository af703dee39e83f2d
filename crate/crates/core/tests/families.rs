mod common;

use common::*;
use folkman_core::invariants::{full_vertex_count, report};
use folkman_core::structure::{
    classify_extremal, gallai_bound, gallai_full_vertex_check, is_isomorphic, join_decompose,
    FamilyKind, StructureError,
};
use folkman_core::{build_family, FamilyExpr, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn members() -> Vec<(FamilyKind, usize, Graph)> {
    let mut out = Vec::new();
    for m in 0..=5 {
        out.push((FamilyKind::KmQ, m, FamilyExpr::km_q(m).build().unwrap()));
        out.push((FamilyKind::KmTripleC5, m, FamilyExpr::km_triple_c5(m).build().unwrap()));
    }
    out
}

#[test]
fn family_invariants() {
    for (kind, m, g) in members() {
        let r = report(&g);
        let (chi, omega) = match kind {
            FamilyKind::KmQ => (m + 7, m + 4),
            _ => (m + 9, m + 6),
        };
        assert_eq!((r.chi, r.omega, r.f), (chi, omega, 3), "{kind:?} m={m}");
        assert_eq!(r.n, r.chi + 6);
        assert_eq!(r.full_vertices, m);
        assert!(r.vertex_critical && !r.sperner);
        assert_eq!(r.alpha, 2);
    }
}

#[test]
fn non_sperner_gap_three_members_have_n_at_least_eleven_plus_alpha() {
    for (_, _, g) in members() {
        let r = report(&g);
        assert!(!r.sperner && r.f >= 3);
        assert!(r.n >= 11 + r.alpha);
    }
    let q = report(&Graph::kery_q());
    assert_eq!(q.n, 11 + q.alpha);
}

#[test]
fn classifier_is_relabelling_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for (kind, m, g) in members() {
        for _ in 0..50 {
            let h = g.permute(&random_perm(&mut rng, g.n())).unwrap();
            let c = classify_extremal(&h).unwrap();
            assert_eq!((c.kind, c.m), (kind, Some(m)));
            assert_eq!(c.chi, report(&g).chi);
        }
    }
}

#[test]
fn classifier_on_named_examples() {
    let c = classify_extremal(&build_family("C5+C5+C5").unwrap()).unwrap();
    assert_eq!((c.kind, c.m, c.chi), (FamilyKind::KmTripleC5, Some(0), 9));
    let c = classify_extremal(&Graph::complete(7).unwrap()).unwrap();
    assert_eq!(c.kind, FamilyKind::NotExtremal);
    for e in ["C5", "C5+C5", "K1+C5+C5", "C7", "K2+C7", "Q+C5", "C5+C5+C5+C5"] {
        let c = classify_extremal(&build_family(e).unwrap()).unwrap();
        assert_eq!(c.kind, FamilyKind::NotExtremal, "{e}");
    }
}

#[test]
fn classifier_never_raises_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 5..=12 {
        for _ in 0..40 {
            let g = random_graph(&mut rng, n, 0.6);
            assert!(
                !matches!(classify_extremal(&g), Err(StructureError::TheoremViolation { .. })),
                "{g:?}"
            );
        }
    }
}

#[test]
fn join_decomposition_rebuilds_input() {
    let mut corpus: Vec<Graph> = members().into_iter().map(|x| x.2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    corpus.extend((0..60).map(|i| random_graph(&mut rng, 3 + i % 10, 0.7)));
    for g in corpus {
        let d = join_decompose(&g).unwrap();
        let rebuilt = d.rebuild().unwrap();
        assert!(is_isomorphic(&g, &rebuilt));
        assert_eq!(d.factors.iter().map(Graph::n).sum::<usize>(), g.n());
    }
}

#[test]
fn small_critical_graphs_are_joins() {
    for (_, _, g) in members() {
        let r = report(&g);
        if r.vertex_critical && r.n < 2 * r.chi - 1 {
            assert!(join_decompose(&g).unwrap().factors.len() >= 2);
        }
    }
    let g = build_family("K1+Q").unwrap();
    assert!(g.n() < 2 * 8 - 1);
    assert!(join_decompose(&g).unwrap().factors.len() >= 2);
}

#[test]
fn full_vertex_bound_examples() {
    let g = build_family("K3+Q").unwrap();
    assert_eq!(gallai_bound(10, 16), 1);
    assert_eq!(full_vertex_count(&g), 3);
    assert!(gallai_full_vertex_check(&g).unwrap());
    assert_eq!(gallai_bound(5, 5), 5);
    assert!(gallai_full_vertex_check(&Graph::complete(5).unwrap()).unwrap());
    assert_eq!(gallai_bound(3, 5), 0);
    assert!(gallai_full_vertex_check(&Graph::cycle(5).unwrap()).unwrap());
    for (_, _, g) in members() {
        assert!(gallai_full_vertex_check(&g).unwrap());
    }
    assert!(matches!(
        gallai_full_vertex_check(&Graph::path(4).unwrap()),
        Err(StructureError::Precondition(_))
    ));
}
