use modcount::algebra::{Prime, QuadField};
use modcount::expander::level_report;
use modcount::graph::{parse_edge_list, write_edge_list, EdgeListFile, Graph, MultiGraph};
use modcount::groups::{cayley_graph, closure, DEFAULT_CLOSURE_CAP};
use modcount::presentations::{build_presentation, p3_matrix_generators, search_delta_matching, RelationWord};
use modcount::selftest::P5_RELATIONS;
use modcount::spectral::adjacency_spectrum;
use proptest::prelude::*;

#[test]
fn tower_grows_by_powers_of_three() {
    let mut last = 0;
    for level in 0..=3 {
        let r = level_report(level, DEFAULT_CLOSURE_CAP, true).unwrap();
        assert!(r.group_order > last);
        assert!(r.exponent.is_some());
        assert!(r.relations_hold);
        assert!(r.two_generators.unwrap().mu1 > 0.0);
        last = r.group_order;
    }
}

#[test]
fn cayley_graphs_are_regular() {
    let gens = p3_matrix_generators(2);
    let g = closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
    let cay = cayley_graph(&g, &gens).unwrap();
    let s = adjacency_spectrum(&cay.graph).unwrap();
    assert!(s.regular);
    assert_eq!(s.valency, cay.valency());
    assert!((0..cay.graph.n()).all(|v| cay.graph.degree(v) == cay.valency()));
    assert!(cay.inverse_slot.iter().enumerate().all(|(i, &j)| cay.inverse_slot[j] == i));
}

#[test]
fn p5_relations_found() {
    let words: Vec<RelationWord> = P5_RELATIONS.iter().map(|s| RelationWord::parse(s).unwrap()).collect();
    let p = Prime::new(5).unwrap();
    let delta = search_delta_matching(p, 0, 2, &words).unwrap().unwrap();
    let pres = build_presentation(p, 0, 2, delta).unwrap();
    assert_eq!(pres.folded_relations().len(), 9);
    let field = QuadField::standard(p).unwrap();
    assert!(delta.field() == field);
}

fn edge_file() -> impl Strategy<Value = EdgeListFile> {
    (1usize..12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (
            prop::collection::vec(any::<bool>(), pairs.len()),
            prop::collection::vec(0..n, 0..3),
            prop::collection::vec(0..n, 0..3),
        )
            .prop_map(move |(keep, s, t)| EdgeListFile {
                graph: Graph::new(n, pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e)).unwrap(),
                s,
                t,
            })
    })
}

proptest! {
    #[test]
    fn edge_lists_roundtrip(f in edge_file()) {
        let text = write_edge_list(&f);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), f);
    }

    #[test]
    fn isomorphism_survives_relabelling(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8), 0..10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
        let g = MultiGraph::new(n, edges).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.permuted(&perm);
        prop_assert!(g.is_isomorphic(&h));
        prop_assert_eq!(g.automorphism_count(), h.automorphism_count());
    }
}
