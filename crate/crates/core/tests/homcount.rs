use modcount::graph::Graph;
use modcount::homcount::{
    automorphisms, count_colourful_homs, count_cp_homs, count_homs, count_homs_labelled, count_homs_mod_p,
    count_homs_multigraph, order_p_automorphism, p_reduced_quotient, quotient_by_automorphism, tree_decomposition,
    Arith, AutChoice, HColouredGraph, TwoLabelledGraph, DEFAULT_AUTOMORPHISM_CAP, DEFAULT_SEARCH_BUDGET,
};
use modcount::oracle;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m)
            .prop_map(move |keep| Graph::new(n, pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e)).unwrap())
    })
}

#[test]
fn looped_quotients_vanish_on_loop_free_hosts() {
    // P2 and K3 have different 2-reduced quotients, both looped, so neither
    // count is ever odd on a simple host.
    let p2 = Graph::path(2).to_multigraph();
    let k3 = Graph::complete(3).to_multigraph();
    let a = p_reduced_quotient(&p2, 2, AutChoice::First, DEFAULT_SEARCH_BUDGET).unwrap();
    let b = p_reduced_quotient(&k3, 2, AutChoice::First, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(a.has_loop() && b.has_loop());
    assert!(!a.quotient.is_isomorphic(&b.quotient));
    for g in [Graph::complete(5), Graph::cycle(7), Graph::path(4), Graph::complete(2)] {
        assert_eq!(oracle::hom_count(&Graph::path(2), &g) % 2, 0);
        assert_eq!(oracle::hom_count(&Graph::complete(3), &g) % 2, 0);
    }
}

#[test]
fn decompositions_validate() {
    for g in [Graph::complete(5), Graph::cycle(8), Graph::path(6), Graph::empty(3)] {
        let td = tree_decomposition(&g);
        td.validate(&g).unwrap();
    }
    assert_eq!(tree_decomposition(&Graph::complete(5)).width, 4);
    assert_eq!(tree_decomposition(&Graph::cycle(8)).width, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_brute_force(h in graph_strategy(5), g in graph_strategy(6)) {
        prop_assert_eq!(count_homs(&h, &g).unwrap(), oracle::hom_count(&h, &g));
    }

    #[test]
    fn mod_p_matches_brute_force(h in graph_strategy(6), g in graph_strategy(5), pi in 0usize..3) {
        let p = [2u32, 3, 5][pi];
        let r = count_homs_mod_p(&h, &g, p, AutChoice::First).unwrap();
        prop_assert_eq!(r.residue as u128, oracle::hom_count(&h, &g) % p as u128);
    }

    #[test]
    fn one_quotient_step_keeps_the_residue(h in graph_strategy(6), g in graph_strategy(5), pi in 0usize..3) {
        let p = [2u32, 3, 5][pi];
        let hm = h.to_multigraph();
        if let Some(alpha) = order_p_automorphism(&hm, p, AutChoice::First).unwrap() {
            let q = quotient_by_automorphism(&hm, &alpha, p).unwrap();
            let a = count_homs_multigraph(&q, &g, Arith::Mod(p as u64)).unwrap();
            prop_assert_eq!(a, oracle::hom_count(&h, &g) % p as u128);
        }
    }

    #[test]
    fn reductions_agree_across_seeds(h in graph_strategy(7), s1 in any::<u64>(), s2 in any::<u64>(), pi in 0usize..3) {
        let p = [2u32, 3, 5][pi];
        let hm = h.to_multigraph();
        let a = p_reduced_quotient(&hm, p, AutChoice::Seeded(s1), DEFAULT_SEARCH_BUDGET).unwrap();
        let b = p_reduced_quotient(&hm, p, AutChoice::Seeded(s2), DEFAULT_SEARCH_BUDGET).unwrap();
        prop_assert!(a.quotient.is_isomorphic(&b.quotient));
    }

    #[test]
    fn labelled_counts_match_brute_force(h in graph_strategy(4), g in graph_strategy(5), s in 0usize..4, t in 0usize..4) {
        let (s, t) = (s % h.n(), t % h.n());
        let gs: Vec<usize> = (0..g.n()).filter(|x| x % 2 == 0).collect();
        let gt: Vec<usize> = (0..g.n()).filter(|x| x % 3 != 1).collect();
        let j = TwoLabelledGraph::new(h.clone(), vec![s], vec![t]).unwrap();
        let host = TwoLabelledGraph::new(g.clone(), gs.clone(), gt.clone()).unwrap();
        prop_assert_eq!(
            count_homs_labelled(&j, &host, Arith::Exact).unwrap(),
            oracle::hom_count_labelled(&h, &[s], &[t], &g, &gs, &gt)
        );
    }

    #[test]
    fn colourful_is_automorphisms_times_prescribed(h in graph_strategy(4), blowup in prop::collection::vec(1usize..3, 4), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // random subgraph of a blow-up of H, coloured by the projection
        let mut colouring = Vec::new();
        for v in 0..h.n() {
            colouring.extend(std::iter::repeat_n(v, blowup[v]));
        }
        let n = colouring.len();
        let mut g = Graph::empty(n);
        for x in 0..n {
            for y in x + 1..n {
                if h.has_edge(colouring[x], colouring[y]) && rng.gen_bool(0.7) {
                    g.add_edge(x, y).unwrap();
                }
            }
        }
        let gc = HColouredGraph::new(g.clone(), colouring.clone(), &h).unwrap();
        let aut = automorphisms(&h.to_multigraph(), DEFAULT_AUTOMORPHISM_CAP).unwrap().len() as u128;
        let cp = count_cp_homs(&h, &gc).unwrap();
        let cf = count_colourful_homs(&h, &gc).unwrap();
        prop_assert_eq!(cf, aut * cp);
        prop_assert_eq!((cp, cf), oracle::coloured_hom_counts(&h, &g, &colouring));
    }
}
