use hfree::enumerate::RunRecord;
use hfree::families::make_h;
use hfree::graph::{parse_graph6, Graph};
use hfree::search::{hill_climb, random_hfree_graph, rotate_to_hub, SearchConfig};
use hfree::spectral::{char_poly, spectral_radius_default};
use hfree::subgraph::{avoids_all, contains_subgraph, is_h33_free, is_h43_free, Pattern};
use proptest::prelude::*;

/// A graph on 1..=max_n vertices from an edge-presence bit vector.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(40)) {
        let s = g.to_graph6();
        let h = parse_graph6(&s).unwrap();
        prop_assert_eq!(h.rows(), g.rows());
        prop_assert_eq!(h.to_graph6(), s);
    }

    #[test]
    fn handshake(g in graph_strategy(30)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in with_permutation(14)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(g.canonical_form(), h.canonical_form());
        prop_assert_eq!(g.canonical_form().to_graph().canonical_form(), g.canonical_form());
    }

    #[test]
    fn radius_bounds(g in graph_strategy(20)) {
        let r = spectral_radius_default(&g).unwrap();
        let n = g.order() as f64;
        let m = g.size() as f64;
        prop_assert!(r.rho <= g.max_degree() as f64 + 1e-9);
        prop_assert!(r.rho + 1e-9 >= 2.0 * m / n);
        prop_assert!(r.rho + 1e-9 >= (g.max_degree() as f64).sqrt());
        prop_assert!(r.rho <= (2.0 * m).sqrt() + 1e-9);
        prop_assert!(r.residual <= 1e-10 * r.rho.max(1.0));
    }

    #[test]
    fn perron_vector_is_positive_on_connected_graphs(g in graph_strategy(20)) {
        prop_assume!(g.is_connected() && g.order() > 1);
        let r = spectral_radius_default(&g).unwrap();
        prop_assert!(r.perron.iter().all(|&x| x > 0.0));
        prop_assert!(!r.multi_component);
    }

    #[test]
    fn adding_an_edge_never_lowers_the_radius(g in graph_strategy(16), pick in any::<prop::sample::Index>()) {
        let non_edges: Vec<_> = g.non_edges().collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let h = g.with_edge(u, v).unwrap();
        let (a, b) = (spectral_radius_default(&g).unwrap().rho, spectral_radius_default(&h).unwrap().rho);
        prop_assert!(b >= a - 1e-10);
        if g.is_connected() {
            prop_assert!(b > a);
        }
    }

    #[test]
    fn char_poly_coefficients_count_edges_and_triangles(g in graph_strategy(14)) {
        let n = g.order();
        prop_assume!(n >= 3);
        let p = char_poly(&g).unwrap();
        prop_assert_eq!(p.coeff(n), 1);
        prop_assert_eq!(p.coeff(n - 1), 0);
        prop_assert_eq!(p.coeff(n - 2), -(g.size() as i128));
        prop_assert_eq!(-p.coeff(n - 3) / 2, g.triangle_count() as i128);
    }

    #[test]
    fn specialized_detectors_agree_with_generic_matching(g in graph_strategy(12)) {
        let h43 = make_h(4, 3).unwrap();
        let h33 = make_h(3, 3).unwrap();
        prop_assert_eq!(is_h43_free(&g), contains_subgraph(&g, &h43).is_none());
        prop_assert_eq!(is_h33_free(&g), contains_subgraph(&g, &h33).is_none());
        if let Some(w) = contains_subgraph(&g, &h43) {
            prop_assert!(w.is_valid(&g, &h43));
        }
    }

    #[test]
    fn containment_is_monotone_and_label_free((g, perm) in with_permutation(11), pick in any::<prop::sample::Index>()) {
        let h43 = Pattern::H43;
        prop_assert_eq!(h43.contained_in(&g), h43.contained_in(&g.permuted(&perm)));
        let non_edges: Vec<_> = g.non_edges().collect();
        if !non_edges.is_empty() {
            let (u, v) = non_edges[pick.index(non_edges.len())];
            if h43.contained_in(&g) {
                prop_assert!(h43.contained_in(&g.with_edge(u, v).unwrap()));
            }
        }
    }

    #[test]
    fn run_records_round_trip(g in graph_strategy(12)) {
        let rec = RunRecord::new(&g, spectral_radius_default(&g).unwrap().rho);
        let line = rec.to_json_line();
        prop_assert!(!line.contains('\n'));
        prop_assert_eq!(RunRecord::from_json_line(&line).unwrap(), rec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_start_graphs_are_feasible(m in 1usize..40, seed in any::<u64>()) {
        let forbidden = [Pattern::H43];
        let g = random_hfree_graph(m, &forbidden, seed).unwrap();
        prop_assert_eq!(g.size(), m);
        prop_assert!(g.is_connected());
        prop_assert!(avoids_all(&g, &forbidden));
    }

    #[test]
    fn rotations_preserve_size_and_raise_the_radius(m in 3usize..30, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = random_hfree_graph(m, &[], seed).unwrap();
        let spec = spectral_radius_default(&g).unwrap();
        let hub = spec.argmax_vertex();
        let options: Vec<(usize, usize)> = g
            .edges()
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .filter(|&(w, _)| w != hub && !g.has_edge(w, hub))
            .collect();
        prop_assume!(!options.is_empty());
        let (w, v) = options[pick.index(options.len())];
        let h = rotate_to_hub(&g, w, v).unwrap();
        prop_assert_eq!(h.size(), g.size());
        prop_assert!(h.has_edge(w, hub) && !h.has_edge(w, v) || v == hub);
        let after = spectral_radius_default(&h).unwrap().rho;
        prop_assert!(after > spec.rho, "{} -> {}", spec.rho, after);
    }

    #[test]
    fn search_traces_are_feasible_monotone_and_reproducible(m in 4usize..14, seed in any::<u64>()) {
        let mut cfg = SearchConfig::new(m, vec![Pattern::H33, Pattern::H43]);
        cfg.restarts = 3;
        cfg.rng_seed = seed;
        cfg.workers = 2;
        let trace = hill_climb(&cfg).unwrap();
        let violations = hfree::verify::trace_violations(&trace).unwrap();
        prop_assert!(violations.is_empty(), "{:?}", violations);
        cfg.workers = 1;
        let again = hill_climb(&cfg).unwrap();
        prop_assert_eq!(serde_json::to_string(&again.restarts).unwrap(), serde_json::to_string(&trace.restarts).unwrap());
    }
}

#[test]
fn start_graphs_are_varied() {
    let forms: std::collections::BTreeSet<_> = (0..100)
        .map(|s| random_hfree_graph(5, &[Pattern::H43], s).unwrap().canonical_form())
        .collect();
    assert!(forms.len() >= 2);
}
