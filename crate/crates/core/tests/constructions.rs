//! Closed-form and structural facts about the named constructions.

use hfree::families::*;
use hfree::spectral::{char_poly, lemma22_bound, odd_bound, rho_prime, spectral_radius_default};
use hfree::subgraph::{catalog_p2p3_free, contains_subgraph, is_h33_free, is_h43_free, is_p2p3_free};
use hfree::{parse_graph6, Graph};

fn rho(g: &Graph) -> f64 {
    spectral_radius_default(g).unwrap().rho
}

fn iso(a: &Graph, b: &Graph) -> bool {
    a.canonical_form() == b.canonical_form()
}

#[test]
fn graph6_of_small_graphs() {
    assert_eq!(make_complete(3).unwrap().to_graph6(), "Bw");
    assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().to_graph6(), "Bg");
    assert!(iso(&parse_graph6("Bg").unwrap(), &make_path(3).unwrap()));
}

#[test]
fn book_graph_radius_is_the_odd_closed_form() {
    let s6 = make_s(6).unwrap();
    assert_eq!(s6.size(), 9);
    let expected = (1.0 + 33f64.sqrt()) / 2.0;
    assert!((rho(&s6) - expected).abs() < 1e-10);
    assert!((odd_bound(9) - expected).abs() < 1e-15);
    // (1+√33)/2 is a root of x² − x − 8, which must divide the characteristic
    // polynomial exactly.
    let p = char_poly(&s6).unwrap();
    let mut rem: Vec<i128> = p.ascending().to_vec();
    while rem.len() > 2 {
        let lead = rem.pop().unwrap();
        let k = rem.len();
        // subtract lead·x^{k−2}·(x² − x − 8); the x^k term is already gone
        rem[k - 1] += lead;
        rem[k - 2] += 8 * lead;
    }
    assert_eq!(rem, vec![0, 0], "remainder of {p} modulo x^2 - x - 8");
}

#[test]
fn book_graph_shapes() {
    assert!(iso(&make_s(4).unwrap(), &make_complete(4).unwrap().without_edge(0, 1).unwrap()));
    let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    assert!(iso(&make_s_minus(4).unwrap(), &paw));
    let s21 = make_s_minus(21).unwrap();
    assert_eq!(s21.size(), 38);
    for n in 4..=32 {
        assert!(is_h43_free(&make_s_minus(n).unwrap()), "n={n}");
    }
    for m in (9..=39).step_by(2) {
        assert!(is_h43_free(&make_s((m + 3) / 2).unwrap()), "m={m}");
    }
}

#[test]
fn one_pendant_construction_is_the_book_minus_an_edge() {
    assert!(iso(&make_f_prime(38, 1).unwrap(), &make_s_minus(21).unwrap()));
    assert!(rho(&make_f_prime(38, 3).unwrap()) < rho(&make_f_prime(38, 1).unwrap()));
}

#[test]
fn two_cycle_patterns() {
    let h43 = make_h(4, 3).unwrap();
    assert_eq!((h43.order(), h43.size()), (6, 7));
    assert!(iso(&make_h(3, 3).unwrap(), &make_friendship(2).unwrap()));
    assert!(contains_subgraph(&make_fan(5).unwrap(), &h43).is_some());
    assert!(!is_h43_free(&make_fan(5).unwrap()));
    assert!(contains_subgraph(&make_s_minus(21).unwrap(), &h43).is_none());
    assert!(is_h43_free(&make_h(3, 3).unwrap()));
    assert!(!is_h33_free(&make_friendship(2).unwrap()));
}

#[test]
fn bound_values() {
    assert!((lemma22_bound(6) - (1.0 + 19f64.sqrt()) / 2.0).abs() < 1e-15);
    let r = rho_prime(38).unwrap();
    assert!(lemma22_bound(38) < r && r < odd_bound(38));
}

#[test]
fn catalog_members() {
    assert!(iso(&make_catalog_h(1, 0).unwrap(), &make_path(4).unwrap()));
    assert!(iso(&make_catalog_h(2, 0).unwrap(), &make_cycle(3).unwrap()));
    assert!(iso(&make_catalog_h(5, 0).unwrap(), &make_complete(4).unwrap().without_edge(0, 1).unwrap()));
    assert!(iso(&make_catalog_h(6, 0).unwrap(), &make_complete(4).unwrap()));
    let k14 = make_catalog_h(7, 4).unwrap();
    assert!(iso(&k14, &make_star(4).unwrap()));
    assert_eq!(k14.size() as isize - k14.order() as isize, -1);

    let catalog = catalog_p2p3_free(7).unwrap();
    for f in &catalog {
        let g = f.to_graph();
        assert!(g.is_connected() && is_p2p3_free(&g));
        assert!(g.size() as isize - g.order() as isize <= 2);
    }
    // Beyond four vertices only stars remain.
    for f in catalog.iter().map(|f| f.to_graph()).filter(|g| g.order() >= 5) {
        assert!(iso(&f, &make_star(f.order() - 1).unwrap()), "{}", f.to_graph6());
    }
}
