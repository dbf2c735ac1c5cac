use hfree::audit::{self, Status};
use hfree::enumerate::{enumerate_connected, EnumerationTask};
use hfree::families::{make_cycle, make_path, make_s_minus};
use hfree::search::random_hfree_graph;
use hfree::subgraph::{is_star, Pattern};
use hfree::verify::random_graph;
use hfree::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    if rng.gen_bool(0.5) {
        return random_hfree_graph(rng.gen_range(1..=60), &[], rng.gen()).unwrap();
    }
    loop {
        let n = rng.gen_range(2..=20);
        let g = random_graph(n, rng.gen_range(0.15..0.8), rng).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn quadratic_bound_and_identities_hold_on_random_connected_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let g = random_connected(&mut rng);
        let report = audit::audit(&g).unwrap();
        for name in [
            audit::EDGE_COUNT_IDENTITY,
            audit::FIRST_EIGEN_IDENTITY,
            audit::SECOND_EIGEN_IDENTITY,
            audit::QUADRATIC_BOUND,
        ] {
            assert_eq!(report.status(name), Some(Status::Pass), "{name} on {}\n{}", g.to_graph6(), report.table());
        }
        assert!(report.gating_ok(), "{}\n{}", g.to_graph6(), report.table());
    }
}

/// The items that follow from H(4,3)-freeness alone.
const STRUCTURAL_ITEMS: [&str; 4] = [
    audit::ITEM_A0_DEGREE,
    audit::ITEM_A0_EXCLUDES_A_PLUS,
    audit::ITEM_W_EDGE_COMMON,
    audit::ITEM_W_EDGE_A_PLUS_EDGE,
];

#[test]
fn structural_items_hold_on_every_small_h43_free_graph() {
    let mut applicable = 0;
    let mut total = 0;
    for m in 1..=10 {
        let task = EnumerationTask::new(m, vec![Pattern::H43]);
        enumerate_connected(&task, &mut |g| {
            total += 1;
            let report = audit::audit(g).unwrap();
            let statuses: Vec<Status> = STRUCTURAL_ITEMS.iter().map(|n| report.status(n).unwrap()).collect();
            if statuses[0] != Status::NotApplicable {
                applicable += 1;
            }
            for (name, s) in STRUCTURAL_ITEMS.iter().zip(statuses) {
                assert_ne!(s, Status::Fail, "{name} on {}\n{}", g.to_graph6(), report.table());
            }
        })
        .unwrap();
    }
    assert!(applicable > 100, "only {applicable} of {total} graphs exercised the items");
}

#[test]
fn extremal_construction_decomposes_as_a_book() {
    let g = make_s_minus(21).unwrap();
    assert!(g.is_connected() && !g.has_isolated_vertex());
    let d = audit::decompose(&g).unwrap();
    assert!(d.w.is_empty());
    let core = g.induced(d.a_plus_mask()).unwrap();
    assert!(is_star(&core));
    // The partner of u* is the other vertex of maximum degree, and it sits in A+.
    let partner = (0..g.order()).filter(|&v| v != d.u_star).max_by_key(|&v| g.degree(v)).unwrap();
    assert!(d.a_plus.contains(&partner));
    let report = audit::audit(&g).unwrap();
    for name in [
        audit::A_PLUS_NONEMPTY,
        audit::A_PLUS_CONNECTED,
        audit::A_PLUS_STAR,
        audit::STAR_FORCES_W_EMPTY,
        audit::FINAL_STRUCTURE,
    ] {
        assert_eq!(report.status(name), Some(Status::Pass), "{name}");
    }
}

#[test]
fn cycle_and_path_fixtures() {
    let c5 = audit::audit(&make_cycle(5).unwrap()).unwrap();
    assert_eq!(c5.status(audit::A_PLUS_NONEMPTY), Some(Status::Fail));
    assert!((c5.rho - 2.0).abs() < 1e-10);
    assert!(c5.gating_ok());

    let p4 = audit::audit(&make_path(4).unwrap()).unwrap();
    assert_eq!(p4.status(audit::QUADRATIC_BOUND), Some(Status::Pass));
    for name in [audit::W_EDGE_BOUND, audit::A0_WEIGHT_BOUND, audit::REFINED_QUADRATIC_BOUND] {
        assert_eq!(p4.status(name), Some(Status::NotApplicable), "{name}");
    }
}

#[test]
fn fixture_sizes_pass_the_full_ledger() {
    for m in (38..=60).step_by(2) {
        let (report, bad) = hfree::verify::audit_fixture(m).unwrap();
        assert!(bad.is_empty(), "m={m}: {bad:?}\n{}", report.table());
        assert!(report.gating_ok());
    }
}
