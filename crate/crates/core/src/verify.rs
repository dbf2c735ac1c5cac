//! The acceptance suite: ten executable checks of the extremal results,
//! shared by the command line and the test harness.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::audit::{self, Status};
use crate::enumerate::{extremal_search_with, graphs_of_order, EnumerationTask};
use crate::error::Result;
use crate::families::{make_complete, make_cycle, make_f_prime, make_h, make_path, make_s, make_s_minus, make_star};
use crate::graph::Graph;
use crate::search::{hill_climb, random_hfree_graph, SearchConfig, SearchTrace, HIT_TOL};
use crate::spectral::{lemma22_bound, odd_bound, quadratic_form, rho_prime, spectral_radius_default};
use crate::subgraph::{avoids_all, catalog_p2p3_free, contains_subgraph, is_h43_free, Pattern};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Smaller sample sizes and sizes for a fast smoke run.
    pub quick: bool,
    pub workers: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            workers: crate::enumerate::default_workers(),
            seed: crate::search::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "quartic root matches the one-pendant construction"),
    (2, "quartic root exceeds the margin bound"),
    (3, "one pendant beats three or more"),
    (4, "odd-size closed form"),
    (5, "exhaustive extremal graphs, two forbidden patterns"),
    (6, "specialized and generic H(4,3) detectors agree"),
    (7, "catalog of (P2 u P3)-free graphs"),
    (8, "audit ledger on the extremal construction"),
    (9, "hill climber reaches the extremal values"),
    (10, "rotation towards the hub raises rho"),
];

/// Run one criterion by number (1–10).
pub fn run_criterion(id: usize, opts: &VerifyOptions) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown criterion", |(_, n)| n);
    let start = Instant::now();
    let outcome = match id {
        1 => quartic_agreement(),
        2 => margin(),
        3 => pendant_monotonicity(),
        4 => odd_closed_form(),
        5 => exhaustive_extremal(opts),
        6 => detector_equivalence(opts),
        7 => catalog_oracle(),
        8 => audit_fixtures(),
        9 => hill_climber(opts),
        10 => rotation_property(opts),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Run all ten criteria in order.
pub fn run_suite(opts: &VerifyOptions) -> Vec<CriterionResult> {
    (1..=10).map(|id| run_criterion(id, opts)).collect()
}

type Outcome = Result<(bool, String)>;

fn even_range() -> impl Iterator<Item = usize> {
    (6..=200).step_by(2)
}

fn rho(g: &Graph) -> Result<f64> {
    Ok(spectral_radius_default(g)?.rho)
}

fn quartic_agreement() -> Outcome {
    let mut worst = (0.0f64, 0);
    for m in even_range() {
        let diff = (rho_prime(m)? - rho(&make_s_minus((m + 4) / 2)?)?).abs();
        if diff > worst.0 {
            worst = (diff, m);
        }
    }
    Ok((
        worst.0 <= 1e-9,
        format!("max |rho'(m) - rho(S-)| = {:.2e} at m={} over even m in 6..=200", worst.0, worst.1),
    ))
}

fn margin() -> Outcome {
    let mut min = (f64::INFINITY, 0);
    for m in even_range() {
        let d = rho_prime(m)? - lemma22_bound(m);
        if d < min.0 {
            min = (d, m);
        }
    }
    Ok((min.0 > 0.0, format!("min margin {:.6e} at m={}", min.0, min.1)))
}

fn pendant_monotonicity() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for m in [12, 20, 38, 60] {
        let base = rho(&make_f_prime(m, 1)?)?;
        for l in (3..m).step_by(2) {
            if m <= l + 1 || m - l < 3 {
                continue;
            }
            let r = rho(&make_f_prime(m, l)?)?;
            checked += 1;
            if r >= base {
                failures.push(format!("m={m} l={l}: {r} >= {base}"));
            }
        }
    }
    Ok((
        failures.is_empty() && checked > 0,
        if failures.is_empty() {
            format!("{checked} (m, l) pairs strictly below l = 1")
        } else {
            failures.join("; ")
        },
    ))
}

fn odd_closed_form() -> Outcome {
    let mut worst = (0.0f64, 0);
    for m in (5..=99).step_by(2) {
        let diff = (rho(&make_s((m + 3) / 2)?)? - odd_bound(m)).abs();
        if diff > worst.0 {
            worst = (diff, m);
        }
    }
    Ok((
        worst.0 <= 1e-10,
        format!("max deviation {:.2e} at m={} over odd m in 5..=99", worst.0, worst.1),
    ))
}

fn exhaustive_extremal(opts: &VerifyOptions) -> Outcome {
    let sizes: &[usize] = if opts.quick { &[9, 10] } else { &[9, 10, 11, 12] };
    let mut ok = true;
    let mut parts = Vec::new();
    for &m in sizes {
        let task = EnumerationTask::new(m, vec![Pattern::H33, Pattern::H43]);
        let r = extremal_search_with(&task, opts.workers)?;
        let expected = if m % 2 == 1 {
            make_s((m + 3) / 2)?
        } else {
            make_s_minus((m + 4) / 2)?
        };
        let good = r.unique && r.graph.is_isomorphic(&expected);
        ok &= good;
        parts.push(format!(
            "m={m}: {} classes, max rho {:.9} {} {}",
            r.count,
            r.rho,
            if r.unique { "unique" } else { "not unique" },
            if good { "as expected" } else { "UNEXPECTED" }
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Random graph on `n` vertices with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn detector_equivalence(opts: &VerifyOptions) -> Outcome {
    let h43 = make_h(4, 3)?;
    let mut exhaustive = 0;
    let mut mismatches = Vec::new();
    for n in 1..=7 {
        for form in graphs_of_order(n, false, &|_| true)? {
            let g = form.to_graph();
            exhaustive += 1;
            if is_h43_free(&g) != contains_subgraph(&g, &h43).is_none() {
                mismatches.push(g.to_graph6());
            }
        }
    }
    let samples = if opts.quick { 10_000 } else { 100_000 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.05..0.6);
        let g = random_graph(n, p, &mut rng)?;
        if is_h43_free(&g) != contains_subgraph(&g, &h43).is_none() {
            mismatches.push(g.to_graph6());
        }
    }
    Ok((
        mismatches.is_empty(),
        format!(
            "{exhaustive} classes with n <= 7 and {samples} random graphs with n <= 16, {} disagreements{}",
            mismatches.len(),
            mismatches.first().map(|g| format!(" (first: {g})")).unwrap_or_default()
        ),
    ))
}

fn catalog_oracle() -> Outcome {
    let catalog = catalog_p2p3_free(7)?;
    let mut required = vec![
        ("P4", make_path(4)?),
        ("C3", make_cycle(3)?),
        ("K4-e", make_complete(4)?.without_edge(0, 1)?),
        ("K4", make_complete(4)?),
    ];
    for t in 1..=6 {
        required.push(("star", make_star(t)?));
    }
    let missing: Vec<String> = required
        .iter()
        .filter(|(_, g)| !catalog.contains(&g.canonical_form()))
        .map(|(name, g)| format!("{name} ({})", g.to_graph6()))
        .collect();
    let dense: Vec<String> = catalog
        .iter()
        .map(|f| f.to_graph())
        .filter(|g| g.size() as isize - g.order() as isize > 2)
        .map(|g| g.to_graph6())
        .collect();
    Ok((
        missing.is_empty() && dense.is_empty(),
        format!(
            "{} members; missing: {:?}; members with e - n > 2: {:?}",
            catalog.len(),
            missing,
            dense
        ),
    ))
}

/// Entries that must pass on the extremal construction.
pub const FIXTURE_ENTRIES: [&str; 12] = [
    audit::EDGE_COUNT_IDENTITY,
    audit::FIRST_EIGEN_IDENTITY,
    audit::SECOND_EIGEN_IDENTITY,
    audit::QUADRATIC_BOUND,
    audit::W_EDGE_BOUND,
    audit::A0_WEIGHT_BOUND,
    audit::REFINED_QUADRATIC_BOUND,
    audit::A_PLUS_NONEMPTY,
    audit::A_PLUS_CONNECTED,
    audit::A_PLUS_IN_CATALOG,
    audit::STAR_FORCES_W_EMPTY,
    audit::W_MIN_DEGREE,
];

/// Audit `S⁻_{(m+4)/2,2}` and list the fixture entries that did not pass,
/// plus a final-structure mismatch if it is not `F′_{m,1}`.
pub fn audit_fixture(m: usize) -> Result<(audit::AuditReport, Vec<String>)> {
    let g = make_s_minus((m + 4) / 2)?;
    let report = audit::audit(&g)?;
    let mut bad: Vec<String> = FIXTURE_ENTRIES
        .iter()
        .filter(|name| report.status(name) != Some(Status::Pass))
        .map(|name| name.to_string())
        .collect();
    if audit::final_structure(&g) != (true, Some(1)) {
        bad.push(audit::FINAL_STRUCTURE.to_string());
    }
    Ok((report, bad))
}

fn audit_fixtures() -> Outcome {
    let mut failures = Vec::new();
    let sizes: Vec<usize> = (38..=60).step_by(2).collect();
    for &m in &sizes {
        let (_, bad) = audit_fixture(m)?;
        if !bad.is_empty() {
            failures.push(format!("m={m}: {}", bad.join(", ")));
        }
    }
    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} sizes, all {} entries and the final structure pass", sizes.len(), FIXTURE_ENTRIES.len())
        } else {
            failures.join("; ")
        },
    ))
}

/// Feasibility, size, isolation and monotonicity of every restart.
pub fn trace_violations(trace: &SearchTrace) -> Result<Vec<String>> {
    let cfg = &trace.config;
    let mut out = Vec::new();
    for t in &trace.restarts {
        let mut last = t.start_rho;
        let mut graphs = vec![t.start_graph6.clone()];
        for mv in &t.moves {
            if !(mv.rho_after > last) {
                out.push(format!("restart {}: rho did not increase", t.restart));
            }
            last = mv.rho_after;
            graphs.push(mv.graph6_after.clone());
        }
        for g6 in graphs {
            let g = crate::graph::parse_graph6(&g6)?;
            if g.size() != cfg.m || g.has_isolated_vertex() || !avoids_all(&g, &cfg.forbidden) {
                out.push(format!("restart {}: infeasible graph {g6}", t.restart));
            }
        }
    }
    Ok(out)
}

fn hill_climber(opts: &VerifyOptions) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, forbidden, target) in [
        (38, vec![Pattern::H43], rho_prime(38)?),
        (9, vec![Pattern::H33, Pattern::H43], odd_bound(9)),
    ] {
        let mut cfg = SearchConfig::new(m, forbidden);
        cfg.workers = opts.workers;
        cfg.rng_seed = opts.seed;
        let trace = hill_climb(&cfg)?;
        let violations = trace_violations(&trace)?;
        let hit = (trace.best_rho - target).abs() <= HIT_TOL;
        ok &= hit && violations.is_empty();
        parts.push(format!(
            "m={m}: best {:.9} vs {:.9}, hit rate {}/{}, {} trace violations",
            trace.best_rho,
            target,
            trace.hits,
            trace.restarts.len(),
            violations.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// One random rotation instance satisfying the hypotheses, if the draw
/// admits one: `(G, G′, ρ(G), ρ(G′))`.
pub fn rotation_instance(rng: &mut ChaCha8Rng) -> Result<Option<(Graph, Graph, f64, f64)>> {
    let m = rng.gen_range(3..=40);
    let g = random_hfree_graph(m, &[], rng.gen())?;
    let spec = spectral_radius_default(&g)?;
    let hub = spec.argmax_vertex();
    let options: Vec<(usize, usize)> = g
        .edges()
        .flat_map(|(a, b)| [(a, b), (b, a)])
        .filter(|&(w, _)| w != hub && !g.has_edge(w, hub))
        .collect();
    if options.is_empty() {
        return Ok(None);
    }
    let (w, v) = options[rng.gen_range(0..options.len())];
    let h = g.without_edge(w, v)?.with_edge(w, hub)?;
    let nested = crate::search::neighborhood_grows(&g, &h, hub);
    let x = &spec.perron;
    let rayleigh = quadratic_form(&h, x) >= quadratic_form(&g, x);
    if !(nested && rayleigh) {
        return Ok(None);
    }
    let after = rho(&h)?;
    Ok(Some((g, h, spec.rho, after)))
}

fn rotation_property(opts: &VerifyOptions) -> Outcome {
    let target = if opts.quick { 200 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut found, mut draws, mut failures) = (0, 0, Vec::new());
    while found < target && draws < 100 * target {
        draws += 1;
        if let Some((g, _, before, after)) = rotation_instance(&mut rng)? {
            found += 1;
            if !(after > before) {
                failures.push(format!("{}: {before} -> {after}", g.to_graph6()));
            }
        }
    }
    Ok((
        found == target && failures.is_empty(),
        format!(
            "{found} instances from {draws} draws, {} without strict increase{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    ))
}
