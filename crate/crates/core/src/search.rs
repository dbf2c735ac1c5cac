//! Randomized hill climbing for large spectral radius under forbidden
//! subgraphs, driven by edge rotations towards the Perron-maximal vertex.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::reference_bound;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};
use crate::spectral::{quadratic_form, spectral_radius_default, SpectralResult};
use crate::subgraph::{avoids_all, Pattern};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;
pub const DEFAULT_RESTARTS: usize = 50;
pub const DEFAULT_MOVE_BUDGET: usize = 10_000;
/// Minimal spectral gain for a move to count as an improvement.
pub const MIN_GAIN: f64 = 1e-12;
/// Distance to the reference value counted as a hit.
pub const HIT_TOL: f64 = 1e-6;

/// Rotate edge `wv` to the hub: returns `G − wv + wu*`, where `u*` is the
/// Perron-maximal vertex of `g` (lowest index among near-ties).
pub fn rotate_to_hub(g: &Graph, w: usize, v: usize) -> Result<Graph> {
    let hub = spectral_radius_default(g)?.argmax_vertex();
    rotate_with_hub(g, hub, w, v)
}

fn rotate_with_hub(g: &Graph, hub: usize, w: usize, v: usize) -> Result<Graph> {
    if w >= g.order() || v >= g.order() || !g.has_edge(w, v) {
        return Err(Error::Domain(format!("{w}{v} is not an edge")));
    }
    if w == hub || g.has_edge(w, hub) {
        return Err(Error::Domain(format!("vertex {w} is already the hub {hub} or adjacent to it")));
    }
    g.without_edge(w, v)?.with_edge(w, hub)
}

/// Random connected graph with `m` edges avoiding `forbidden`, grown from
/// `K₂` by random insertions, each rejected if it creates a pattern.
///
/// Each draw picks a pendant probability in `[0.2, 0.8]`; an insertion is a
/// pendant edge to a new vertex with that probability, otherwise an edge
/// between two existing non-adjacent vertices.
pub fn random_hfree_graph(m: usize, forbidden: &[Pattern], seed: u64) -> Result<Graph> {
    if m == 0 {
        return Err(Error::Domain("size must be at least 1".into()));
    }
    if m >= MAX_ORDER {
        return Err(Error::Capacity(m + 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k2 = Graph::from_edges(2, &[(0, 1)])?;
    if !avoids_all(&k2, forbidden) {
        return Err(Error::EmptySearchSpace);
    }
    const TRIES: usize = 20;
    'attempt: for _ in 0..TRIES {
        let pendant_p: f64 = rng.gen_range(0.2..=0.8);
        let mut g = k2.clone();
        let mut rejections = 0;
        while g.size() < m {
            let non_edges: Vec<(usize, usize)> = g.non_edges().collect();
            let pendant = non_edges.is_empty() || rng.gen_bool(pendant_p);
            let candidate = if pendant {
                let u = rng.gen_range(0..g.order());
                let n = g.order();
                g.with_new_vertex()?.with_edge(u, n)?
            } else {
                let &(a, b) = non_edges.choose(&mut rng).expect("nonempty");
                g.with_edge(a, b)?
            };
            if avoids_all(&candidate, forbidden) {
                g = candidate;
            } else {
                rejections += 1;
                if rejections > 50 * m {
                    continue 'attempt;
                }
            }
        }
        return Ok(g);
    }
    Err(Error::Budget(format!(
        "no {m}-edge graph avoiding the patterns after {TRIES} attempts"
    )))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub m: usize,
    #[serde(with = "pattern_names")]
    pub forbidden: Vec<Pattern>,
    pub restarts: usize,
    pub move_budget: usize,
    pub rng_seed: u64,
    /// Threads for running restarts; the result does not depend on it.
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(m: usize, forbidden: Vec<Pattern>) -> Self {
        SearchConfig {
            m,
            forbidden,
            restarts: DEFAULT_RESTARTS,
            move_budget: DEFAULT_MOVE_BUDGET,
            rng_seed: DEFAULT_SEED,
            workers: crate::enumerate::default_workers(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.move_budget == 0 || self.workers == 0 {
            return Err(Error::Domain("restarts, move budget and workers must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(Error::Domain("size must be at least 1".into()));
        }
        Ok(())
    }
}

mod pattern_names {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::subgraph::Pattern;

    pub fn serialize<S: Serializer>(p: &[Pattern], s: S) -> Result<S::Ok, S::Error> {
        p.iter().map(Pattern::name).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Pattern>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names
            .iter()
            .map(|n| n.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// `G − wv + wu*`.
    Rotate,
    /// `G − e + f` for an arbitrary edge `e` and non-edge `f`.
    Relocate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub removed: (usize, usize),
    pub added: (usize, usize),
    /// Vertex left isolated by the move and deleted (labels above it shift down).
    pub dropped_vertex: Option<usize>,
    pub rho_after: f64,
    pub graph6_after: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    LocalOptimum,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub start_graph6: String,
    pub start_rho: f64,
    pub moves: Vec<Move>,
    pub final_graph6: String,
    pub final_rho: f64,
    pub outcome: Outcome,
}

/// Placeholder for a non-monotone acceptance schedule; always absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annealing {
    pub initial_temperature: f64,
    pub cooling: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub config: SearchConfig,
    pub restarts: Vec<RestartTrace>,
    pub best_graph6: String,
    pub best_rho: f64,
    pub best_restart: usize,
    /// Reference extremal value for this size, when one is known.
    pub reference: Option<f64>,
    /// Restarts ending within [`HIT_TOL`] of `reference`.
    pub hits: usize,
    pub annealing: Option<Annealing>,
}

impl SearchTrace {
    pub fn best_graph(&self) -> Result<Graph> {
        crate::graph::parse_graph6(&self.best_graph6)
    }
}

/// Multi-restart first-improvement hill climbing.
///
/// From each random start, moves are proposed in random order (all rotations
/// towards the hub first, then all relocations) and the first one is taken
/// that keeps the graph connected and pattern-free, does not decrease the
/// Rayleigh quotient of the current Perron vector `x`, and raises ρ by more
/// than [`MIN_GAIN`]. A vertex left isolated by a move is deleted, and the
/// quotient is then taken over `x` restricted to the surviving vertices.
pub fn hill_climb(cfg: &SearchConfig) -> Result<SearchTrace> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let restarts: Vec<RestartTrace> = pool.install(|| {
        (0..cfg.restarts)
            .into_par_iter()
            .map(|r| climb_once(cfg, r))
            .collect::<Result<Vec<_>>>()
    })?;
    let (best_restart, best) = restarts
        .iter()
        .enumerate()
        .fold(None::<(usize, &RestartTrace)>, |acc, (i, t)| match acc {
            Some((_, b)) if b.final_rho >= t.final_rho => acc,
            _ => Some((i, t)),
        })
        .expect("at least one restart");
    let reference = reference_bound(cfg.m);
    let hits = reference.map_or(0, |b| {
        restarts.iter().filter(|t| (t.final_rho - b).abs() <= HIT_TOL).count()
    });
    Ok(SearchTrace {
        config: cfg.clone(),
        best_graph6: best.final_graph6.clone(),
        best_rho: best.final_rho,
        best_restart,
        reference,
        hits,
        annealing: None,
        restarts,
    })
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn climb_once(cfg: &SearchConfig, restart: usize) -> Result<RestartTrace> {
    let mut rng = restart_rng(cfg.rng_seed, restart);
    let mut g = random_hfree_graph(cfg.m, &cfg.forbidden, rng.gen())?;
    let mut spec = spectral_radius_default(&g)?;
    let start_graph6 = g.to_graph6();
    let start_rho = spec.rho;
    let mut moves = Vec::new();
    let mut outcome = Outcome::LocalOptimum;
    loop {
        if moves.len() >= cfg.move_budget {
            outcome = Outcome::BudgetExhausted;
            break;
        }
        match improve(&g, &spec, &cfg.forbidden, &mut rng)? {
            Some((next, next_spec, mv)) => {
                moves.push(mv);
                g = next;
                spec = next_spec;
            }
            None => break,
        }
    }
    Ok(RestartTrace {
        restart,
        start_graph6,
        start_rho,
        moves,
        final_graph6: g.to_graph6(),
        final_rho: spec.rho,
        outcome,
    })
}

/// Apply `−(a,b) +(c,d)` and delete a vertex left isolated.
fn apply(g: &Graph, removed: (usize, usize), added: (usize, usize)) -> Result<(Graph, Option<usize>)> {
    let h = g.without_edge(removed.0, removed.1)?.with_edge(added.0, added.1)?;
    for v in [removed.0, removed.1] {
        if h.degree(v) == 0 {
            return Ok((h.without_vertex(v)?, Some(v)));
        }
    }
    Ok((h, None))
}

type Improvement = (Graph, SpectralResult, Move);

fn improve(g: &Graph, spec: &SpectralResult, forbidden: &[Pattern], rng: &mut ChaCha8Rng) -> Result<Option<Improvement>> {
    let x = &spec.perron;
    let hub = spec.argmax_vertex();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let quad = quadratic_form(g, x);
    let norm: f64 = x.iter().map(|v| v * v).sum();

    let mut rotations: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for &(a, b) in &edges {
        for (w, v) in [(a, b), (b, a)] {
            if w != hub && !g.has_edge(w, hub) {
                rotations.push(((w, v), (w.min(hub), w.max(hub))));
            }
        }
    }
    rotations.shuffle(rng);
    let non_edges: Vec<(usize, usize)> = g.non_edges().collect();
    let mut relocations: Vec<((usize, usize), (usize, usize))> = edges
        .iter()
        .flat_map(|&e| non_edges.iter().map(move |&f| (e, f)))
        .collect();
    relocations.shuffle(rng);

    let candidates = rotations
        .into_iter()
        .map(|p| (MoveKind::Rotate, p))
        .chain(relocations.into_iter().map(|p| (MoveKind::Relocate, p)));
    for (kind, (removed, added)) in candidates {
        let (h, dropped) = apply(g, removed, added)?;
        if !rayleigh_gate(quad, norm, x, removed, added, dropped) {
            continue;
        }
        if !h.is_connected() || !avoids_all(&h, forbidden) {
            continue;
        }
        let next = spectral_radius_default(&h)?;
        if next.rho > spec.rho + MIN_GAIN {
            let mv = Move {
                kind,
                removed,
                added,
                dropped_vertex: dropped,
                rho_after: next.rho,
                graph6_after: h.to_graph6(),
            };
            return Ok(Some((h, next, mv)));
        }
    }
    Ok(None)
}

/// Whether the Rayleigh quotient of the current Perron vector `x` (restricted
/// to the surviving vertices) does not drop under the move. `quad` and
/// `norm` are `xᵀAx` and `xᵀx` for the current graph.
fn rayleigh_gate(
    quad: f64,
    norm: f64,
    x: &[f64],
    removed: (usize, usize),
    added: (usize, usize),
    dropped: Option<usize>,
) -> bool {
    let quad2 = quad + 2.0 * (x[added.0] * x[added.1] - x[removed.0] * x[removed.1]);
    let norm2 = norm - dropped.map_or(0.0, |v| x[v] * x[v]);
    // quad2 / norm2 ≥ quad / norm, cross-multiplied (both norms positive).
    quad2 * norm >= quad * norm2
}

/// Whether `N_G(u) ⊊ N_{G′}(u)` on a common vertex set.
pub fn neighborhood_grows(g: &Graph, g2: &Graph, u: usize) -> bool {
    let (a, b) = (g.neighbors(u), g2.neighbors(u));
    a & !b == 0 && b & !a != 0 && bit(u) & b == 0
}
