//! Exhaustive isomorph-free generation of graphs with a fixed number of
//! edges, with forbidden-pattern pruning and spectral-radius maximization.

mod augment;
mod checkpoint;
mod record;

pub use augment::{accept_child, children, parent_by_deleting, removable_edges};
pub use checkpoint::{default_workers, run, run_to_jsonl, Checkpoint, RunOptions, RunSummary};
pub use record::{reference_bound, standard_flag_patterns, RunRecord, EXTREMAL_TOL};

use std::collections::BTreeSet;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::families::union;
use crate::graph::{parse_graph6, CanonicalForm, Graph, Mask};
use crate::spectral::{same_spectral_radius, spectral_radius_default};
use crate::subgraph::{avoids_all, Pattern};

/// Largest edge count enumerated exhaustively among connected graphs.
pub const MAX_CONNECTED_SIZE: usize = 14;
/// Largest edge count enumerated when disconnected graphs are admitted.
pub const MAX_GENERAL_SIZE: usize = 8;
/// Largest order accepted by [`graphs_of_order`].
pub const MAX_VERTEX_ORDER: usize = 10;

/// Frontier label used when the task is not split by prefix.
const WHOLE: &str = "*";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub m: usize,
    pub filters: Vec<Pattern>,
    /// Only connected graphs; otherwise every graph without isolated vertices.
    pub restrict_connected: bool,
}

impl EnumerationTask {
    pub fn new(m: usize, filters: Vec<Pattern>) -> Self {
        EnumerationTask {
            m,
            filters,
            restrict_connected: true,
        }
    }

    /// `[n_min, m + 1]`: `n_min` is the least `n` with `n(n−1)/2 ≥ m`.
    pub fn order_range(&self) -> (usize, usize) {
        let mut n = 1;
        while n * (n - 1) / 2 < self.m {
            n += 1;
        }
        (n, self.m + 1)
    }

    /// Identity of the task, stored in checkpoints.
    pub fn fingerprint(&self) -> String {
        let filters: Vec<String> = self.filters.iter().map(Pattern::name).collect();
        format!(
            "m={};filters=[{}];connected={}",
            self.m,
            filters.join(","),
            self.restrict_connected
        )
    }

    fn check_budget(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Domain("edge count must be at least 1".into()));
        }
        let cap = if self.restrict_connected {
            MAX_CONNECTED_SIZE
        } else {
            MAX_GENERAL_SIZE
        };
        if self.m > cap {
            return Err(Error::Budget(format!(
                "exhaustive enumeration limited to m <= {cap}, got {}; use the heuristic search",
                self.m
            )));
        }
        Ok(())
    }

    /// Depth at which the tree is cut into independent prefixes.
    fn split_depth(&self) -> usize {
        self.m.saturating_sub(4).clamp(1, 8)
    }
}

/// Prefix labels for `task`, in commit order.
pub(crate) fn frontier(task: &EnumerationTask) -> Result<Vec<String>> {
    task.check_budget()?;
    if !task.restrict_connected {
        return Ok(vec![WHOLE.to_string()]);
    }
    Ok(augment::level(task.split_depth(), &task.filters)
        .iter()
        .map(Graph::to_graph6)
        .collect())
}

/// Every class below one prefix.
pub(crate) fn expand_prefix(task: &EnumerationTask, prefix: &str, emit: &mut dyn FnMut(&Graph)) -> Result<()> {
    if prefix == WHOLE {
        return enumerate_without_isolated(task, emit);
    }
    let g = parse_graph6(prefix)?;
    augment::expand(&g, task.m, &task.filters, emit);
    Ok(())
}

/// Invoke `consumer` once per isomorphism class admitted by `task`
/// (canonically labeled) and return the number of classes.
pub fn enumerate_connected(task: &EnumerationTask, consumer: &mut dyn FnMut(&Graph)) -> Result<u64> {
    let mut count = 0u64;
    for prefix in frontier(task)? {
        expand_prefix(task, &prefix, &mut |g| {
            count += 1;
            consumer(g);
        })?;
    }
    Ok(count)
}

/// All classes admitted by `task`, computed on `workers` threads, in the
/// same order as the serial enumeration.
pub fn enumerate_parallel(task: &EnumerationTask, workers: usize) -> Result<Vec<Graph>> {
    let mut ck = Checkpoint::fresh(task)?;
    let mut out = Vec::new();
    let opts = RunOptions {
        workers,
        ..RunOptions::default()
    };
    run(task, &mut ck, &opts, |g| Some(g.clone()), |_, items, _| {
        out.extend(items);
        Ok(())
    })?;
    Ok(out)
}

/// Graphs whose components each carry an edge: multisets of connected
/// classes with sizes summing to `m`.
fn enumerate_without_isolated(task: &EnumerationTask, emit: &mut dyn FnMut(&Graph)) -> Result<()> {
    let m = task.m;
    // classes[k]: connected classes with k edges avoiding the filters. A
    // component containing a pattern puts the pattern in the whole graph.
    let mut classes: Vec<Vec<Graph>> = vec![Vec::new(); m + 1];
    for (k, slot) in classes.iter_mut().enumerate().skip(1) {
        *slot = augment::level(k, &task.filters);
    }
    let mut parts: Vec<(usize, usize)> = Vec::new();
    fn rec(
        remaining: usize,
        min: (usize, usize),
        classes: &[Vec<Graph>],
        parts: &mut Vec<(usize, usize)>,
        filters: &[Pattern],
        emit: &mut dyn FnMut(&Graph),
    ) -> Result<()> {
        if remaining == 0 {
            let mut g = classes[parts[0].0][parts[0].1].clone();
            for &(k, i) in &parts[1..] {
                g = union(&g, &classes[k][i])?;
            }
            if avoids_all(&g, filters) {
                emit(&g.canonical_form().to_graph());
            }
            return Ok(());
        }
        for k in min.0..=remaining {
            let start = if k == min.0 { min.1 } else { 0 };
            for i in start..classes[k].len() {
                parts.push((k, i));
                rec(remaining - k, (k, i), classes, parts, filters, emit)?;
                parts.pop();
            }
        }
        Ok(())
    }
    rec(m, (1, 0), &classes, &mut parts, &task.filters, emit)
}

/// Canonical forms of all graphs of order `n` (connected ones only when
/// `connected_only`) for which `keep` holds, sorted. `keep` must be
/// inherited by induced subgraphs on one vertex fewer (any vertex, or any
/// non-cut vertex in the connected case).
pub fn graphs_of_order(n: usize, connected_only: bool, keep: &(dyn Fn(&Graph) -> bool + Sync)) -> Result<Vec<CanonicalForm>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_VERTEX_ORDER {
        return Err(Error::Budget(format!(
            "vertex enumeration limited to n <= {MAX_VERTEX_ORDER}, got {n}"
        )));
    }
    let k1 = Graph::empty(1)?;
    let mut current: BTreeSet<CanonicalForm> = BTreeSet::new();
    if keep(&k1) {
        current.insert(k1.canonical_form());
    }
    for order in 1..n {
        let next = Mutex::new(BTreeSet::new());
        let graphs: Vec<Graph> = current.iter().map(CanonicalForm::to_graph).collect();
        use rayon::prelude::*;
        graphs.par_iter().for_each(|g| {
            let mut local = BTreeSet::new();
            let first = u64::from(connected_only);
            for subset in first..(1u64 << order) {
                let mut h = g.with_new_vertex().expect("order within capacity");
                for v in crate::graph::bits(Mask::from(subset)) {
                    h = h.with_edge(v, order).expect("valid pair");
                }
                if keep(&h) {
                    local.insert(h.canonical_form());
                }
            }
            next.lock().expect("no poisoned lock").extend(local);
        });
        current = next.into_inner().expect("no poisoned lock");
    }
    Ok(current.into_iter().collect())
}

/// Outcome of an exhaustive maximization of ρ.
#[derive(Clone, Debug)]
pub struct ExtremalResult {
    pub graph: Graph,
    pub rho: f64,
    /// No other class attains the maximum (within `1e−9`, refined exactly).
    pub unique: bool,
    /// Classes enumerated.
    pub count: u64,
    /// Classes within `1e−9` of the maximum, including the maximizer.
    pub near_ties: usize,
}

/// Maximize ρ over connected graphs with `m` edges avoiding `forbidden`.
pub fn extremal_search(m: usize, forbidden: &[Pattern]) -> Result<ExtremalResult> {
    extremal_search_with(&EnumerationTask::new(m, forbidden.to_vec()), default_workers())
}

pub fn extremal_search_with(task: &EnumerationTask, workers: usize) -> Result<ExtremalResult> {
    let mut ck = Checkpoint::fresh(task)?;
    let opts = RunOptions {
        workers,
        ..RunOptions::default()
    };
    // Candidates within tolerance of the running maximum, in commit order.
    let mut near: Vec<(Graph, f64)> = Vec::new();
    let mut max = f64::NEG_INFINITY;
    let summary = run(
        task,
        &mut ck,
        &opts,
        |g| spectral_radius_default(g).ok().map(|r| (g.clone(), r.rho)),
        |_, items, _| {
            for (g, rho) in items {
                if rho >= max - EXTREMAL_TOL {
                    if rho > max {
                        max = rho;
                        near.retain(|(_, r)| *r >= max - EXTREMAL_TOL);
                    }
                    near.push((g, rho));
                }
            }
            Ok(())
        },
    )?;
    if near.is_empty() {
        return Err(Error::EmptySearchSpace);
    }
    let best_pos = near
        .iter()
        .enumerate()
        .fold(0, |b, (i, (_, r))| if *r > near[b].1 { i } else { b });
    let (graph, rho) = near[best_pos].clone();
    let mut unique = true;
    for (i, (other, _)) in near.iter().enumerate() {
        if i != best_pos && same_spectral_radius(&graph, other, rho)? {
            unique = false;
            break;
        }
    }
    Ok(ExtremalResult {
        graph,
        rho,
        unique,
        count: summary.emitted,
        near_ties: near.len(),
    })
}
