//! Canonical augmentation by edges.
//!
//! A connected graph with `m ≥ 2` edges has a parent obtained by deleting one
//! *removable* edge: either a non-bridge, or a pendant edge together with its
//! leaf. Among the removable edges one is designated canonically; a child
//! produced by adding edge `e` is kept only when `e` lies in the same
//! automorphism orbit as the designated edge. Each class is therefore
//! reached from exactly one parent class, and siblings are deduplicated by
//! canonical form.

use std::collections::HashSet;

use crate::graph::{bit, bits, canonical_labeling, Graph, MAX_ORDER};
use crate::subgraph::{avoids_all, Pattern};

/// Cheap, labeling-invariant key used to shortlist the designated edge.
/// Larger is preferred; pendant edges rank below every non-bridge so that
/// trees and tree-like graphs grow leaves last.
fn edge_key(g: &Graph, u: usize, v: usize) -> (bool, usize, usize, u32) {
    let (du, dv) = (g.degree(u), g.degree(v));
    let common = (g.neighbors(u) & g.neighbors(v)).count_ones();
    (du > 1 && dv > 1, du.min(dv), du.max(dv), common)
}

fn is_bridge(g: &Graph, u: usize, v: usize) -> bool {
    // Removing uv disconnects iff v is no longer reachable from u.
    let mut seen = bit(u);
    let mut frontier = bit(u);
    while frontier != 0 {
        let mut next = 0;
        for w in bits(frontier) {
            let mut nb = g.neighbors(w);
            if w == u {
                nb &= !bit(v);
            }
            next |= nb;
        }
        next &= !seen;
        if next & bit(v) != 0 {
            return false;
        }
        seen |= next;
        frontier = next;
    }
    true
}

fn is_pendant(g: &Graph, u: usize, v: usize) -> bool {
    g.degree(u) == 1 || g.degree(v) == 1
}

/// Edges whose deletion leaves a connected graph with one edge fewer
/// (dropping a leaf together with its pendant edge).
pub fn removable_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| is_pendant(g, u, v) || !is_bridge(g, u, v))
        .collect()
}

/// The parent reached by deleting removable edge `uv`.
pub fn parent_by_deleting(g: &Graph, u: usize, v: usize) -> Graph {
    let h = g.without_edge(u, v).expect("edge exists");
    // A pendant edge takes its leaf with it; K2 keeps one vertex.
    let leaf = if g.degree(v) == 1 && g.order() > 1 {
        Some(v)
    } else if g.degree(u) == 1 {
        Some(u)
    } else {
        None
    };
    match leaf {
        Some(l) if h.order() > 1 => h.without_vertex(l).expect("vertex exists"),
        _ => h,
    }
}

/// Whether the child `c`, obtained by adding edge `(a, b)` to its parent,
/// passes the canonical-parent test. Returns the canonical labeling of `c`
/// on success so callers can reuse it.
pub fn accept_child(c: &Graph, a: usize, b: usize) -> Option<Vec<usize>> {
    let removable = removable_edges(c);
    let best_key = removable
        .iter()
        .map(|&(u, v)| edge_key(c, u, v))
        .max()
        .expect("a child has at least one removable edge");
    if edge_key(c, a, b) != best_key {
        return None;
    }
    let labels = canonical_labeling(c);
    let shortlist: Vec<(usize, usize)> = removable
        .into_iter()
        .filter(|&(u, v)| edge_key(c, u, v) == best_key)
        .collect();
    if shortlist.len() == 1 {
        return Some(labels);
    }
    let label_pair = |(u, v): (usize, usize)| {
        let (x, y) = (labels[u], labels[v]);
        (x.max(y), x.min(y))
    };
    let star = *shortlist
        .iter()
        .max_by_key(|&&e| label_pair(e))
        .expect("shortlist is nonempty");
    let (a, b) = (a.min(b), a.max(b));
    if star == (a, b) {
        return Some(labels);
    }
    // Same orbit iff the two deletions give isomorphic parents.
    let via_added = parent_by_deleting(c, a, b).canonical_form();
    let via_star = parent_by_deleting(c, star.0, star.1).canonical_form();
    (via_added == via_star).then_some(labels)
}

/// Canonical children of `g`: one representative (canonically labeled) per
/// isomorphism class of accepted one-edge extensions avoiding `filters`.
pub fn children(g: &Graph, filters: &[Pattern]) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut consider = |c: Graph, a: usize, b: usize| {
        if !avoids_all(&c, filters) {
            return;
        }
        if let Some(labels) = accept_child(&c, a, b) {
            let canon = c.permuted(&labels);
            if seen.insert(canon.rows().to_vec()) {
                out.push(canon);
            }
        }
    };
    for (u, v) in g.non_edges() {
        consider(g.with_edge(u, v).expect("valid non-edge"), u, v);
    }
    if g.order() < MAX_ORDER {
        let n = g.order();
        for u in 0..n {
            let c = g
                .with_new_vertex()
                .and_then(|h| h.with_edge(u, n))
                .expect("order below capacity");
            consider(c, u, n);
        }
    }
    out
}

/// The root of the augmentation tree: `K2`.
pub fn root() -> Graph {
    Graph::from_edges(2, &[(0, 1)]).expect("K2")
}

/// Depth-first expansion of `g` down to `m` edges; `emit` receives every
/// accepted graph with exactly `m` edges.
pub fn expand(g: &Graph, m: usize, filters: &[Pattern], emit: &mut dyn FnMut(&Graph)) {
    if g.size() == m {
        emit(g);
        return;
    }
    for c in children(g, filters) {
        expand(&c, m, filters, emit);
    }
}

/// All accepted graphs with exactly `depth` edges, in deterministic order.
pub fn level(depth: usize, filters: &[Pattern]) -> Vec<Graph> {
    let mut out = Vec::new();
    let r = root();
    if depth == 0 || !avoids_all(&r, filters) {
        return out;
    }
    expand(&r, depth, filters, &mut |g| out.push(g.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn bridges_and_pendants() {
        let p4 = make_path(4).unwrap();
        assert_eq!(removable_edges(&p4), vec![(0, 1), (2, 3)]);
        let c4 = make_cycle(4).unwrap();
        assert_eq!(removable_edges(&c4).len(), 4);
        let paw = make_complete(3).unwrap().with_new_vertex().unwrap().with_edge(0, 3).unwrap();
        assert_eq!(removable_edges(&paw).len(), 4);
    }

    #[test]
    fn parent_of_pendant_drops_leaf() {
        let p3 = make_path(3).unwrap();
        let parent = parent_by_deleting(&p3, 1, 2);
        assert_eq!(parent.order(), 2);
        assert_eq!(parent.size(), 1);
        let k2 = root();
        let parent = parent_by_deleting(&k2, 0, 1);
        assert_eq!((parent.order(), parent.size()), (1, 0));
    }

    #[test]
    fn small_levels() {
        let counts: Vec<usize> = (1..=7).map(|m| level(m, &[]).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 12, 30, 79]);
    }
}
