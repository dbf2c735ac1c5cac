//! Non-induced subgraph containment.
//!
//! The generic matcher backtracks over pattern vertices, mapping each one into
//! the intersection of the host neighborhoods of its already-mapped pattern
//! neighbors. Patterns may be disconnected; components are matched largest
//! first into disjoint host vertex sets. Two specialized detectors cover the
//! patterns used in hot enumeration loops.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::enumerate::graphs_of_order;
use crate::error::{Error, Result};
use crate::families::{make_fan, make_h, make_path, make_star, union};
use crate::graph::{bit, bits, low_mask, parse_graph6, CanonicalForm, Graph, Mask};

/// Largest order accepted by [`catalog_p2p3_free`].
pub const CATALOG_MAX_ORDER: usize = 10;

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Whether every pattern edge lands on a host edge and the map is injective.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let image: BTreeSet<usize> = self.map.iter().copied().collect();
        image.len() == self.map.len()
            && self.map.iter().all(|&v| v < host.order())
            && pattern.edges().all(|(u, v)| host.has_edge(self.map[u], self.map[v]))
    }
}

struct Plan {
    order: Vec<usize>,
    /// For each position, positions of earlier pattern neighbors.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

fn plan(pattern: &Graph) -> Plan {
    let mut comps = pattern.components();
    comps.sort_by_key(|&c| {
        (
            std::cmp::Reverse(c.count_ones()),
            std::cmp::Reverse(pattern.edges_within(c)),
            c.trailing_zeros(),
        )
    });
    let mut order = Vec::with_capacity(pattern.order());
    let mut placed = 0 as Mask;
    for comp in comps {
        let mut remaining = comp;
        while remaining != 0 {
            // Most already-placed neighbors, then highest degree, then lowest index.
            let next = bits(remaining)
                .max_by_key(|&v| {
                    (
                        (pattern.neighbors(v) & placed).count_ones(),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("nonempty");
            order.push(next);
            placed |= bit(next);
            remaining &= !bit(next);
        }
    }
    let mut position = vec![0usize; pattern.order()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            bits(pattern.neighbors(v))
                .map(|u| position[u])
                .filter(|&p| p < i)
                .collect()
        })
        .collect();
    let degree = order.iter().map(|&v| pattern.degree(v)).collect();
    Plan { order, back, degree }
}

/// A witness embedding of `pattern` into `host`, if one exists.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return None;
    }
    if pattern.max_degree() > host.max_degree() {
        return None;
    }
    let plan = plan(pattern);
    let k = plan.order.len();
    // Host vertices admissible per pattern degree.
    let mut by_degree = vec![0 as Mask; pattern.max_degree() + 1];
    for (d, slot) in by_degree.iter_mut().enumerate() {
        *slot = (0..host.order())
            .filter(|&v| host.degree(v) >= d)
            .fold(0 as Mask, |acc, v| acc | bit(v));
    }
    let mut image = vec![0usize; k];
    let mut cands = vec![0 as Mask; k];
    let candidates = |i: usize, image: &[usize], used: Mask| -> Mask {
        let mut c = by_degree[plan.degree[i]] & !used;
        for &p in &plan.back[i] {
            c &= host.neighbors(image[p]);
        }
        c
    };
    let mut used = 0 as Mask;
    let mut i = 0usize;
    cands[0] = candidates(0, &image, used);
    loop {
        if cands[i] == 0 {
            if i == 0 {
                return None;
            }
            i -= 1;
            used &= !bit(image[i]);
            continue;
        }
        let v = cands[i].trailing_zeros() as usize;
        cands[i] &= cands[i] - 1;
        image[i] = v;
        used |= bit(v);
        if i + 1 == k {
            let mut map = vec![0usize; k];
            for (pos, &pv) in plan.order.iter().enumerate() {
                map[pv] = image[pos];
            }
            return Some(Embedding { map });
        }
        i += 1;
        cands[i] = candidates(i, &image, used);
    }
}

/// Whether `g` avoids H(4,3): a triangle and a 4-cycle sharing exactly one vertex.
///
/// For every vertex `v` and triangle `vab`, look for a 4-cycle `v c d e` with
/// `c, e ∈ N(v) \ {a, b}` and `d ∈ N(c) ∩ N(e) \ {v, a, b}`.
pub fn is_h43_free(g: &Graph) -> bool {
    for v in 0..g.order() {
        let nv = g.neighbors(v);
        if nv.count_ones() < 4 {
            continue;
        }
        for a in bits(nv) {
            for b in bits(nv & g.neighbors(a) & !low_mask(a + 1)) {
                let avoid = bit(v) | bit(a) | bit(b);
                let rest = nv & !avoid;
                for c in bits(rest) {
                    let reach = g.neighbors(c) & !avoid;
                    for e in bits(rest & !low_mask(c + 1)) {
                        if reach & g.neighbors(e) != 0 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Whether `g` avoids H(3,3) (two triangles sharing one vertex), i.e. no
/// neighborhood contains two disjoint edges.
pub fn is_h33_free(g: &Graph) -> bool {
    for v in 0..g.order() {
        let nv = g.neighbors(v);
        if nv.count_ones() < 4 {
            continue;
        }
        for a in bits(nv) {
            for b in bits(nv & g.neighbors(a) & !low_mask(a + 1)) {
                let rest = nv & !bit(a) & !bit(b);
                if bits(rest).any(|c| g.neighbors(c) & rest != 0) {
                    return false;
                }
            }
        }
    }
    true
}

fn p2p3() -> &'static Graph {
    static P: OnceLock<Graph> = OnceLock::new();
    P.get_or_init(|| union(&make_path(2).expect("P2"), &make_path(3).expect("P3")).expect("P2 ∪ P3"))
}

/// Whether `g` has no edge vertex-disjoint from a path on three vertices.
pub fn is_p2p3_free(g: &Graph) -> bool {
    contains_subgraph(g, p2p3()).is_none()
}

/// Canonical forms of all connected (P₂ ∪ P₃)-free graphs with at least one
/// edge and order at most `n_max`, sorted by order then form.
pub fn catalog_p2p3_free(n_max: usize) -> Result<Vec<CanonicalForm>> {
    if n_max > CATALOG_MAX_ORDER {
        return Err(Error::Budget(format!(
            "catalog limited to order <= {CATALOG_MAX_ORDER}, got {n_max}"
        )));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        // Connected graphs of order n all arise from connected graphs of order
        // n − 1 (delete a non-cut vertex); freeness is inherited by subgraphs.
        out.extend(graphs_of_order(n, true, &|g: &Graph| is_p2p3_free(g))?);
    }
    Ok(out)
}

/// The catalog at its maximum order, computed once.
pub fn full_catalog() -> &'static BTreeSet<CanonicalForm> {
    static CATALOG: OnceLock<BTreeSet<CanonicalForm>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        catalog_p2p3_free(CATALOG_MAX_ORDER)
            .expect("within budget")
            .into_iter()
            .collect()
    })
}

/// Whether `g` is a star `K_{1,t}`, `t ≥ 1`.
pub fn is_star(g: &Graph) -> bool {
    let n = g.order();
    n >= 2 && g.size() == n - 1 && g.max_degree() == n - 1
}

/// Whether `g` is a member of the (P₂ ∪ P₃)-free catalog: connected, with
/// an edge, and (P₂ ∪ P₃)-free. Orders within the catalog budget are looked
/// up in the enumerated catalog; larger ones use the defining predicate.
pub fn in_catalog(g: &Graph) -> bool {
    if g.order() <= CATALOG_MAX_ORDER {
        g.order() >= 2 && full_catalog().contains(&g.canonical_form())
    } else {
        g.size() > 0 && g.is_connected() && is_p2p3_free(g)
    }
}

/// Catalog members of order 4 other than `P₄`, `K₄ − e`, `K₄` and the star:
/// the candidates for the two members not identified by name.
pub fn unnamed_catalog_members() -> Result<Vec<CanonicalForm>> {
    let named: Vec<CanonicalForm> = [
        make_path(4)?,
        crate::families::make_complete(4)?.without_edge(2, 3)?,
        crate::families::make_complete(4)?,
        make_star(3)?,
    ]
    .iter()
    .map(Graph::canonical_form)
    .collect();
    let mut out: Vec<CanonicalForm> = catalog_p2p3_free(4)?
        .into_iter()
        .filter(|f| f.to_graph().order() == 4 && !named.contains(f))
        .collect();
    out.sort();
    Ok(out)
}

/// A forbidden pattern, with a specialized detector where one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    H43,
    H33,
    F5,
    P2P3,
    Custom(Graph),
}

impl Pattern {
    pub fn graph(&self) -> Graph {
        match self {
            Pattern::H43 => make_h(4, 3).expect("H(4,3)"),
            Pattern::H33 => make_h(3, 3).expect("H(3,3)"),
            Pattern::F5 => make_fan(5).expect("F5"),
            Pattern::P2P3 => p2p3().clone(),
            Pattern::Custom(g) => g.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Pattern::H43 => "h43".into(),
            Pattern::H33 => "h33".into(),
            Pattern::F5 => "f5".into(),
            Pattern::P2P3 => "p2p3".into(),
            Pattern::Custom(g) => g.to_graph6(),
        }
    }

    /// Whether `host` contains this pattern as a (not necessarily induced) subgraph.
    pub fn contained_in(&self, host: &Graph) -> bool {
        match self {
            Pattern::H43 => !is_h43_free(host),
            Pattern::H33 => !is_h33_free(host),
            Pattern::P2P3 => !is_p2p3_free(host),
            other => contains_subgraph(host, &other.graph()).is_some(),
        }
    }

    pub fn witness(&self, host: &Graph) -> Option<Embedding> {
        contains_subgraph(host, &self.graph())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// `h43`, `h33`, `f5`, `p2p3`, or any graph6 string.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h43" | "h(4,3)" => Ok(Pattern::H43),
            "h33" | "h(3,3)" => Ok(Pattern::H33),
            "f5" => Ok(Pattern::F5),
            "p2p3" => Ok(Pattern::P2P3),
            _ => parse_graph6(s).map(Pattern::Custom),
        }
    }
}

/// Parse a comma-separated pattern list; empty input gives no patterns.
pub fn parse_patterns(s: &str) -> Result<Vec<Pattern>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

/// Whether `g` avoids every pattern.
pub fn avoids_all(g: &Graph, patterns: &[Pattern]) -> bool {
    patterns.iter().all(|p| !p.contained_in(g))
}
