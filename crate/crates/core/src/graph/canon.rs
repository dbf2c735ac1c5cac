//! Canonical labeling by individualization and refinement.
//!
//! The search tree branches on the first non-singleton cell of an equitable
//! ordered partition; each leaf yields a relabelled adjacency matrix and the
//! lexicographically largest one is the canonical form. Automorphisms are
//! recovered whenever two leaves produce the same matrix and are used to skip
//! children lying in an already explored orbit of the prefix stabilizer.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{bit, bits, write_graph6, Graph, Mask};

const MAX_STORED_AUTOMORPHISMS: usize = 256;

/// Byte string equal for two graphs iff they are isomorphic.
///
/// The bytes are the graph6 encoding of the canonically relabelled graph, so
/// a form can always be turned back into a representative graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Representative graph carrying the canonical labeling.
    pub fn to_graph(&self) -> Graph {
        super::parse_graph6(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let perm = canonical_labeling(g);
    CanonicalForm(write_graph6(&g.permuted(&perm)))
}

/// Permutation `perm` with `perm[v]` the canonical label of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![0];
    }
    let mut search = Search {
        g,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    // Initial partition: cells by degree, ascending.
    let mut cells = Vec::new();
    let mut by_degree: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut current = 0 as Mask;
    let mut current_deg = usize::MAX;
    for (d, v) in by_degree {
        if d != current_deg && current != 0 {
            cells.push(current);
            current = 0;
        }
        current_deg = d;
        current |= bit(v);
    }
    cells.push(current);
    let mut prefix = Vec::with_capacity(n);
    search.descend(cells, &mut prefix);
    search.best.expect("search visits at least one leaf").perm
}

struct Leaf {
    cert: Vec<Mask>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<Leaf>,
    first: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Explore the subtree below `prefix`. Returns `Some(d)` when an
    /// automorphism shows that everything below depth `d` on the current path
    /// is equivalent to an explored subtree, so the search resumes there.
    fn descend(&mut self, mut cells: Vec<Mask>, prefix: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut cells);
        if cells.len() == self.g.order() {
            return self.leaf(&cells, prefix);
        }
        let target = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored: Vec<usize> = Vec::new();
        for v in bits(cells[target]) {
            if !explored.is_empty() && self.same_orbit(prefix, v, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cells[target] & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            let jump = self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
            if let Some(d) = jump {
                if d < prefix.len() {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Mask], prefix: &[usize]) -> Option<usize> {
        let n = self.g.order();
        let mut perm = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = i;
        }
        let cert = self.g.permuted(&perm).rows().to_vec();
        let leaf = Leaf {
            cert,
            perm,
            path: prefix.to_vec(),
        };
        let Some(best) = &self.best else {
            self.first = Some(Leaf {
                cert: leaf.cert.clone(),
                perm: leaf.perm.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        let mut found = None;
        if let Some(first) = self.first.as_ref().filter(|f| f.cert == leaf.cert) {
            found = Some((automorphism(&first.perm, &leaf.perm), common_prefix(&first.path, prefix)));
        } else if leaf.cert == best.cert {
            found = Some((automorphism(&best.perm, &leaf.perm), common_prefix(&best.path, prefix)));
        }
        if leaf.cert > best.cert {
            self.best = Some(leaf);
        }
        let (auto, depth) = found?;
        self.store(auto);
        Some(depth)
    }

    fn store(&mut self, auto: Vec<usize>) {
        let identity = auto.iter().enumerate().all(|(i, &j)| i == j);
        if !identity && self.autos.len() < MAX_STORED_AUTOMORPHISMS {
            self.autos.push(auto);
        }
    }

    /// Whether `v` shares an orbit with an explored vertex under the group
    /// generated by stored automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.autos {
            if prefix.iter().any(|&p| auto[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in auto.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}

/// Automorphism mapping `v` to the vertex that `b` labels like `a` labels `v`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut b_inv = vec![0usize; b.len()];
    for (v, &label) in b.iter().enumerate() {
        b_inv[label] = v;
    }
    a.iter().map(|&label| b_inv[label]).collect()
}

/// Refine an ordered partition to the coarsest equitable refinement.
///
/// Each round splits every cell by the vector of neighbor counts into all
/// current cells; groups are ordered by that vector, so the result depends
/// only on the isomorphism type of (graph, partition).
fn refine(g: &Graph, cells: &mut Vec<Mask>) {
    let n = g.order();
    let mut keyed: Vec<(Vec<u8>, usize)> = Vec::with_capacity(n);
    loop {
        let mut next: Vec<Mask> = Vec::with_capacity(n);
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            keyed.clear();
            for v in bits(cell) {
                let row = g.neighbors(v);
                let key = cells.iter().map(|&c| (row & c).count_ones() as u8).collect();
                keyed.push((key, v));
            }
            keyed.sort_unstable();
            let mut group = 0 as Mask;
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next.push(group);
                    group = 0;
                }
                group |= bit(keyed[i].1);
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return;
        }
        *cells = next;
    }
}
