//! Compact immutable simple graphs on at most 128 vertices.
//!
//! Every neighborhood is a single `u128` bitset, so adjacency tests are one
//! mask and neighborhood intersections are one `&`.

mod canon;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use graph6::{parse_graph6, write_graph6};

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 128;

/// Vertex-set bitset; bit `v` stands for vertex `v`.
pub type Mask = u128;

#[inline]
pub(crate) const fn bit(v: usize) -> Mask {
    1 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn low_mask(n: usize) -> Mask {
    if n >= Mask::BITS as usize {
        Mask::MAX
    } else {
        ((1 as Mask) << n) - 1
    }
}

/// Iterate over the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Simple undirected graph with vertex set `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Mask>,
    m: usize,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_ORDER {
            return Err(Error::Capacity(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            m: 0,
        })
    }

    /// Build a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if g.adj[u] & bit(v) == 0 {
                g.adj[u] |= bit(v);
                g.adj[v] |= bit(u);
                g.m += 1;
            }
        }
        Ok(g)
    }

    /// Build from adjacency rows. Rows must already be symmetric and loop-free;
    /// this is checked.
    pub fn from_adjacency(adj: Vec<Mask>) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_ORDER {
            return Err(Error::Capacity(n));
        }
        let mask = low_mask(n);
        let mut degree_sum = 0usize;
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: 63 - (row & !mask).leading_zeros() as usize,
                    order: n,
                });
            }
            if row & bit(v) != 0 {
                return Err(Error::Loop(v));
            }
            for u in bits(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(Error::Domain(format!("adjacency not symmetric at ({v},{u})")));
                }
            }
            degree_sum += row.count_ones() as usize;
        }
        Ok(Graph {
            n,
            adj,
            m: degree_sum / 2,
        })
    }

    // Rows are trusted; used on hot paths after local edits.
    pub(crate) fn from_rows_unchecked(adj: Vec<Mask>) -> Self {
        let m = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        Graph { n: adj.len(), adj, m }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn rows(&self) -> &[Mask] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> Mask {
        low_mask(self.n)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.contains(&0)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let all = self.vertex_mask();
        (0..self.n).flat_map(move |u| {
            bits(all & !self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v))
        })
    }

    /// Vertices reachable from `start` (as a mask).
    pub fn component_of(&self, start: usize) -> Mask {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Vertex masks of the connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<Mask> {
        let mut rest = self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    /// Number of edges with both ends in `mask`.
    pub fn edges_within(&self, mask: Mask) -> usize {
        bits(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint masks).
    pub fn edges_between(&self, a: Mask, b: Mask) -> usize {
        bits(a).map(|v| (self.adj[v] & b).count_ones() as usize).sum()
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|(u, v)| (self.adj[u] & self.adj[v] & !low_mask(v + 1)).count_ones() as usize)
            .sum()
    }

    /// Subgraph induced by `mask`, relabelled in increasing vertex order.
    pub fn induced(&self, mask: Mask) -> Result<Graph> {
        let verts: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        if verts.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let rows = verts
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0 as Mask, |acc, u| acc | bit(pos[u])))
            .collect();
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Relabel so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut rows = vec![0 as Mask; self.n];
        for v in 0..self.n {
            rows[perm[v]] = bits(self.adj[v]).fold(0 as Mask, |acc, u| acc | bit(perm[u]));
        }
        Graph::from_rows_unchecked(rows)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
            g.m += 1;
        }
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u] &= !bit(v);
            g.adj[v] &= !bit(u);
            g.m -= 1;
        }
        Ok(g)
    }

    /// Add a fresh isolated vertex with label `n`.
    pub fn with_new_vertex(&self) -> Result<Graph> {
        if self.n >= MAX_ORDER {
            return Err(Error::Capacity(self.n + 1));
        }
        let mut g = self.clone();
        g.adj.push(0);
        g.n += 1;
        Ok(g)
    }

    /// Delete vertex `v`; vertices above `v` shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
        }
        self.induced(self.vertex_mask() & !bit(v))
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, order: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(())
    }

    pub fn to_graph6(&self) -> String {
        write_graph6(self)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    /// Whether `self` and `other` are isomorphic.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.degree_sequence() == other.degree_sequence()
            && canonical_form(self) == canonical_form(other)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, n={}, m={})", write_graph6(self), self.n, self.m)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}
