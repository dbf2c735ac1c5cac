//! Named graph constructions.
//!
//! Numbering convention: dominating or hub vertices come first. In `S_{n,2}`
//! the two hubs are 0 and 1; in `S⁻_{n,2}` vertex 0 is the hub that keeps the
//! pendant, which is the last vertex; fans, friendship graphs and stars have
//! their centre at 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::Capacity(n))
    } else {
        Ok(())
    }
}

/// `S_{n,2} = K₂ ∨ (n−2)K₁`.
pub fn make_s(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(domain(format!("S_{{n,2}} needs n >= 3, got {n}")));
    }
    check_order(n)?;
    let mut edges = vec![(0, 1)];
    for v in 2..n {
        edges.push((0, v));
        edges.push((1, v));
    }
    Graph::from_edges(n, &edges)
}

/// `S_{n,2}` minus the edge between hub 1 and the degree-2 vertex `n−1`.
pub fn make_s_minus(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(domain(format!("S⁻_{{n,2}} needs n >= 4, got {n}")));
    }
    make_s(n)?.without_edge(1, n - 1)
}

/// Two cycles of lengths `k` and `l` sharing vertex 0.
pub fn make_h(k: usize, l: usize) -> Result<Graph> {
    if k < 3 || l < 3 {
        return Err(domain(format!("H(k,l) needs k, l >= 3, got ({k},{l})")));
    }
    let n = k + l - 1;
    check_order(n)?;
    let mut edges = Vec::with_capacity(k + l);
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = std::iter::once(0).chain(k..n).collect();
    for cycle in [first, second] {
        for i in 0..cycle.len() {
            edges.push((cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }
    Graph::from_edges(n, &edges)
}

/// `F′_{m,l}`: `S_{(m−l+3)/2,2}` with `l` pendant vertices on hub 0.
pub fn make_f_prime(m: usize, l: usize) -> Result<Graph> {
    if m <= l + 1 {
        return Err(domain(format!("F′_{{m,l}} needs m > l + 1, got m={m}, l={l}")));
    }
    if (m - l) % 2 == 0 {
        return Err(domain(format!("F′_{{m,l}} needs m − l odd, got m={m}, l={l}")));
    }
    if m - l < 3 {
        return Err(domain(format!("F′_{{m,l}} needs m − l >= 3, got m={m}, l={l}")));
    }
    let core = (m - l + 3) / 2;
    let n = core + l;
    check_order(n)?;
    let mut edges: Vec<(usize, usize)> = make_s(core)?.edges().collect();
    edges.extend((core..n).map(|p| (0, p)));
    Graph::from_edges(n, &edges)
}

/// Fan `F_t = K₁ ∨ P_t`.
pub fn make_fan(t: usize) -> Result<Graph> {
    if t < 1 {
        return Err(domain("fan needs t >= 1"));
    }
    join(&make_complete(1)?, &make_path(t)?)
}

/// Friendship graph `F_{k,3}`: `k` triangles sharing vertex 0.
pub fn make_friendship(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(domain("friendship graph needs k >= 1"));
    }
    let n = 2 * k + 1;
    check_order(n)?;
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    Graph::from_edges(n, &edges)
}

/// Star `K_{1,t}` with centre 0.
pub fn make_star(t: usize) -> Result<Graph> {
    if t < 1 {
        return Err(domain("star needs t >= 1"));
    }
    make_complete_bipartite(1, t)
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(domain("path needs n >= 1"));
    }
    check_order(n)?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(domain(format!("cycle needs n >= 3, got {n}")));
    }
    check_order(n)?;
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(domain("complete graph needs n >= 1"));
    }
    check_order(n)?;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// `K_{a,b}` with the part of size `a` numbered first.
pub fn make_complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(domain("complete bipartite graph needs both parts nonempty"));
    }
    check_order(a + b)?;
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::from_edges(a + b, &edges)
}

/// `t·K₁`.
pub fn make_empty(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

/// Disjoint union; vertices of `h` follow those of `g`.
pub fn union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order() + h.order();
    check_order(n)?;
    let shift = g.order();
    let edges: Vec<_> = g
        .edges()
        .chain(h.edges().map(|(u, v)| (u + shift, v + shift)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Join `g ∨ h`: disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order() + h.order();
    check_order(n)?;
    let shift = g.order();
    let mut edges: Vec<_> = g
        .edges()
        .chain(h.edges().map(|(u, v)| (u + shift, v + shift)))
        .collect();
    for u in 0..g.order() {
        for v in 0..h.order() {
            edges.push((u, v + shift));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Catalog member `H_i` of connected (P₂ ∪ P₃)-free graphs.
///
/// `H₁ = P₄`, `H₂ = C₃`, `H₅ = K₄ − e`, `H₆ = K₄`, `H₇ = K_{1,t}`. The two
/// remaining members are the order-4 graphs with as many edges as vertices
/// that the exhaustive catalog produces; they are only returned with the
/// `oracle-catalog` feature.
pub fn make_catalog_h(i: usize, t: usize) -> Result<Graph> {
    match i {
        1 => make_path(4),
        2 => make_complete(3),
        3 | 4 => catalog_oracle_member(i),
        5 => make_complete(4)?.without_edge(2, 3),
        6 => make_complete(4),
        7 => make_star(t),
        _ => Err(domain(format!("catalog index must be in 1..=7, got {i}"))),
    }
}

#[cfg(feature = "oracle-catalog")]
fn catalog_oracle_member(i: usize) -> Result<Graph> {
    let members = crate::subgraph::unnamed_catalog_members()?;
    members
        .get(i - 3)
        .map(|f| f.to_graph())
        .ok_or(Error::UnresolvedFigure(i))
}

#[cfg(not(feature = "oracle-catalog"))]
fn catalog_oracle_member(i: usize) -> Result<Graph> {
    Err(Error::UnresolvedFigure(i))
}

/// Parametric identifier of a named construction.
///
/// Text syntax: `name(args)`, e.g. `s(6)`, `s-minus(21)`, `f-prime(38,3)`,
/// `h(4,3)`, `fan(5)`, `join(complete(2),empty(4))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FamilySpec {
    S { n: usize },
    SMinus { n: usize },
    FPrime { m: usize, l: usize },
    Hkl { k: usize, l: usize },
    Fan { t: usize },
    Friendship { k: usize },
    Star { t: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Empty { n: usize },
    HCatalog { i: usize, t: usize },
    Join(Box<FamilySpec>, Box<FamilySpec>),
    Union(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        use FamilySpec::*;
        match self {
            S { n } => make_s(*n),
            SMinus { n } => make_s_minus(*n),
            FPrime { m, l } => make_f_prime(*m, *l),
            Hkl { k, l } => make_h(*k, *l),
            Fan { t } => make_fan(*t),
            Friendship { k } => make_friendship(*k),
            Star { t } => make_star(*t),
            Path { n } => make_path(*n),
            Cycle { n } => make_cycle(*n),
            Complete { n } => make_complete(*n),
            CompleteBipartite { a, b } => make_complete_bipartite(*a, *b),
            Empty { n } => make_empty(*n),
            HCatalog { i, t } => make_catalog_h(*i, *t),
            Join(a, b) => join(&a.build()?, &b.build()?),
            Union(a, b) => union(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            S { n } => write!(f, "s({n})"),
            SMinus { n } => write!(f, "s-minus({n})"),
            FPrime { m, l } => write!(f, "f-prime({m},{l})"),
            Hkl { k, l } => write!(f, "h({k},{l})"),
            Fan { t } => write!(f, "fan({t})"),
            Friendship { k } => write!(f, "friendship({k})"),
            Star { t } => write!(f, "star({t})"),
            Path { n } => write!(f, "path({n})"),
            Cycle { n } => write!(f, "cycle({n})"),
            Complete { n } => write!(f, "complete({n})"),
            CompleteBipartite { a, b } => write!(f, "complete-bipartite({a},{b})"),
            Empty { n } => write!(f, "empty({n})"),
            HCatalog { i, t } => write!(f, "h-catalog({i},{t})"),
            Join(a, b) => write!(f, "join({a},{b})"),
            Union(a, b) => write!(f, "union({a},{b})"),
        }
    }
}

impl From<FamilySpec> for String {
    fn from(s: FamilySpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = SpecParser { s: compact.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        if p.pos != p.s.len() {
            return Err(domain(format!("trailing input in family spec `{s}`")));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    s: &'a [u8],
    pos: usize,
}

enum Arg {
    Int(usize),
    Spec(FamilySpec),
}

impl SpecParser<'_> {
    fn spec(&mut self) -> Result<FamilySpec> {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'-' || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .to_ascii_lowercase()
            .replace('_', "-");
        if name.is_empty() {
            return Err(domain("expected a family name"));
        }
        self.expect(b'(')?;
        let mut args = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                args.push(self.arg()?);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b')')?;
        let ints = |args: &[Arg], count: usize| -> Result<Vec<usize>> {
            if args.len() != count {
                return Err(domain(format!("`{name}` takes {count} integer argument(s)")));
            }
            args.iter()
                .map(|a| match a {
                    Arg::Int(v) => Ok(*v),
                    Arg::Spec(_) => Err(domain(format!("`{name}` takes integer arguments"))),
                })
                .collect()
        };
        use FamilySpec::*;
        Ok(match name.as_str() {
            "s" => S { n: ints(&args, 1)?[0] },
            "s-minus" => SMinus { n: ints(&args, 1)?[0] },
            "f-prime" => {
                let a = ints(&args, 2)?;
                FPrime { m: a[0], l: a[1] }
            }
            "h" => {
                let a = ints(&args, 2)?;
                Hkl { k: a[0], l: a[1] }
            }
            "fan" => Fan { t: ints(&args, 1)?[0] },
            "friendship" => Friendship { k: ints(&args, 1)?[0] },
            "star" => Star { t: ints(&args, 1)?[0] },
            "path" => Path { n: ints(&args, 1)?[0] },
            "cycle" => Cycle { n: ints(&args, 1)?[0] },
            "complete" => Complete { n: ints(&args, 1)?[0] },
            "complete-bipartite" => {
                let a = ints(&args, 2)?;
                CompleteBipartite { a: a[0], b: a[1] }
            }
            "empty" => Empty { n: ints(&args, 1)?[0] },
            "h-catalog" => match args.len() {
                1 => HCatalog { i: ints(&args, 1)?[0], t: 1 },
                _ => {
                    let a = ints(&args, 2)?;
                    HCatalog { i: a[0], t: a[1] }
                }
            },
            "join" | "union" => {
                let mut it = args.into_iter();
                let (Some(Arg::Spec(a)), Some(Arg::Spec(b)), None) = (it.next(), it.next(), it.next()) else {
                    return Err(domain(format!("`{name}` takes two family arguments")));
                };
                if name == "join" {
                    Join(Box::new(a), Box::new(b))
                } else {
                    Union(Box::new(a), Box::new(b))
                }
            }
            other => return Err(domain(format!("unknown family `{other}`"))),
        })
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                text.parse()
                    .map(Arg::Int)
                    .map_err(|_| domain(format!("integer out of range: {text}")))
            }
            Some(_) => Ok(Arg::Spec(self.spec()?)),
            None => Err(domain("unexpected end of family spec")),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(domain(format!("expected `{}` at position {}", c as char, self.pos)))
        }
    }
}
