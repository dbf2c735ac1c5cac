//! graph6 encoding: `N(n)` followed by the upper triangle of the adjacency
//! matrix read column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed
//! into 6-bit groups, zero padded, each group offset by 63.

use super::{bit, Graph, Mask, MAX_ORDER};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | u8::from(row & bit(i) != 0);
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    // Every byte is in 63..=126.
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty string".into()));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!("invalid character at byte {pos}")));
    }
    let (n, body) = if bytes[0] != b'~' {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == b'~' {
            return Err(Error::Graph6("truncated or unsupported order prefix".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Error::Capacity(n));
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut adj = vec![0 as Mask; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(write_graph6(&k3), "Bw");
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(write_graph6(&p3), "Bg");
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&p5), "DhC");
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn large_order_prefix() {
        let mut edges = Vec::new();
        for u in 0..64 {
            for v in u + 1..64 {
                edges.push((u, v));
            }
        }
        let k64 = Graph::from_edges(64, &edges).unwrap();
        let s = write_graph6(&k64);
        assert!(s.starts_with("~?@?~~~~~~"));
        assert_eq!(parse_graph6(&s).unwrap(), k64);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("Bww"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("B "), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("B\u{7f}"), Err(Error::Graph6(_))));
        // n = 129
        let mut s = String::from("~?A@");
        s.push_str(&"?".repeat((129 * 128 / 2usize).div_ceil(6)));
        assert!(matches!(parse_graph6(&s), Err(Error::Capacity(129))));
    }

    #[test]
    fn header_and_whitespace() {
        let g = parse_graph6(">>graph6<<Bw\n").unwrap();
        assert_eq!(g.size(), 3);
    }
}
