//! Exact characteristic polynomials via Berkowitz's division-free recurrence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, low_mask, Graph};

/// Largest order accepted by [`char_poly`].
pub const CHAR_POLY_MAX_ORDER: usize = 24;

/// `det(xI − A)` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharPoly {
    /// `coeffs[k]` is the coefficient of `x^k`; `coeffs.len() == n + 1`.
    coeffs: Vec<i128>,
}

impl CharPoly {
    pub fn from_ascending(coeffs: Vec<i128>) -> Self {
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn ascending(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_exact(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn overflow() -> Error {
    Error::Budget("integer overflow in characteristic polynomial".into())
}

/// Characteristic polynomial of the adjacency matrix, `n ≤ 24`.
///
/// The polynomial of each leading principal submatrix `A_{r+1}` is built from
/// that of `A_r` as `(x − a)·p_r(x) − R·adj(xI − A_r)·S`, where the adjugate
/// expands through the powers `R·A_r^j·S`. Only ring operations are used.
pub fn char_poly(g: &Graph) -> Result<CharPoly> {
    let n = g.order();
    if n > CHAR_POLY_MAX_ORDER {
        return Err(Error::Budget(format!(
            "characteristic polynomial limited to n <= {CHAR_POLY_MAX_ORDER}, got {n}"
        )));
    }
    // Descending coefficients of p_r; p_0 = 1. Diagonal entries are all zero.
    let mut c: Vec<i128> = vec![1];
    for r in 0..n {
        // S = column r restricted to rows 0..r, R = its transpose (symmetric A).
        let col: Vec<i128> = (0..r).map(|i| i128::from(g.has_edge(i, r))).collect();
        let mut t = Vec::with_capacity(r);
        let mut v = col.clone();
        for j in 0..r {
            let tj = dot(&col, &v)?;
            t.push(tj);
            if j + 1 < r {
                v = mul_leading(g, r, &v)?;
            }
        }
        let mut next = vec![0i128; r + 2];
        next[..=r].copy_from_slice(&c);
        for k in 0..r {
            let mut d = 0i128;
            for j in 0..=k {
                d = c[k - j]
                    .checked_mul(t[j])
                    .and_then(|p| d.checked_add(p))
                    .ok_or_else(overflow)?;
            }
            next[k + 2] = next[k + 2].checked_sub(d).ok_or_else(overflow)?;
        }
        c = next;
    }
    c.reverse();
    Ok(CharPoly { coeffs: c })
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (&x, &y)| {
        x.checked_mul(y).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
    })
}

/// `A_r · v` for the leading `r × r` block.
fn mul_leading(g: &Graph, r: usize, v: &[i128]) -> Result<Vec<i128>> {
    let mask = low_mask(r);
    (0..r)
        .map(|i| {
            bits(g.neighbors(i) & mask).try_fold(0i128, |acc, j| acc.checked_add(v[j]).ok_or_else(overflow))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn small_known_polynomials() {
        let k3 = char_poly(&make_complete(3).unwrap()).unwrap();
        assert_eq!(k3.ascending(), &[-2, -3, 0, 1]);
        assert_eq!(k3.to_string(), "x^3 - 3x - 2");
        let p2 = char_poly(&make_complete(2).unwrap()).unwrap();
        assert_eq!(p2.ascending(), &[-1, 0, 1]);
        let k1 = char_poly(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(k1.ascending(), &[0, 1]);
        let c4 = char_poly(&make_cycle(4).unwrap()).unwrap();
        // x^4 - 4x^2
        assert_eq!(c4.ascending(), &[0, 0, -4, 0, 1]);
    }

    #[test]
    fn complete_24() {
        // (x − 23)(x + 1)^23
        let p = char_poly(&make_complete(24).unwrap()).unwrap();
        let mut expected = vec![1i128];
        let mul = |poly: &[i128], root: i128| {
            let mut out = vec![0i128; poly.len() + 1];
            for (k, &a) in poly.iter().enumerate() {
                out[k + 1] += a;
                out[k] -= root * a;
            }
            out
        };
        expected = mul(&expected, 23);
        for _ in 0..23 {
            expected = mul(&expected, -1);
        }
        assert_eq!(p.ascending(), expected.as_slice());
    }

    #[test]
    fn budget() {
        assert!(matches!(char_poly(&make_path(25).unwrap()), Err(Error::Budget(_))));
    }
}
