//! Exact comparison of largest eigenvalues: two graphs share a spectral
//! radius iff the gcd of their characteristic polynomials has that radius as
//! a root, which a Sturm count over the rationals decides.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::charpoly::{char_poly, CharPoly};
use crate::error::Result;
use crate::graph::Graph;

type Poly = Vec<BigRational>;

fn to_poly(p: &CharPoly) -> Poly {
    let mut out: Poly = p
        .ascending()
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    trim(&mut out);
    out
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(p: &Poly) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    trim(&mut out);
    out
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
fn roots_in(p: &Poly, lo: &BigRational, hi: &BigRational) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let k = seq.len();
        if seq[k - 1].is_empty() {
            seq.pop();
            break;
        }
        let mut r = rem(&seq[k - 2], &seq[k - 1]);
        if r.is_empty() {
            break;
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        seq.push(r);
    }
    sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi))
}

/// Whether the polynomials share a real root within `window` of `approx`.
///
/// Used with `approx` close to both largest roots: a common root there is
/// the common largest root.
pub fn largest_roots_coincide(p: &CharPoly, q: &CharPoly, approx: f64, window: f64) -> bool {
    if p == q {
        return true;
    }
    let g = gcd(&to_poly(p), &to_poly(q));
    if g.len() <= 1 {
        return false;
    }
    let lo = BigRational::from_float(approx - window).unwrap_or_else(BigRational::zero);
    let hi = BigRational::from_float(approx + window).unwrap_or_else(BigRational::one);
    roots_in(&g, &lo, &hi) > 0
}

/// Exact decision whether two graphs whose numeric spectral radii are both
/// near `approx` actually have equal spectral radius.
pub fn same_spectral_radius(a: &Graph, b: &Graph, approx: f64) -> Result<bool> {
    let (pa, pb) = (char_poly(a)?, char_poly(b)?);
    Ok(largest_roots_coincide(&pa, &pb, approx, 1e-7))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::spectral::spectral_radius_default;

    #[test]
    fn isolated_vertex_keeps_radius() {
        let g = make_s_minus(6).unwrap();
        let h = union(&g, &Graph::empty(1).unwrap()).unwrap();
        let rho = spectral_radius_default(&g).unwrap().rho;
        assert!(same_spectral_radius(&g, &h, rho).unwrap());
    }

    #[test]
    fn different_radii_are_distinguished() {
        let a = make_s(6).unwrap();
        let b = make_fan(5).unwrap();
        let rho = spectral_radius_default(&a).unwrap().rho;
        assert!(!same_spectral_radius(&a, &b, rho).unwrap());
    }

    #[test]
    fn sturm_counts() {
        // (x − 1)(x − 2)(x + 3)
        let p = CharPoly::from_ascending(vec![6, -7, 0, 1]);
        let poly = to_poly(&p);
        let r = |x: f64| BigRational::from_float(x).unwrap();
        assert_eq!(roots_in(&poly, &r(-10.0), &r(10.0)), 3);
        assert_eq!(roots_in(&poly, &r(0.5), &r(1.5)), 1);
        assert_eq!(roots_in(&poly, &r(2.5), &r(10.0)), 0);
    }
}
