use crate::error::{Error, Result};

/// `(1 + √(4m − 3)) / 2`, the largest spectral radius over the relevant
/// graphs of odd size `m`, attained by `S_{(m+3)/2,2}`.
pub fn odd_bound(m: usize) -> f64 {
    (1.0 + (4.0 * m as f64 - 3.0).sqrt()) / 2.0
}

/// `(1 + √(4m − 5)) / 2`, a strict lower bound for `ρ(S⁻_{(m+4)/2,2})` when `m ≥ 6`.
pub fn lemma22_bound(m: usize) -> f64 {
    (1.0 + (4.0 * m as f64 - 5.0).sqrt()) / 2.0
}

/// `q_m(x) = x⁴ − m·x² − (m−2)·x + m/2 − 1`.
pub fn quartic(m: usize, x: f64) -> f64 {
    let m = m as f64;
    let x2 = x * x;
    x2 * x2 - m * x2 - (m - 2.0) * x + m / 2.0 - 1.0
}

fn quartic_derivative(m: usize, x: f64) -> f64 {
    let m = m as f64;
    4.0 * x * x * x - 2.0 * m * x - (m - 2.0)
}

/// Largest real root of `q_m`, which equals `ρ(S⁻_{(m+4)/2,2})`.
pub fn rho_prime(m: usize) -> Result<f64> {
    if m % 2 != 0 || m < 6 {
        return Err(Error::Domain(format!("rho_prime needs even m >= 6, got {m}")));
    }
    let (mut lo, mut hi) = (1.0, m as f64);
    if !(quartic(m, lo) < 0.0 && quartic(m, hi) > 0.0) {
        (lo, hi) = (0.0, m as f64 + 2.0);
        if !(quartic(m, lo) < 0.0 && quartic(m, hi) > 0.0) {
            return Err(Error::Domain(format!("no sign change for q_{m} on [0, {}]", m + 2)));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if quartic(m, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Newton polish, kept inside the bracket.
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = quartic_derivative(m, x);
        if d == 0.0 {
            break;
        }
        let next = x - quartic(m, x) / d;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
    }
    let scale = (m * m) as f64;
    if quartic(m, x).abs() > 1e-12 * scale {
        return Err(Error::Domain(format!("rho_prime({m}) failed to polish: q = {:e}", quartic(m, x))));
    }
    // Past x the quartic is convex with positive slope, so no larger root exists.
    debug_assert!(quartic_derivative(m, x) > 0.0 && 6.0 * x * x > m as f64);
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((odd_bound(9) - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((lemma22_bound(6) - (1.0 + 19f64.sqrt()) / 2.0).abs() < 1e-15);
        for m in 2..500 {
            assert!(odd_bound(m) > lemma22_bound(m));
        }
    }

    #[test]
    fn rho_prime_domain() {
        assert!(rho_prime(7).is_err());
        assert!(rho_prime(4).is_err());
        assert!(rho_prime(6).is_ok());
    }

    #[test]
    fn rho_prime_brackets() {
        for m in (6..=400).step_by(2) {
            let r = rho_prime(m).unwrap();
            assert!(lemma22_bound(m) < r && r < odd_bound(m), "m={m}");
            assert!(quartic(m, r).abs() <= 1e-12 * (m * m) as f64);
        }
    }
}
