//! Adjacency spectral radius, Perron vectors, exact characteristic
//! polynomials and the closed-form bounds of the H(4,3)-free problem.

mod bounds;
mod charpoly;
mod exact;

pub use bounds::{lemma22_bound, odd_bound, quartic, rho_prime};
pub use charpoly::{char_poly, CharPoly, CHAR_POLY_MAX_ORDER};
pub use exact::{largest_roots_coincide, same_spectral_radius};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, Mask};

pub const DEFAULT_TOL: f64 = 1e-12;

/// Dominant eigenpair of an adjacency matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Max-normalized, zero off the component attaining `rho`.
    pub perron: Vec<f64>,
    /// `‖A·x − rho·x‖∞`.
    pub residual: f64,
    pub iterations: usize,
    pub multi_component: bool,
}

impl SpectralResult {
    /// Vertex with the largest Perron coordinate; coordinates within `1e-10`
    /// of the maximum count as tied and the lowest index wins.
    pub fn argmax_vertex(&self) -> usize {
        let max = self.perron.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        self.perron
            .iter()
            .position(|&x| x >= max - 1e-10)
            .expect("perron vector is nonempty")
    }
}

pub fn spectral_radius_default(g: &Graph) -> Result<SpectralResult> {
    spectral_radius(g, DEFAULT_TOL)
}

/// Spectral radius by power iteration on `A + I`, one component at a time.
///
/// The shift makes the dominant eigenvalue strictly dominant on bipartite
/// components. The estimate is the Rayleigh quotient; iteration stops when
/// the residual drops below `tol · max(1, ρ)` or after `100·k²` steps on a
/// component of order `k`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let comps = g.components();
    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    let mut iterations = 0;
    for &comp in &comps {
        let (rho, x, residual, it) = component_power(g, comp, tol)?;
        iterations += it;
        // Strictly greater keeps the lowest-indexed component on ties.
        if best.as_ref().is_none_or(|(b, _, _)| rho > *b + tol * b.max(1.0)) {
            best = Some((rho, x, residual));
        }
    }
    let (rho, perron, residual) = best.expect("graphs have at least one vertex");
    Ok(SpectralResult {
        rho,
        perron,
        residual,
        iterations,
        multi_component: comps.len() > 1,
    })
}

fn component_power(g: &Graph, comp: Mask, tol: f64) -> Result<(f64, Vec<f64>, f64, usize)> {
    let n = g.order();
    let verts: Vec<usize> = bits(comp).collect();
    let mut x = vec![0.0; n];
    if verts.len() == 1 {
        x[verts[0]] = 1.0;
        return Ok((0.0, x, 0.0, 0));
    }
    let k = verts.len();
    let cap = 100 * k * k;
    for &v in &verts {
        x[v] = 1.0;
    }
    let mut ax = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=cap {
        multiply(g, &verts, &x, &mut ax);
        let (num, den) = verts
            .iter()
            .fold((0.0, 0.0), |(a, b), &v| (a + x[v] * ax[v], b + x[v] * x[v]));
        let rho = num / den;
        residual = verts
            .iter()
            .map(|&v| (ax[v] - rho * x[v]).abs())
            .fold(0.0, f64::max);
        if residual <= tol * rho.max(1.0) {
            return Ok((rho, x, residual, it));
        }
        // Shifted step: x ← (A + I)x, max-normalized.
        let mut max = 0.0f64;
        for &v in &verts {
            x[v] += ax[v];
            max = max.max(x[v]);
        }
        for &v in &verts {
            x[v] /= max;
        }
    }
    Err(Error::NonConvergence {
        residual,
        iterations: cap,
    })
}

fn multiply(g: &Graph, verts: &[usize], x: &[f64], out: &mut [f64]) {
    for &v in verts {
        out[v] = bits(g.neighbors(v)).map(|u| x[u]).sum();
    }
}

/// `xᵀAx / xᵀx`.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.order() {
        return Err(Error::BadVector);
    }
    let den: f64 = x.iter().map(|v| v * v).sum();
    if den == 0.0 || !den.is_finite() {
        return Err(Error::BadVector);
    }
    let num: f64 = g.edges().map(|(u, v)| 2.0 * x[u] * x[v]).sum();
    Ok(num / den)
}

/// `xᵀAx` without normalization.
pub fn quadratic_form(g: &Graph, x: &[f64]) -> f64 {
    g.edges().map(|(u, v)| 2.0 * x[u] * x[v]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn complete_and_cycle() {
        let r = spectral_radius_default(&make_complete(3).unwrap()).unwrap();
        assert!((r.rho - 2.0).abs() < 1e-12);
        assert!(r.perron.iter().all(|&x| (x - 1.0).abs() < 1e-9));
        let c4 = spectral_radius_default(&make_cycle(4).unwrap()).unwrap();
        assert!((c4.rho - 2.0).abs() < 1e-12);
    }

    #[test]
    fn s62_matches_odd_bound() {
        let r = spectral_radius_default(&make_s(6).unwrap()).unwrap();
        assert!((r.rho - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-10);
        assert!((r.rho - 3.372281323269014).abs() < 1e-10);
    }

    #[test]
    fn disconnected_takes_max_component() {
        let two_k2 = union(&make_complete(2).unwrap(), &make_complete(2).unwrap()).unwrap();
        let r = spectral_radius_default(&two_k2).unwrap();
        assert!((r.rho - 1.0).abs() < 1e-12);
        assert!(r.multi_component);
        assert_eq!(r.perron, vec![1.0, 1.0, 0.0, 0.0]);
        let g = union(&make_complete(2).unwrap(), &make_complete(3).unwrap()).unwrap();
        let r = spectral_radius_default(&g).unwrap();
        assert!((r.rho - 2.0).abs() < 1e-12);
        assert_eq!(&r.perron[..2], &[0.0, 0.0]);
    }

    #[test]
    fn edgeless_and_single_vertex() {
        let r = spectral_radius_default(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(r.rho, 0.0);
        assert_eq!(r.perron, vec![1.0]);
        let r = spectral_radius_default(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(r.rho, 0.0);
        assert_eq!(r.perron, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn bipartite_converges() {
        for t in 1..30 {
            let r = spectral_radius_default(&make_star(t).unwrap()).unwrap();
            assert!((r.rho - (t as f64).sqrt()).abs() < 1e-10, "t={t}");
        }
        let p = spectral_radius_default(&make_path(40).unwrap()).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 41.0).cos();
        assert!((p.rho - expected).abs() < 1e-10);
    }

    #[test]
    fn rayleigh_examples() {
        let k2 = make_complete(2).unwrap();
        assert_eq!(rayleigh_quotient(&k2, &[1.0, 1.0]).unwrap(), 1.0);
        let c4 = make_cycle(4).unwrap();
        assert_eq!(rayleigh_quotient(&c4, &[1.0, 0.0, 1.0, 0.0]).unwrap(), 0.0);
        assert!(matches!(rayleigh_quotient(&c4, &[0.0; 4]), Err(Error::BadVector)));
        assert!(matches!(rayleigh_quotient(&c4, &[1.0; 3]), Err(Error::BadVector)));
        let g = make_s_minus(9).unwrap();
        let r = spectral_radius_default(&g).unwrap();
        assert!((rayleigh_quotient(&g, &r.perron).unwrap() - r.rho).abs() <= 2.0 * r.residual + 1e-15);
    }

    #[test]
    fn bad_tolerance() {
        assert!(spectral_radius(&make_complete(3).unwrap(), 0.0).is_err());
        assert!(spectral_radius(&make_complete(3).unwrap(), f64::NAN).is_err());
    }

    #[test]
    fn argmax_tie_break() {
        let r = spectral_radius_default(&make_complete(5).unwrap()).unwrap();
        assert_eq!(r.argmax_vertex(), 0);
        let r = spectral_radius_default(&make_s_minus(10).unwrap()).unwrap();
        assert_eq!(r.argmax_vertex(), 0);
    }
}
