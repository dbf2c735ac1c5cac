use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, Graph};
use crate::spectral::{odd_bound, rho_prime};
use crate::subgraph::Pattern;

/// Tolerance for calling a spectral radius equal to the reference extremal value.
pub const EXTREMAL_TOL: f64 = 1e-9;

/// One enumeration or search result row, persisted as a JSONL line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph6: String,
    pub m: usize,
    pub n: usize,
    pub rho: f64,
    /// `rho` attains the reference value of [`reference_bound`] within [`EXTREMAL_TOL`].
    pub is_extremal: bool,
    pub flags: BTreeMap<String, bool>,
}

/// Spectral radius of the conjectured extremal graph of size `m`:
/// `(1 + √(4m − 3))/2` for odd `m`, `ρ′(m)` for even `m ≥ 6`.
pub fn reference_bound(m: usize) -> Option<f64> {
    if m % 2 == 1 {
        Some(odd_bound(m))
    } else {
        rho_prime(m).ok()
    }
}

/// Patterns whose freeness is recorded on every row.
pub fn standard_flag_patterns() -> [Pattern; 3] {
    [Pattern::H33, Pattern::H43, Pattern::F5]
}

impl RunRecord {
    pub fn new(g: &Graph, rho: f64) -> Self {
        let mut flags = BTreeMap::new();
        flags.insert("connected".to_string(), g.is_connected());
        for p in standard_flag_patterns() {
            flags.insert(format!("{}_free", p.name()), !p.contained_in(g));
        }
        let m = g.size();
        RunRecord {
            graph6: g.to_graph6(),
            m,
            n: g.order(),
            rho,
            is_extremal: reference_bound(m).is_some_and(|b| (rho - b).abs() <= EXTREMAL_TOL || rho > b),
            flags,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        parse_graph6(&self.graph6)
    }

    /// Check that the stored graph has the stated order and size.
    pub fn validate(&self) -> Result<()> {
        let g = self.graph()?;
        if g.order() != self.n || g.size() != self.m {
            return Err(Error::Domain(format!(
                "record {} claims n={}, m={} but encodes n={}, m={}",
                self.graph6,
                self.n,
                self.m,
                g.order(),
                g.size()
            )));
        }
        if !self.rho.is_finite() {
            return Err(Error::Domain(format!("record {} has non-finite rho", self.graph6)));
        }
        Ok(())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let rec: RunRecord = serde_json::from_str(line)?;
        rec.validate()?;
        Ok(rec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_s, make_s_minus};
    use crate::spectral::spectral_radius_default;

    #[test]
    fn json_round_trip() {
        let g = make_s_minus(7).unwrap();
        let rho = spectral_radius_default(&g).unwrap().rho;
        let rec = RunRecord::new(&g, rho);
        assert!(rec.is_extremal);
        assert_eq!(rec.flags["h43_free"], true);
        let back = RunRecord::from_json_line(&rec.to_json_line()).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn validation_catches_mismatch() {
        let g = make_s(6).unwrap();
        let mut rec = RunRecord::new(&g, 3.0);
        assert!(!rec.is_extremal);
        rec.m = 8;
        assert!(RunRecord::from_json_line(&rec.to_json_line()).is_err());
        assert!(RunRecord::from_json_line("{not json").is_err());
    }
}
