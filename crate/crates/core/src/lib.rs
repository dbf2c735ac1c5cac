//! Construction, verification and search for spectral-extremal graphs of
//! given size under forbidden-subgraph constraints, centred on the
//! H(4,3)-free problem: among H(4,3)-free graphs of even size m without
//! isolated vertices, S⁻_{(m+4)/2,2} maximizes the adjacency spectral radius.

pub mod audit;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod report;
pub mod search;
pub mod spectral;
pub mod subgraph;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{canonical_form, parse_graph6, write_graph6, CanonicalForm, Graph};
