//! Distance spectral radii, conditional vertex connectivity, extremal
//! family constructions, and an exhaustive verification harness for small
//! graphs.
//!
//! The crate is organized around immutable bit-packed graphs ([`graph`]),
//! exact distance spectra ([`spectral`]), minimum conditional cuts
//! ([`connectivity`]), the extremal clique-join families ([`families`]),
//! isomorph-free enumeration ([`enumeration`]) and the sweep harness that
//! ties them together ([`verifier`]).

pub mod cli;
pub mod connectivity;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod spectral;
pub mod verifier;

pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
