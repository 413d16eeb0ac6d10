//! Integral lattice bases of tight strongly connected orientations and tight
//! dijoins, with exact brute-force certification for small instances.

pub mod basis;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod feasibility;
pub mod flow;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod parity;
pub mod reduce;
pub mod sfm;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{ArcSet, Dicut, Digraft, Family, Side, UndirectedMultigraph, VertexSet};
