//! Serializable instance formats.
//!
//! Undirected graphs: `{"n", "edges", "family"?, "red"?}`.
//! Digraphs (strengthenings): `{"n", "arcs", "family"?}`.
//! Digrafts: `{"n", "sources", "arcs", "tight_sources"? | "family"?}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraft, Family, UndirectedMultigraph, VertexSet};
use crate::reduce::Digraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub family: Vec<VertexSet>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub red: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphJson {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    #[serde(default)]
    pub family: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraftJson {
    pub n: usize,
    pub sources: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight_sources: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<VertexSet>>,
}

/// Any of the three formats; a digraft is recognised by `sources`, a graph
/// by `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Digraft(DigraftJson),
    Graph(GraphJson),
    Digraph(DigraphJson),
}

impl GraphJson {
    pub fn new(g: &UndirectedMultigraph, family: Vec<VertexSet>) -> Self {
        Self { n: g.n, edges: g.edges.clone(), family, red: Vec::new() }
    }

    pub fn graph(&self) -> Result<UndirectedMultigraph> {
        UndirectedMultigraph::new(self.n, self.edges.clone())
    }
}

impl DigraphJson {
    pub fn digraph(&self) -> Result<Digraph> {
        Digraph::new(self.n, self.arcs.clone())
    }
}

impl DigraftJson {
    pub fn new(d: &Digraft) -> Self {
        let (tight_sources, family) = match d.family() {
            Family::TightSources(st) => (Some(st.clone()), None),
            Family::General(f) => (None, Some(f.clone())),
        };
        Self { n: d.n(), sources: d.sources(), arcs: d.arcs().to_vec(), tight_sources, family }
    }

    pub fn digraft(&self) -> Result<Digraft> {
        let mut flags = vec![false; self.n];
        for &s in &self.sources {
            *flags.get_mut(s).ok_or_else(|| Error::Input(format!("source {s} out of range")))? = true;
        }
        let family = match (&self.tight_sources, &self.family) {
            (Some(_), Some(_)) => return Err(Error::Input("give tight_sources or family, not both".into())),
            (_, Some(f)) => Family::General(f.clone()),
            (st, None) => Family::TightSources(st.clone().unwrap_or_default()),
        };
        Digraft::new(self.n, flags, self.arcs.clone(), family)
    }
}
