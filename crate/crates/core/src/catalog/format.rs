//! The flat JSON code format:
//! `{"name", "n", "d", "graph": {"edges": [[1,2],...]}, "clique": [[],[2,3,5],...]}`
//! with 1-indexed vertices, members sorted ascending and the clique sorted
//! lexicographically. Coding groups may add `"generators"`.

use serde::{Deserialize, Serialize};

use crate::codesearch::CodingClique;
use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgesJson {
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub graph: EdgesJson,
    pub clique: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

pub fn graph_to_edges(g: &Graph) -> EdgesJson {
    EdgesJson { edges: g.to_json_form().edges }
}

pub fn edges_to_graph(n: usize, edges: &EdgesJson) -> Result<Graph> {
    Graph::try_from(&crate::graph::EdgeList { n, edges: edges.edges.clone() })
}

fn labels(sets: &[VertexSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|c| c.labels()).collect()
}

fn from_labels(n: usize, lists: &[Vec<usize>]) -> Result<Vec<VertexSet>> {
    lists.iter().map(|l| VertexSet::from_labels(n, l)).collect()
}

impl CodeJson {
    pub fn from_clique(name: &str, clique: &CodingClique) -> Self {
        Self {
            name: name.to_string(),
            n: clique.n(),
            d: clique.d,
            graph: graph_to_edges(&clique.graph),
            clique: labels(&clique.members),
            generators: clique.generators.as_deref().map(labels),
        }
    }

    /// Parses and validates against Conditions 0–2; a `generators` field must span
    /// exactly the listed clique.
    pub fn to_clique(&self) -> Result<CodingClique> {
        let g = edges_to_graph(self.n, &self.graph)?;
        let members = from_labels(self.n, &self.clique)?;
        match &self.generators {
            None => CodingClique::new(g, self.d, members),
            Some(gens) => {
                let group = CodingClique::from_generators(g, self.d, from_labels(self.n, gens)?)?;
                let mut sorted = members;
                sorted.sort();
                if sorted != group.members {
                    return Err(Error::Parse("generators do not span the listed clique".into()));
                }
                Ok(group)
            }
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
