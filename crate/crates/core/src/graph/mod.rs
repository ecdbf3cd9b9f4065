//! Finite directed multigraphs and their morphisms: the ambient category.
//!
//! Everything else in the crate — metamodels, instances, views, merges,
//! update spans — is built from [`Graph`] and [`GraphMorphism`]. Limits
//! (pullbacks) and colimits (pushouts, general colimits) live in
//! [`limits`]; span algebra in [`span`].

mod canon;
mod dot;
mod iso;
mod limits;
mod morphism;
mod span;
mod union_find;

pub use canon::{canonical_order, ColoredGraph};
pub use dot::graph_to_dot;
pub use iso::{graph_isomorphism, graphs_isomorphic, typed_isomorphism};
pub use limits::{colimit, pullback, pushout, Diagram, DiagramArrow};
pub use morphism::{GraphMorphism, MorphismData};
pub use span::Span;
pub use union_find::UnionFind;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(NodeId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("edge `{edge}` references missing node `{node}`")]
    DanglingEdge { edge: EdgeId, node: NodeId },
    #[error("morphism is not total: missing image for {0}")]
    NotTotal(String),
    #[error("morphism maps {0} outside its codomain")]
    OutsideCodomain(String),
    #[error("morphism does not preserve incidence at edge `{0}`")]
    NotStructurePreserving(EdgeId),
    #[error("codomain mismatch: expected equal codomains")]
    CodomainMismatch,
    #[error("domain mismatch: expected equal domains")]
    DomainMismatch,
    #[error("composition mismatch: codomain of the first differs from domain of the second")]
    CompositionMismatch,
    #[error("span endpoints do not meet: {0}")]
    SpanMismatch(String),
    #[error("diagram arrow `{0}` references an object not in the diagram")]
    DanglingArrow(String),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("unknown edge `{0}`")]
    UnknownEdge(EdgeId),
}

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

id_type!(
    /// Identifier of a node within one graph.
    NodeId
);
id_type!(
    /// Identifier of an edge within one graph.
    EdgeId
);

/// Encodes a pair of identifiers into one, reversibly. Used for pullback
/// apex elements and canonical span heads, where each element is a pair of
/// leg images.
pub fn pair_id(left: &str, right: &str) -> String {
    fn escape(s: &str, out: &mut String) {
        for c in s.chars() {
            if matches!(c, '\\' | ',' | '(' | ')') {
                out.push('\\');
            }
            out.push(c);
        }
    }
    let mut out = String::with_capacity(left.len() + right.len() + 3);
    out.push('(');
    escape(left, &mut out);
    out.push(',');
    escape(right, &mut out);
    out.push(')');
    out
}

/// A finite directed multigraph. Node and edge identifier sets are
/// duplicate-free and every edge's endpoints are nodes of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    nodes: BTreeSet<NodeId>,
    edges: BTreeMap<EdgeId, (NodeId, NodeId)>,
}

impl Graph {
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (EdgeId, NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::default();
        for n in nodes {
            if !g.nodes.insert(n.clone()) {
                return Err(GraphError::DuplicateNode(n));
            }
        }
        for (id, src, tgt) in edges {
            g.insert_edge(id, src, tgt)?;
        }
        Ok(g)
    }

    /// Convenience constructor from string literals, mostly for tests and
    /// fixtures.
    pub fn build<'a>(
        nodes: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<Self, GraphError> {
        Self::new(
            nodes.into_iter().map(NodeId::from),
            edges
                .into_iter()
                .map(|(id, s, t)| (EdgeId::from(id), NodeId::from(s), NodeId::from(t))),
        )
    }

    pub fn empty() -> Self {
        Graph::default()
    }

    fn insert_edge(&mut self, id: EdgeId, src: NodeId, tgt: NodeId) -> Result<(), GraphError> {
        if !self.nodes.contains(&src) {
            return Err(GraphError::DanglingEdge { edge: id, node: src });
        }
        if !self.nodes.contains(&tgt) {
            return Err(GraphError::DanglingEdge { edge: id, node: tgt });
        }
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        self.edges.insert(id, (src, tgt));
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.nodes.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &NodeId, &NodeId)> {
        self.edges.iter().map(|(e, (s, t))| (e, s, t))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.keys()
    }

    pub fn has_node(&self, n: &NodeId) -> bool {
        self.nodes.contains(n)
    }

    pub fn has_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    pub fn src(&self, e: &EdgeId) -> Option<&NodeId> {
        self.edges.get(e).map(|(s, _)| s)
    }

    pub fn tgt(&self, e: &EdgeId) -> Option<&NodeId> {
        self.edges.get(e).map(|(_, t)| t)
    }

    pub fn endpoints(&self, e: &EdgeId) -> Option<(&NodeId, &NodeId)> {
        self.edges.get(e).map(|(s, t)| (s, t))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub fn outgoing<'a>(&'a self, n: &'a NodeId) -> impl Iterator<Item = (&'a EdgeId, &'a NodeId)> {
        self.edges
            .iter()
            .filter(move |(_, (s, _))| s == n)
            .map(|(e, (_, t))| (e, t))
    }

    pub fn incident<'a>(&'a self, n: &'a NodeId) -> impl Iterator<Item = &'a EdgeId> {
        self.edges
            .iter()
            .filter(move |(_, (s, t))| s == n || t == n)
            .map(|(e, _)| e)
    }

    /// The full subgraph on `keep_nodes` and `keep_edges`; edges whose
    /// endpoints are not kept are dropped.
    pub fn subgraph(&self, keep_nodes: &BTreeSet<NodeId>, keep_edges: &BTreeSet<EdgeId>) -> Graph {
        let nodes: BTreeSet<NodeId> = self.nodes.intersection(keep_nodes).cloned().collect();
        let edges = self
            .edges
            .iter()
            .filter(|(e, (s, t))| keep_edges.contains(*e) && nodes.contains(s) && nodes.contains(t))
            .map(|(e, (s, t))| (e.clone(), (s.clone(), t.clone())))
            .collect();
        Graph { nodes, edges }
    }

    /// True when `self` is literally a subgraph of `other` (same ids, same
    /// incidence).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.nodes.iter().all(|n| other.nodes.contains(n))
            && self
                .edges
                .iter()
                .all(|(e, st)| other.edges.get(e) == Some(st))
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeWire {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    nodes: Vec<String>,
    edges: Vec<EdgeWire>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = GraphWire {
            nodes: self.nodes.iter().map(|n| n.0.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|(e, (s, t))| EdgeWire {
                    id: e.0.clone(),
                    src: s.0.clone(),
                    tgt: t.0.clone(),
                })
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = GraphWire::deserialize(deserializer)?;
        Graph::new(
            wire.nodes.into_iter().map(NodeId),
            wire.edges
                .into_iter()
                .map(|e| (EdgeId(e.id), NodeId(e.src), NodeId(e.tgt))),
        )
        .map_err(D::Error::custom)
    }
}
