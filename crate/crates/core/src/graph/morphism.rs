use super::{EdgeId, Graph, GraphError, NodeId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A structure-preserving map between graphs: total on nodes and edges,
/// commuting with source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    dom: Graph,
    cod: Graph,
    node_map: BTreeMap<NodeId, NodeId>,
    edge_map: BTreeMap<EdgeId, EdgeId>,
}

/// The wire form of a morphism: just the two maps. Domain and codomain are
/// supplied by context (an instance file knows its graph and metamodel).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MorphismData {
    #[serde(default)]
    pub nodes: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
}

impl GraphMorphism {
    pub fn new(
        dom: Graph,
        cod: Graph,
        node_map: BTreeMap<NodeId, NodeId>,
        edge_map: BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Self, GraphError> {
        for n in dom.nodes() {
            let img = node_map
                .get(n)
                .ok_or_else(|| GraphError::NotTotal(format!("node `{n}`")))?;
            if !cod.has_node(img) {
                return Err(GraphError::OutsideCodomain(format!("node `{n}` -> `{img}`")));
            }
        }
        for (e, s, t) in dom.edges() {
            let img = edge_map
                .get(e)
                .ok_or_else(|| GraphError::NotTotal(format!("edge `{e}`")))?;
            let (is, it) = cod
                .endpoints(img)
                .ok_or_else(|| GraphError::OutsideCodomain(format!("edge `{e}` -> `{img}`")))?;
            if node_map.get(s) != Some(is) || node_map.get(t) != Some(it) {
                return Err(GraphError::NotStructurePreserving(e.clone()));
            }
        }
        // Drop any entries for elements outside the domain so equality of
        // morphisms is equality of their action.
        let node_map = node_map
            .into_iter()
            .filter(|(n, _)| dom.has_node(n))
            .collect();
        let edge_map = edge_map
            .into_iter()
            .filter(|(e, _)| dom.has_edge(e))
            .collect();
        Ok(GraphMorphism {
            dom,
            cod,
            node_map,
            edge_map,
        })
    }

    pub fn from_data(dom: Graph, cod: Graph, data: &MorphismData) -> Result<Self, GraphError> {
        Self::new(
            dom,
            cod,
            data.nodes
                .iter()
                .map(|(k, v)| (NodeId::from(k.as_str()), NodeId::from(v.as_str())))
                .collect(),
            data.edges
                .iter()
                .map(|(k, v)| (EdgeId::from(k.as_str()), EdgeId::from(v.as_str())))
                .collect(),
        )
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMorphism {
            dom: g.clone(),
            cod: g.clone(),
            node_map: g.nodes().map(|n| (n.clone(), n.clone())).collect(),
            edge_map: g.edge_ids().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    /// The inclusion of a subgraph. `sub` must literally be a subgraph of
    /// `sup`.
    pub fn inclusion(sub: &Graph, sup: &Graph) -> Result<Self, GraphError> {
        if !sub.is_subgraph_of(sup) {
            return Err(GraphError::SpanMismatch(
                "inclusion source is not a subgraph".into(),
            ));
        }
        Ok(GraphMorphism {
            dom: sub.clone(),
            cod: sup.clone(),
            node_map: sub.nodes().map(|n| (n.clone(), n.clone())).collect(),
            edge_map: sub.edge_ids().map(|e| (e.clone(), e.clone())).collect(),
        })
    }

    pub fn dom(&self) -> &Graph {
        &self.dom
    }

    pub fn cod(&self) -> &Graph {
        &self.cod
    }

    pub fn node(&self, n: &NodeId) -> Option<&NodeId> {
        self.node_map.get(n)
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&EdgeId> {
        self.edge_map.get(e)
    }

    pub fn node_map(&self) -> &BTreeMap<NodeId, NodeId> {
        &self.node_map
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.edge_map
    }

    /// Diagrammatic composition `self ; other`.
    pub fn then(&self, other: &GraphMorphism) -> Result<GraphMorphism, GraphError> {
        if self.cod != other.dom {
            return Err(GraphError::CompositionMismatch);
        }
        let node_map = self
            .node_map
            .iter()
            .map(|(n, m)| (n.clone(), other.node_map[m].clone()))
            .collect();
        let edge_map = self
            .edge_map
            .iter()
            .map(|(e, f)| (e.clone(), other.edge_map[f].clone()))
            .collect();
        Ok(GraphMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            node_map,
            edge_map,
        })
    }

    /// True iff both node and edge maps are injective.
    pub fn is_injective(&self) -> bool {
        let mut node_images = std::collections::BTreeSet::new();
        if !self.node_map.values().all(|v| node_images.insert(v)) {
            return false;
        }
        let mut edge_images = std::collections::BTreeSet::new();
        self.edge_map.values().all(|v| edge_images.insert(v))
    }

    /// True iff every codomain element is an image.
    pub fn is_surjective(&self) -> bool {
        let nodes: std::collections::BTreeSet<_> = self.node_map.values().collect();
        let edges: std::collections::BTreeSet<_> = self.edge_map.values().collect();
        self.cod.nodes().all(|n| nodes.contains(n)) && self.cod.edge_ids().all(|e| edges.contains(e))
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && self.node_map.iter().all(|(a, b)| a == b)
            && self.edge_map.iter().all(|(a, b)| a == b)
    }

    pub fn data(&self) -> MorphismData {
        MorphismData {
            nodes: self
                .node_map
                .iter()
                .map(|(a, b)| (a.0.clone(), b.0.clone()))
                .collect(),
            edges: self
                .edge_map
                .iter()
                .map(|(a, b)| (a.0.clone(), b.0.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> (Graph, Graph, Graph) {
        let a = Graph::build(["a"], []).unwrap();
        let b = Graph::build(["b"], []).unwrap();
        let c = Graph::build(["c"], []).unwrap();
        (a, b, c)
    }

    fn singleton_map(dom: &Graph, cod: &Graph, from: &str, to: &str) -> GraphMorphism {
        GraphMorphism::new(
            dom.clone(),
            cod.clone(),
            [(NodeId::from(from), NodeId::from(to))].into(),
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let (a, b, _) = chain();
        let f = singleton_map(&a, &b, "a", "b");
        let id_a = GraphMorphism::identity(&a);
        let id_b = GraphMorphism::identity(&b);
        assert_eq!(id_a.then(&f).unwrap(), f);
        assert_eq!(f.then(&id_b).unwrap(), f);
    }

    #[test]
    fn singleton_chain_composes() {
        let (a, b, c) = chain();
        let f = singleton_map(&a, &b, "a", "b");
        let g = singleton_map(&b, &c, "b", "c");
        let fg = f.then(&g).unwrap();
        assert_eq!(fg.node(&NodeId::from("a")), Some(&NodeId::from("c")));
    }

    #[test]
    fn composition_checks_endpoints() {
        let (a, b, c) = chain();
        let f = singleton_map(&a, &b, "a", "b");
        let h = singleton_map(&c, &b, "c", "b");
        assert_eq!(f.then(&h), Err(GraphError::CompositionMismatch));
    }

    #[test]
    fn rejects_non_structure_preserving() {
        let dom = Graph::build(["x", "y"], [("e", "x", "y")]).unwrap();
        let cod = Graph::build(["u", "v"], [("f", "u", "v")]).unwrap();
        let err = GraphMorphism::new(
            dom,
            cod,
            [
                (NodeId::from("x"), NodeId::from("v")),
                (NodeId::from("y"), NodeId::from("u")),
            ]
            .into(),
            [(EdgeId::from("e"), EdgeId::from("f"))].into(),
        )
        .unwrap_err();
        assert_eq!(err, GraphError::NotStructurePreserving(EdgeId::from("e")));
    }

    #[test]
    fn injectivity_detects_collisions() {
        let dom = Graph::build(["x", "y"], []).unwrap();
        let cod = Graph::build(["u"], []).unwrap();
        let f = GraphMorphism::new(
            dom,
            cod,
            [
                (NodeId::from("x"), NodeId::from("u")),
                (NodeId::from("y"), NodeId::from("u")),
            ]
            .into(),
            BTreeMap::new(),
        )
        .unwrap();
        assert!(!f.is_injective());
        assert!(GraphMorphism::identity(f.dom()).is_injective());
    }
}
