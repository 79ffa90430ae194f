//! Undirected simple graphs with unit edge capacities.
//!
//! Node ids are dense indices in `[0, node_count)`. Removing a node masks it
//! instead of re-indexing, so ids (and the routing tables keyed by them) stay
//! valid between a graph and any of its reduced views.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Orders an undirected edge so that the smaller id comes first.
#[inline]
pub fn normalize(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable undirected simple graph.
///
/// Adjacency lists are kept sorted by id, which is what makes neighbor
/// iteration (and everything built on it) deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    present: Vec<bool>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            present: vec![true; n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (u, v) in edges {
            builder.add_edge(NodeId(u), NodeId(v))?;
        }
        Ok(builder.build())
    }

    /// Size of the id space, including removed nodes.
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.present.get(v.index()).copied().unwrap_or(false)
    }

    pub(crate) fn check(&self, v: NodeId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidNode(v))
        }
    }

    /// Ids of all nodes that have not been removed, ascending.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, p)| **p)
            .map(|(i, _)| NodeId(i as u32))
    }

    /// Sorted neighbors of `v`; empty for unknown or removed ids.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        self.adjacency.get(v.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.adjacency[v.index()].len())
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Every edge once, as `(small, large)`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            let u = NodeId(u as u32);
            adj.iter().filter(move |v| u < **v).map(move |v| (u, *v))
        })
    }

    /// `G - {v}`: drops `v` and its incident edges; other ids are unchanged.
    pub fn remove_node(&self, v: NodeId) -> Result<Graph> {
        self.check(v)?;
        let mut out = self.clone();
        let removed = core::mem::take(&mut out.adjacency[v.index()]);
        for u in &removed {
            let adj = &mut out.adjacency[u.index()];
            if let Ok(pos) = adj.binary_search(&v) {
                adj.remove(pos);
            }
        }
        out.present[v.index()] = false;
        out.edge_count -= removed.len();
        Ok(out)
    }

    /// Drops the listed edges. Every edge must exist; listing one twice is an
    /// error on the second occurrence.
    pub fn remove_edges(&self, edges: &[(NodeId, NodeId)]) -> Result<Graph> {
        let mut out = self.clone();
        for &(u, v) in edges {
            out.check(u)?;
            out.check(v)?;
            let pu = out.adjacency[u.index()]
                .binary_search(&v)
                .map_err(|_| Error::MissingEdge(u, v))?;
            out.adjacency[u.index()].remove(pu);
            let pv = out.adjacency[v.index()]
                .binary_search(&u)
                .expect("adjacency is symmetric");
            out.adjacency[v.index()].remove(pv);
            out.edge_count -= 1;
        }
        Ok(out)
    }
}

/// Mutable construction side of [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency.get(u.index()).is_some_and(|adj| adj.contains(&v))
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency.get(v.index()).map_or(0, Vec::len)
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        let n = self.adjacency.len();
        for x in [u, v] {
            if x.index() >= n {
                return Err(Error::InvalidNode(x));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            let (a, b) = normalize(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.adjacency[u.index()].push(v);
        self.adjacency[v.index()].push(u);
        self.edge_count += 1;
        Ok(())
    }

    /// Only used by the small-world rewiring step.
    pub(crate) fn remove_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        let Some(pos) = self.adjacency[u.index()].iter().position(|x| *x == v) else {
            return false;
        };
        self.adjacency[u.index()].swap_remove(pos);
        let pos = self.adjacency[v.index()]
            .iter()
            .position(|x| *x == u)
            .expect("adjacency is symmetric");
        self.adjacency[v.index()].swap_remove(pos);
        self.edge_count -= 1;
        true
    }

    pub fn build(mut self) -> Graph {
        for adj in &mut self.adjacency {
            adj.sort_unstable();
        }
        let n = self.adjacency.len();
        Graph {
            adjacency: self.adjacency,
            present: vec![true; n],
            edge_count: self.edge_count,
        }
    }
}

/// Simple path given as its vertex sequence, endpoints included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Route(Vec<NodeId>);

impl Route {
    pub fn new(vertices: Vec<NodeId>) -> Self {
        Route(vertices)
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.0
    }

    /// Number of vertices, endpoints included: `[s, t]` has size 2.
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn source(&self) -> Option<NodeId> {
        self.0.first().copied()
    }

    pub fn destination(&self) -> Option<NodeId> {
        self.0.last().copied()
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[NodeId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// Consecutive vertices adjacent in `g` and no vertex repeated.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.0.is_empty() || !self.0.iter().all(|v| g.contains(*v)) {
            return false;
        }
        let mut seen = vec![false; g.node_count()];
        for v in &self.0 {
            if core::mem::replace(&mut seen[v.index()], true) {
                return false;
            }
        }
        self.edges().all(|(u, v)| g.has_edge(u, v))
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.0
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn edge_set(g: &Graph) -> Vec<(u32, u32)> {
        g.edges().map(|(u, v)| (u.0, v.0)).collect()
    }

    #[test]
    fn remove_node_from_triangle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = g.remove_node(NodeId(0)).unwrap();
        assert_eq!(edge_set(&h), vec![(1, 2)]);
        assert!(!h.contains(NodeId(0)));
        assert_eq!(h.node_count(), 3);
        // the original is untouched
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn remove_cut_vertex_disconnects_path() {
        let h = path(3).remove_node(NodeId(1)).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.nodes().collect::<Vec<_>>(), vec![NodeId(0), NodeId(2)]);
    }

    #[test]
    fn remove_star_center() {
        let h = star(5).remove_node(NodeId(0)).unwrap();
        assert_eq!(h.edge_count(), 0);
        for v in 1..5 {
            assert_eq!(h.degree(NodeId(v)).unwrap(), 0);
        }
    }

    #[test]
    fn remove_node_rejects_bad_ids() {
        let g = path(3);
        assert_eq!(g.remove_node(NodeId(7)), Err(Error::InvalidNode(NodeId(7))));
        let h = g.remove_node(NodeId(1)).unwrap();
        assert_eq!(h.remove_node(NodeId(1)), Err(Error::InvalidNode(NodeId(1))));
    }

    #[test]
    fn remove_edges_cases() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = tri.remove_edges(&[(NodeId(0), NodeId(1))]).unwrap();
        assert_eq!(edge_set(&h), vec![(0, 2), (1, 2)]);

        let c4 = cycle(4);
        let h = c4
            .remove_edges(&[(NodeId(0), NodeId(1)), (NodeId(2), NodeId(3))])
            .unwrap();
        assert_eq!(edge_set(&h), vec![(0, 3), (1, 2)]);

        assert_eq!(c4.remove_edges(&[]).unwrap(), c4);
        assert_eq!(
            c4.remove_edges(&[(NodeId(0), NodeId(2))]),
            Err(Error::MissingEdge(NodeId(0), NodeId(2)))
        );
    }

    #[test]
    fn degrees() {
        let k5 = complete(5);
        for v in k5.nodes() {
            assert_eq!(k5.degree(v).unwrap(), 4);
        }
        assert_eq!(Graph::empty(1).degree(NodeId(0)).unwrap(), 0);
        assert_eq!(star(8).degree(NodeId(0)).unwrap(), 7);
        assert!(star(8).degree(NodeId(8)).is_err());
    }

    #[test]
    fn builder_rejects_non_simple_input() {
        let mut b = GraphBuilder::new(3);
        assert_eq!(b.add_edge(NodeId(1), NodeId(1)), Err(Error::SelfLoop(NodeId(1))));
        b.add_edge(NodeId(2), NodeId(0)).unwrap();
        assert_eq!(
            b.add_edge(NodeId(0), NodeId(2)),
            Err(Error::DuplicateEdge(NodeId(0), NodeId(2)))
        );
        assert_eq!(b.add_edge(NodeId(0), NodeId(3)), Err(Error::InvalidNode(NodeId(3))));
    }

    #[test]
    fn route_accessors() {
        let r = Route::new(vec![NodeId(0), NodeId(1), NodeId(2)]);
        assert_eq!(r.size(), 3);
        assert_eq!(r.interior(), &[NodeId(1)]);
        assert!(r.is_valid_in(&path(3)));
        assert!(!Route::new(vec![NodeId(0), NodeId(2)]).is_valid_in(&path(3)));
        assert!(!Route::new(vec![NodeId(0), NodeId(1), NodeId(0)]).is_valid_in(&path(3)));
        assert_eq!(r.to_string(), "0 -> 1 -> 2");
    }

    proptest! {
        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph(12)) {
            let sum: usize = g.nodes().map(|v| g.degree(v).unwrap()).sum();
            prop_assert_eq!(sum, 2 * g.edge_count());
            for (u, v) in g.edges() {
                prop_assert!(g.has_edge(v, u));
            }
        }

        #[test]
        fn node_removal_commutes(g in arb_graph(10), a in 0u32..10, b in 0u32..10) {
            prop_assume!(a != b && (a as usize) < g.node_count() && (b as usize) < g.node_count());
            let (a, b) = (NodeId(a), NodeId(b));
            let ab = g.remove_node(a).unwrap().remove_node(b).unwrap();
            let ba = g.remove_node(b).unwrap().remove_node(a).unwrap();
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn removing_edges_keeps_node_count(g in arb_graph(10), take in 0usize..6) {
            let edges: Vec<_> = g.edges().take(take).collect();
            let h = g.remove_edges(&edges).unwrap();
            prop_assert_eq!(h.node_count(), g.node_count());
            prop_assert_eq!(h.edge_count(), g.edge_count() - edges.len());
        }
    }
}
