//! Small hand-built topologies with known routing behavior.

use flowroute_core::{Graph, NodeId};

pub struct Named {
    pub graph: Graph,
    pub names: &'static [&'static str],
}

impl Named {
    fn build(names: &'static [&'static str], edges: &[(&str, &str)]) -> Named {
        let idx = |x: &str| names.iter().position(|n| *n == x).expect("known name") as u32;
        let graph = Graph::from_edges(names.len(), edges.iter().map(|(a, b)| (idx(a), idx(b)))).unwrap();
        Named { graph, names }
    }

    pub fn id(&self, name: &str) -> NodeId {
        NodeId(self.names.iter().position(|n| *n == name).expect("known name") as u32)
    }

    pub fn names_of(&self, vs: &[NodeId]) -> Vec<&'static str> {
        vs.iter().map(|v| self.names[v.index()]).collect()
    }
}

/// `s` reaches `t` through `a` (two disjoint branches `a-b-t`, `a-c-t`) or
/// through `e` (a single chain `e-d-t`). Both are two hops from `t`.
pub fn two_branches() -> Named {
    Named::build(
        &["s", "a", "b", "c", "e", "d", "t"],
        &[
            ("s", "a"),
            ("s", "e"),
            ("a", "b"),
            ("a", "c"),
            ("b", "t"),
            ("c", "t"),
            ("e", "d"),
            ("d", "t"),
        ],
    )
}

/// `a` prefers `b`, whose only link to `t` is the one that fails; `h` is a
/// dead end hanging off `a` and `c`. The message has to back out of both
/// before it finds the long way round through `c-d-e-f-g`.
pub fn dead_ends() -> (Named, (NodeId, NodeId)) {
    let n = Named::build(
        &["s", "a", "b", "c", "d", "e", "f", "g", "h", "t"],
        &[
            ("s", "a"),
            ("a", "b"),
            ("a", "c"),
            ("a", "h"),
            ("b", "t"),
            ("c", "h"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("f", "g"),
            ("g", "t"),
        ],
    );
    let failed = (n.id("b"), n.id("t"));
    (n, failed)
}

/// `s` has four neighbors. `g` and `h` only reach each other; `a` leads to a
/// single chain; `c` reaches `t` over two disjoint chains.
pub fn dense_side() -> Named {
    Named::build(
        &["s", "a", "b", "c", "d", "e", "g", "h", "t"],
        &[
            ("s", "a"),
            ("s", "c"),
            ("s", "g"),
            ("s", "h"),
            ("g", "h"),
            ("a", "b"),
            ("b", "t"),
            ("c", "d"),
            ("d", "t"),
            ("c", "e"),
            ("e", "t"),
        ],
    )
}
