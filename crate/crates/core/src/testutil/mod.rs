use std::vec::Vec;

use proptest::prelude::*;

use crate::graph::{Graph, NodeId};

pub mod oracle;

pub fn path(n: u32) -> Graph {
    Graph::from_edges(n as usize, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: u32) -> Graph {
    Graph::from_edges(n as usize, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// Node 0 joined to nodes `1..n`.
pub fn star(n: u32) -> Graph {
    Graph::from_edges(n as usize, (1..n).map(|v| (0, v))).unwrap()
}

pub fn complete(n: u32) -> Graph {
    Graph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn to_adj(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.node_count())
        .map(|v| g.neighbors(NodeId(v as u32)).iter().map(|x| x.index()).collect())
        .collect()
}

/// Graphs with 2..=max_n nodes, each pair joined with probability 1/2.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}
