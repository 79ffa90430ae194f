//! Fast-reroute forwarding with backtracking.
//!
//! A message walks the network using tables computed on the pre-failure
//! graph. Each holder `i`:
//!
//! 1. delivers directly if `t` is a neighbor and the link to it is up;
//! 2. records itself in the message's visited list;
//! 3. sends the message to its best-ranked candidate for `t` that is not yet
//!    visited, not failed, and reachable over a live link;
//! 4. otherwise returns the message to the node it first received it from.
//!
//! Nodes only see failures on their own links and neighbors. A node that gets
//! a message back resumes its candidate list where it stopped. If the source
//! runs out of candidates there is no route.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::has_path;
use crate::graph::{normalize, Graph, NodeId, Route};
use crate::routing::TableSet;

/// Links and nodes that are down. Tables do not know about them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FailureSet {
    links: BTreeSet<(NodeId, NodeId)>,
    nodes: BTreeSet<NodeId>,
}

impl FailureSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fail_link(&mut self, u: NodeId, v: NodeId) -> &mut Self {
        self.links.insert(normalize(u, v));
        self
    }

    pub fn fail_node(&mut self, v: NodeId) -> &mut Self {
        self.nodes.insert(v);
        self
    }

    pub fn link_failed(&self, u: NodeId, v: NodeId) -> bool {
        self.links.contains(&normalize(u, v))
    }

    pub fn node_failed(&self, v: NodeId) -> bool {
        self.nodes.contains(&v)
    }

    pub fn failed_links(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.links.iter().copied()
    }

    pub fn failed_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty() && self.nodes.is_empty()
    }

    /// Every failed link and node must exist in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.nodes {
            g.check(v)?;
        }
        for &(u, v) in &self.links {
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
        }
        Ok(())
    }

    /// `g` with the failed nodes and links taken out.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.validate(g)?;
        let mut out = g.clone();
        for &v in &self.nodes {
            out = out.remove_node(v)?;
        }
        let alive: Vec<_> = self
            .links
            .iter()
            .copied()
            .filter(|(u, v)| out.has_edge(*u, *v))
            .collect();
        out.remove_edges(&alive)
    }
}

/// The in-flight packet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub dest: NodeId,
    /// Every node that has held the message, in first-visit order.
    pub visited: Vec<NodeId>,
    /// The active path from the source to the current holder.
    pub path_stack: Vec<NodeId>,
    pub hop_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeliveryOutcome {
    pub delivered: bool,
    /// The active path at delivery, source to destination.
    pub final_route: Option<Route>,
    /// Every holder in order, repeated on backtracks, ending with the
    /// destination when delivered.
    pub trace: Vec<NodeId>,
    /// The message's visited list at the end of the run.
    pub visited: Vec<NodeId>,
    /// Transmissions made, backtracks included.
    pub hop_count: usize,
}

/// Forwards one message from `s` to `t` under `failures`, using `tables`
/// built on the pre-failure graph `g`.
pub fn forward(g: &Graph, tables: &TableSet, failures: &FailureSet, s: NodeId, t: NodeId) -> Result<DeliveryOutcome> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return Err(Error::SameEndpoints(s));
    }
    failures.validate(g)?;
    for v in [s, t] {
        if failures.node_failed(v) {
            return Err(Error::FailedEndpoint(v));
        }
    }

    let mut msg = Message {
        dest: t,
        visited: Vec::new(),
        path_stack: vec![s],
        hop_budget: 4 * g.edge_count(),
    };
    let mut is_visited = vec![false; g.node_count()];
    // per-node position in its candidate list for this message
    let mut cursor = vec![0usize; g.node_count()];
    let mut trace = vec![s];
    let mut hops = 0usize;
    let budget = msg.hop_budget;
    let transmit = |hops: &mut usize| -> Result<()> {
        *hops += 1;
        if *hops > budget {
            return Err(Error::HopBudgetExhausted { budget });
        }
        Ok(())
    };

    loop {
        let i = *msg.path_stack.last().expect("stack holds the current node");

        if g.has_edge(i, t) && !failures.link_failed(i, t) {
            transmit(&mut hops)?;
            msg.path_stack.push(t);
            trace.push(t);
            return Ok(DeliveryOutcome {
                delivered: true,
                final_route: Some(Route::new(msg.path_stack)),
                trace,
                visited: msg.visited,
                hop_count: hops,
            });
        }

        if !is_visited[i.index()] {
            is_visited[i.index()] = true;
            msg.visited.push(i);
        }

        let cands = tables.candidates(i, t);
        let pos = &mut cursor[i.index()];
        let mut next = None;
        while *pos < cands.len() {
            let j = cands[*pos].neighbor;
            *pos += 1;
            // skipped candidates stay unusable: visited marks and failures are permanent
            if !is_visited[j.index()] && !failures.node_failed(j) && !failures.link_failed(i, j) {
                next = Some(j);
                break;
            }
        }

        match next {
            Some(j) => {
                transmit(&mut hops)?;
                msg.path_stack.push(j);
                trace.push(j);
            }
            None => {
                msg.path_stack.pop();
                match msg.path_stack.last() {
                    Some(&h) => {
                        transmit(&mut hops)?;
                        trace.push(h);
                    }
                    None => {
                        return Ok(DeliveryOutcome {
                            delivered: false,
                            final_route: None,
                            trace,
                            visited: msg.visited,
                            hop_count: hops,
                        });
                    }
                }
            }
        }
    }
}

/// Whether forwarding delivers exactly when `t` is still reachable from `s`
/// once the failures are taken out of `g`.
pub fn check_delivery_guarantee(
    g: &Graph,
    failures: &FailureSet,
    s: NodeId,
    t: NodeId,
    tables: &TableSet,
) -> Result<bool> {
    let outcome = forward(g, tables, failures, s, t)?;
    let reachable = has_path(&failures.apply(g)?, s, t)?;
    Ok(outcome.delivered == reachable)
}
