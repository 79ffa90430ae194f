//! Per-node routing tables with ranked candidate next hops.
//!
//! A max-flow table for owner `i` is built on `G' = G - {i}`. For each
//! destination `t`, every neighbor `j` of `i` that still reaches `t` in `G'`
//! becomes a candidate scored
//!
//! ```text
//! gamma(j) = w_flow * maxflow_G'(j, t) + w_dist * dist_G'(j, t)
//! ```
//!
//! and candidates are sorted by descending score, smaller id first on ties.
//! Neighbors that cannot reach `t` without going back through `i` are left
//! out. The shortest-path baseline uses the same table shape so that the
//! forwarding simulator can run either.
//!
//! Scores are exact integers: flows and hop counts are integers and so are
//! the weights.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::flow::{bfs_distances, FlowNetwork, FlowTree};
use crate::frr::{self, FailureSet};
use crate::graph::{Graph, NodeId, Route};

/// Weights of the max-flow and distance criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weights {
    pub flow: i64,
    pub distance: i64,
}

impl Weights {
    /// Favors short routes.
    pub const SHORT: Weights = Weights { flow: 2, distance: -5 };
    pub const BALANCED: Weights = Weights { flow: 5, distance: -5 };
    /// Favors well-connected routes.
    pub const CONNECTED: Weights = Weights { flow: 5, distance: -1 };
    pub const STANDARD: [Weights; 3] = [Self::SHORT, Self::BALANCED, Self::CONNECTED];

    pub fn new(flow: i64, distance: i64) -> Result<Self> {
        if flow == 0 && distance == 0 {
            return Err(Error::ZeroWeights);
        }
        Ok(Weights { flow, distance })
    }

    pub fn score(&self, flow: u32, distance: u32) -> i64 {
        self.flow * i64::from(flow) + self.distance * i64::from(distance)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.flow, self.distance)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub neighbor: NodeId,
    pub gamma: i64,
    /// Max-flow from the neighbor to the destination. `None` in shortest-path
    /// tables, which do not compute it.
    pub flow: Option<u32>,
    pub distance: u32,
}

/// One node's table: `entries[t]` lists the candidates towards `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutingTable {
    owner: NodeId,
    entries: Vec<Vec<Candidate>>,
}

impl RoutingTable {
    pub fn owner(&self) -> NodeId {
        self.owner
    }

    /// Candidates towards `dest`, best first. Empty when there is none.
    pub fn candidates(&self, dest: NodeId) -> &[Candidate] {
        self.entries.get(dest.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Writes one `owner dest : neighbor(gamma,flow,dist) ...` line per
    /// destination, destinations ascending. Missing flows print as `-`.
    pub fn dump<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        for (t, list) in self.entries.iter().enumerate() {
            if t == self.owner.index() {
                continue;
            }
            write!(out, "{} {} :", self.owner, t)?;
            for c in list {
                write!(out, " {}({},", c.neighbor, c.gamma)?;
                match c.flow {
                    Some(f) => write!(out, "{f}")?,
                    None => out.write_char('-')?,
                }
                write!(out, ",{})", c.distance)?;
            }
            out.write_char('\n')?;
        }
        Ok(())
    }
}

/// Tables of every node of a graph, indexed by owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSet {
    tables: Vec<RoutingTable>,
}

impl TableSet {
    pub fn from_tables(mut tables: Vec<RoutingTable>, node_count: usize) -> Self {
        tables.sort_by_key(|t| t.owner);
        let mut out: Vec<RoutingTable> = (0..node_count)
            .map(|i| RoutingTable {
                owner: NodeId(i as u32),
                entries: Vec::new(),
            })
            .collect();
        for t in tables {
            let i = t.owner.index();
            out[i] = t;
        }
        TableSet { tables: out }
    }

    pub fn get(&self, owner: NodeId) -> Option<&RoutingTable> {
        self.tables.get(owner.index())
    }

    pub fn candidates(&self, owner: NodeId, dest: NodeId) -> &[Candidate] {
        self.get(owner).map_or(&[], |t| t.candidates(dest))
    }

    pub fn iter(&self) -> impl Iterator<Item = &RoutingTable> {
        self.tables.iter()
    }

    pub fn dump<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        self.tables.iter().try_for_each(|t| t.dump(out))
    }
}

/// How the per-neighbor max-flow values are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FlowMethod {
    /// One Gusfield flow tree per owner (`n - 2` max-flow runs).
    #[default]
    FlowTree,
    /// One max-flow run per (neighbor, destination) pair.
    PerPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Measure {
    neighbor: NodeId,
    flow: u32,
    distance: u32,
}

/// Weight-independent part of a max-flow table: the flow and distance of
/// every usable neighbor, per destination. Rank it with any [`Weights`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborMetrics {
    owner: NodeId,
    entries: Vec<Vec<Measure>>,
}

impl NeighborMetrics {
    /// Measures every neighbor of `owner` towards every destination on
    /// `g - {owner}`.
    ///
    /// A neighbor that is itself the destination has distance 0 and is
    /// credited with flow `degree_G(t)`, the size of the trivial cut around
    /// `t`. Forwarding delivers over that link directly whenever it is up,
    /// so this value only matters for ordering the printed table.
    pub fn compute(g: &Graph, owner: NodeId, method: FlowMethod) -> Result<Self> {
        g.check(owner)?;
        let n = g.node_count();
        let reduced = g.remove_node(owner)?;
        let neighbors = g.neighbors(owner);
        let mut entries = vec![Vec::new(); n];

        let tree = match method {
            FlowMethod::FlowTree if !neighbors.is_empty() => Some(FlowTree::build(&reduced)),
            _ => None,
        };
        let mut net = match method {
            FlowMethod::PerPair => Some(FlowNetwork::new(&reduced)),
            FlowMethod::FlowTree => None,
        };

        for t in reduced.nodes() {
            if neighbors.is_empty() {
                break;
            }
            let dist = bfs_distances(&reduced, t);
            let tree_flows = tree.as_ref().map(|tr| tr.flows_from(t));
            let list = &mut entries[t.index()];
            for &j in neighbors {
                let Some(d) = dist[j.index()] else {
                    continue;
                };
                let flow = if j == t {
                    g.neighbors(t).len() as u32
                } else if let Some(flows) = &tree_flows {
                    flows[j.index()]
                } else {
                    net.as_mut().expect("per-pair network").max_flow(j, t)
                };
                debug_assert!(flow >= 1);
                list.push(Measure {
                    neighbor: j,
                    flow,
                    distance: d,
                });
            }
        }
        Ok(NeighborMetrics { owner, entries })
    }

    pub fn owner(&self) -> NodeId {
        self.owner
    }

    pub fn rank(&self, w: Weights) -> RoutingTable {
        let entries = self
            .entries
            .iter()
            .map(|list| {
                let mut cands: Vec<Candidate> = list
                    .iter()
                    .map(|m| Candidate {
                        neighbor: m.neighbor,
                        gamma: w.score(m.flow, m.distance),
                        flow: Some(m.flow),
                        distance: m.distance,
                    })
                    .collect();
                sort_candidates(&mut cands);
                cands
            })
            .collect();
        RoutingTable {
            owner: self.owner,
            entries,
        }
    }
}

fn sort_candidates(cands: &mut [Candidate]) {
    cands.sort_by(|a, b| b.gamma.cmp(&a.gamma).then(a.neighbor.cmp(&b.neighbor)));
}

/// Max-flow table of `owner`.
pub fn build_table_maxflow(g: &Graph, owner: NodeId, w: Weights) -> Result<RoutingTable> {
    Ok(NeighborMetrics::compute(g, owner, FlowMethod::default())?.rank(w))
}

/// Max-flow tables of every node of `g`.
pub fn build_tables_maxflow(g: &Graph, w: Weights) -> TableSet {
    let tables = g
        .nodes()
        .map(|v| build_table_maxflow(g, v, w).expect("node is present"))
        .collect();
    TableSet::from_tables(tables, g.node_count())
}

/// Shortest-path table of `owner`: towards each `t`, the neighbors one hop
/// closer to `t` than the owner, ascending by id. The head candidate is the
/// next hop of [`crate::flow::shortest_path`].
pub fn build_table_dijkstra(g: &Graph, owner: NodeId) -> Result<RoutingTable> {
    g.check(owner)?;
    let mut entries = vec![Vec::new(); g.node_count()];
    for t in g.nodes() {
        if t != owner {
            let dist = bfs_distances(g, t);
            entries[t.index()] = shortest_next_hops(g, owner, &dist);
        }
    }
    Ok(RoutingTable { owner, entries })
}

/// Shortest-path tables of every node, from one search per destination.
pub fn build_tables_dijkstra(g: &Graph) -> TableSet {
    let n = g.node_count();
    let mut entries: Vec<Vec<Vec<Candidate>>> = vec![vec![Vec::new(); n]; n];
    for t in g.nodes() {
        let dist = bfs_distances(g, t);
        for owner in g.nodes() {
            if owner != t {
                entries[owner.index()][t.index()] = shortest_next_hops(g, owner, &dist);
            }
        }
    }
    let tables = entries
        .into_iter()
        .enumerate()
        .filter(|(i, _)| g.contains(NodeId(*i as u32)))
        .map(|(i, entries)| RoutingTable {
            owner: NodeId(i as u32),
            entries,
        })
        .collect();
    TableSet::from_tables(tables, n)
}

fn shortest_next_hops(g: &Graph, owner: NodeId, dist_to_t: &[Option<u32>]) -> Vec<Candidate> {
    let Some(d) = dist_to_t[owner.index()] else {
        return Vec::new();
    };
    // gamma = -distance keeps the descending-score ordering rule meaningful
    g.neighbors(owner)
        .iter()
        .filter(|j| dist_to_t[j.index()] == Some(d - 1))
        .map(|&j| Candidate {
            neighbor: j,
            gamma: -i64::from(d - 1),
            flow: None,
            distance: d - 1,
        })
        .collect()
}

/// The route a packet takes from `s` to `t` over `tables` when nothing has
/// failed. `None` when `t` is unreachable.
pub fn primary_route(tables: &TableSet, g: &Graph, s: NodeId, t: NodeId) -> Result<Option<Route>> {
    let outcome = frr::forward(g, tables, &FailureSet::new(), s, t)?;
    Ok(outcome.final_route)
}
