//! Unit-capacity max-flow / min-cut and unweighted shortest paths.
//!
//! With every edge at capacity 1 the `s`-`t` max-flow value is both the number
//! of edge-disjoint `s`-`t` paths and the size of a minimum `s`-`t` edge cut.
//! The solver is Dinic's blocking-flow algorithm on a residual network where
//! each undirected edge is a pair of opposite arcs that act as each other's
//! reverse.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Route};

const UNSEEN: u32 = u32::MAX;

/// Hop count of a shortest path, or `Unreachable`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Hops(u32),
    Unreachable,
}

impl Distance {
    pub fn hops(self) -> Option<u32> {
        match self {
            Distance::Hops(h) => Some(h),
            Distance::Unreachable => None,
        }
    }

    pub fn is_reachable(self) -> bool {
        matches!(self, Distance::Hops(_))
    }
}

impl From<Option<u32>> for Distance {
    fn from(d: Option<u32>) -> Self {
        d.map_or(Distance::Unreachable, Distance::Hops)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Hops(h) => write!(f, "{h}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Residual network for repeated max-flow queries on one graph.
///
/// Arcs are stored per tail node in CSR order. `rev[a]` is the opposite arc
/// of the same undirected edge; both start at capacity 1, so cancelling flow
/// on one direction frees capacity on the other.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    first: Vec<u32>,
    head: Vec<u32>,
    rev: Vec<u32>,
    cap: Vec<u8>,
    level: Vec<u32>,
    cursor: Vec<u32>,
    queue: Vec<u32>,
    stack: Vec<u32>,
}

impl FlowNetwork {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut first = Vec::with_capacity(n + 1);
        let mut head = Vec::with_capacity(2 * g.edge_count());
        first.push(0u32);
        for u in 0..n {
            head.extend(g.neighbors(NodeId(u as u32)).iter().map(|v| v.0));
            first.push(head.len() as u32);
        }
        let mut rev = vec![0u32; head.len()];
        for u in 0..n {
            for a in first[u]..first[u + 1] {
                let v = head[a as usize] as usize;
                let lo = first[v] as usize;
                let hi = first[v + 1] as usize;
                let pos = head[lo..hi].binary_search(&(u as u32)).expect("adjacency is symmetric");
                rev[a as usize] = (lo + pos) as u32;
            }
        }
        let arcs = head.len();
        FlowNetwork {
            first,
            head,
            rev,
            cap: vec![1; arcs],
            level: vec![UNSEEN; n],
            cursor: vec![0; n],
            queue: Vec::with_capacity(n),
            stack: Vec::new(),
        }
    }

    fn node_count(&self) -> usize {
        self.first.len() - 1
    }

    /// Max-flow value from `s` to `t`. Leaves the final residual network in
    /// place for [`FlowNetwork::source_side`] and [`FlowNetwork::flow_on`].
    pub fn max_flow(&mut self, s: NodeId, t: NodeId) -> u32 {
        debug_assert_ne!(s, t);
        self.cap.fill(1);
        let mut flow = 0;
        while self.build_levels(s.0, t.0) {
            let n = self.node_count();
            self.cursor.copy_from_slice(&self.first[..n]);
            while self.augment(s.0, t.0) {
                flow += 1;
            }
        }
        flow
    }

    fn build_levels(&mut self, s: u32, t: u32) -> bool {
        self.level.fill(UNSEEN);
        self.queue.clear();
        self.level[s as usize] = 0;
        self.queue.push(s);
        let mut i = 0;
        while i < self.queue.len() {
            let u = self.queue[i] as usize;
            i += 1;
            let next = self.level[u] + 1;
            if next > self.level[t as usize] {
                break;
            }
            for a in self.first[u]..self.first[u + 1] {
                let v = self.head[a as usize] as usize;
                if self.cap[a as usize] > 0 && self.level[v] == UNSEEN {
                    self.level[v] = next;
                    self.queue.push(v as u32);
                }
            }
        }
        self.level[t as usize] != UNSEEN
    }

    /// Finds one augmenting path in the level graph and pushes a unit along it.
    fn augment(&mut self, s: u32, t: u32) -> bool {
        self.stack.clear();
        let mut u = s;
        loop {
            if u == t {
                for &a in &self.stack {
                    self.cap[a as usize] -= 1;
                    self.cap[self.rev[a as usize] as usize] += 1;
                }
                return true;
            }
            let ui = u as usize;
            let mut advanced = false;
            while self.cursor[ui] < self.first[ui + 1] {
                let a = self.cursor[ui] as usize;
                let v = self.head[a];
                if self.cap[a] > 0 && self.level[v as usize] == self.level[ui] + 1 {
                    self.stack.push(a as u32);
                    u = v;
                    advanced = true;
                    break;
                }
                self.cursor[ui] += 1;
            }
            if !advanced {
                if u == s {
                    return false;
                }
                // dead end for the rest of this phase
                self.level[ui] = UNSEEN;
                let a = self.stack.pop().expect("non-source node has an incoming arc");
                u = self.head[self.rev[a as usize] as usize];
                self.cursor[u as usize] += 1;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network of the last run.
    pub fn source_side(&mut self, s: NodeId) -> Vec<bool> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        seen[s.index()] = true;
        self.queue.clear();
        self.queue.push(s.0);
        let mut i = 0;
        while i < self.queue.len() {
            let u = self.queue[i] as usize;
            i += 1;
            for a in self.first[u]..self.first[u + 1] {
                let v = self.head[a as usize] as usize;
                if self.cap[a as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    self.queue.push(v as u32);
                }
            }
        }
        seen
    }

    /// Net flow pushed from `u` to `v` in the last run: -1, 0 or 1.
    fn net_flow(&self, a: usize) -> i8 {
        // both arcs start at 1; pushing u->v moves one unit from a to rev(a)
        self.cap[self.rev[a] as usize] as i8 - 1
    }
}

fn check_pair(g: &Graph, s: NodeId, t: NodeId) -> Result<()> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return Err(Error::SameEndpoints(s));
    }
    Ok(())
}

/// Number of edge-disjoint `s`-`t` paths in `g`.
pub fn max_flow(g: &Graph, s: NodeId, t: NodeId) -> Result<u32> {
    check_pair(g, s, t)?;
    Ok(FlowNetwork::new(g).max_flow(s, t))
}

/// A minimum `s`-`t` edge cut: the edges leaving the residual-reachable side
/// of `s`. The edge list is sorted and each edge is given as `(small, large)`.
pub fn min_cut(g: &Graph, s: NodeId, t: NodeId) -> Result<(u32, Vec<(NodeId, NodeId)>)> {
    check_pair(g, s, t)?;
    let mut net = FlowNetwork::new(g);
    let value = net.max_flow(s, t);
    let side = net.source_side(s);
    let cut: Vec<_> = g.edges().filter(|(u, v)| side[u.index()] != side[v.index()]).collect();
    debug_assert_eq!(cut.len() as u32, value);
    Ok((value, cut))
}

/// Splits a maximum `s`-`t` flow into `max_flow` edge-disjoint simple paths.
pub fn disjoint_paths(g: &Graph, s: NodeId, t: NodeId) -> Result<Vec<Route>> {
    check_pair(g, s, t)?;
    let mut net = FlowNetwork::new(g);
    let value = net.max_flow(s, t);
    let n = g.node_count();
    // remaining outgoing flow arcs per node
    let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for (u, outs) in out.iter_mut().enumerate() {
        for a in net.first[u]..net.first[u + 1] {
            if net.net_flow(a as usize) > 0 {
                outs.push(NodeId(net.head[a as usize]));
            }
        }
        outs.reverse();
    }
    let mut paths = Vec::with_capacity(value as usize);
    for _ in 0..value {
        let mut walk = vec![s];
        let mut pos = vec![usize::MAX; n];
        pos[s.index()] = 0;
        let mut u = s;
        while u != t {
            let v = out[u.index()].pop().expect("flow is conserved");
            if pos[v.index()] != usize::MAX {
                // drop the cycle that closes at v
                for w in walk.drain(pos[v.index()] + 1..) {
                    pos[w.index()] = usize::MAX;
                }
            } else {
                pos[v.index()] = walk.len();
                walk.push(v);
            }
            u = v;
        }
        paths.push(Route::new(walk));
    }
    Ok(paths)
}

/// Hop distances from `from` to every node; `None` where unreachable.
pub fn bfs_distances(g: &Graph, from: NodeId) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.node_count()];
    if !g.contains(from) {
        return dist;
    }
    dist[from.index()] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u.index()].map(|d| d + 1);
        for &v in g.neighbors(u) {
            if dist[v.index()].is_none() {
                dist[v.index()] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn shortest_distance(g: &Graph, s: NodeId, t: NodeId) -> Result<Distance> {
    g.check(s)?;
    g.check(t)?;
    Ok(bfs_distances(g, s)[t.index()].into())
}

pub fn has_path(g: &Graph, s: NodeId, t: NodeId) -> Result<bool> {
    Ok(shortest_distance(g, s, t)?.is_reachable())
}

/// The canonical shortest `s`-`t` path: from each vertex, step to the
/// smallest-id neighbor that is one hop closer to `t`.
pub fn shortest_path(g: &Graph, s: NodeId, t: NodeId) -> Result<Option<Route>> {
    check_pair(g, s, t)?;
    let dist = bfs_distances(g, t);
    Ok(walk_down(g, &dist, s))
}

/// Follows strictly decreasing distances (smallest id first) down to zero.
pub(crate) fn walk_down(g: &Graph, dist_to_t: &[Option<u32>], s: NodeId) -> Option<Route> {
    let mut d = dist_to_t[s.index()]?;
    let mut route = vec![s];
    let mut u = s;
    while d > 0 {
        u = *g
            .neighbors(u)
            .iter()
            .find(|v| dist_to_t[v.index()] == Some(d - 1))
            .expect("a node at distance d has a neighbor at d - 1");
        route.push(u);
        d -= 1;
    }
    Some(Route::new(route))
}

/// Gusfield's equivalent flow tree: `n - 1` max-flow runs give the max-flow
/// value of every pair as the lightest edge on their tree path.
#[derive(Clone, Debug)]
pub(crate) struct FlowTree {
    parent: Vec<u32>,
    weight: Vec<u32>,
    children: Vec<Vec<u32>>,
}

impl FlowTree {
    pub(crate) fn build(g: &Graph) -> Self {
        let n = g.node_count();
        let nodes: Vec<NodeId> = g.nodes().collect();
        let mut parent = vec![UNSEEN; n];
        let mut weight = vec![0; n];
        if let Some((&root, rest)) = nodes.split_first() {
            for v in rest {
                parent[v.index()] = root.0;
            }
            let mut net = FlowNetwork::new(g);
            for (i, &s) in rest.iter().enumerate() {
                let t = NodeId(parent[s.index()]);
                weight[s.index()] = net.max_flow(s, t);
                let side = net.source_side(s);
                for &v in &rest[i + 1..] {
                    if side[v.index()] && parent[v.index()] == t.0 {
                        parent[v.index()] = s.0;
                    }
                }
            }
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if parent[v] != UNSEEN {
                children[parent[v] as usize].push(v as u32);
            }
        }
        FlowTree {
            parent,
            weight,
            children,
        }
    }

    /// Max-flow value from `x` to every node; `u32::MAX` at `x` itself and
    /// 0 at nodes not in the tree.
    pub(crate) fn flows_from(&self, x: NodeId) -> Vec<u32> {
        let n = self.parent.len();
        let mut out = vec![0; n];
        let mut seen = vec![false; n];
        out[x.index()] = u32::MAX;
        seen[x.index()] = true;
        let mut stack = vec![x.0];
        while let Some(u) = stack.pop() {
            let here = out[u as usize];
            // tree edges: u-child (weight[child]) and u-parent (weight[u])
            let up = self.parent[u as usize];
            let mut visit = |v: u32, w: u32| {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    out[v as usize] = here.min(w);
                    stack.push(v);
                }
            };
            if up != UNSEEN {
                visit(up, self.weight[u as usize]);
            }
            for &c in &self.children[u as usize] {
                visit(c, self.weight[c as usize]);
            }
        }
        out
    }
}
