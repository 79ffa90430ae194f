//! Brute-force reference computations on plain adjacency lists.
//!
//! Nothing here touches the library's graph or flow code, so results can be
//! compared against it directly. Only meant for graphs with at most ~8 nodes.

use std::collections::VecDeque;
use std::vec;
use std::vec::Vec;

/// Edges of `adj` as `(u, v)` with `u < v`, in lexicographic order.
pub fn edge_list(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (u, ns) in adj.iter().enumerate() {
        for &v in ns {
            if u < v {
                out.push((u, v));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Hop distances from `s` by breadth-first search over edges not in `removed`.
pub fn distances_without(adj: &[Vec<usize>], s: usize, removed: &[(usize, usize)]) -> Vec<Option<usize>> {
    let blocked = |u: usize, v: usize| removed.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v].is_none() && !blocked(u, v) {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn distances(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    distances_without(adj, s, &[])
}

/// Maximum number of pairwise edge-disjoint simple `s`-`t` paths, found by
/// enumerating every simple path and searching over packings.
pub fn disjoint_path_count(adj: &[Vec<usize>], s: usize, t: usize) -> usize {
    assert_ne!(s, t);
    let edges = edge_list(adj);
    assert!(edges.len() <= 64);
    let index = |u: usize, v: usize| {
        let key = if u < v { (u, v) } else { (v, u) };
        edges.binary_search(&key).unwrap()
    };

    let mut paths: Vec<u64> = Vec::new();
    let mut on_path = vec![false; adj.len()];
    fn walk(
        adj: &[Vec<usize>],
        u: usize,
        t: usize,
        mask: u64,
        on_path: &mut [bool],
        index: &dyn Fn(usize, usize) -> usize,
        out: &mut Vec<u64>,
    ) {
        if u == t {
            out.push(mask);
            return;
        }
        on_path[u] = true;
        for &v in &adj[u] {
            if !on_path[v] {
                walk(adj, v, t, mask | (1 << index(u, v)), on_path, index, out);
            }
        }
        on_path[u] = false;
    }
    walk(adj, s, t, 0, &mut on_path, &index, &mut paths);

    // Upper bound for pruning: unused edges at s.
    let s_mask: u64 = adj[s].iter().map(|&v| 1u64 << index(s, v)).fold(0, |a, b| a | b);
    fn pack(paths: &[u64], from: usize, used: u64, count: usize, s_mask: u64, best: &mut usize) {
        *best = (*best).max(count);
        let room = (s_mask & !used).count_ones() as usize;
        if count + room <= *best {
            return;
        }
        for i in from..paths.len() {
            if paths[i] & used == 0 {
                pack(paths, i + 1, used | paths[i], count + 1, s_mask, best);
            }
        }
    }
    let mut best = 0;
    pack(&paths, 0, 0, 0, s_mask, &mut best);
    best
}

/// Size of the smallest edge subset whose removal leaves `t` unreachable from
/// `s`, by enumerating subsets in order of increasing size.
pub fn min_disconnecting_edges(adj: &[Vec<usize>], s: usize, t: usize) -> usize {
    assert_ne!(s, t);
    let edges = edge_list(adj);
    for k in 0..=edges.len() {
        let mut chosen = Vec::with_capacity(k);
        if subset_disconnects(adj, &edges, 0, k, &mut chosen, s, t) {
            return k;
        }
    }
    unreachable!("removing every edge disconnects any pair")
}

fn subset_disconnects(
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
    from: usize,
    k: usize,
    chosen: &mut Vec<(usize, usize)>,
    s: usize,
    t: usize,
) -> bool {
    if chosen.len() == k {
        return distances_without(adj, s, chosen)[t].is_none();
    }
    for i in from..edges.len() {
        if edges.len() - i < k - chosen.len() {
            break;
        }
        chosen.push(edges[i]);
        if subset_disconnects(adj, edges, i + 1, k, chosen, s, t) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}
