//! Route quality metrics and their aggregation over source/destination pairs.
//!
//! * size: vertex count of the route, endpoints included;
//! * degree sum: sum of the degrees (in the original graph) of all route
//!   vertices;
//! * backups per vertex: with the route's own edges removed, the number of
//!   edge-disjoint paths from each interior vertex to the destination,
//!   averaged over the interior vertices.
//!
//! Aggregates only cover pairs where the max-flow route differs from the
//! shortest-path route.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, NodeId, Route};
use crate::routing::{primary_route, TableSet, Weights};

pub fn route_size(r: &Route) -> usize {
    r.size()
}

fn check_route(g: &Graph, r: &Route) -> Result<()> {
    for &v in r.vertices() {
        g.check(v)?;
    }
    for (u, v) in r.edges() {
        if !g.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
    }
    Ok(())
}

pub fn degree_sum(g: &Graph, r: &Route) -> Result<usize> {
    check_route(g, r)?;
    Ok(r.vertices().iter().map(|v| g.neighbors(*v).len()).sum())
}

/// Backup paths summed over a route's interior vertices, and how many
/// interior vertices there are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Backups {
    pub total: u64,
    pub interior: u64,
}

impl Backups {
    pub fn per_vertex(&self) -> f64 {
        self.total as f64 / self.interior as f64
    }
}

/// `None` for routes without interior vertices, where the metric is undefined.
pub fn backups_per_vertex(g: &Graph, r: &Route) -> Result<Option<Backups>> {
    check_route(g, r)?;
    let interior = r.interior();
    let Some(t) = r.destination().filter(|_| !interior.is_empty()) else {
        return Ok(None);
    };
    let edges: Vec<_> = r.edges().collect();
    let stripped = g.remove_edges(&edges)?;
    let mut net = FlowNetwork::new(&stripped);
    let total = interior.iter().map(|&v| u64::from(net.max_flow(v, t))).sum();
    Ok(Some(Backups {
        total,
        interior: interior.len() as u64,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RouteMetrics {
    pub size: usize,
    pub deg_sum: usize,
    pub backups: Option<Backups>,
}

impl RouteMetrics {
    pub fn of(g: &Graph, r: &Route) -> Result<Self> {
        Ok(RouteMetrics {
            size: route_size(r),
            deg_sum: degree_sum(g, r)?,
            backups: backups_per_vertex(g, r)?,
        })
    }
}

/// Both algorithms' primary routes for one ordered pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairResult {
    pub src: NodeId,
    pub dst: NodeId,
    pub mf_route: Option<Route>,
    pub dj_route: Option<Route>,
    pub differs: bool,
    pub mf: Option<RouteMetrics>,
    pub dj: Option<RouteMetrics>,
}

pub fn compare_pair(g: &Graph, mf_tables: &TableSet, dj_tables: &TableSet, s: NodeId, t: NodeId) -> Result<PairResult> {
    let mf_route = primary_route(mf_tables, g, s, t)?;
    let dj_route = primary_route(dj_tables, g, s, t)?;
    let differs = match (&mf_route, &dj_route) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    };
    let dj = dj_route.as_ref().map(|r| RouteMetrics::of(g, r)).transpose()?;
    let mf = if differs {
        mf_route.as_ref().map(|r| RouteMetrics::of(g, r)).transpose()?
    } else {
        mf_route.as_ref().and(dj)
    };
    Ok(PairResult {
        src: s,
        dst: t,
        mf_route,
        dj_route,
        differs,
        mf,
        dj,
    })
}

/// Mean route metrics of one algorithm over the differing pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Averages {
    pub size: f64,
    pub deg_sum: f64,
    pub backups: Option<f64>,
}

/// One aggregated result row.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub topology: String,
    pub n: usize,
    pub params: String,
    pub weights: Weights,
    /// Pairs where both routes exist.
    pub pairs_total: u64,
    pub pairs_diff: u64,
    pub route_diff_pct: f64,
    /// `None` when no pair differs.
    pub mf: Option<Averages>,
    pub dj: Option<Averages>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Sums {
    size: u64,
    deg_sum: u64,
    backups: f64,
    with_backups: u64,
}

impl Sums {
    fn add(&mut self, m: &RouteMetrics) {
        self.size += m.size as u64;
        self.deg_sum += m.deg_sum as u64;
        if let Some(b) = m.backups {
            self.backups += b.per_vertex();
            self.with_backups += 1;
        }
    }

    fn merge(&mut self, other: &Sums) {
        self.size += other.size;
        self.deg_sum += other.deg_sum;
        self.backups += other.backups;
        self.with_backups += other.with_backups;
    }

    fn mean(&self, count: u64) -> Option<Averages> {
        (count > 0).then(|| Averages {
            size: self.size as f64 / count as f64,
            deg_sum: self.deg_sum as f64 / count as f64,
            backups: (self.with_backups > 0).then(|| self.backups / self.with_backups as f64),
        })
    }
}

/// Running totals over pair results. Adding pairs (and merging accumulators)
/// in a fixed order gives bit-identical records.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    pairs_total: u64,
    pairs_diff: u64,
    mf: Sums,
    dj: Sums,
}

impl Accumulator {
    pub fn add(&mut self, p: &PairResult) {
        if p.mf_route.is_none() || p.dj_route.is_none() {
            return;
        }
        self.pairs_total += 1;
        if !p.differs {
            return;
        }
        self.pairs_diff += 1;
        if let (Some(mf), Some(dj)) = (&p.mf, &p.dj) {
            self.mf.add(mf);
            self.dj.add(dj);
        }
    }

    pub fn merge(&mut self, other: &Accumulator) {
        self.pairs_total += other.pairs_total;
        self.pairs_diff += other.pairs_diff;
        self.mf.merge(&other.mf);
        self.dj.merge(&other.dj);
    }

    pub fn pairs_total(&self) -> u64 {
        self.pairs_total
    }

    pub fn pairs_diff(&self) -> u64 {
        self.pairs_diff
    }

    pub fn finish(&self, topology: &str, n: usize, params: &str, weights: Weights) -> MetricsRecord {
        let route_diff_pct = if self.pairs_total == 0 {
            0.0
        } else {
            100.0 * self.pairs_diff as f64 / self.pairs_total as f64
        };
        MetricsRecord {
            topology: topology.into(),
            n,
            params: params.into(),
            weights,
            pairs_total: self.pairs_total,
            pairs_diff: self.pairs_diff,
            route_diff_pct,
            mf: self.mf.mean(self.pairs_diff),
            dj: self.dj.mean(self.pairs_diff),
        }
    }
}

/// Compares every ordered pair of `g`, sources then destinations ascending.
pub fn compare_all_pairs(g: &Graph, mf_tables: &TableSet, dj_tables: &TableSet) -> Result<Vec<PairResult>> {
    let mut out = Vec::new();
    for s in g.nodes() {
        for t in g.nodes() {
            if s != t {
                out.push(compare_pair(g, mf_tables, dj_tables, s, t)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::{build_tables_dijkstra, build_tables_maxflow};
    use crate::testutil::oracle;
    use crate::testutil::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn n(v: u32) -> NodeId {
        NodeId(v)
    }

    fn route(vs: &[u32]) -> Route {
        Route::new(vs.iter().map(|v| NodeId(*v)).collect())
    }

    #[test]
    fn sizes() {
        assert_eq!(route_size(&route(&[0, 1])), 2);
        assert_eq!(route_size(&route(&[0, 4, 1])), 3);
    }

    #[test]
    fn degree_sums() {
        assert_eq!(degree_sum(&complete(4), &route(&[0, 1, 3])).unwrap(), 9);
        assert_eq!(degree_sum(&path(3), &route(&[0, 1, 2])).unwrap(), 4);
        assert_eq!(
            degree_sum(&path(3), &route(&[0, 2])),
            Err(Error::MissingEdge(n(0), n(2)))
        );
    }

    #[test]
    fn backups() {
        let b = backups_per_vertex(&path(3), &route(&[0, 1, 2])).unwrap().unwrap();
        assert_eq!((b.total, b.interior), (0, 1));
        // remaining edges 2-3 and 3-0 do not touch vertex 1
        let b = backups_per_vertex(&cycle(4), &route(&[0, 1, 2])).unwrap().unwrap();
        assert_eq!(b.total, 0);
        // K5 minus 0-1 and 1-2: vertex 1 keeps 1-3 and 1-4, node 2 keeps three edges
        // 1-3-2, 1-4-2 and 1-3-0-2 cannot all be disjoint with 1-3 shared, so the
        // paths are 1-3-2, 1-4-2 plus ... vertex 1 has degree 2 left: at most 2
        let b = backups_per_vertex(&complete(5), &route(&[0, 1, 2])).unwrap().unwrap();
        let oracle_count = {
            let h = complete(5).remove_edges(&[(n(0), n(1)), (n(1), n(2))]).unwrap();
            oracle::disjoint_path_count(&to_adj(&h), 1, 2)
        };
        assert_eq!(b.total as usize, oracle_count);
        assert_eq!(backups_per_vertex(&complete(3), &route(&[0, 2])).unwrap(), None);
    }

    #[test]
    fn pair_comparison_edge_cases() {
        let g = complete(4);
        let mf = build_tables_maxflow(&g, Weights::SHORT);
        let dj = build_tables_dijkstra(&g);
        let p = compare_pair(&g, &mf, &dj, n(0), n(1)).unwrap();
        assert!(!p.differs);
        assert_eq!(p.mf_route, Some(route(&[0, 1])));

        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let mf = build_tables_maxflow(&two, Weights::SHORT);
        let dj = build_tables_dijkstra(&two);
        let p = compare_pair(&two, &mf, &dj, n(0), n(3)).unwrap();
        assert_eq!((p.mf_route.clone(), p.dj_route.clone(), p.differs), (None, None, false));
    }

    #[test]
    fn single_edge_graph_has_no_differing_pairs() {
        let g = path(2);
        let mf = build_tables_maxflow(&g, Weights::SHORT);
        let dj = build_tables_dijkstra(&g);
        let mut acc = Accumulator::default();
        for p in compare_all_pairs(&g, &mf, &dj).unwrap() {
            acc.add(&p);
        }
        let rec = acc.finish("edge", 2, "", Weights::SHORT);
        assert_eq!((rec.pairs_total, rec.pairs_diff, rec.route_diff_pct), (2, 0, 0.0));
        assert_eq!((rec.mf, rec.dj), (None, None));
    }

    #[test]
    fn aggregation_over_differing_pairs_only() {
        let mut acc = Accumulator::default();
        let m = |size, deg_sum, total, interior| RouteMetrics {
            size,
            deg_sum,
            backups: Some(Backups { total, interior }),
        };
        acc.add(&PairResult {
            src: n(0),
            dst: n(1),
            mf_route: Some(route(&[0, 2, 3, 1])),
            dj_route: Some(route(&[0, 4, 1])),
            differs: true,
            mf: Some(m(4, 12, 3, 2)),
            dj: Some(m(3, 7, 1, 1)),
        });
        acc.add(&PairResult {
            src: n(1),
            dst: n(0),
            mf_route: Some(route(&[1, 0])),
            dj_route: Some(route(&[1, 0])),
            differs: false,
            mf: Some(RouteMetrics {
                size: 2,
                deg_sum: 5,
                backups: None,
            }),
            dj: Some(RouteMetrics {
                size: 2,
                deg_sum: 5,
                backups: None,
            }),
        });
        acc.add(&PairResult {
            src: n(1),
            dst: n(9),
            mf_route: None,
            dj_route: None,
            differs: false,
            mf: None,
            dj: None,
        });
        let rec = acc.finish("x", 10, "", Weights::BALANCED);
        assert_eq!((rec.pairs_total, rec.pairs_diff), (2, 1));
        assert_eq!(rec.route_diff_pct, 50.0);
        assert_eq!(
            rec.mf,
            Some(Averages {
                size: 4.0,
                deg_sum: 12.0,
                backups: Some(1.5)
            })
        );
        assert_eq!(
            rec.dj,
            Some(Averages {
                size: 3.0,
                deg_sum: 7.0,
                backups: Some(1.0)
            })
        );

        let mut twice = acc;
        twice.merge(&acc);
        assert_eq!(twice.finish("x", 10, "", Weights::BALANCED).mf, rec.mf);
    }

    fn arb_route() -> impl Strategy<Value = (Graph, Route)> {
        (arb_graph(7), any::<u64>()).prop_filter_map("needs a route", |(g, pick)| {
            // take a shortest path between some connected pair as the route
            let nn = g.node_count() as u64;
            let s = NodeId((pick % nn) as u32);
            let t = NodeId(((pick / nn) % nn) as u32);
            if s == t {
                return None;
            }
            let r = crate::flow::shortest_path(&g, s, t).ok()??;
            Some((g, r))
        })
    }

    proptest! {
        #[test]
        fn metrics_match_recount((g, r) in arb_route()) {
            let adj = to_adj(&g);
            let want: usize = r.vertices().iter().map(|v| adj[v.index()].len()).sum();
            prop_assert_eq!(degree_sum(&g, &r).unwrap(), want);

            let removed: Vec<(usize, usize)> = r.edges().map(|(u, v)| (u.index(), v.index())).collect();
            let stripped: Vec<Vec<usize>> = adj.iter().enumerate().map(|(u, ns)| {
                ns.iter().copied().filter(|&v| !removed.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v))).collect()
            }).collect();
            let t = r.destination().unwrap().index();
            let total: usize = r.interior().iter().map(|v| oracle::disjoint_path_count(&stripped, v.index(), t)).sum();
            match backups_per_vertex(&g, &r).unwrap() {
                Some(b) => {
                    prop_assert_eq!(b.total as usize, total);
                    prop_assert_eq!(b.interior as usize, r.size() - 2);
                }
                None => prop_assert_eq!(r.size(), 2),
            }
        }

        #[test]
        fn max_flow_routes_are_never_shorter(g in arb_graph(9), w1 in 1i64..6, w2 in -5i64..0) {
            let mf = build_tables_maxflow(&g, Weights::new(w1, w2).unwrap());
            let dj = build_tables_dijkstra(&g);
            for p in compare_all_pairs(&g, &mf, &dj).unwrap() {
                prop_assert_eq!(p.mf_route.is_some(), p.dj_route.is_some());
                if p.differs {
                    prop_assert!(p.mf.unwrap().size >= p.dj.unwrap().size);
                    prop_assert!(p.dj.unwrap().size >= 3);
                }
            }
        }
    }

    #[test]
    fn unit_route_helper() {
        assert_eq!(route(&[1, 2]).vertices(), &vec![n(1), n(2)][..]);
    }
}
