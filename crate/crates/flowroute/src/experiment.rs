//! The route comparison experiment: for every topology instance and weight
//! pair, build all tables, compare the max-flow primary route with the
//! shortest path for every ordered pair, and aggregate the pairs where they
//! differ.
//!
//! Records come out weight pair by weight pair in the configured order. Each
//! group holds one record per instance (seeds in the given order, replicas
//! ascending) followed by a pooled record when there is more than one
//! instance. Work is spread over the current rayon pool; the output does not
//! depend on how many threads it has.

use log::info;
use rayon::prelude::*;

use flowroute_core::generate::Family;
use flowroute_core::metrics::{compare_pair, Accumulator};
use flowroute_core::routing::{build_tables_dijkstra, FlowMethod, NeighborMetrics};
use flowroute_core::{GeneratorSpec, Graph, MetricsRecord, NodeId, PairResult, TableSet, Weights};

use crate::topology::{load_topology, topology_label, LoadError};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Graph(#[from] flowroute_core::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub enum TopologySource {
    Generated {
        family: Family,
        n: usize,
    },
    /// A bundled topology name or an edge-list path.
    Named(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub source: TopologySource,
    pub weights: Vec<Weights>,
    /// Only used by generated sources.
    pub seeds: Vec<u64>,
    /// Independent instances per seed.
    pub repeat: u64,
    /// Keep every pair result in the output.
    pub keep_pairs: bool,
}

impl ExperimentConfig {
    pub fn new(source: TopologySource) -> Self {
        ExperimentConfig {
            source,
            weights: Weights::STANDARD.to_vec(),
            seeds: vec![1, 2, 3, 4, 5],
            repeat: 1,
            keep_pairs: false,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::Config(m.into()));
        if self.weights.is_empty() {
            return bad("at least one weight pair is needed");
        }
        if self.repeat == 0 {
            return bad("repeat count must be at least 1");
        }
        if let TopologySource::Generated { family, n } = self.source {
            if self.seeds.is_empty() {
                return bad("at least one seed is needed");
            }
            GeneratorSpec::new(family, n, 0)
                .validate()
                .map_err(|e| ExperimentError::Config(e.to_string()))?;
        }
        Ok(())
    }
}

/// One graph the experiment runs on.
#[derive(Clone, Debug)]
pub struct Instance {
    pub topology: String,
    pub params: String,
    pub graph: Graph,
}

/// A pair result tagged with the record it contributes to.
#[derive(Clone, Debug, PartialEq)]
pub struct PairRow {
    pub topology: String,
    pub n: usize,
    pub params: String,
    pub weights: Weights,
    pub result: PairResult,
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentOutput {
    pub records: Vec<MetricsRecord>,
    /// Empty unless the config asks to keep pairs.
    pub pairs: Vec<PairRow>,
}

fn join_params(base: &str, extra: &str) -> String {
    if base.is_empty() {
        extra.into()
    } else {
        format!("{base};{extra}")
    }
}

/// The configured topology instances, in output order.
pub fn instances(config: &ExperimentConfig) -> Result<Vec<Instance>, ExperimentError> {
    config.validate()?;
    match &config.source {
        TopologySource::Named(name) => Ok(vec![Instance {
            topology: topology_label(name),
            params: String::new(),
            graph: load_topology(name)?,
        }]),
        TopologySource::Generated { family, n } => {
            let mut out = Vec::new();
            for &seed in &config.seeds {
                for replica in 0..config.repeat {
                    let spec = GeneratorSpec {
                        family: *family,
                        n: *n,
                        seed,
                        replica,
                    };
                    let mut params = join_params(&spec.params(), &format!("seed={seed}"));
                    if config.repeat > 1 {
                        params = join_params(&params, &format!("replica={replica}"));
                    }
                    out.push(Instance {
                        topology: spec.label().into(),
                        params,
                        graph: spec.generate()?,
                    });
                }
            }
            Ok(out)
        }
    }
}

/// All ordered pairs of `g`, sources then destinations ascending, once per
/// weight pair. Flows and distances are measured once and ranked per weight
/// pair; the shortest-path tables are shared.
pub fn evaluate(g: &Graph, weights: &[Weights]) -> Result<Vec<Vec<PairResult>>, ExperimentError> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let measured: Vec<NeighborMetrics> = nodes
        .par_iter()
        .map(|&v| NeighborMetrics::compute(g, v, FlowMethod::FlowTree))
        .collect::<Result<_, _>>()?;
    let dj = build_tables_dijkstra(g);
    let mut out = Vec::with_capacity(weights.len());
    for &w in weights {
        let mf = TableSet::from_tables(measured.iter().map(|m| m.rank(w)).collect(), g.node_count());
        let per_source: Vec<Vec<PairResult>> = nodes
            .par_iter()
            .map(|&s| {
                nodes
                    .iter()
                    .filter(|&&t| t != s)
                    .map(|&t| compare_pair(g, &mf, &dj, s, t))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        out.push(per_source.into_iter().flatten().collect());
    }
    Ok(out)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    let instances = instances(config)?;
    let nw = config.weights.len();
    // accumulators[instance][weight]
    let mut accumulators = Vec::with_capacity(instances.len());
    let mut pairs = Vec::new();
    for (k, inst) in instances.iter().enumerate() {
        info!(
            "instance {}/{}: {} {} ({} nodes, {} edges)",
            k + 1,
            instances.len(),
            inst.topology,
            inst.params,
            inst.graph.node_count(),
            inst.graph.edge_count()
        );
        let results = evaluate(&inst.graph, &config.weights)?;
        let mut accs = vec![Accumulator::default(); nw];
        for (acc, (&w, rs)) in accs.iter_mut().zip(config.weights.iter().zip(results)) {
            for r in &rs {
                acc.add(r);
            }
            if config.keep_pairs {
                pairs.extend(rs.into_iter().map(|result| PairRow {
                    topology: inst.topology.clone(),
                    n: inst.graph.node_count(),
                    params: inst.params.clone(),
                    weights: w,
                    result,
                }));
            }
        }
        accumulators.push(accs);
    }

    let mut records = Vec::new();
    for (wi, &w) in config.weights.iter().enumerate() {
        let mut pooled = Accumulator::default();
        for (inst, accs) in instances.iter().zip(&accumulators) {
            let n = inst.graph.node_count();
            records.push(accs[wi].finish(&inst.topology, n, &inst.params, w));
            pooled.merge(&accs[wi]);
        }
        if instances.len() > 1 {
            let first = &instances[0];
            records.push(pooled.finish(
                &first.topology,
                first.graph.node_count(),
                &join_params(&pooled_params(config), "pooled"),
                w,
            ));
        }
    }
    Ok(ExperimentOutput { records, pairs })
}

fn pooled_params(config: &ExperimentConfig) -> String {
    match config.source {
        TopologySource::Generated { family, n } => GeneratorSpec::new(family, n, 0).params(),
        TopologySource::Named(_) => String::new(),
    }
}

/// Re-aggregates pair rows into one record per run of consecutive rows with
/// the same topology, params and weights.
pub fn records_from_pairs(rows: &[PairRow]) -> Vec<MetricsRecord> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let head = &rows[start];
        let same = |r: &PairRow| r.topology == head.topology && r.params == head.params && r.weights == head.weights;
        let len = rows[start..].iter().take_while(|r| same(r)).count();
        let mut acc = Accumulator::default();
        for r in &rows[start..start + len] {
            acc.add(&r.result);
        }
        out.push(acc.finish(&head.topology, head.n, &head.params, head.weights));
        start += len;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_graph() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("edge.edges");
        std::fs::write(&path, "0 1\n").unwrap();
        let mut cfg = ExperimentConfig::new(TopologySource::Named(path.display().to_string()));
        cfg.weights = vec![Weights::SHORT];
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.records.len(), 1);
        let r = &out.records[0];
        assert_eq!(
            (r.topology.as_str(), r.pairs_total, r.pairs_diff, r.route_diff_pct),
            ("edge", 2, 0, 0.0)
        );
        assert!(r.mf.is_none() && r.dj.is_none());
    }

    #[test]
    fn record_layout() {
        let mut cfg = ExperimentConfig::new(TopologySource::Generated {
            family: Family::ErdosRenyi { c: 0.3 },
            n: 12,
        });
        cfg.seeds = vec![4, 2];
        cfg.repeat = 2;
        let out = run_experiment(&cfg).unwrap();
        let params: Vec<_> = out.records.iter().take(5).map(|r| r.params.as_str()).collect();
        assert_eq!(
            params,
            [
                "c=0.3;seed=4;replica=0",
                "c=0.3;seed=4;replica=1",
                "c=0.3;seed=2;replica=0",
                "c=0.3;seed=2;replica=1",
                "c=0.3;pooled"
            ]
        );
        assert_eq!(out.records.len(), 15);
        assert!(out.records.iter().take(5).all(|r| r.weights == Weights::SHORT));
        let pooled = &out.records[4];
        assert_eq!(
            pooled.pairs_total,
            out.records[..4].iter().map(|r| r.pairs_total).sum::<u64>()
        );
    }

    #[test]
    fn bad_configs() {
        let mut cfg = ExperimentConfig::new(TopologySource::Generated {
            family: Family::BarabasiAlbert { m: 5 },
            n: 5,
        });
        assert!(matches!(cfg.validate(), Err(ExperimentError::Config(_))));
        cfg.source = TopologySource::Named("nowhere-at-all".into());
        assert!(matches!(
            run_experiment(&cfg),
            Err(ExperimentError::Load(LoadError::Unknown(_)))
        ));
        cfg.weights.clear();
        assert!(matches!(cfg.validate(), Err(ExperimentError::Config(_))));
    }
}
