//! Seeded random graph families: Erdős–Rényi, Barabási–Albert and
//! Watts–Strogatz. See [`crate::rng`] for how seeds map to random draws.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, NodeId};
use crate::rng::{StreamRng, STREAM_BA, STREAM_ER, STREAM_WS};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// Every pair is joined independently with probability `c`.
    ErdosRenyi { c: f64 },
    /// Preferential attachment, `m` edges per new node.
    BarabasiAlbert { m: usize },
    /// Ring lattice of degree `k`, each edge rewired with probability `p`.
    WattsStrogatz { k: usize, p: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Selects an independent instance for the same seed. 0 by default.
    pub replica: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            seed,
            replica: 0,
        }
    }

    pub fn erdos_renyi(n: usize, c: f64, seed: u64) -> Self {
        Self::new(Family::ErdosRenyi { c }, n, seed)
    }

    pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Self {
        Self::new(Family::BarabasiAlbert { m }, n, seed)
    }

    pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Self {
        Self::new(Family::WattsStrogatz { k, p }, n, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > u32::MAX as usize {
            return Err(Error::InvalidSpec("too many nodes"));
        }
        match self.family {
            Family::ErdosRenyi { c } => {
                if !(c > 0.0 && c <= 1.0) {
                    return Err(Error::InvalidSpec("edge probability must be in (0, 1]"));
                }
            }
            Family::BarabasiAlbert { m } => {
                if m < 1 || m >= self.n {
                    return Err(Error::InvalidSpec("attachment count must satisfy 1 <= m < n"));
                }
            }
            Family::WattsStrogatz { k, p } => {
                if k % 2 != 0 || k >= self.n {
                    return Err(Error::InvalidSpec("neighbor count must be even and below n"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidSpec("rewiring probability must be in [0, 1]"));
                }
            }
        }
        Ok(())
    }

    /// Short family tag: `er`, `ba` or `ws`.
    pub fn label(&self) -> &'static str {
        match self.family {
            Family::ErdosRenyi { .. } => "er",
            Family::BarabasiAlbert { .. } => "ba",
            Family::WattsStrogatz { .. } => "ws",
        }
    }

    /// Family parameters as `key=value` pairs joined by `;`.
    pub fn params(&self) -> String {
        match self.family {
            Family::ErdosRenyi { c } => format!("c={c}"),
            Family::BarabasiAlbert { m } => format!("m={m}"),
            Family::WattsStrogatz { k, p } => format!("k={k};p={p}"),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        generate(self)
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    let g = match spec.family {
        Family::ErdosRenyi { c } => {
            let mut rng = StreamRng::new(spec.seed, spec.replica, STREAM_ER);
            erdos_renyi(n, c, &mut rng)
        }
        Family::BarabasiAlbert { m } => {
            let mut rng = StreamRng::new(spec.seed, spec.replica, STREAM_BA);
            barabasi_albert(n, m, &mut rng)
        }
        Family::WattsStrogatz { k, p } => {
            let mut rng = StreamRng::new(spec.seed, spec.replica, STREAM_WS);
            watts_strogatz(n, k, p, &mut rng)
        }
    };
    Ok(g)
}

fn id(v: usize) -> NodeId {
    NodeId(v as u32)
}

/// Pairs are visited in lexicographic order, one draw each.
fn erdos_renyi(n: usize, c: f64, rng: &mut StreamRng) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(c) {
                b.add_edge(id(u), id(v)).expect("fresh pair");
            }
        }
    }
    b.build()
}

/// Nodes `0..m` start isolated; node `m` joins all of them. Every later node
/// draws from a list holding each node once per incident edge end, skipping
/// repeats until it has `m` distinct targets.
fn barabasi_albert(n: usize, m: usize, rng: &mut StreamRng) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut ends: Vec<usize> = Vec::with_capacity(2 * m * n);
    let mut targets: Vec<usize> = (0..m).collect();
    for source in m..n {
        for &t in &targets {
            b.add_edge(id(source), id(t)).expect("distinct targets");
        }
        ends.extend_from_slice(&targets);
        ends.extend(core::iter::repeat_n(source, m));
        if source + 1 == n {
            break;
        }

        targets.clear();
        while targets.len() < m {
            let x = ends[rng.below(ends.len() as u64) as usize];
            if !targets.contains(&x) {
                targets.push(x);
            }
        }
    }
    b.build()
}

/// Ring edges `(u, u + j)` for `j = 1..=k/2`. Rewiring then walks `j` outer,
/// `u` inner: with probability `p` the edge `(u, u + j)` becomes `(u, w)`
/// for a uniform `w` that is neither `u` nor already adjacent to it. Nodes
/// adjacent to everything are left alone.
fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut StreamRng) -> Graph {
    let mut b = GraphBuilder::new(n);
    for j in 1..=k / 2 {
        for u in 0..n {
            b.add_edge(id(u), id((u + j) % n)).expect("k < n keeps the ring simple");
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.chance(p) {
                continue;
            }
            if b.degree(id(u)) >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.below(n as u64) as usize;
                if w != u && !b.has_edge(id(u), id(w)) {
                    break w;
                }
            };
            let removed = b.remove_edge(id(u), id(v));
            debug_assert!(removed);
            b.add_edge(id(u), id(w)).expect("checked above");
        }
    }
    b.build()
}
