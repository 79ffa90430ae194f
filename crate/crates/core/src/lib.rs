//! Robust routing-table generation and fast-reroute forwarding.
//!
//! Every node ranks its neighbors, per destination, by a weighted sum of the
//! unit-capacity max-flow and the hop distance from that neighbor to the
//! destination, evaluated on the graph with the ranking node removed. The
//! [`frr`] module forwards a packet over such (possibly stale) tables with
//! backtracking, and [`metrics`] scores the resulting routes against a
//! shortest-path baseline.
//!
//! The crate is `no_std` and only needs `alloc`. File IO, the experiment
//! driver and the command line live in the `flowroute` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod edgelist;
mod error;
pub mod flow;
pub mod frr;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod rng;
pub mod routing;

pub use error::{Error, Result};
pub use flow::Distance;
pub use frr::{DeliveryOutcome, FailureSet};
pub use generate::{Family, GeneratorSpec};
pub use graph::{Graph, GraphBuilder, NodeId, Route};
pub use metrics::{MetricsRecord, PairResult};
pub use routing::{Candidate, RoutingTable, TableSet, Weights};

#[cfg(test)]
pub(crate) mod testutil;
