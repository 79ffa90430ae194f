use alloc::string::String;
use core::fmt;

use crate::graph::NodeId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// The id is out of range or refers to a removed node.
    InvalidNode(NodeId),
    SelfLoop(NodeId),
    DuplicateEdge(NodeId, NodeId),
    MissingEdge(NodeId, NodeId),
    /// Flow and routes are undefined between a node and itself.
    SameEndpoints(NodeId),
    ZeroWeights,
    InvalidSpec(&'static str),
    Parse {
        line: usize,
        message: String,
    },
    /// A simulated message cannot start or end at a failed node.
    FailedEndpoint(NodeId),
    /// The forwarding loop ran past its transmission budget. This is a bug.
    HopBudgetExhausted {
        budget: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidNode(v) => write!(f, "invalid or removed node {v}"),
            Error::SelfLoop(v) => write!(f, "self-loop at node {v}"),
            Error::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            Error::MissingEdge(u, v) => write!(f, "edge {u}-{v} does not exist"),
            Error::SameEndpoints(v) => write!(f, "source and destination are both {v}"),
            Error::ZeroWeights => f.write_str("at least one weight must be nonzero"),
            Error::InvalidSpec(msg) => write!(f, "invalid generator spec: {msg}"),
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::FailedEndpoint(v) => write!(f, "endpoint {v} is in the failure set"),
            Error::HopBudgetExhausted { budget } => {
                write!(f, "forwarding exceeded its budget of {budget} transmissions")
            }
        }
    }
}

impl core::error::Error for Error {}
