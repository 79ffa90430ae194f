//! Command line, file formats and the experiment driver for
//! [`flowroute_core`].

pub mod cli;
pub mod experiment;
pub mod report;
pub mod topology;
