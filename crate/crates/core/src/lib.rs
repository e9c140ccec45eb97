//! Minimum Steiner trees on split graphs.

pub mod generate;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod reduction;
pub mod report;
pub mod solver;
pub mod split;
pub mod sstp;
pub mod structure;
