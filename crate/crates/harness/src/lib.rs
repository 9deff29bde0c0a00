//! Experiment drivers shared by the `flatpng` CLI and the acceptance
//! suite: Monte-Carlo simulation, empirical statistics, and table
//! generation.

pub mod predict;
pub mod sim;
pub mod stats;
pub mod table;
