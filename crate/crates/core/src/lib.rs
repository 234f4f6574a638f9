//! Simulated-greedy algorithms for submodular matroid secretary problems.
//!
//! Elements of a ground set arrive in random order and must be accepted or
//! rejected on arrival, keeping the accepted set independent in a matroid
//! (or a matching in a bipartite graph). This crate provides the matroids,
//! valuations, online and offline algorithms, the head/tail process used to
//! analyse them, exact oracles and guarantee calculators, and the file
//! formats and experiment runner used by the command-line tool.

pub mod algorithms;
pub mod analysis;
pub mod error;
pub mod harness;
pub mod instance;
pub mod limits;
pub mod matroid;
pub mod process;
pub mod seed;
pub mod set;
pub mod valuation;

pub use algorithms::{greedy, online, run_algorithm, simulate, Algorithm, ArrivalOrder, RunTrace};
pub use error::{Error, Result};
pub use instance::Instance;
pub use matroid::{
    BipartiteGraph, Independence, IndependenceSystem, LaminarIntersection, LaminarMatroid,
    PartitionMatroid, TransversalMatroid, UniformMatroid,
};
pub use set::{Element, ElementSet};
pub use valuation::{
    CoverageValuation, LinearValuation, SetFunction, TableValuation, ValuationOracle,
};
