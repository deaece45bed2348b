//! Seeds, matrix and quiver mutation, and the exchange graph.

mod graph;
mod matrix;
mod quiver;
mod seed;

pub use graph::{count_labeled, explore, Edge, ExchangeGraph, ExplorationLimits, InducedSubgraph};
pub(crate) use matrix::topological_order;
pub use matrix::ExchangeMatrix;
pub use quiver::{QuiverInput, QuiverSpec};
pub use seed::{monomial_poly, Seed};
