//! Maximum δ-dispersed point sets on graphs with unit-length edges, in exact arithmetic.

#![no_std]

extern crate alloc;

pub mod gadgets;
pub mod graph;
pub mod metric;
pub mod rat;
pub mod rounding;
pub mod solver;
pub mod td;
pub mod translate;

pub use graph::{DistanceMatrix, Graph, GraphError, Vertex};
pub use metric::{Point, PointSet, Space};
pub use rat::Rat;
