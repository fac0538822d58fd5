//! Two-coloring numbers of plane graphs.

pub mod batch;
pub mod constructive;
pub mod discharging;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod io;
pub mod ordering;
pub mod plane_graph;

pub use graph::SimpleGraph;
pub use ordering::{BackProfile, VertexOrdering};
pub use plane_graph::{Dart, PlaneGraph, Vertex};
