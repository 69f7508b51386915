//! Truncated Cayley graphs, coned-off Cayley graphs and n-Rips graphs of
//! finitely generated groups with peripheral subgroups, together with the
//! machinery run on them: dismantlability, quasi-centres, fixed cliques,
//! fixed-point subcomplexes, r-hulls and empirical thin-triangle constants.
//!
//! Everything works on a finite ball of the Cayley graph. Distances carry an
//! exactness certificate, and verdicts that depend on an uncertified distance
//! say so.

pub mod actions;
pub mod complex;
pub mod dismantle;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod group;
pub mod rips;
pub mod rng;
pub mod universe;
pub mod word;

pub use error::{Error, Result};
pub use graph::Graph;
pub use group::{GroupModel, ModelKind, PeripheralDescription, PeripheralSpec, Peripherals};
pub use universe::{DistanceResult, Universe, UniverseConfig, VertexId, VertexKind};
pub use word::{GeneratorSymbol, Word};
