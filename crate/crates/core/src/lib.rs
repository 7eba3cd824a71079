//! Parity-constrained augmentation of plane geometric graphs.
//!
//! Given a plane straight-line graph `G` and a set `R` of "unhappy" vertices,
//! decide whether `G` can be augmented by crossing-free straight-line edges so
//! that exactly the vertices of `R` gain odd degree, and build such an edge set.
//!
//! Supported graph classes: plane paths ([`path`]), convex graphs and graphs
//! with a supplied convexly hugging cycle ([`dual`]). [`oracle`] is an
//! exhaustive reference solver for small inputs.

pub mod dual;
pub mod error;
pub mod face;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod path;
pub mod solve;

pub use dual::{convex_graph_solve, solve_hugged, HuggingCycle};
pub use error::{Error, Result};
pub use geom::{Orientation, Point, Segment};
pub use graph::{
    odd_degree_vertices, validate_instance, verify_happy_set, visibility_graph, Edge, EdgeSet,
    Instance, PlaneGraph, ValidationOptions, VerificationReport,
};
pub use oracle::{brute_force, brute_force_within, OracleLimits};
pub use path::{adversarial_unhappy_set, is_pseudoconvex, is_universally_happy, solve_path, tight_hull};
pub use solve::{solve, Solution, SolveOptions, SolverPath};
