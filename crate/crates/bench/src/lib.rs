//! Shared fixtures for the criterion benches.

use parity_core::generate::{generate_instance, Family};
use parity_core::{Instance, SolveOptions};

/// A generated instance with its random even unhappy set.
pub fn fixture(family: Family, n: usize) -> Instance {
    generate_instance(family, n, 1).expect("bench fixture generates")
}

/// Same graph, every vertex unhappy but one: odd, so the handshake check decides.
pub fn odd_fixture(family: Family, n: usize) -> Instance {
    let inst = fixture(family, n);
    inst.with_unhappy(1..inst.graph.len()).expect("in range")
}

pub fn decide() -> SolveOptions {
    SolveOptions { construct: false, seed: 0 }
}

pub fn construct() -> SolveOptions {
    SolveOptions { construct: true, seed: 0 }
}
