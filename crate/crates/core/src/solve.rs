//! Solver results and dispatch by graph class.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dual::{convex_graph_solve, solve_hugged, HuggingCycle};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Instance};
use crate::path::solve_path;

/// Which algorithm produced a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverPath {
    /// `|R|` is odd, so no edge set can work.
    Handshake,
    ConvexDp,
    HuggingCycleDp,
    TightHullDp,
    SpanningTree,
    Oracle,
}

impl fmt::Display for SolverPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverPath::Handshake => "handshake",
            SolverPath::ConvexDp => "convex-dp",
            SolverPath::HuggingCycleDp => "hugging-cycle-dp",
            SolverPath::TightHullDp => "tight-hull-dp",
            SolverPath::SpanningTree => "spanning-tree",
            SolverPath::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub feasible: bool,
    /// Present when construction was requested and succeeded.
    pub happy_set: Option<EdgeSet>,
    pub route: SolverPath,
    /// Why a feasible answer came without a happy set, if it did.
    pub note: Option<String>,
}

impl Solution {
    pub(crate) fn infeasible(route: SolverPath) -> Self {
        Solution {
            feasible: false,
            happy_set: None,
            route,
            note: None,
        }
    }

    pub(crate) fn handshake(inst: &Instance) -> Option<Self> {
        (inst.unhappy.len() % 2 == 1).then(|| Solution::infeasible(SolverPath::Handshake))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Build a happy set, not just decide.
    pub construct: bool,
    /// Seed for randomized restarts of the spanning-tree search.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            construct: true,
            seed: 0,
        }
    }
}

/// Picks a solver: the supplied hugging cycle first, then paths, then convex
/// graphs. Anything else is unsupported.
pub fn solve(inst: &Instance, cycle: Option<&[usize]>, opts: &SolveOptions) -> Result<Solution> {
    if let Some(order) = cycle {
        let cycle = HuggingCycle::new(&inst.graph, order.to_vec())?;
        return solve_hugged(inst, &cycle, opts);
    }
    if inst.graph.path_order().is_some() {
        return solve_path(inst, opts);
    }
    if inst.graph.is_convex_position() {
        return convex_graph_solve(inst, opts);
    }
    Err(Error::Unsupported(
        "graph is neither a path nor in convex position; supply a hugging cycle".into(),
    ))
}
