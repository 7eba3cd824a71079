//! Exhaustive reference solver.
//!
//! Depth-first include/exclude search over the candidate edges, pruned by
//! crossings with already-included edges and by vertices whose remaining
//! candidates are exhausted while their parity is still wrong. This module
//! uses the graph model only; it never calls into a solver.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geom::{self, Point, SegmentContact};
use crate::graph::{restrict_to_region, visibility_graph, Edge, EdgeSet, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_vis_edges: usize,
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 10,
            max_vis_edges: 26,
            node_budget: 100_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    /// The first happy set found, or `None` if none exists.
    pub happy_set: Option<EdgeSet>,
    /// Search nodes visited.
    pub nodes: u64,
}

impl OracleOutcome {
    pub fn feasible(&self) -> bool {
        self.happy_set.is_some()
    }
}

/// Searches all crossing-free subsets of `Vis(G)`.
pub fn brute_force(inst: &Instance, limits: &OracleLimits) -> Result<OracleOutcome> {
    check_vertices(inst, limits)?;
    let vis = visibility_graph(&inst.graph);
    search_edges(inst.graph.points(), &vis, &inst.unhappy, limits)
}

/// Like [`brute_force`] but restricted to visibility edges inside the closed
/// region bounded by `cycle` (a vertex order).
pub fn brute_force_within(
    inst: &Instance,
    cycle: &[usize],
    limits: &OracleLimits,
) -> Result<OracleOutcome> {
    check_vertices(inst, limits)?;
    let vis = visibility_graph(&inst.graph);
    let region = restrict_to_region(inst.graph.points(), &vis, cycle)?;
    search_edges(inst.graph.points(), &region, &inst.unhappy, limits)
}

fn check_vertices(inst: &Instance, limits: &OracleLimits) -> Result<()> {
    if inst.graph.len() > limits.max_vertices {
        return Err(Error::OracleBudget(format!(
            "{} vertices exceed the limit of {}",
            inst.graph.len(),
            limits.max_vertices
        )));
    }
    Ok(())
}

/// Searches crossing-free subsets of `candidates` whose odd-degree set is
/// `targets`. Candidates are visited in sorted `(lo, hi)` order.
pub fn search_edges(
    points: &[Point],
    candidates: &EdgeSet,
    targets: &BTreeSet<usize>,
    limits: &OracleLimits,
) -> Result<OracleOutcome> {
    if candidates.len() > limits.max_vis_edges {
        return Err(Error::OracleBudget(format!(
            "{} candidate edges exceed the limit of {}",
            candidates.len(),
            limits.max_vis_edges
        )));
    }
    // handshake lemma
    if targets.len() % 2 == 1 {
        return Ok(OracleOutcome {
            happy_set: None,
            nodes: 0,
        });
    }
    let edges: Vec<Edge> = candidates.iter().collect();
    let n = points.len();
    let mut remaining = vec![0u32; n];
    for e in &edges {
        remaining[e.lo()] += 1;
        remaining[e.hi()] += 1;
    }
    let mut target = vec![false; n];
    for &v in targets {
        target[v] = true;
    }
    if (0..n).any(|v| target[v] && remaining[v] == 0) {
        return Ok(OracleOutcome {
            happy_set: None,
            nodes: 0,
        });
    }
    let conflicts: Vec<Vec<usize>> = (0..edges.len())
        .map(|i| {
            let si = edges[i].segment(points);
            (0..edges.len())
                .filter(|&j| {
                    j != i
                        && matches!(
                            geom::segment_contact(&si, &edges[j].segment(points)),
                            SegmentContact::ProperCrossing | SegmentContact::Touching
                        )
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        edges: &edges,
        conflicts: &conflicts,
        target,
        parity: vec![false; n],
        remaining,
        blocked: vec![0; edges.len()],
        chosen: Vec::new(),
        nodes: 0,
        budget: limits.node_budget,
    };
    let found = search.run(0)?;
    Ok(OracleOutcome {
        happy_set: found.then(|| search.chosen.iter().map(|&i| edges[i]).collect()),
        nodes: search.nodes,
    })
}

struct Search<'a> {
    edges: &'a [Edge],
    conflicts: &'a [Vec<usize>],
    target: Vec<bool>,
    parity: Vec<bool>,
    remaining: Vec<u32>,
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn settled(&self, v: usize) -> bool {
        self.remaining[v] > 0 || self.parity[v] == self.target[v]
    }

    fn run(&mut self, i: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::OracleBudget(format!(
                "node budget of {} exhausted",
                self.budget
            )));
        }
        if i == self.edges.len() {
            // every vertex with a candidate was settled when its last one was decided
            return Ok(true);
        }
        let e = self.edges[i];
        let (u, v) = (e.lo(), e.hi());
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;

        let mut found = false;
        if self.settled(u) && self.settled(v) {
            found = self.run(i + 1)?;
        }
        if !found && self.blocked[i] == 0 {
            self.parity[u] ^= true;
            self.parity[v] ^= true;
            if self.settled(u) && self.settled(v) {
                for &j in &self.conflicts[i] {
                    self.blocked[j] += 1;
                }
                self.chosen.push(i);
                found = self.run(i + 1)?;
                if !found {
                    self.chosen.pop();
                    for &j in &self.conflicts[i] {
                        self.blocked[j] -= 1;
                    }
                }
            }
            if !found {
                self.parity[u] ^= true;
                self.parity[v] ^= true;
            }
        }
        if !found {
            self.remaining[u] += 1;
            self.remaining[v] += 1;
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_instance, verify_happy_set, ValidationOptions};

    fn square_path(unhappy: &[usize]) -> Instance {
        validate_instance(
            [(0, 0), (10, 0), (10, 10), (0, 10)].iter().map(|&p| p.into()).collect(),
            vec![(0, 1), (1, 2), (2, 3)],
            unhappy.to_vec(),
            ValidationOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn square_path_examples() {
        let lim = OracleLimits::default();
        assert!(!brute_force(&square_path(&[1, 2]), &lim).unwrap().feasible());
        let out = brute_force(&square_path(&[0, 3]), &lim).unwrap();
        assert_eq!(out.happy_set, Some([Edge::new(0, 3)].into_iter().collect()));
    }

    #[test]
    fn empty_unhappy_set_is_immediate() {
        let out = brute_force(&square_path(&[]), &OracleLimits::default()).unwrap();
        assert_eq!(out.happy_set, Some(EdgeSet::new()));
        assert_eq!(out.nodes, 4);
    }

    #[test]
    fn limits_are_enforced() {
        let tight = OracleLimits {
            max_vertices: 3,
            ..OracleLimits::default()
        };
        assert!(matches!(
            brute_force(&square_path(&[0, 3]), &tight),
            Err(Error::OracleBudget(_))
        ));
        let tiny = OracleLimits {
            node_budget: 2,
            ..OracleLimits::default()
        };
        assert!(matches!(
            brute_force(&square_path(&[1, 2]), &tiny),
            Err(Error::OracleBudget(_))
        ));
    }

    #[test]
    fn found_sets_verify_and_are_deterministic() {
        for r in [vec![0, 1], vec![0, 2], vec![1, 3], vec![0, 1, 2, 3], vec![2, 3]] {
            let inst = square_path(&r);
            let a = brute_force(&inst, &OracleLimits::default()).unwrap();
            let b = brute_force(&inst, &OracleLimits::default()).unwrap();
            assert_eq!(a, b);
            if let Some(h) = &a.happy_set {
                assert!(verify_happy_set(&inst, h).passed());
            }
        }
    }

    #[test]
    fn within_hull_matches_full_search_for_convex_input() {
        for mask in 0u32..16 {
            let r: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
            let inst = square_path(&r);
            let lim = OracleLimits::default();
            assert_eq!(
                brute_force(&inst, &lim).unwrap().feasible(),
                brute_force_within(&inst, &[0, 1, 2, 3], &lim).unwrap().feasible()
            );
        }
    }

    #[test]
    fn empty_candidate_set_only_satisfies_empty_r() {
        let pts: Vec<Point> = [(0, 0), (10, 0), (5, 10)].iter().map(|&p| p.into()).collect();
        let lim = OracleLimits::default();
        let none = BTreeSet::new();
        assert!(search_edges(&pts, &EdgeSet::new(), &none, &lim).unwrap().feasible());
        let two = BTreeSet::from([0, 1]);
        assert!(!search_edges(&pts, &EdgeSet::new(), &two, &lim).unwrap().feasible());
    }
}
