//! The pruned oracle against a plain enumeration of every visibility subset.

use std::collections::BTreeSet;

use parity_core::generate::{generate_graph, Family};
use parity_core::{
    brute_force, verify_happy_set, visibility_graph, Edge, EdgeSet, Instance, OracleLimits,
};

const MAX_VIS: usize = 12;

/// Every crossing-free subset of `vis`, as its set of odd-degree vertices.
fn reachable(inst: &Instance, vis: &[Edge]) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << vis.len() {
        let h: EdgeSet = (0..vis.len()).filter(|i| mask >> i & 1 == 1).map(|i| vis[i]).collect();
        let report = verify_happy_set(inst, &h);
        // only parity may fail if the subset is crossing-free
        let crossing = report.failures.iter().any(|f| {
            !matches!(f, parity_core::graph::VerificationFailure::ParityMismatch { .. })
        });
        if !crossing {
            out.insert(parity_core::odd_degree_vertices(h.iter()));
        }
    }
    out
}

#[test]
fn oracle_matches_plain_enumeration() {
    let limits = OracleLimits::default();
    let mut checked = 0;
    for family in Family::ALL {
        for n in 3..=6 {
            for seed in 0..12 {
                let Ok(g) = generate_graph(family, n, seed) else { continue };
                let vis: Vec<Edge> = visibility_graph(&g).iter().collect();
                if vis.len() > MAX_VIS {
                    continue;
                }
                let base = Instance::new(g, []).unwrap();
                let reach = reachable(&base, &vis);
                for mask in 0u32..1 << n {
                    let r: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                    if r.len() % 2 == 1 {
                        continue;
                    }
                    let inst = base.with_unhappy(r.iter().copied()).unwrap();
                    let out = brute_force(&inst, &limits).unwrap();
                    let expected = reach.contains(&r.iter().copied().collect());
                    assert_eq!(out.feasible(), expected, "{family} n={n} seed={seed} R={r:?}");
                    if let Some(h) = &out.happy_set {
                        assert!(verify_happy_set(&inst, h).passed());
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500, "only {checked} instances checked");
}
