//! Plane paths.
//!
//! A path is either universally happy (every even `R` works, witnessed by a
//! plane spanning tree of its visibility graph) or pseudoconvex, in which case
//! its tight hull is a convexly hugging cycle and the face DP decides it.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dual::{build_dual, build_dual_rooted, solve_on_tree, HuggingCycle, WeakDualTree};
use crate::error::{Error, Result};
use crate::geom::{self, cross, ray_first_hit, Point, Segment, SegmentContact};
use crate::graph::{check_spanning_cycle, visibility_graph, Edge, EdgeSet, Instance, PlaneGraph};
use crate::oracle::{brute_force, OracleLimits};
use crate::solve::{Solution, SolveOptions, SolverPath};

/// Largest path for which a spanning tree of the visibility graph is built.
pub const MAX_TREE_VERTICES: usize = 400;
/// Largest path for which the tree search falls back to exhaustive search.
const EXHAUSTIVE_TREE_VERTICES: usize = 12;
const TREE_RESTARTS: usize = 32;

/// The face created by adding a hull edge that is missing from the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pocket {
    /// Hull edge `(q_i, q_{i+1})`, counter-clockwise along the hull.
    pub hull_edge: (usize, usize),
    /// Path vertices from `q_i` to `q_{i+1}`.
    pub chain: Vec<usize>,
    /// Reflex vertices of the pocket polygon, in chain order.
    pub reflex: Vec<usize>,
}

fn path_order(g: &PlaneGraph) -> Result<Vec<usize>> {
    g.path_order()
        .ok_or_else(|| Error::NotAPath("degree sequence or connectivity is wrong".into()))
}

/// Pockets of the path, in hull order.
pub fn pockets(g: &PlaneGraph) -> Result<Vec<Pocket>> {
    let order = path_order(g)?;
    let hull = geom::convex_hull(g.points())?;
    Ok(pockets_with(g, &order, &hull))
}

fn pockets_with(g: &PlaneGraph, order: &[usize], hull: &[usize]) -> Vec<Pocket> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let pts = g.points();
    let h = hull.len();
    let mut out = Vec::new();
    for i in 0..h {
        let (a, b) = (hull[i], hull[(i + 1) % h]);
        if g.has_edge(Edge::new(a, b)) {
            continue;
        }
        let chain: Vec<usize> = if pos[a] < pos[b] {
            order[pos[a]..=pos[b]].to_vec()
        } else {
            order[pos[b]..=pos[a]].iter().rev().copied().collect()
        };
        // walking q_i -> q_{i+1} along the chain runs clockwise around the pocket
        let reflex = chain
            .windows(3)
            .filter(|w| cross(pts[w[0]], pts[w[1]], pts[w[2]]) > 0)
            .map(|w| w[1])
            .collect();
        out.push(Pocket {
            hull_edge: (a, b),
            chain,
            reflex,
        });
    }
    out
}

/// Why a path is not pseudoconvex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A path endpoint is not a hull vertex.
    EndpointInside(usize),
    /// Extending the chain edge `from -> vertex` past `vertex` first meets
    /// something other than the pocket's hull edge.
    RayMisses {
        hull_edge: (usize, usize),
        vertex: usize,
        from: usize,
        /// The pocket edge that was hit first, if any.
        hit: Option<Edge>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudoconvexity {
    pub pseudoconvex: bool,
    pub witness: Option<Witness>,
}

/// Checks pseudoconvexity by shooting both extension rays of every reflex
/// pocket vertex. The scan is linear per ray.
pub fn is_pseudoconvex(g: &PlaneGraph) -> Result<Pseudoconvexity> {
    let order = path_order(g)?;
    Ok(match check_pseudoconvex(g, &order)? {
        None => Pseudoconvexity {
            pseudoconvex: g.len() >= 2,
            witness: None,
        },
        Some(w) => Pseudoconvexity {
            pseudoconvex: false,
            witness: Some(w),
        },
    })
}

fn check_pseudoconvex(g: &PlaneGraph, order: &[usize]) -> Result<Option<Witness>> {
    if g.len() < 3 {
        return Ok(None);
    }
    let hull = geom::convex_hull(g.points())?;
    let on_hull: BTreeSet<usize> = hull.iter().copied().collect();
    for end in [order[0], order[order.len() - 1]] {
        if !on_hull.contains(&end) {
            return Ok(Some(Witness::EndpointInside(end)));
        }
    }
    let pts = g.points();
    for pocket in pockets_with(g, order, &hull) {
        if pocket.reflex.is_empty() {
            continue;
        }
        let chain = &pocket.chain;
        let s = chain.len();
        // segments 0..s-1 follow the chain, the last one is the hull edge
        let mut boundary: Vec<Segment> = chain
            .windows(2)
            .map(|w| Segment::new(pts[w[0]], pts[w[1]]))
            .collect();
        boundary.push(Segment::new(pts[chain[s - 1]], pts[chain[0]]));
        let lid = s - 1;
        for j in 1..s - 1 {
            let v = chain[j];
            if cross(pts[chain[j - 1]], pts[v], pts[chain[j + 1]]) <= 0 {
                continue;
            }
            for from in [chain[j - 1], chain[j + 1]] {
                let hit = ray_first_hit(pts[v], pts[from].to(pts[v]), &boundary, &[j - 1, j])?;
                if hit.map(|h| h.segment) != Some(lid) {
                    return Ok(Some(Witness::RayMisses {
                        hull_edge: pocket.hull_edge,
                        vertex: v,
                        from,
                        hit: hit.map(|h| {
                            if h.segment == lid {
                                Edge::new(chain[0], chain[s - 1])
                            } else {
                                Edge::new(chain[h.segment], chain[h.segment + 1])
                            }
                        }),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Every even unhappy set admits a happy set.
pub fn is_universally_happy(g: &PlaneGraph) -> Result<bool> {
    if g.len() == 1 {
        return Ok(true);
    }
    Ok(!is_pseudoconvex(g)?.pseudoconvex)
}

/// The tight hull: hull edges of the path, with each pocket's hull edge
/// replaced by the chain through its reflex vertices.
pub fn tight_hull(g: &PlaneGraph) -> Result<HuggingCycle> {
    let order = path_order(g)?;
    let (cycle, _) = tight_hull_with_dual(g, &order)?;
    Ok(cycle)
}

fn tight_hull_with_dual(g: &PlaneGraph, order: &[usize]) -> Result<(HuggingCycle, WeakDualTree)> {
    let cycle = tight_hull_unchecked(g, order)?;
    let tree = build_dual(g, &cycle)?;
    Ok((cycle, tree))
}

fn tight_hull_unchecked(g: &PlaneGraph, order: &[usize]) -> Result<HuggingCycle> {
    if g.len() < 3 || check_pseudoconvex(g, order)?.is_some() {
        return Err(Error::NotPseudoconvex);
    }
    let hull = geom::convex_hull(g.points())?;
    let pockets = pockets_with(g, order, &hull);
    let mut next_pocket = pockets.iter().peekable();
    let mut cycle = Vec::with_capacity(g.len());
    for &q in &hull {
        cycle.push(q);
        if let Some(p) = next_pocket.next_if(|p| p.hull_edge.0 == q) {
            cycle.extend(p.reflex.iter().copied());
        }
    }
    check_spanning_cycle(g.len(), &cycle)
        .map_err(|e| Error::Structure(format!("tight hull misses vertices: {e}")))?;
    Ok(HuggingCycle::trusted(g, cycle))
}

/// A crossing-free spanning tree inside the visibility graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTree {
    n: usize,
    edges: EdgeSet,
}

impl PlaneTree {
    /// Checks the tree shape (connected, `n - 1` edges). Geometry is the
    /// caller's responsibility.
    pub fn new(n: usize, edges: EdgeSet) -> Result<Self> {
        if n == 0 || edges.len() != n - 1 {
            return Err(Error::Structure(format!("{} edges cannot span {n} vertices", edges.len())));
        }
        let mut dsu = Dsu::new(n);
        for e in edges.iter() {
            if e.hi() >= n || !dsu.union(e.lo(), e.hi()) {
                return Err(Error::Structure(format!("edge {e} closes a cycle")));
            }
        }
        Ok(PlaneTree { n, edges })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSearch {
    Found(PlaneTree),
    /// No plane spanning tree exists.
    Pseudoconvex,
    /// The heuristics failed, or the input is too large to try.
    GaveUp(String),
}

/// Looks for a plane spanning tree of `Vis(G)`: greedy by length, then
/// seeded random orders, then exhaustive search on small inputs.
pub fn plane_spanning_tree(g: &PlaneGraph, seed: u64) -> Result<TreeSearch> {
    let order = path_order(g)?;
    if g.len() <= 2 || check_pseudoconvex(g, &order)?.is_none() {
        return Ok(TreeSearch::Pseudoconvex);
    }
    if g.len() > MAX_TREE_VERTICES {
        return Ok(TreeSearch::GaveUp(format!(
            "{} vertices exceed the tree-construction limit of {MAX_TREE_VERTICES}",
            g.len()
        )));
    }
    let pts = g.points();
    let mut cands: Vec<Edge> = visibility_graph(g).into_iter().collect();
    let len2 = |e: &Edge| {
        let d = pts[e.lo()].to(pts[e.hi()]);
        d.dot(&d)
    };
    cands.sort_by_key(|e| (len2(e), e.lo(), e.hi()));
    if let Some(t) = greedy(pts, &cands) {
        return Ok(TreeSearch::Found(t));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TREE_RESTARTS {
        cands.shuffle(&mut rng);
        if let Some(t) = greedy(pts, &cands) {
            return Ok(TreeSearch::Found(t));
        }
    }
    if g.len() <= EXHAUSTIVE_TREE_VERTICES {
        cands.sort_by_key(|e| (len2(e), e.lo(), e.hi()));
        let mut chosen = Vec::new();
        if exhaustive_tree(pts, &cands, 0, &mut chosen, g.len()) {
            let edges = chosen.into_iter().collect();
            return Ok(TreeSearch::Found(PlaneTree::new(g.len(), edges)?));
        }
        return Err(Error::Structure(
            "no plane spanning tree although the path is not pseudoconvex".into(),
        ));
    }
    Ok(TreeSearch::GaveUp(format!(
        "greedy search with {TREE_RESTARTS} restarts found no plane spanning tree"
    )))
}

fn meets(pts: &[Point], a: Edge, b: Edge) -> bool {
    matches!(
        geom::segment_contact(&a.segment(pts), &b.segment(pts)),
        SegmentContact::ProperCrossing | SegmentContact::Touching
    )
}

fn greedy(pts: &[Point], cands: &[Edge]) -> Option<PlaneTree> {
    let n = pts.len();
    let mut dsu = Dsu::new(n);
    let mut accepted: Vec<Edge> = Vec::with_capacity(n - 1);
    for &e in cands {
        if accepted.len() == n - 1 {
            break;
        }
        if dsu.find(e.lo()) == dsu.find(e.hi()) || accepted.iter().any(|&a| meets(pts, a, e)) {
            continue;
        }
        dsu.union(e.lo(), e.hi());
        accepted.push(e);
    }
    (accepted.len() == n - 1).then(|| PlaneTree {
        n,
        edges: accepted.into_iter().collect(),
    })
}

fn exhaustive_tree(pts: &[Point], cands: &[Edge], i: usize, chosen: &mut Vec<Edge>, n: usize) -> bool {
    if chosen.len() == n - 1 {
        return true;
    }
    if cands.len() - i < n - 1 - chosen.len() {
        return false;
    }
    let e = cands[i];
    let mut dsu = Dsu::new(n);
    for c in chosen.iter() {
        dsu.union(c.lo(), c.hi());
    }
    if dsu.find(e.lo()) != dsu.find(e.hi()) && chosen.iter().all(|&c| !meets(pts, c, e)) {
        chosen.push(e);
        if exhaustive_tree(pts, cands, i + 1, chosen, n) {
            return true;
        }
        chosen.pop();
    }
    exhaustive_tree(pts, cands, i + 1, chosen, n)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Pairs the sorted unhappy vertices consecutively and keeps the tree edges
/// used an odd number of times by the connecting tree paths.
pub fn tjoin_from_tree(tree: &PlaneTree, unhappy: &BTreeSet<usize>) -> Result<EdgeSet> {
    let pairs: Vec<usize> = unhappy.iter().copied().collect();
    tjoin_with_pairing(tree, &pairs)
}

/// As [`tjoin_from_tree`] with an explicit pairing: `(pairs[0], pairs[1])`,
/// `(pairs[2], pairs[3])`, and so on.
pub fn tjoin_with_pairing(tree: &PlaneTree, pairs: &[usize]) -> Result<EdgeSet> {
    if pairs.len() % 2 == 1 {
        return Err(Error::OddUnhappySet(pairs.len()));
    }
    let n = tree.n;
    let mut adj = vec![Vec::new(); n];
    for e in tree.edges.iter() {
        adj[e.lo()].push(e.hi());
        adj[e.hi()].push(e.lo());
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                stack.push(w);
            }
        }
    }
    let mut out = EdgeSet::new();
    for pair in pairs.chunks(2) {
        let (mut a, mut b) = (pair[0], pair[1]);
        if a >= n || b >= n {
            return Err(Error::Structure(format!("vertex {} is not in the tree", a.max(b))));
        }
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            out.toggle(Edge::new(a, parent[a]));
            a = parent[a];
        }
    }
    Ok(out)
}

/// Decides a path instance, and builds a happy set if asked.
pub fn solve_path(inst: &Instance, opts: &SolveOptions) -> Result<Solution> {
    let g = &inst.graph;
    let order = path_order(g)?;
    if let Some(s) = Solution::handshake(inst) {
        return Ok(s);
    }
    if g.len() <= 3 {
        let out = brute_force(inst, &OracleLimits::default())?;
        return Ok(Solution {
            feasible: out.feasible(),
            happy_set: if opts.construct { out.happy_set } else { None },
            route: SolverPath::Oracle,
            note: None,
        });
    }
    if check_pseudoconvex(g, &order)?.is_some() {
        let mut sol = Solution {
            feasible: true,
            happy_set: None,
            route: SolverPath::SpanningTree,
            note: None,
        };
        if opts.construct {
            match plane_spanning_tree(g, opts.seed)? {
                TreeSearch::Found(tree) => sol.happy_set = Some(tjoin_from_tree(&tree, &inst.unhappy)?),
                TreeSearch::GaveUp(why) => {
                    log::warn!("feasible, but no happy set built: {why}");
                    sol.note = Some(why);
                }
                TreeSearch::Pseudoconvex => {
                    return Err(Error::Structure("pseudoconvexity checks disagree".into()))
                }
            }
        }
        return Ok(sol);
    }
    let (_, tree) = tight_hull_with_dual(g, &order)?;
    let (feasible, happy_set) = solve_on_tree(&tree, &inst.unhappy_mask(), opts.construct);
    Ok(Solution {
        feasible,
        happy_set,
        route: SolverPath::TightHullDp,
        note: None,
    })
}

/// An even unhappy set with no happy set, for a pseudoconvex path.
///
/// The faces of `G ∪ T` (with `T` the tight hull) form a chain `f_0 .. f_k`
/// starting at a leaf face that holds a path endpoint. Faces are visited from
/// `f_k` back to `f_0`; each one marks its not yet marked vertices unhappy,
/// leaving out its pivot `u` when the face has an odd number of vertices.
/// The pivot is the connector end lying on the face's tight-hull side, or the
/// path endpoint in `f_0`.
pub fn adversarial_unhappy_set(g: &PlaneGraph) -> Result<BTreeSet<usize>> {
    let order = path_order(g)?;
    match g.len() {
        0 | 1 => return Err(Error::NotPseudoconvex),
        2 => return Ok(BTreeSet::from([0, 1])),
        _ => {}
    }
    let cycle = tight_hull_unchecked(g, &order)?;
    let ends = [order[0], order[order.len() - 1]];
    let tree = build_dual_rooted(g, &cycle, |faces| {
        let leaf = |f: usize| faces[f].across.iter().flatten().count() <= 1;
        ends.iter()
            .find_map(|e| (0..faces.len()).find(|&f| leaf(f) && faces[f].ring.contains(e)))
            .ok_or_else(|| Error::Structure("no leaf face holds a path endpoint".into()))
    })?;

    let mut chain = vec![tree.root()];
    loop {
        let kids = tree.children(*chain.last().unwrap());
        match kids.len() {
            0 => break,
            1 => chain.push(kids[0].0),
            _ => return Err(Error::Structure("faces of the tight hull do not form a chain".into())),
        }
    }

    let pivot = |f: usize| -> Result<usize> {
        let face = &tree.faces()[f];
        if f == tree.root() {
            return ends
                .iter()
                .copied()
                .find(|e| face.ring.contains(e))
                .ok_or_else(|| Error::Structure("first face holds no path endpoint".into()));
        }
        let k = face.ring.len();
        let c = tree.connector(f);
        let conn = [face.ring[c], face.ring[(c + 1) % k]];
        let hull_sides: Vec<usize> = (0..k)
            .filter(|&i| face.across[i].is_none() && !face.edge_in_g[i])
            .collect();
        match hull_sides[..] {
            [i] => conn
                .into_iter()
                .find(|&x| x == face.ring[i] || x == face.ring[(i + 1) % k])
                .ok_or_else(|| Error::Structure("tight-hull side misses the connector".into())),
            _ => Err(Error::Structure(format!(
                "face has {} tight-hull sides, expected one",
                hull_sides.len()
            ))),
        }
    };

    let mut seen = BTreeSet::new();
    let mut unhappy = BTreeSet::new();
    for &f in chain.iter().rev() {
        let ring = &tree.faces()[f].ring;
        let skip = if ring.len() % 2 == 1 { Some(pivot(f)?) } else { None };
        for &v in ring {
            if seen.insert(v) && Some(v) != skip {
                unhappy.insert(v);
            }
        }
    }
    if unhappy.len() % 2 == 1 {
        return Err(Error::Structure("sweep produced an odd unhappy set".into()));
    }
    Ok(unhappy)
}
