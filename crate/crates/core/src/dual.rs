//! Graphs inside a convexly hugging cycle.
//!
//! A spanning cycle `C` hugs `G` convexly when every bounded face of `G ∪ C`
//! is a convex polygon and nothing of `G` lies outside `C`. The bounded faces
//! then form a tree (the weak dual) whose edges are the interior edges of `G`,
//! each of which separates the problem into two independent halves.
//!
//! The solver works bottom-up. For a face `f` with connector edge `uv`
//! towards its parent, it records for which parities `(p_u, p_v)` the
//! subtree below `uv` can be satisfied. Parities of the two connector ends
//! always have a fixed XOR, so a child either admits one pair or a
//! complementary two. In the second case the child behaves like an extra
//! addable edge `uv` of its parent: adding it flips both ends. That makes each
//! parent a plain convex face problem, and the whole pass is linear.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::face::{self, LocalEdge};
use crate::geom::{self, orient, Orientation, Point};
use crate::graph::{check_spanning_cycle, conflicting_pairs, cycle_edges, Edge, EdgeSet, Instance, PlaneGraph};
use crate::solve::{Solution, SolveOptions, SolverPath};

/// A spanning cycle of the vertex set, stored counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuggingCycle {
    order: Vec<usize>,
    edge_in_g: Vec<bool>,
}

impl HuggingCycle {
    /// Checks that `order` is a simple spanning cycle that crosses no edge of
    /// `g`. Convexity of the faces is checked by [`build_dual`].
    pub fn new(g: &PlaneGraph, order: Vec<usize>) -> Result<Self> {
        check_spanning_cycle(g.len(), &order)?;
        let mut all: Vec<Edge> = g.edges().to_vec();
        all.extend(cycle_edges(&order).into_iter().filter(|e| !g.has_edge(*e)));
        if let Some(&(i, j)) = conflicting_pairs(g.points(), &all).first() {
            return Err(Error::InvalidCycle(format!("edges {} and {} meet", all[i], all[j])));
        }
        Ok(Self::trusted(g, order))
    }

    /// Skips validation; orientation is still normalized.
    pub(crate) fn trusted(g: &PlaneGraph, mut order: Vec<usize>) -> Self {
        let n = order.len();
        let pts = g.points();
        let lowest = (0..n)
            .min_by_key(|&i| (pts[order[i]].x, pts[order[i]].y))
            .expect("cycle is not empty");
        let turn = orient(
            pts[order[(lowest + n - 1) % n]],
            pts[order[lowest]],
            pts[order[(lowest + 1) % n]],
        );
        if turn == Orientation::Clockwise {
            order.reverse();
        }
        let edge_in_g = (0..n)
            .map(|i| g.has_edge(Edge::new(order[i], order[(i + 1) % n])))
            .collect();
        HuggingCycle { order, edge_in_g }
    }

    /// Vertices in counter-clockwise order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Whether the edge `order[i] -> order[i + 1]` belongs to `G`.
    pub fn edge_in_g(&self) -> &[bool] {
        &self.edge_in_g
    }

    pub fn edges(&self) -> Vec<Edge> {
        cycle_edges(&self.order)
    }
}

/// A bounded face of `G ∪ C`, counter-clockwise and starting at its
/// smallest vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFace {
    pub ring: Vec<usize>,
    /// Whether side `i` belongs to `G`.
    pub edge_in_g: Vec<bool>,
    /// The face on the other side of side `i`, if that side is interior.
    pub across: Vec<Option<usize>>,
}

impl DualFace {
    fn side(&self, i: usize) -> Edge {
        Edge::new(self.ring[i], self.ring[(i + 1) % self.ring.len()])
    }
}

/// The weak dual, rooted at a leaf face.
#[derive(Clone, Debug)]
pub struct WeakDualTree {
    faces: Vec<DualFace>,
    root: usize,
    parent: Vec<Option<usize>>,
    /// Side of each face that leads to its parent (for the root: a side on `C`).
    connector: Vec<usize>,
    /// `(child, side of this face shared with it)`.
    children: Vec<Vec<(usize, usize)>>,
    /// Faces in breadth-first order from the root.
    order: Vec<usize>,
}

impl WeakDualTree {
    pub fn faces(&self) -> &[DualFace] {
        &self.faces
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, f: usize) -> Option<usize> {
        self.parent[f]
    }

    pub fn connector(&self, f: usize) -> usize {
        self.connector[f]
    }

    pub fn children(&self, f: usize) -> &[(usize, usize)] {
        &self.children[f]
    }

    /// Root first, each face before its children.
    pub fn top_down(&self) -> &[usize] {
        &self.order
    }

    /// Vertices of the faces in the subtree of `f` (including `f`).
    pub fn subtree_vertices(&self, f: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![f];
        while let Some(x) = stack.pop() {
            out.extend(self.faces[x].ring.iter().copied());
            stack.extend(self.children[x].iter().map(|&(c, _)| c));
        }
        out
    }
}

/// Builds the weak dual of `G ∪ C`, rooted at the leaf face whose sorted
/// vertex list is lexicographically smallest.
pub fn build_dual(g: &PlaneGraph, cycle: &HuggingCycle) -> Result<WeakDualTree> {
    build_dual_rooted(g, cycle, |faces| {
        let leaves = (0..faces.len()).filter(|&f| faces[f].across.iter().flatten().count() <= 1);
        leaves
            .min_by_key(|&f| {
                let mut vs = faces[f].ring.clone();
                vs.sort_unstable();
                vs
            })
            .ok_or_else(|| Error::DualNotTree("no leaf face".into()))
    })
}

pub(crate) fn build_dual_rooted(
    g: &PlaneGraph,
    cycle: &HuggingCycle,
    pick_root: impl FnOnce(&[DualFace]) -> Result<usize>,
) -> Result<WeakDualTree> {
    let faces = trace_faces(g, cycle)?;
    let interior: usize = faces.iter().map(|f| f.across.iter().flatten().count()).sum::<usize>() / 2;
    if interior + 1 != faces.len() {
        return Err(Error::DualNotTree(format!(
            "{} faces but {interior} interior edges",
            faces.len()
        )));
    }
    let root = pick_root(&faces)?;
    let m = faces.len();
    let mut parent = vec![None; m];
    let mut connector = vec![usize::MAX; m];
    let mut children = vec![Vec::new(); m];
    let mut seen = vec![false; m];
    let mut order = Vec::with_capacity(m);

    connector[root] = (0..faces[root].ring.len())
        .filter(|&i| faces[root].across[i].is_none())
        .min_by_key(|&i| faces[root].side(i))
        .ok_or_else(|| Error::DualNotTree("root face has no side on the cycle".into()))?;
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for (i, nb) in faces[f].across.iter().enumerate() {
            let Some(c) = *nb else { continue };
            if Some(c) == parent[f] {
                continue;
            }
            if seen[c] {
                return Err(Error::DualNotTree("dual graph has a cycle".into()));
            }
            seen[c] = true;
            parent[c] = Some(f);
            connector[c] = faces[c]
                .across
                .iter()
                .position(|&x| x == Some(f))
                .expect("adjacency is symmetric");
            children[f].push((c, i));
            queue.push_back(c);
        }
    }
    if order.len() != m {
        return Err(Error::DualNotTree("dual graph is disconnected".into()));
    }
    Ok(WeakDualTree {
        faces,
        root,
        parent,
        connector,
        children,
        order,
    })
}

/// Traces the bounded faces of `G ∪ C` and checks that each is convex and
/// that the unbounded face is exactly `C`.
fn trace_faces(g: &PlaneGraph, cycle: &HuggingCycle) -> Result<Vec<DualFace>> {
    let n = g.len();
    let pts = g.points();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    for (i, e) in cycle.edges().into_iter().enumerate() {
        if !cycle.edge_in_g[i] {
            adj[e.lo()].push(e.hi());
            adj[e.hi()].push(e.lo());
        }
    }
    for (v, list) in adj.iter_mut().enumerate() {
        list.sort_by(|&a, &b| geom::angular_cmp(&pts[v].to(pts[a]), &pts[v].to(pts[b])));
    }
    // half-edge `offset[v] + i` runs from v to adj[v][i]
    let mut offset = Vec::with_capacity(n + 1);
    offset.push(0);
    for list in &adj {
        offset.push(offset.last().unwrap() + list.len());
    }
    let half = |v: usize, i: usize| offset[v] + i;
    let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(offset[n]);
    let mut origin = vec![0; offset[n]];
    for v in 0..n {
        for (i, &w) in adj[v].iter().enumerate() {
            index.insert((v, w), half(v, i));
            origin[half(v, i)] = v;
        }
    }
    let target = |h: usize| adj[origin[h]][h - offset[origin[h]]];
    // clockwise successor at the head keeps the face on the left
    let next = |h: usize| {
        let v = target(h);
        let back = index[&(v, origin[h])] - offset[v];
        let d = adj[v].len();
        half(v, (back + d - 1) % d)
    };

    let c = cycle.order();
    let outer_start = index[&(c[1], c[0])];
    let mut face_of = vec![usize::MAX; offset[n]];
    let mut rings: Vec<Vec<usize>> = Vec::new();
    let mut outer = usize::MAX;
    for start in 0..offset[n] {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = rings.len();
        let mut ring = Vec::new();
        let mut h = start;
        while face_of[h] == usize::MAX {
            face_of[h] = id;
            ring.push(origin[h]);
            h = next(h);
        }
        if h != start {
            return Err(Error::Structure("face walk did not close".into()));
        }
        if face_of[outer_start] == id {
            outer = id;
        }
        rings.push(ring);
    }
    let expected: Vec<usize> = (0..n).map(|i| c[(n + 1 - i) % n]).collect();
    let outer_ring = &rings[outer];
    let pos = outer_ring.iter().position(|&v| v == c[1]);
    let matches = outer_ring.len() == n
        && pos.is_some_and(|p| (0..n).all(|i| outer_ring[(p + i) % n] == expected[i]));
    if !matches {
        return Err(Error::NotConvexlyHugging(
            "graph edges leave the region bounded by the cycle".into(),
        ));
    }

    // renumber bounded faces densely
    let mut dense = vec![usize::MAX; rings.len()];
    let mut count = 0;
    for (id, d) in dense.iter_mut().enumerate() {
        if id != outer {
            *d = count;
            count += 1;
        }
    }
    let mut faces = Vec::with_capacity(count);
    for (id, ring) in rings.into_iter().enumerate() {
        if id == outer {
            continue;
        }
        let k = ring.len();
        let rot = (0..k).min_by_key(|&i| ring[i]).unwrap();
        let ring: Vec<usize> = (0..k).map(|i| ring[(rot + i) % k]).collect();
        for i in 0..k {
            let [a, b, d] = [i, (i + 1) % k, (i + 2) % k].map(|j| pts[ring[j]]);
            if orient(a, b, d) != Orientation::CounterClockwise {
                return Err(Error::NotConvexlyHugging(format!(
                    "face through {} is not strictly convex at {}",
                    ring[0],
                    ring[(i + 1) % k]
                )));
            }
        }
        let across = (0..k)
            .map(|i| {
                let back = face_of[index[&(ring[(i + 1) % k], ring[i])]];
                (back != outer).then(|| dense[back])
            })
            .collect();
        let edge_in_g = (0..k)
            .map(|i| g.has_edge(Edge::new(ring[i], ring[(i + 1) % k])))
            .collect();
        faces.push(DualFace {
            ring,
            edge_in_g,
            across,
        });
    }
    Ok(faces)
}

/// Feasible connector parities of one subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceProblem {
    /// `table[p][q]`: the subtree can be satisfied with the first connector
    /// end (`ring[connector]`) at parity `p` and the second at parity `q`.
    pub table: [[bool; 2]; 2],
}

impl FaceProblem {
    pub fn first_pair(&self) -> Option<(bool, bool)> {
        [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .find(|&(p, q)| self.table[p as usize][q as usize])
    }

    /// Both complementary pairs are available.
    pub fn flexible(&self) -> bool {
        let t = &self.table;
        (t[0][0] && t[1][1]) || (t[0][1] && t[1][0])
    }
}

/// Local face problem of `f` with its connector ends forced to `pair`.
/// Returns the flags, graph-side markers and which sides are flexible
/// children.
fn local_problem(
    tree: &WeakDualTree,
    f: usize,
    unhappy: &[bool],
    problems: &[Option<FaceProblem>],
    pair: (bool, bool),
) -> Option<(Vec<bool>, Vec<bool>, Vec<bool>)> {
    let face = &tree.faces[f];
    let k = face.ring.len();
    let mut contrib = vec![false; k];
    let mut in_g = face.edge_in_g.clone();
    let mut flexible = vec![false; k];
    for &(child, side) in &tree.children[f] {
        let prob = problems[child]?;
        let (a, b) = prob.first_pair()?;
        // the child walks the shared side the other way round
        contrib[(side + 1) % k] ^= a;
        contrib[side] ^= b;
        if prob.flexible() {
            in_g[side] = false;
            flexible[side] = true;
        }
    }
    let mut flags: Vec<bool> = (0..k).map(|i| unhappy[face.ring[i]] ^ contrib[i]).collect();
    let c = tree.connector[f];
    flags[c] = pair.0 ^ contrib[c];
    flags[(c + 1) % k] = pair.1 ^ contrib[(c + 1) % k];
    Some((flags, in_g, flexible))
}

/// Connector tables for every face, bottom-up. A face whose subtree contains
/// an unsatisfiable face gets `None`.
pub fn face_problems(tree: &WeakDualTree, unhappy: &[bool]) -> Vec<Option<FaceProblem>> {
    let mut problems: Vec<Option<FaceProblem>> = vec![None; tree.faces.len()];
    for &f in tree.order.iter().rev() {
        let mut table = [[false; 2]; 2];
        let mut any_child_missing = false;
        for p in [false, true] {
            for q in [false, true] {
                match local_problem(tree, f, unhappy, &problems, (p, q)) {
                    Some((flags, in_g, _)) => table[p as usize][q as usize] = face::feasible(&flags, &in_g),
                    None => any_child_missing = true,
                }
            }
        }
        let prob = FaceProblem { table };
        if !any_child_missing && prob.first_pair().is_some() {
            problems[f] = Some(prob);
        }
    }
    problems
}

/// Decides (and optionally constructs) using a prepared dual tree.
pub(crate) fn solve_on_tree(
    tree: &WeakDualTree,
    unhappy: &[bool],
    construct: bool,
) -> (bool, Option<EdgeSet>) {
    let problems = face_problems(tree, unhappy);
    let root = tree.root;
    let c = tree.connector[root];
    let ring = &tree.faces[root].ring;
    let root_pair = (unhappy[ring[c]], unhappy[ring[(c + 1) % ring.len()]]);
    let feasible = problems[root].is_some_and(|p| p.table[root_pair.0 as usize][root_pair.1 as usize]);
    if !feasible || !construct {
        return (feasible, None);
    }

    let mut chosen = vec![(false, false); tree.faces.len()];
    chosen[root] = root_pair;
    let mut happy = EdgeSet::new();
    for &f in &tree.order {
        let (flags, in_g, flexible) =
            local_problem(tree, f, unhappy, &problems, chosen[f]).expect("feasible subtree");
        let ring = &tree.faces[f].ring;
        let local = face::construct(ring, &flags, &in_g).expect("table entry was feasible");
        let mut toggled = vec![false; ring.len()];
        for e in local {
            match e {
                LocalEdge::Boundary(i) if flexible[i] => toggled[i] = true,
                _ => {
                    happy.insert(face::to_edge(ring, e));
                }
            }
        }
        for &(child, side) in &tree.children[f] {
            let (a, b) = problems[child].and_then(|p| p.first_pair()).expect("feasible child");
            let t = toggled[side];
            chosen[child] = (a ^ t, b ^ t);
        }
    }
    (true, Some(happy))
}

/// Solves an instance whose graph is convexly hugged by `cycle`.
pub fn solve_hugged(inst: &Instance, cycle: &HuggingCycle, opts: &SolveOptions) -> Result<Solution> {
    if let Some(s) = Solution::handshake(inst) {
        return Ok(s);
    }
    let tree = build_dual(&inst.graph, cycle)?;
    let (feasible, happy_set) = solve_on_tree(&tree, &inst.unhappy_mask(), opts.construct);
    Ok(Solution {
        feasible,
        happy_set,
        route: SolverPath::HuggingCycleDp,
        note: None,
    })
}

/// Solves an instance whose vertices are in convex position, using the hull
/// as the hugging cycle.
pub fn convex_graph_solve(inst: &Instance, opts: &SolveOptions) -> Result<Solution> {
    if let Some(s) = Solution::handshake(inst) {
        return Ok(s);
    }
    let g = &inst.graph;
    if g.len() < 3 {
        // no visibility edges at all: only the empty set is available
        let feasible = inst.unhappy.is_empty() || (g.len() == 2 && g.edges().is_empty());
        let happy_set = (feasible && opts.construct).then(|| {
            if inst.unhappy.is_empty() {
                EdgeSet::new()
            } else {
                [Edge::new(0, 1)].into_iter().collect()
            }
        });
        return Ok(Solution {
            feasible,
            happy_set,
            route: SolverPath::ConvexDp,
            note: None,
        });
    }
    let hull = geom::convex_hull(g.points())?;
    if hull.len() != g.len() {
        return Err(Error::NotConvexPosition);
    }
    let cycle = HuggingCycle::trusted(g, hull);
    let tree = build_dual(g, &cycle)?;
    let (feasible, happy_set) = solve_on_tree(&tree, &inst.unhappy_mask(), opts.construct);
    Ok(Solution {
        feasible,
        happy_set,
        route: SolverPath::ConvexDp,
        note: None,
    })
}

/// Points of a face ring, for callers that want to draw or re-check faces.
pub fn face_points(g: &PlaneGraph, face: &DualFace) -> Vec<Point> {
    face.ring.iter().map(|&v| g.point(v)).collect()
}
