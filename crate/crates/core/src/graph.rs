//! Plane geometric graphs, instances, visibility and happy-set verification.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, midpoint_in_closed_polygon, Point, Segment, SegmentContact};

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(&self) -> usize {
        self.0
    }

    pub fn hi(&self) -> usize {
        self.1
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn segment(&self, points: &[Point]) -> Segment {
        Segment::new(points[self.0], points[self.1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        Ok(Edge::new(a, b))
    }
}

/// A set of undirected edges. Iterates in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.0.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    /// Toggle membership of `e` (symmetric difference with `{e}`).
    pub fn toggle(&mut self, e: Edge) {
        if !self.0.remove(&e) {
            self.0.insert(e);
        }
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.symmetric_difference(&other.0).copied().collect())
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl IntoIterator for EdgeSet {
    type Item = Edge;
    type IntoIter = std::collections::btree_set::IntoIter<Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Vertices of odd degree, counting edges with multiplicity.
pub fn odd_degree_vertices<I: IntoIterator<Item = Edge>>(edges: I) -> BTreeSet<usize> {
    let mut odd = BTreeSet::new();
    for e in edges {
        for v in [e.lo(), e.hi()] {
            if !odd.remove(&v) {
                odd.insert(v);
            }
        }
    }
    odd
}

/// One reason an instance failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CoordinateOutOfRange { vertex: usize },
    DuplicatePoint { first: usize, second: usize },
    EdgeIndexOutOfRange { edge: (usize, usize) },
    SelfLoop { vertex: usize },
    DuplicateEdge { edge: Edge },
    UnhappyIndexOutOfRange { vertex: usize },
    Crossing { first: Edge, second: Edge },
    VertexOnEdge { vertex: usize, edge: Edge },
    Collinear { a: usize, b: usize, c: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoordinateOutOfRange { vertex } => {
                write!(f, "vertex {vertex} has a coordinate outside (-2^62, 2^62)")
            }
            Violation::DuplicatePoint { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            Violation::EdgeIndexOutOfRange { edge } => {
                write!(f, "edge [{}, {}] references a missing vertex", edge.0, edge.1)
            }
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::DuplicateEdge { edge } => write!(f, "edge {edge} listed twice"),
            Violation::UnhappyIndexOutOfRange { vertex } => {
                write!(f, "unhappy vertex {vertex} does not exist")
            }
            Violation::Crossing { first, second } => write!(f, "edges {first} and {second} cross"),
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {edge}")
            }
            Violation::Collinear { a, b, c } => {
                write!(f, "vertices {a}, {b}, {c} are collinear")
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// Run the cubic no-three-collinear check.
    pub general_position: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            general_position: true,
        }
    }
}

/// A crossing-free straight-line graph on integer points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    points: Vec<Point>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl PlaneGraph {
    /// Validates and builds a graph.
    pub fn new(points: Vec<Point>, edges: Vec<(usize, usize)>, opts: ValidationOptions) -> Result<Self> {
        let mut violations = Vec::new();
        let graph = Self::check(points, edges, opts, &mut violations);
        if violations.is_empty() {
            Ok(graph.expect("no violations implies a graph"))
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Builds a graph without validation. Callers guarantee the invariants.
    pub fn new_unchecked(points: Vec<Point>, edges: Vec<Edge>) -> Self {
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); points.len()];
        for e in &edges {
            adjacency[e.lo()].push(e.hi());
            adjacency[e.hi()].push(e.lo());
        }
        PlaneGraph {
            points,
            edges,
            adjacency,
        }
    }

    fn check(
        points: Vec<Point>,
        raw_edges: Vec<(usize, usize)>,
        opts: ValidationOptions,
        violations: &mut Vec<Violation>,
    ) -> Option<Self> {
        let n = points.len();
        for (i, p) in points.iter().enumerate() {
            if !p.in_range() {
                violations.push(Violation::CoordinateOutOfRange { vertex: i });
            }
        }
        let mut by_pos: Vec<usize> = (0..n).collect();
        by_pos.sort_by_key(|&i| points[i]);
        for w in by_pos.windows(2) {
            if points[w[0]] == points[w[1]] {
                violations.push(Violation::DuplicatePoint {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(a, b) in &raw_edges {
            if a >= n || b >= n {
                violations.push(Violation::EdgeIndexOutOfRange { edge: (a, b) });
            } else if a == b {
                violations.push(Violation::SelfLoop { vertex: a });
            } else if !seen.insert(Edge::new(a, b)) {
                violations.push(Violation::DuplicateEdge { edge: Edge::new(a, b) });
            } else {
                edges.push(Edge::new(a, b));
            }
        }
        if !violations.is_empty() {
            return None;
        }
        let graph = PlaneGraph::new_unchecked(points, edges);

        for (i, j) in conflicting_pairs(&graph.points, &graph.edges) {
            let (e, f) = (graph.edges[i], graph.edges[j]);
            violations.push(Violation::Crossing {
                first: e.min(f),
                second: e.max(f),
            });
        }
        if opts.general_position {
            violations.extend(collinear_triples(&graph.points));
        } else {
            for (v, e) in vertices_on_segments(&graph.points, &graph.edges) {
                violations.push(Violation::VertexOnEdge {
                    vertex: v,
                    edge: graph.edges[e],
                });
            }
        }
        Some(graph)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    /// Sorted, deduplicated edge list.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn segment(&self, e: Edge) -> Segment {
        e.segment(&self.points)
    }

    /// Path order of the vertices if the graph is a (connected) path, starting
    /// from the endpoint with the smaller index.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some(vec![0]);
        }
        if self.edges.len() != n - 1 || self.adjacency.iter().any(|a| a.len() > 2 || a.is_empty()) {
            return None;
        }
        let start = (0..n).find(|&v| self.degree(v) == 1)?;
        let mut order = Vec::with_capacity(n);
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            order.push(cur);
            match self.adjacency[cur].iter().find(|&&w| w != prev) {
                Some(&next) if order.len() < n => {
                    prev = cur;
                    cur = next;
                }
                _ => break,
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Whether every vertex is a convex hull vertex.
    pub fn is_convex_position(&self) -> bool {
        match self.len() {
            0..=2 => true,
            n => geom::convex_hull(&self.points).is_ok_and(|h| h.len() == n),
        }
    }
}

/// The unhappy set together with the graph it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: PlaneGraph,
    pub unhappy: BTreeSet<usize>,
}

impl Instance {
    pub fn new(graph: PlaneGraph, unhappy: impl IntoIterator<Item = usize>) -> Result<Self> {
        let unhappy: BTreeSet<usize> = unhappy.into_iter().collect();
        let bad: Vec<Violation> = unhappy
            .iter()
            .filter(|&&v| v >= graph.len())
            .map(|&v| Violation::UnhappyIndexOutOfRange { vertex: v })
            .collect();
        if bad.is_empty() {
            Ok(Instance { graph, unhappy })
        } else {
            Err(Error::Invalid(bad))
        }
    }

    pub fn unhappy_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.graph.len()];
        for &v in &self.unhappy {
            mask[v] = true;
        }
        mask
    }

    pub fn with_unhappy(&self, unhappy: impl IntoIterator<Item = usize>) -> Result<Self> {
        Instance::new(self.graph.clone(), unhappy)
    }
}

/// Validates raw input into an [`Instance`], collecting every violation.
pub fn validate_instance(
    points: Vec<Point>,
    edges: Vec<(usize, usize)>,
    unhappy: Vec<usize>,
    opts: ValidationOptions,
) -> Result<Instance> {
    let n = points.len();
    let mut violations = Vec::new();
    let graph = PlaneGraph::check(points, edges, opts, &mut violations);
    let mut seen = BTreeSet::new();
    for &v in &unhappy {
        if v >= n {
            violations.push(Violation::UnhappyIndexOutOfRange { vertex: v });
        }
        seen.insert(v);
    }
    match graph {
        Some(graph) if violations.is_empty() => Ok(Instance {
            graph,
            unhappy: seen,
        }),
        _ => Err(Error::Invalid(violations)),
    }
}

/// Pairs of segments (by index) that cross or touch anywhere other than at a
/// shared endpoint. Sweeps over x so only segments with overlapping x ranges
/// are compared.
pub(crate) fn conflicting_pairs(points: &[Point], segments: &[Edge]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..segments.len()).collect();
    let x_range = |e: &Edge| {
        let (a, b) = (points[e.lo()].x, points[e.hi()].x);
        (a.min(b), a.max(b))
    };
    order.sort_by_key(|&i| x_range(&segments[i]).0);
    let mut active: Vec<usize> = Vec::new();
    let mut found = Vec::new();
    for &i in &order {
        let (lo, _) = x_range(&segments[i]);
        active.retain(|&j| x_range(&segments[j]).1 >= lo);
        let si = segments[i].segment(points);
        for &j in &active {
            let sj = segments[j].segment(points);
            let (ylo_i, yhi_i) = (si.a.y.min(si.b.y), si.a.y.max(si.b.y));
            let (ylo_j, yhi_j) = (sj.a.y.min(sj.b.y), sj.a.y.max(sj.b.y));
            if yhi_i < ylo_j || yhi_j < ylo_i {
                continue;
            }
            if matches!(
                geom::segment_contact(&si, &sj),
                SegmentContact::ProperCrossing | SegmentContact::Touching
            ) {
                found.push((i.min(j), i.max(j)));
            }
        }
        active.push(i);
    }
    found.sort_unstable();
    found
}

/// `(vertex, segment index)` pairs where the vertex lies strictly inside the segment.
pub(crate) fn vertices_on_segments(points: &[Point], segments: &[Edge]) -> Vec<(usize, usize)> {
    let mut by_x: Vec<usize> = (0..points.len()).collect();
    by_x.sort_by_key(|&v| points[v].x);
    let mut found = Vec::new();
    for (si, e) in segments.iter().enumerate() {
        let s = e.segment(points);
        let (lo, hi) = (s.a.x.min(s.b.x), s.a.x.max(s.b.x));
        let start = by_x.partition_point(|&v| points[v].x < lo);
        for &v in by_x[start..].iter().take_while(|&&v| points[v].x <= hi) {
            if geom::on_segment_interior(&s, points[v]) {
                found.push((v, si));
            }
        }
    }
    found.sort_unstable();
    found
}

fn collinear_triples(points: &[Point]) -> Vec<Violation> {
    let n = points.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if geom::cross(points[a], points[b], points[c]) == 0 {
                    out.push(Violation::Collinear { a, b, c });
                }
            }
        }
    }
    out
}

/// Whether segment `uv` can be added to `g`: not an edge, crosses no edge,
/// and passes through no other vertex.
pub fn is_visible(g: &PlaneGraph, u: usize, v: usize) -> bool {
    if u == v || g.has_edge(Edge::new(u, v)) {
        return false;
    }
    let s = Segment::new(g.point(u), g.point(v));
    let blocked_by_edge = g.edges().iter().any(|e| {
        matches!(
            geom::segment_contact(&s, &g.segment(*e)),
            SegmentContact::ProperCrossing | SegmentContact::Touching
        )
    });
    if blocked_by_edge {
        return false;
    }
    !g.points()
        .iter()
        .enumerate()
        .any(|(w, &p)| w != u && w != v && geom::on_segment_interior(&s, p))
}

/// All pairs `uv` that are not edges and cross no edge of `g`. Naive
/// `O(n^2 |E|)` scan.
pub fn visibility_graph(g: &PlaneGraph) -> EdgeSet {
    let n = g.len();
    let mut vis = EdgeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if is_visible(g, u, v) {
                vis.insert(Edge::new(u, v));
            }
        }
    }
    vis
}

/// Why an edge of a candidate happy set is not a visibility edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invisibility {
    VertexOutOfRange,
    SelfLoop,
    InGraph,
    CrossesGraphEdge(Edge),
    PassesThroughVertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationFailure {
    NotVisible { edge: Edge, reason: Invisibility },
    EdgesCross { first: Edge, second: Edge },
    ParityMismatch { expected: BTreeSet<usize>, actual: BTreeSet<usize> },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationFailure::NotVisible { edge, reason } => {
                write!(f, "edge {edge} is not a visibility edge ({reason:?})")
            }
            VerificationFailure::EdgesCross { first, second } => {
                write!(f, "happy-set edges {first} and {second} cross")
            }
            VerificationFailure::ParityMismatch { expected, actual } => {
                write!(f, "odd-degree set {actual:?} differs from unhappy set {expected:?}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<VerificationFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `h` is crossing-free, lies in the visibility graph, and has
/// exactly the unhappy vertices as its odd-degree set.
pub fn verify_happy_set(inst: &Instance, h: &EdgeSet) -> VerificationReport {
    let g = &inst.graph;
    let n = g.len();
    let mut failures = Vec::new();
    let mut usable = Vec::new();
    for e in h.iter() {
        let reason = if e.hi() >= n {
            Some(Invisibility::VertexOutOfRange)
        } else if e.lo() == e.hi() {
            Some(Invisibility::SelfLoop)
        } else if g.has_edge(e) {
            Some(Invisibility::InGraph)
        } else {
            None
        };
        match reason {
            Some(reason) => failures.push(VerificationFailure::NotVisible { edge: e, reason }),
            None => usable.push(e),
        }
    }

    let h_count = usable.len();
    let mut all = usable.clone();
    all.extend_from_slice(g.edges());
    for (i, j) in conflicting_pairs(g.points(), &all) {
        match (i < h_count, j < h_count) {
            (true, true) => failures.push(VerificationFailure::EdgesCross {
                first: all[i],
                second: all[j],
            }),
            (true, false) => failures.push(VerificationFailure::NotVisible {
                edge: all[i],
                reason: Invisibility::CrossesGraphEdge(all[j]),
            }),
            // i < j, so an H edge is always first
            _ => {}
        }
    }
    for (v, si) in vertices_on_segments(g.points(), &usable) {
        failures.push(VerificationFailure::NotVisible {
            edge: usable[si],
            reason: Invisibility::PassesThroughVertex(v),
        });
    }

    let actual = odd_degree_vertices(h.iter());
    if actual != inst.unhappy {
        failures.push(VerificationFailure::ParityMismatch {
            expected: inst.unhappy.clone(),
            actual,
        });
    }
    VerificationReport { failures }
}

/// Checks that `cycle` visits every vertex of `points` exactly once.
pub(crate) fn check_spanning_cycle(n: usize, cycle: &[usize]) -> Result<()> {
    if cycle.len() != n || n < 3 {
        return Err(Error::InvalidCycle(format!(
            "cycle has {} vertices, graph has {n} (need at least 3)",
            cycle.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidCycle(format!("vertex {v} is missing or repeated")));
        }
    }
    Ok(())
}

/// Edges of the closed cycle through `cycle` in order.
pub(crate) fn cycle_edges(cycle: &[usize]) -> Vec<Edge> {
    (0..cycle.len())
        .map(|i| Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]))
        .collect()
}

/// The subset of `vis` lying in the closed region bounded by `cycle`.
pub fn restrict_to_region(points: &[Point], vis: &EdgeSet, cycle: &[usize]) -> Result<EdgeSet> {
    check_spanning_cycle(points.len(), cycle)?;
    let c_edges = cycle_edges(cycle);
    if !conflicting_pairs(points, &c_edges).is_empty() {
        return Err(Error::InvalidCycle("cycle is not simple".into()));
    }
    let on_cycle: HashSet<Edge> = c_edges.iter().copied().collect();
    let ring: Vec<Point> = cycle.iter().map(|&v| points[v]).collect();
    let mut kept = EdgeSet::new();
    for e in vis.iter() {
        if on_cycle.contains(&e) {
            kept.insert(e);
            continue;
        }
        let s = e.segment(points);
        let crosses = c_edges
            .iter()
            .any(|c| geom::segment_contact(&s, &c.segment(points)) == SegmentContact::ProperCrossing);
        if !crosses && midpoint_in_closed_polygon(s.a, s.b, &ring) {
            kept.insert(e);
        }
    }
    Ok(kept)
}
