//! Happy sets inside a single convex face.
//!
//! A face is a ring of vertices in convex position. Its boundary edges either
//! belong to the graph (unusable) or may be added. Every chord is usable, since
//! the face is empty. Feasibility depends only on the unhappy flags and on the
//! number of usable boundary edges, which makes the check O(k).

use crate::error::{Error, Result};
use crate::geom::{orient, Orientation, Point};
use crate::graph::{Edge, EdgeSet};

/// A convex face: `ring[i]` is a vertex id, and `edge_in_g[i]` says whether the
/// boundary edge `ring[i] -> ring[i + 1]` (cyclically) is already in the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceInstance {
    pub ring: Vec<usize>,
    pub unhappy: Vec<bool>,
    pub edge_in_g: Vec<bool>,
}

impl FaceInstance {
    pub fn new(ring: Vec<usize>, unhappy: Vec<bool>, edge_in_g: Vec<bool>) -> Result<Self> {
        if ring.len() < 3 {
            return Err(Error::TooFewPoints {
                needed: 3,
                got: ring.len(),
            });
        }
        if unhappy.len() != ring.len() || edge_in_g.len() != ring.len() {
            return Err(Error::Structure("face flag vectors differ in length".into()));
        }
        Ok(FaceInstance {
            ring,
            unhappy,
            edge_in_g,
        })
    }

    /// Checks that the ring is strictly convex and counter-clockwise.
    pub fn check_convex(&self, points: &[Point]) -> Result<()> {
        let k = self.ring.len();
        for i in 0..k {
            let [a, b, c] = [i, (i + 1) % k, (i + 2) % k].map(|j| points[self.ring[j]]);
            if orient(a, b, c) != Orientation::CounterClockwise {
                return Err(Error::NotConvexlyHugging(format!(
                    "face turns the wrong way at vertex {}",
                    self.ring[(i + 1) % k]
                )));
            }
        }
        Ok(())
    }
}

/// An edge in ring positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LocalEdge {
    /// Diagonal between two non-adjacent positions.
    Chord(usize, usize),
    /// Boundary edge `i -> i + 1`.
    Boundary(usize),
}

pub fn face_feasible(face: &FaceInstance) -> bool {
    feasible(&face.unhappy, &face.edge_in_g)
}

/// A happy set for the face, or `None` when it is infeasible. The result has
/// at most `|R| + 1` edges.
pub fn face_construct(face: &FaceInstance) -> Option<EdgeSet> {
    let local = construct(&face.ring, &face.unhappy, &face.edge_in_g)?;
    Some(local.into_iter().map(|e| to_edge(&face.ring, e)).collect())
}

pub(crate) fn to_edge(ring: &[usize], e: LocalEdge) -> Edge {
    match e {
        LocalEdge::Chord(a, b) => Edge::new(ring[a], ring[b]),
        LocalEdge::Boundary(i) => Edge::new(ring[i], ring[(i + 1) % ring.len()]),
    }
}

pub(crate) fn feasible(unhappy: &[bool], in_g: &[bool]) -> bool {
    let k = unhappy.len();
    let r = unhappy.iter().filter(|&&u| u).count();
    if r % 2 == 1 {
        return false;
    }
    if r == 0 {
        return true;
    }
    if k == 3 {
        return triangle(unhappy, in_g).is_some();
    }
    let usable: Vec<usize> = (0..k).filter(|&i| !in_g[i]).collect();
    match usable.len() {
        0 => two_separated_happy(unhappy),
        1 => {
            let s = usable[0];
            let t = (s + 1) % k;
            (0..k).any(|p| p != s && p != t && !unhappy[p])
        }
        _ => true,
    }
}

pub(crate) fn construct(ids: &[usize], unhappy: &[bool], in_g: &[bool]) -> Option<Vec<LocalEdge>> {
    if !feasible(unhappy, in_g) {
        return None;
    }
    let k = unhappy.len();
    if unhappy.iter().all(|&u| !u) {
        return Some(Vec::new());
    }
    if k == 3 {
        return triangle(unhappy, in_g);
    }
    if let Some(star) = star(ids, unhappy, in_g) {
        return Some(star);
    }
    let usable: Vec<usize> = (0..k).filter(|&i| !in_g[i]).collect();
    match usable.len() {
        0 => Some(star_or_split(ids, unhappy)),
        1 => {
            if two_separated_happy(unhappy) {
                return Some(star_or_split(ids, unhappy));
            }
            let s = usable[0];
            let mut flags = unhappy.to_vec();
            flags[s] ^= true;
            flags[(s + 1) % k] ^= true;
            let mut out = star_or_split(ids, &flags);
            out.push(LocalEdge::Boundary(s));
            Some(out)
        }
        _ => {
            let (e1, e2) = (usable[0], usable[1]);
            let (v1, v2) = [e1, (e1 + 1) % k]
                .into_iter()
                .flat_map(|a| [e2, (e2 + 1) % k].into_iter().map(move |b| (a, b)))
                .find(|&(a, b)| !adjacent(a, b, k))
                .expect("two distinct boundary edges of a k >= 4 ring have separated endpoints");
            let mut flags = unhappy.to_vec();
            let mut out = Vec::new();
            for (e, v) in [(e1, v1), (e2, v2)] {
                if flags[v] {
                    flags[e] ^= true;
                    flags[(e + 1) % k] ^= true;
                    out.push(LocalEdge::Boundary(e));
                }
            }
            out.extend(star_or_split(ids, &flags));
            Some(out)
        }
    }
}

fn adjacent(a: usize, b: usize, k: usize) -> bool {
    a == b || (a + 1) % k == b || (b + 1) % k == a
}

/// Two happy positions that are not ring neighbours.
fn two_separated_happy(unhappy: &[bool]) -> bool {
    let k = unhappy.len();
    let happy: Vec<usize> = (0..k).filter(|&p| !unhappy[p]).collect();
    match happy.len() {
        0 | 1 => false,
        2 => !adjacent(happy[0], happy[1], k),
        _ => k >= 4,
    }
}

/// Edges from the lowest-id happy vertex that reaches every unhappy vertex,
/// either by a chord or by a usable side.
fn star(ids: &[usize], unhappy: &[bool], in_g: &[bool]) -> Option<Vec<LocalEdge>> {
    let k = unhappy.len();
    let c = (0..k)
        .filter(|&c| {
            let prev = (c + k - 1) % k;
            !unhappy[c] && (!unhappy[prev] || !in_g[prev]) && (!unhappy[(c + 1) % k] || !in_g[c])
        })
        .min_by_key(|&c| ids[c])?;
    Some(
        (0..k)
            .filter(|&p| unhappy[p])
            .map(|p| {
                if p == (c + 1) % k {
                    LocalEdge::Boundary(c)
                } else if (p + 1) % k == c {
                    LocalEdge::Boundary(p)
                } else {
                    LocalEdge::Chord(c, p)
                }
            })
            .collect(),
    )
}

/// Chords only, for a ring with even `|R|` and two separated happy vertices.
fn star_or_split(ids: &[usize], unhappy: &[bool]) -> Vec<LocalEdge> {
    let k = unhappy.len();
    let bad: Vec<usize> = (0..k).filter(|&p| unhappy[p]).collect();
    if bad.is_empty() {
        return Vec::new();
    }
    let next = |p: usize| (p + 1) % k;
    let prev = |p: usize| (p + k - 1) % k;

    // a happy vertex with happy neighbours sees every unhappy vertex by a chord
    let centre = (0..k)
        .filter(|&p| !unhappy[p] && !unhappy[prev(p)] && !unhappy[next(p)])
        .min_by_key(|&p| ids[p]);
    if let Some(c) = centre {
        return bad.into_iter().map(|p| LocalEdge::Chord(c, p)).collect();
    }

    // Otherwise every happy run has length one or two. Take the unhappy
    // vertices just before the two lowest-id runs and split the rest between them.
    let mut hubs: Vec<usize> = (0..k).filter(|&p| unhappy[p] && !unhappy[next(p)]).collect();
    hubs.sort_by_key(|&p| ids[p]);
    let (a, b) = (hubs[0], hubs[1]);
    debug_assert!(!adjacent(a, b, k));
    let mut out = Vec::new();
    let mut side_a = 0;
    let mut p = next(a);
    while p != b {
        if unhappy[p] {
            out.push(LocalEdge::Chord(a, p));
            side_a += 1;
        }
        p = next(p);
    }
    p = next(b);
    while p != a {
        if unhappy[p] {
            out.push(LocalEdge::Chord(b, p));
        }
        p = next(p);
    }
    if side_a % 2 == 0 {
        out.push(LocalEdge::Chord(a, b));
    }
    out
}

/// Triangles have no chords, so try every subset of the usable sides.
fn triangle(unhappy: &[bool], in_g: &[bool]) -> Option<Vec<LocalEdge>> {
    let usable: Vec<usize> = (0..3).filter(|&i| !in_g[i]).collect();
    (0u32..1 << usable.len()).find_map(|mask| {
        let picked: Vec<usize> = (0..usable.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| usable[b])
            .collect();
        let mut parity = [false; 3];
        for &i in &picked {
            parity[i] ^= true;
            parity[(i + 1) % 3] ^= true;
        }
        (parity[..] == *unhappy).then(|| picked.into_iter().map(LocalEdge::Boundary).collect())
    })
}
