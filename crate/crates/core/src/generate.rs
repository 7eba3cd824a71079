//! Seeded instance families for tests, benches and the CLI.
//!
//! Every family is deterministic in `(n, seed)`. Outputs are re-validated and
//! regenerated with a derived seed when validation fails.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::graph::{visibility_graph, Edge, Instance, PlaneGraph, ValidationOptions};
use crate::path::is_pseudoconvex;

/// Above this size the cubic collinearity check is skipped.
pub const GENERAL_POSITION_CHECK_LIMIT: usize = 200;
const ATTEMPTS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Random points joined in order of x-coordinate.
    Xmonotone,
    /// Points in convex position joined in hull order.
    ConvexPath,
    /// Points in convex position with random non-crossing edges.
    ConvexGraph,
    /// Two facing columns joined alternately; the visibility graph splits.
    Zigzag,
    /// A sawtooth inside a cup: pseudoconvex with reflex pocket vertices.
    Spiral,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Xmonotone,
        Family::ConvexPath,
        Family::ConvexGraph,
        Family::Zigzag,
        Family::Spiral,
    ];

    fn name(&self) -> &'static str {
        match self {
            Family::Xmonotone => "xmonotone",
            Family::ConvexPath => "convex-path",
            Family::ConvexGraph => "convex-graph",
            Family::Zigzag => "zigzag",
            Family::Spiral => "spiral",
        }
    }

    pub fn min_vertices(&self) -> usize {
        match self {
            Family::Xmonotone | Family::ConvexPath | Family::ConvexGraph => 2,
            Family::Zigzag => 4,
            Family::Spiral => 5,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Generation(format!("unknown family {s:?}")))
    }
}

/// A graph of the given family.
pub fn generate_graph(family: Family, n: usize, seed: u64) -> Result<PlaneGraph> {
    if n < family.min_vertices() {
        return Err(Error::Generation(format!(
            "{family} needs at least {} vertices, got {n}",
            family.min_vertices()
        )));
    }
    let mut last = None;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let raw = match family {
            Family::Xmonotone => xmonotone(n, &mut rng),
            Family::ConvexPath => convex_path(n, &mut rng),
            Family::ConvexGraph => convex_graph(n, &mut rng),
            Family::Zigzag => zigzag(n, &mut rng),
            Family::Spiral => spiral(n, &mut rng),
        };
        match raw.and_then(|(pts, edges)| check(family, pts, edges)) {
            Ok(g) => return Ok(g),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::Generation(format!(
        "{family} n={n} seed={seed}: no valid output after {ATTEMPTS} attempts ({})",
        last.map_or_else(String::new, |e| e.to_string())
    )))
}

/// A graph of the given family with a random even unhappy set drawn from
/// the same seed.
pub fn generate_instance(family: Family, n: usize, seed: u64) -> Result<Instance> {
    let g = generate_graph(family, n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ 0x5eed);
    let unhappy = random_even_subset(g.len(), &mut rng);
    Instance::new(g, unhappy)
}

/// Each vertex with probability one half, dropping the largest if the count is odd.
pub fn random_even_subset(n: usize, rng: &mut impl Rng) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if set.len() % 2 == 1 {
        let last = *set.iter().next_back().unwrap();
        set.remove(&last);
    }
    set
}

type Raw = (Vec<Point>, Vec<(usize, usize)>);

fn check(family: Family, pts: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<PlaneGraph> {
    let n = pts.len();
    let opts = ValidationOptions {
        general_position: n <= GENERAL_POSITION_CHECK_LIMIT,
    };
    let g = PlaneGraph::new(pts, edges, opts)?;
    match family {
        Family::ConvexPath | Family::ConvexGraph => {
            if !g.is_convex_position() {
                return Err(Error::Generation("points are not in strictly convex position".into()));
            }
        }
        Family::Zigzag => {
            if vis_components(&g) < 2 {
                return Err(Error::Generation("visibility graph is connected".into()));
            }
        }
        Family::Spiral => {
            if !is_pseudoconvex(&g)?.pseudoconvex {
                return Err(Error::Generation("sawtooth is not pseudoconvex".into()));
            }
            let reflex = crate::path::pockets(&g)?.iter().map(|p| p.reflex.len()).sum::<usize>();
            if reflex == 0 {
                return Err(Error::Generation("no reflex pocket vertex".into()));
            }
        }
        Family::Xmonotone => {}
    }
    Ok(g)
}

/// Number of connected components of `Vis(G)`.
pub fn vis_components(g: &PlaneGraph) -> usize {
    let n = g.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], mut v: usize) -> usize {
        while l[v] != v {
            l[v] = l[l[v]];
            v = l[v];
        }
        v
    }
    let mut count = n;
    for e in visibility_graph(g).iter() {
        let (a, b) = (find(&mut label, e.lo()), find(&mut label, e.hi()));
        if a != b {
            label[a] = b;
            count -= 1;
        }
    }
    count
}

fn xmonotone(n: usize, rng: &mut ChaCha8Rng) -> Result<Raw> {
    let span = (1i64 << 20).max(8 * n as i64);
    let mut xs: BTreeSet<i64> = BTreeSet::new();
    while xs.len() < n {
        xs.insert(rng.gen_range(0..span));
    }
    let pts = xs.into_iter().map(|x| Point::new(x, rng.gen_range(0..span))).collect();
    Ok((pts, (1..n).map(|i| (i - 1, i)).collect()))
}

/// Jittered points on a circle, counter-clockwise.
fn circle_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let radius = (16.0 * (n * n) as f64).max(10_000.0);
    (0..n)
        .map(|i| {
            let theta = TAU * (i as f64 + rng.gen_range(0.1..0.9)) / n as f64;
            Point::new((radius * theta.cos()).round() as i64, (radius * theta.sin()).round() as i64)
        })
        .collect()
}

fn convex_path(n: usize, rng: &mut ChaCha8Rng) -> Result<Raw> {
    let ring = circle_points(n, rng);
    let offset = rng.gen_range(0..n);
    let reverse = rng.gen_bool(0.5);
    // label vertices along the path so the path is 0-1-2-...
    let pts = (0..n)
        .map(|i| {
            let j = if reverse { (offset + n - i) % n } else { (offset + i) % n };
            ring[j]
        })
        .collect();
    Ok((pts, (1..n).map(|i| (i - 1, i)).collect()))
}

fn convex_graph(n: usize, rng: &mut ChaCha8Rng) -> Result<Raw> {
    let pts = circle_points(n, rng);
    let density = rng.gen_range(0.2..0.8);
    let mut pairs: Vec<(usize, usize)> = if n <= GENERAL_POSITION_CHECK_LIMIT {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    } else {
        (0..4 * n)
            .map(|_| {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                (a.min(b), a.max(b))
            })
            .collect()
    };
    pairs.shuffle(rng);
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    // labels follow the circle, so chords cross iff their ends interleave
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        let inside = |x: usize| a < x && x < b;
        a != c && a != d && b != c && b != d && inside(c) != inside(d)
    };
    for p in pairs {
        if rng.gen_bool(density) && !chosen.contains(&p) && chosen.iter().all(|&q| !crosses(p, q)) {
            chosen.push(p);
        }
    }
    Ok((pts, chosen))
}

/// Columns `L_i` and `R_i` bulging outwards; the path runs `L0 R0 L1 R1 ...`.
fn zigzag(n: usize, rng: &mut ChaCha8Rng) -> Result<Raw> {
    const ROW_HEIGHT: i64 = 100;
    const COLUMN_GAP: i64 = 1_000;
    let rows = n.div_ceil(2) as i64;
    let bulge = rng.gen_range(1..=3);
    let gap = COLUMN_GAP + rng.gen_range(0..500);
    let mut pts = Vec::with_capacity(n);
    for i in 0..n as i64 {
        let row = i / 2;
        let out = bulge * row * (rows - 1 - row) + rng.gen_range(0..5);
        let y = row * ROW_HEIGHT + rng.gen_range(0..10);
        pts.push(if i % 2 == 0 {
            Point::new(-out, y)
        } else {
            Point::new(gap + out, y)
        });
    }
    Ok((pts, (1..n).map(|i| (i - 1, i)).collect()))
}

/// A lid vertex, an optional wall vertex, then alternating valley and peak
/// vertices, and a second lid vertex. Valleys sit on an upward bowl; peaks
/// are teeth whose sides, extended, reach the lid.
fn spiral(n: usize, rng: &mut ChaCha8Rng) -> Result<Raw> {
    const HALF_TOOTH: i64 = 100;
    let wall = n.is_multiple_of(2);
    let teeth = (n - 3 - wall as usize) / 2;
    let k = teeth as i64;
    let bowl = rng.gen_range(1..=3);
    let valley_y = |j: i64| bowl * (2 * j - k) * (2 * j - k);
    let peak = 400 + 4 * bowl * k * k + rng.gen_range(0..50);
    let lid = 2 * peak + 100;
    let shift = rng.gen_range(-20..=20);
    let mut pts = vec![Point::new(-HALF_TOOTH, lid)];
    if wall {
        pts.push(Point::new(-HALF_TOOTH - 60, (lid + valley_y(0)) / 2));
    }
    for j in 0..=k {
        pts.push(Point::new(2 * j * HALF_TOOTH, valley_y(j)));
        if j < k {
            // peaks on a downward parabola so no three are collinear
            let x = (2 * j + 1) * HALF_TOOTH + shift;
            pts.push(Point::new(x, peak - (2 * j + 1 - k) * (2 * j + 1 - k)));
        }
    }
    pts.push(Point::new(2 * k * HALF_TOOTH + HALF_TOOTH, lid + 7));
    debug_assert_eq!(pts.len(), n);
    Ok((pts, (1..n).map(|i| (i - 1, i)).collect()))
}

/// Hull order of a point set, for callers that need the hull cycle.
pub fn hull_cycle(g: &PlaneGraph) -> Result<Vec<usize>> {
    geom::convex_hull(g.points())
}

/// Edges as plain pairs, for serialization helpers.
pub fn edge_pairs(edges: &[Edge]) -> Vec<(usize, usize)> {
    edges.iter().map(|e| (e.lo(), e.hi())).collect()
}
