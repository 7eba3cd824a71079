//! Exact predicates on integer points.
//!
//! Every determinant is evaluated in `i128`. Coordinates are capped at
//! `|x|, |y| < 2^62` on ingestion, so coordinate differences stay below
//! `2^63` and 2x2 determinants below `2^127`. Nothing in here touches a float.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive bound on the absolute value of any coordinate.
pub const COORD_LIMIT: i64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.unsigned_abs() < COORD_LIMIT as u64 && self.y.unsigned_abs() < COORD_LIMIT as u64
    }

    /// `other - self` as a wide vector.
    #[inline]
    pub fn to(&self, other: Point) -> Vector {
        Vector {
            x: other.x as i128 - self.x as i128,
            y: other.y as i128 - self.y as i128,
        }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Difference of two in-range points. Components are below `2^63` in magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    pub x: i128,
    pub y: i128,
}

impl Vector {
    pub const fn new(x: i128, y: i128) -> Self {
        Vector { x, y }
    }

    #[inline]
    pub fn cross(&self, other: &Vector) -> i128 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> i128 {
        self.x * other.x + self.y * other.y
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    fn upper_half(&self) -> bool {
        self.y > 0 || (self.y == 0 && self.x > 0)
    }
}

/// Counter-clockwise angular order of nonzero directions, starting at the
/// positive x axis. Exact; no angles are computed.
pub fn angular_cmp(a: &Vector, b: &Vector) -> Ordering {
    match (a.upper_half(), b.upper_half()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => 0.cmp(&a.cross(b)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn from_sign(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

/// `(q - p) x (r - p)`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    p.to(q).cross(&p.to(r))
}

pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    Orientation::from_sign(cross(p, q, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    fn shares_endpoint(&self, other: &Segment) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

/// `p` lies on the closed segment `s`, given that it is collinear with it.
fn within_box(s: &Segment, p: Point) -> bool {
    p.x >= s.a.x.min(s.b.x)
        && p.x <= s.a.x.max(s.b.x)
        && p.y >= s.a.y.min(s.b.y)
        && p.y <= s.a.y.max(s.b.y)
}

/// `p` lies strictly inside segment `s` (not at an endpoint).
pub fn on_segment_interior(s: &Segment, p: Point) -> bool {
    p != s.a && p != s.b && cross(s.a, s.b, p) == 0 && within_box(s, p)
}

/// How two segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentContact {
    Disjoint,
    SharedEndpoint,
    ProperCrossing,
    /// An endpoint of one lies in the other, or the segments overlap.
    Touching,
}

pub fn segment_contact(s1: &Segment, s2: &Segment) -> SegmentContact {
    if s1.shares_endpoint(s2) {
        // A shared endpoint plus collinear overlap is still a touch.
        let overlap = on_segment_interior(s1, s2.a)
            || on_segment_interior(s1, s2.b)
            || on_segment_interior(s2, s1.a)
            || on_segment_interior(s2, s1.b);
        return if overlap {
            SegmentContact::Touching
        } else {
            SegmentContact::SharedEndpoint
        };
    }
    let d1 = cross(s2.a, s2.b, s1.a).signum();
    let d2 = cross(s2.a, s2.b, s1.b).signum();
    let d3 = cross(s1.a, s1.b, s2.a).signum();
    let d4 = cross(s1.a, s1.b, s2.b).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return SegmentContact::ProperCrossing;
    }
    let touches = (d1 == 0 && within_box(s2, s1.a))
        || (d2 == 0 && within_box(s2, s1.b))
        || (d3 == 0 && within_box(s1, s2.a))
        || (d4 == 0 && within_box(s1, s2.b));
    if touches {
        SegmentContact::Touching
    } else {
        SegmentContact::Disjoint
    }
}

/// True iff the segments meet in a point interior to both.
///
/// Fails with [`Error::Degenerate`] when an endpoint of one segment lies in the
/// interior of the other.
pub fn properly_cross(s1: &Segment, s2: &Segment) -> Result<bool> {
    match segment_contact(s1, s2) {
        SegmentContact::ProperCrossing => Ok(true),
        SegmentContact::Disjoint | SegmentContact::SharedEndpoint => Ok(false),
        SegmentContact::Touching => Err(Error::Degenerate(format!(
            "segments {:?}-{:?} and {:?}-{:?} touch",
            s1.a, s1.b, s2.a, s2.b
        ))),
    }
}

/// Indices of the convex hull vertices in counter-clockwise order, starting
/// from the lexicographically smallest point. Collinear boundary points are
/// dropped. Andrew's monotone chain.
pub fn convex_hull(points: &[Point]) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].x, points[i].y));
    order.dedup_by_key(|i| points[*i]);

    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    // lower chain
    for &i in &order {
        while hull.len() >= 2
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    // upper chain
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    Ok(hull)
}

/// A non-negative rational `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0, "zero denominator");
        Ratio { num, den }
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    /// Compares through the continued-fraction expansions of both values, so
    /// no product of numerator and denominator is ever formed.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b, mut c, mut d) = (self.num, self.den, other.num, other.den);
        let mut flipped = false;
        loop {
            let (qa, qc) = (a / b, c / d);
            if qa != qc {
                let ord = qa.cmp(&qc);
                return if flipped { ord.reverse() } else { ord };
            }
            let (ra, rc) = (a % b, c % d);
            let ord = match (ra == 0, rc == 0) {
                (true, true) => Some(Ordering::Equal),
                (true, false) => Some(Ordering::Less),
                (false, true) => Some(Ordering::Greater),
                (false, false) => None,
            };
            if let Some(ord) = ord {
                return if flipped { ord.reverse() } else { ord };
            }
            // ra/b vs rc/d  <=>  d/rc vs b/ra (reciprocals flip the order)
            (a, b, c, d) = (b, ra, d, rc);
            flipped = !flipped;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RayHit {
    pub segment: usize,
    /// Ray parameter: the hit point is `origin + t * direction`.
    pub t: Ratio,
}

/// First boundary segment met by the open ray `origin + t * direction`, `t > 0`.
///
/// Linear scan; segments listed in `skip` are ignored. A ray through a
/// segment endpoint, or running along a segment, is a general-position
/// violation and reported as [`Error::Degenerate`].
pub fn ray_first_hit(
    origin: Point,
    direction: Vector,
    boundary: &[Segment],
    skip: &[usize],
) -> Result<Option<RayHit>> {
    if direction.is_zero() {
        return Err(Error::Degenerate("zero ray direction".into()));
    }
    let mut best: Option<RayHit> = None;
    for (idx, seg) in boundary.iter().enumerate() {
        if skip.contains(&idx) {
            continue;
        }
        let e = seg.a.to(seg.b);
        let w = origin.to(seg.a);
        let denom = direction.cross(&e);
        if denom == 0 {
            // parallel; collinear with the ray line is a degeneracy if ahead
            if w.cross(&direction) == 0 {
                let ahead = w.dot(&direction) > 0 || origin.to(seg.b).dot(&direction) > 0;
                if ahead {
                    return Err(Error::Degenerate(format!(
                        "ray from {origin:?} runs along segment {idx}"
                    )));
                }
            }
            continue;
        }
        let (mut t_num, mut s_num, mut den) = (w.cross(&e), w.cross(&direction), denom);
        if den < 0 {
            t_num = -t_num;
            s_num = -s_num;
            den = -den;
        }
        if s_num < 0 || s_num > den || t_num < 0 {
            continue;
        }
        if t_num == 0 {
            return Err(Error::Degenerate(format!(
                "ray origin {origin:?} lies on segment {idx}"
            )));
        }
        if s_num == 0 || s_num == den {
            return Err(Error::Degenerate(format!(
                "ray from {origin:?} passes through an endpoint of segment {idx}"
            )));
        }
        let t = Ratio::new(t_num as u128, den as u128);
        if best.is_none_or(|b| t < b.t) {
            best = Some(RayHit { segment: idx, t });
        }
    }
    Ok(best)
}

/// Sign of `a + b` without overflowing.
fn sign_of_sum(a: i128, b: i128) -> i128 {
    if a.signum() == b.signum() {
        a.signum()
    } else {
        (a + b).signum()
    }
}

/// Whether the midpoint of `u v` lies in the closed region bounded by the
/// simple polygon `ring`. Exact winding-number test on doubled coordinates.
pub fn midpoint_in_closed_polygon(u: Point, v: Point, ring: &[Point]) -> bool {
    let py2 = u.y as i128 + v.y as i128;
    let px2 = u.x as i128 + v.x as i128;
    let mut winding = 0i64;
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        // 2 * cross(a, b, mid) = cross(a, b, u) + cross(a, b, v)
        let side = sign_of_sum(cross(a, b, u), cross(a, b, v));
        let ay2 = 2 * a.y as i128;
        let by2 = 2 * b.y as i128;
        if side == 0 {
            let (x_lo, x_hi) = (2 * a.x.min(b.x) as i128, 2 * a.x.max(b.x) as i128);
            let (y_lo, y_hi) = (ay2.min(by2), ay2.max(by2));
            if px2 >= x_lo && px2 <= x_hi && py2 >= y_lo && py2 <= y_hi {
                return true;
            }
        }
        if ay2 <= py2 {
            if by2 > py2 && side > 0 {
                winding += 1;
            }
        } else if by2 <= py2 && side < 0 {
            winding -= 1;
        }
    }
    winding != 0
}
