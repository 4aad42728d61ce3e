//! Exact planar primitives on the half-integer lattice.
//!
//! Coordinates are stored doubled (`dx = 2x`, `dy = 2y`) so midpoints of
//! lattice points and half steps along diagonals stay in integer arithmetic.
//! Everything here is a pure function over immutable values: compass offsets,
//! the four neighborhood quadruples, axis-aligned and slope-one segments with
//! exact lattice-point counts, and below/above comparisons of a point against
//! a polyline.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("segment {0}-{1} is not horizontal, vertical, or slope +-1")]
    InvalidSlope(HalfPoint, HalfPoint),
    #[error("{b} does not lie on the northeast ray from {a}")]
    NotOnNeRay { a: HalfPoint, b: HalfPoint },
    #[error("polyline x-coordinates decrease at {0}")]
    NotMonotone(HalfPoint),
    #[error("vertical polyline leg after the first segment, at {0}")]
    InteriorVerticalLeg(HalfPoint),
}

/// Planar point with half-integer coordinates, stored doubled.
///
/// `dx = 2x` and `dy = 2y`, so `(2, 5)` in doubled form is the point
/// `(1, 2.5)`. A point is a lattice point iff both doubled coordinates are
/// even.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfPoint {
    pub dx: i64,
    pub dy: i64,
}

impl HalfPoint {
    pub const fn lattice(x: i64, y: i64) -> Self {
        HalfPoint { dx: 2 * x, dy: 2 * y }
    }

    pub const fn halves(dx: i64, dy: i64) -> Self {
        HalfPoint { dx, dy }
    }

    pub fn is_lattice(self) -> bool {
        self.dx % 2 == 0 && self.dy % 2 == 0
    }

    pub fn lattice_coords(self) -> Option<(i64, i64)> {
        if self.is_lattice() {
            Some((self.dx / 2, self.dy / 2))
        } else {
            None
        }
    }

    /// Compass step by a whole number of unit distances.
    pub fn step(self, dir: Dir, count: i64) -> Self {
        offset(self, dir, Dist::steps(count))
    }
}

fn write_half(f: &mut fmt::Formatter<'_>, doubled: i64) -> fmt::Result {
    if doubled % 2 == 0 {
        write!(f, "{}", doubled / 2)
    } else {
        let sign = if doubled < 0 { "-" } else { "" };
        write!(f, "{}{}.5", sign, doubled.abs() / 2)
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_half(f, self.dx)?;
        write!(f, ", ")?;
        write_half(f, self.dy)?;
        write!(f, ")")
    }
}

impl fmt::Debug for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The eight compass directions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Dir {
    fn unit(self) -> (i64, i64) {
        match self {
            Dir::N => (0, 1),
            Dir::NE => (1, 1),
            Dir::E => (1, 0),
            Dir::SE => (1, -1),
            Dir::S => (0, -1),
            Dir::SW => (-1, -1),
            Dir::W => (-1, 0),
            Dir::NW => (-1, 1),
        }
    }
}

/// Nonnegative half-integer distance, stored doubled like [`HalfPoint`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Dist(i64);

impl Dist {
    pub const fn steps(count: i64) -> Self {
        Dist(2 * count)
    }

    pub const fn half_steps(count: i64) -> Self {
        Dist(count)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }
}

/// The compass point from `a` at distance `d`, e.g. `(x+d, y+d)` for NE.
pub fn offset(a: HalfPoint, dir: Dir, d: Dist) -> HalfPoint {
    debug_assert!(d.0 >= 0, "offset distance must be nonnegative");
    let (ux, uy) = dir.unit();
    HalfPoint::halves(a.dx + ux * d.0, a.dy + uy * d.0)
}

/// The four sides a neighborhood quadruple can face.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cardinal {
    North,
    South,
    East,
    West,
}

/// The four-point neighborhood on the given side of a lattice point:
/// `North(A) = {NW(A,1), N(A,1), NE(A,1), N(A,2)}` and rotations.
///
/// The array order is the fixed priority used when a construction has to
/// pick one member: the two diagonal flanks first and last around the
/// distance-one axis point, then the distance-two axis point.
pub fn neighborhood_set(a: HalfPoint, side: Cardinal) -> [HalfPoint; 4] {
    debug_assert!(a.is_lattice(), "neighborhoods are defined on lattice points");
    let one = Dist::steps(1);
    let two = Dist::steps(2);
    match side {
        Cardinal::North => [
            offset(a, Dir::NW, one),
            offset(a, Dir::N, one),
            offset(a, Dir::NE, one),
            offset(a, Dir::N, two),
        ],
        Cardinal::South => [
            offset(a, Dir::SW, one),
            offset(a, Dir::S, one),
            offset(a, Dir::SE, one),
            offset(a, Dir::S, two),
        ],
        Cardinal::East => [
            offset(a, Dir::NE, one),
            offset(a, Dir::E, one),
            offset(a, Dir::SE, one),
            offset(a, Dir::E, two),
        ],
        Cardinal::West => [
            offset(a, Dir::NW, one),
            offset(a, Dir::W, one),
            offset(a, Dir::SW, one),
            offset(a, Dir::W, two),
        ],
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlopeClass {
    Horizontal,
    Vertical,
    DiagUp,
    DiagDown,
}

/// Closed segment whose slope is 0, infinite, +1, or -1.
///
/// A degenerate segment (equal endpoints) is classified as horizontal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    a: HalfPoint,
    b: HalfPoint,
    slope: SlopeClass,
}

impl Segment {
    pub fn new(a: HalfPoint, b: HalfPoint) -> Result<Self, GeometryError> {
        let run = b.dx - a.dx;
        let rise = b.dy - a.dy;
        let slope = if rise == 0 {
            SlopeClass::Horizontal
        } else if run == 0 {
            SlopeClass::Vertical
        } else if rise == run {
            SlopeClass::DiagUp
        } else if rise == -run {
            SlopeClass::DiagDown
        } else {
            return Err(GeometryError::InvalidSlope(a, b));
        };
        Ok(Segment { a, b, slope })
    }

    pub fn a(&self) -> HalfPoint {
        self.a
    }

    pub fn b(&self) -> HalfPoint {
        self.b
    }

    pub fn slope(&self) -> SlopeClass {
        self.slope
    }
}

fn even_count(lo: i64, hi: i64) -> u64 {
    if hi < lo {
        0
    } else {
        (hi.div_euclid(2) - (lo - 1).div_euclid(2)) as u64
    }
}

/// Number of lattice points on the closed segment.
pub fn lattice_count(s: &Segment) -> u64 {
    let (a, b) = (s.a, s.b);
    match s.slope {
        SlopeClass::Horizontal => {
            if a.dy.rem_euclid(2) != 0 {
                0
            } else {
                even_count(a.dx.min(b.dx), a.dx.max(b.dx))
            }
        }
        SlopeClass::Vertical => {
            if a.dx.rem_euclid(2) != 0 {
                0
            } else {
                even_count(a.dy.min(b.dy), a.dy.max(b.dy))
            }
        }
        SlopeClass::DiagUp | SlopeClass::DiagDown => {
            if (a.dx + a.dy).rem_euclid(2) != 0 {
                0
            } else {
                even_count(a.dx.min(b.dx), a.dx.max(b.dx))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExtendSign {
    Plus,
    Minus,
}

/// The segment from `a` to `b` with the far end pushed out (`Plus`) or
/// pulled back (`Minus`) by half a diagonal step.
///
/// `b` must lie on the northeast ray from `a`.
pub fn half_extend(a: HalfPoint, b: HalfPoint, sign: ExtendSign) -> Result<Segment, GeometryError> {
    let run = b.dx - a.dx;
    let rise = b.dy - a.dy;
    if run < 0 || rise != run {
        return Err(GeometryError::NotOnNeRay { a, b });
    }
    let tip = match sign {
        ExtendSign::Plus => offset(b, Dir::NE, Dist::half_steps(1)),
        ExtendSign::Minus => offset(b, Dir::SW, Dist::half_steps(1)),
    };
    Segment::new(a, tip)
}

/// Chain of segments, weakly increasing in x; a vertical leg is allowed
/// only at the front. Consecutive duplicate points are collapsed.
#[derive(Clone, Debug)]
pub struct Polyline {
    points: Vec<HalfPoint>,
}

impl Polyline {
    pub fn new(raw: Vec<HalfPoint>) -> Result<Self, GeometryError> {
        let mut points: Vec<HalfPoint> = Vec::with_capacity(raw.len());
        for p in raw {
            if points.last() != Some(&p) {
                points.push(p);
            }
        }
        for (i, pair) in points.windows(2).enumerate() {
            let (p, q) = (pair[0], pair[1]);
            Segment::new(p, q)?;
            if q.dx < p.dx {
                return Err(GeometryError::NotMonotone(q));
            }
            if q.dx == p.dx && i != 0 {
                return Err(GeometryError::InteriorVerticalLeg(q));
            }
        }
        Ok(Polyline { points })
    }

    pub fn points(&self) -> &[HalfPoint] {
        &self.points
    }

    /// All y-intervals (doubled, inclusive) where the chain meets the
    /// vertical line at doubled abscissa `dx`. Non-vertical legs contribute
    /// single values; a vertical leg contributes its full range.
    fn sections(&self, dx: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if self.points.len() == 1 {
            let p = self.points[0];
            if p.dx == dx {
                out.push((p.dy, p.dy));
            }
            return out;
        }
        for pair in self.points.windows(2) {
            let (p, q) = (pair[0], pair[1]);
            if dx < p.dx.min(q.dx) || dx > p.dx.max(q.dx) {
                continue;
            }
            if p.dx == q.dx {
                out.push((p.dy.min(q.dy), p.dy.max(q.dy)));
            } else if p.dy == q.dy {
                out.push((p.dy, p.dy));
            } else {
                let sign = if q.dy > p.dy { 1 } else { -1 };
                let dy = p.dy + sign * (dx - p.dx);
                out.push((dy, dy));
            }
        }
        out
    }
}

/// Flattened x-aligned comparison of a point against a polyline.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Relation {
    StrictlyBelow,
    Below,
    On,
    Above,
    StrictlyAbove,
    Incomparable,
}

/// True iff some chain point shares the x-coordinate and is at or above `a`.
pub fn below(a: HalfPoint, p: &Polyline) -> bool {
    p.sections(a.dx).iter().any(|&(_, hi)| a.dy <= hi)
}

pub fn strictly_below(a: HalfPoint, p: &Polyline) -> bool {
    p.sections(a.dx).iter().any(|&(_, hi)| a.dy < hi)
}

pub fn above(a: HalfPoint, p: &Polyline) -> bool {
    p.sections(a.dx).iter().any(|&(lo, _)| a.dy >= lo)
}

pub fn strictly_above(a: HalfPoint, p: &Polyline) -> bool {
    p.sections(a.dx).iter().any(|&(lo, _)| a.dy > lo)
}

pub fn on(a: HalfPoint, p: &Polyline) -> bool {
    p.sections(a.dx).iter().any(|&(lo, hi)| lo <= a.dy && a.dy <= hi)
}

/// Classifies `a` against `p` with one label.
///
/// `Incomparable` when no chain point shares the x-coordinate, `On` for
/// membership, and the strict labels when `a` clears every sheet of the
/// chain at that abscissa. A point strictly between two sheets is both below
/// one and above the other; it is labeled `Below` when at least as many
/// sheets lie above it as below it, `Above` otherwise.
pub fn relation(a: HalfPoint, p: &Polyline) -> Relation {
    let sections = p.sections(a.dx);
    if sections.is_empty() {
        return Relation::Incomparable;
    }
    if sections.iter().any(|&(lo, hi)| lo <= a.dy && a.dy <= hi) {
        return Relation::On;
    }
    let min_lo = sections.iter().map(|&(lo, _)| lo).min().unwrap();
    let max_hi = sections.iter().map(|&(_, hi)| hi).max().unwrap();
    if a.dy < min_lo {
        return Relation::StrictlyBelow;
    }
    if a.dy > max_hi {
        return Relation::StrictlyAbove;
    }
    let sheets_above = sections.iter().filter(|&&(lo, _)| lo > a.dy).count();
    let sheets_below = sections.iter().filter(|&&(_, hi)| hi < a.dy).count();
    if sheets_above >= sheets_below {
        Relation::Below
    } else {
        Relation::Above
    }
}
