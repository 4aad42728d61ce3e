//! Structural certificates for minimum blocking sets of grids.
//!
//! A blocking set of white vertices induces a staircase chain over each of
//! the four grid boundaries: valleys at the boundary whites, diagonal peaks
//! between them. Minimum blocking sets obey a family of checkable facts
//! about that chain (everything strictly below it is black, peak heights
//! are capped, window segments satisfy a counting identity with their
//! holes, holes are sparse). [`certify_grid`] runs all six checks and
//! reports the first counterexample of each failing one, which makes the
//! report double as a mutation-testing probe: almost any single-vertex edit
//! of a valid minimum set trips at least one check.
//!
//! Everything here works on plain white-vertex sets; no forcing runs are
//! needed. Checks on the non-bottom boundaries reuse the bottom-row logic
//! through the frame maps in [`Side`], and right-to-left (`NW`) windows are
//! handled by mirroring, so there is exactly one implementation of each
//! rule.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    below, lattice_count, neighborhood_set, Cardinal, Dir, HalfPoint, Polyline, Segment,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StaircaseError {
    #[error("no white vertex on the {side:?} boundary line")]
    EmptyBoundary { side: Side },
    #[error("white vertex ({x}, {y}) lies outside the {rows}x{cols} grid")]
    OutsideGrid { x: i64, y: i64, rows: i64, cols: i64 },
    #[error("bad window: {0}")]
    BadWindow(String),
}

/// The four grid boundaries a staircase can grow from, named by the corner
/// pairs they connect: `XY` bottom, `ZW` top, `XZ` left, `YW` right.
///
/// Each side owns a frame map sending the grid onto an equal-sized grid in
/// which that boundary becomes the bottom row, so every check is written
/// once for the bottom and replayed through the map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    XY,
    ZW,
    XZ,
    YW,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::XY, Side::ZW, Side::XZ, Side::YW];

    /// Frame grid dimensions as `(rows, cols)` for an `m x n` grid.
    pub fn frame_dims(self, m: i64, n: i64) -> (i64, i64) {
        match self {
            Side::XY | Side::ZW => (m, n),
            Side::XZ | Side::YW => (n, m),
        }
    }

    pub fn to_frame(self, m: i64, n: i64, p: (i64, i64)) -> (i64, i64) {
        let (x, y) = p;
        match self {
            Side::XY => (x, y),
            Side::ZW => (x, m + 1 - y),
            Side::XZ => (y, x),
            Side::YW => (y, n + 1 - x),
        }
    }

    pub fn from_frame(self, m: i64, n: i64, p: (i64, i64)) -> (i64, i64) {
        let (u, v) = p;
        match self {
            Side::XY => (u, v),
            Side::ZW => (u, m + 1 - v),
            Side::XZ => (v, u),
            Side::YW => (n + 1 - v, u),
        }
    }

    pub fn from_frame_half(self, m: i64, n: i64, p: HalfPoint) -> HalfPoint {
        match self {
            Side::XY => p,
            Side::ZW => HalfPoint::halves(p.dx, 2 * (m + 1) - p.dy),
            Side::XZ => HalfPoint::halves(p.dy, p.dx),
            Side::YW => HalfPoint::halves(2 * (n + 1) - p.dy, p.dx),
        }
    }
}

/// The boundary chain of a white set over one side, in frame coordinates.
///
/// `peaks[0]` and `peaks[k]` sit on the frame's left and right edges; the
/// interior peaks are the diagonal meeting points between consecutive
/// anchors and may be half-integer.
#[derive(Clone, Debug, Serialize)]
pub struct Staircase {
    pub side: Side,
    pub frame_rows: i64,
    pub frame_cols: i64,
    pub anchors: Vec<(i64, i64)>,
    pub peaks: Vec<HalfPoint>,
    #[serde(skip)]
    pub polyline: Polyline,
    #[serde(skip)]
    chain_dy: Vec<i64>,
}

impl Staircase {
    /// Doubled chain height over lattice column `x`, `1 <= x <= frame_cols`.
    /// Always even: every leg joins a lattice anchor to its peak, so the
    /// chain passes through a lattice point over every integer column.
    pub fn chain_height_doubled(&self, x: i64) -> i64 {
        self.chain_dy[(x - 1) as usize]
    }

    pub fn is_interior_peak(&self, p: (i64, i64)) -> bool {
        let hp = HalfPoint::lattice(p.0, p.1);
        self.peaks[1..self.peaks.len() - 1].contains(&hp)
    }

    /// Original grid dimensions `(m, n)` this staircase was built from.
    pub fn grid_dims(&self) -> (i64, i64) {
        match self.side {
            Side::XY | Side::ZW => (self.frame_rows, self.frame_cols),
            Side::XZ | Side::YW => (self.frame_cols, self.frame_rows),
        }
    }
}

fn check_in_grid(
    white: &BTreeSet<(i64, i64)>,
    rows: i64,
    cols: i64,
) -> Result<(), StaircaseError> {
    for &(x, y) in white {
        if !(1..=cols).contains(&x) || !(1..=rows).contains(&y) {
            return Err(StaircaseError::OutsideGrid { x, y, rows, cols });
        }
    }
    Ok(())
}

/// Builds the boundary chain of `white` over the given side of an `m x n`
/// grid.
pub fn build_staircase(
    m: i64,
    n: i64,
    white: &BTreeSet<(i64, i64)>,
    side: Side,
) -> Result<Staircase, StaircaseError> {
    check_in_grid(white, m, n)?;
    let (rows, cols) = side.frame_dims(m, n);
    let mut anchors: Vec<(i64, i64)> = white
        .iter()
        .map(|&p| side.to_frame(m, n, p))
        .filter(|&(_, v)| v == 1)
        .collect();
    anchors.sort_unstable();
    if anchors.is_empty() {
        return Err(StaircaseError::EmptyBoundary { side });
    }

    let k = anchors.len();
    let mut peaks = Vec::with_capacity(k + 1);
    peaks.push(HalfPoint::lattice(1, anchors[0].0));
    for w in anchors.windows(2) {
        let (xa, xb) = (w[0].0, w[1].0);
        peaks.push(HalfPoint::halves(xa + xb, xb - xa + 2));
    }
    peaks.push(HalfPoint::lattice(cols, cols + 1 - anchors[k - 1].0));

    let mut pts = Vec::with_capacity(2 * k + 1);
    pts.push(peaks[0]);
    for i in 0..k {
        pts.push(HalfPoint::lattice(anchors[i].0, 1));
        pts.push(peaks[i + 1]);
    }
    let polyline = Polyline::new(pts.clone()).expect("anchor chain is x-monotone and diagonal");

    let mut chain_dy = vec![0i64; cols as usize];
    for leg in pts.windows(2) {
        let (p, q) = (leg[0], leg[1]);
        if p.dx == q.dx {
            continue;
        }
        let slope = if q.dy > p.dy { 1 } else { -1 };
        let mut dx = if p.dx % 2 == 0 { p.dx } else { p.dx + 1 };
        while dx <= q.dx {
            chain_dy[(dx / 2 - 1) as usize] = p.dy + slope * (dx - p.dx);
            dx += 2;
        }
    }

    Ok(Staircase { side, frame_rows: rows, frame_cols: cols, anchors, peaks, polyline, chain_dy })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckId {
    Lemma2,
    Lemma3,
    Prop4,
    Prop5,
    Prop6,
    Prop7,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    fn ok(check: CheckId) -> Self {
        CheckOutcome { check, pass: true, counterexample: None }
    }

    fn fail(check: CheckId, why: String) -> Self {
        CheckOutcome { check, pass: false, counterexample: Some(why) }
    }
}

/// Vertices strictly under the chain must be black; lattice chain points
/// other than interior peaks must be white.
pub fn check_prop4(
    m: i64,
    n: i64,
    white: &BTreeSet<(i64, i64)>,
    staircase: &Staircase,
) -> CheckOutcome {
    let side = staircase.side;
    let frame_white: BTreeSet<(i64, i64)> =
        white.iter().map(|&p| side.to_frame(m, n, p)).collect();
    for &(x, y) in &frame_white {
        if 2 * y < staircase.chain_height_doubled(x) {
            let (ox, oy) = side.from_frame(m, n, (x, y));
            return CheckOutcome::fail(
                CheckId::Prop4,
                format!("white vertex ({ox}, {oy}) lies strictly below the {side:?} chain"),
            );
        }
    }
    for x in 1..=staircase.frame_cols {
        let h2 = staircase.chain_height_doubled(x);
        debug_assert_eq!(h2 % 2, 0);
        let y = h2 / 2;
        if y > staircase.frame_rows || staircase.is_interior_peak((x, y)) {
            continue;
        }
        if !frame_white.contains(&(x, y)) {
            let (ox, oy) = side.from_frame(m, n, (x, y));
            return CheckOutcome::fail(
                CheckId::Prop4,
                format!("chain vertex ({ox}, {oy}) on the {side:?} chain is black"),
            );
        }
    }
    CheckOutcome::ok(CheckId::Prop4)
}

/// Interior peaks stay at height at most `rows + 1`; the two edge peaks at
/// height at most `rows`.
pub fn check_prop5(staircase: &Staircase) -> CheckOutcome {
    let (m, n) = staircase.grid_dims();
    let last = staircase.peaks.len() - 1;
    for (i, &p) in staircase.peaks.iter().enumerate() {
        let cap = if i == 0 || i == last {
            2 * staircase.frame_rows
        } else {
            2 * (staircase.frame_rows + 1)
        };
        if p.dy > cap {
            let orig = staircase.side.from_frame_half(m, n, p);
            return CheckOutcome::fail(
                CheckId::Prop5,
                format!(
                    "peak {orig} of the {:?} chain exceeds height {}",
                    staircase.side,
                    cap / 2
                ),
            );
        }
    }
    CheckOutcome::ok(CheckId::Prop5)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WindowDir {
    NE,
    NW,
}

/// A construction failure inside a window, kept as data so reports survive
/// the mirror map.
#[derive(Clone, Debug, Serialize)]
pub struct Defect {
    pub at: (i64, i64),
    pub message: &'static str,
}

/// A diagonal segment of the boundary chain from a bottom anchor `base` to
/// `tip`, with the non-white lattice peaks inside it resolved into
/// promoted replacement whites or holes.
#[derive(Clone, Debug, Serialize)]
pub struct Window {
    pub rows: i64,
    pub cols: i64,
    pub dir: WindowDir,
    pub base: (i64, i64),
    pub tip: HalfPoint,
    pub chain_whites: BTreeSet<(i64, i64)>,
    pub members: BTreeSet<(i64, i64)>,
    pub holes: Vec<(i64, i64)>,
    pub promotions: Vec<((i64, i64), (i64, i64))>,
    pub defects: Vec<Defect>,
}

fn mirror_x(cols: i64, x: i64) -> i64 {
    cols + 1 - x
}

fn mirror_half(cols: i64, p: HalfPoint) -> HalfPoint {
    HalfPoint::halves(2 * (cols + 1) - p.dx, p.dy)
}

fn mirrored(w: &Window) -> Window {
    let c = w.cols;
    Window {
        rows: w.rows,
        cols: c,
        dir: match w.dir {
            WindowDir::NE => WindowDir::NW,
            WindowDir::NW => WindowDir::NE,
        },
        base: (mirror_x(c, w.base.0), w.base.1),
        tip: mirror_half(c, w.tip),
        chain_whites: w.chain_whites.iter().map(|&(x, y)| (mirror_x(c, x), y)).collect(),
        members: w.members.iter().map(|&(x, y)| (mirror_x(c, x), y)).collect(),
        holes: w.holes.iter().map(|&(x, y)| (mirror_x(c, x), y)).collect(),
        promotions: w
            .promotions
            .iter()
            .map(|&((px, py), (tx, ty))| ((mirror_x(c, px), py), (mirror_x(c, tx), ty)))
            .collect(),
        defects: w
            .defects
            .iter()
            .map(|d| Defect { at: (mirror_x(c, d.at.0), d.at.1), message: d.message })
            .collect(),
    }
}

/// Computes the window of the bottom chain between `a` and `b`.
///
/// `a` must be a white vertex on the bottom row and `b` a point of the
/// NE (or NW) ray out of `a` whose column stays inside the grid. Non-white
/// lattice peaks inside the window are resolved exactly as the certificate
/// demands: a peak hugging the window's far edge promotes to its SE
/// neighbor on the chain; otherwise the maximal white diagonal climb from
/// that neighbor either ends below the top row and promotes into its north
/// neighborhood, or reaches the top row and marks the peak as a hole.
pub fn compute_window(
    rows: i64,
    cols: i64,
    white: &BTreeSet<(i64, i64)>,
    a: (i64, i64),
    b: HalfPoint,
    dir: WindowDir,
) -> Result<Window, StaircaseError> {
    check_in_grid(white, rows, cols)?;
    if a.1 != 1 || !(1..=cols).contains(&a.0) || !white.contains(&a) {
        return Err(StaircaseError::BadWindow(format!(
            "base ({}, {}) is not a white vertex on the bottom row",
            a.0, a.1
        )));
    }
    let rise = b.dy - 2;
    let run = match dir {
        WindowDir::NE => b.dx - 2 * a.0,
        WindowDir::NW => 2 * a.0 - b.dx,
    };
    if run != rise || run < 0 || b.dx > 2 * cols || b.dx < 2 {
        return Err(StaircaseError::BadWindow(format!(
            "tip {b} is not an in-grid point of the {dir:?} ray out of ({}, {})",
            a.0, a.1
        )));
    }
    match dir {
        WindowDir::NE => compute_window_ne(rows, cols, white, a, b),
        WindowDir::NW => {
            let flipped: BTreeSet<(i64, i64)> =
                white.iter().map(|&(x, y)| (mirror_x(cols, x), y)).collect();
            let w = compute_window_ne(
                rows,
                cols,
                &flipped,
                (mirror_x(cols, a.0), 1),
                mirror_half(cols, b),
            )?;
            Ok(mirrored(&w))
        }
    }
}

fn compute_window_ne(
    rows: i64,
    cols: i64,
    white: &BTreeSet<(i64, i64)>,
    a: (i64, i64),
    b: HalfPoint,
) -> Result<Window, StaircaseError> {
    let staircase = build_staircase(rows, cols, white, Side::XY)?;
    let x_max = b.dx / 2;
    let mut chain_whites = BTreeSet::new();
    let mut holes = Vec::new();
    let mut promotions = Vec::new();
    let mut defects = Vec::new();

    for x in a.0..=x_max {
        let y = staircase.chain_height_doubled(x) / 2;
        if white.contains(&(x, y)) {
            chain_whites.insert((x, y));
            continue;
        }
        if !staircase.is_interior_peak((x, y)) {
            defects.push(Defect { at: (x, y), message: "non-peak chain vertex is black" });
            continue;
        }

        let se = (x + 1, y - 1);
        if 2 * se.0 > b.dx {
            if se.1 <= rows && white.contains(&se) {
                promotions.push(((x, y), se));
            } else {
                defects.push(Defect { at: se, message: "chain vertex southeast of the peak is not white" });
            }
            continue;
        }
        if se.1 > rows || !white.contains(&se) {
            defects.push(Defect { at: se, message: "chain vertex southeast of the peak is not white" });
            continue;
        }
        let mut d = 0;
        loop {
            let next = (se.0 + d + 1, se.1 + d + 1);
            if next.0 > x_max
                || next.0 > cols
                || staircase.chain_height_doubled(next.0) != 2 * next.1
                || !white.contains(&next)
            {
                break;
            }
            d += 1;
        }
        let c = (se.0 + d, se.1 + d);
        if c.1 == rows {
            holes.push((x, y));
            continue;
        }
        let target = neighborhood_set(HalfPoint::lattice(c.0, c.1), Cardinal::North)
            .into_iter()
            .filter_map(|p| p.lattice_coords())
            .find(|&(px, py)| {
                (1..=cols).contains(&px) && (1..=rows).contains(&py) && white.contains(&(px, py))
            });
        match target {
            Some(t) => promotions.push(((x, y), t)),
            None => defects.push(Defect {
                at: c,
                message: "no white vertex in the north neighborhood of the climb end",
            }),
        }
    }

    let mut members = chain_whites.clone();
    members.extend(promotions.iter().map(|&(_, t)| t));
    Ok(Window {
        rows,
        cols,
        dir: WindowDir::NE,
        base: a,
        tip: b,
        chain_whites,
        members,
        holes,
        promotions,
        defects,
    })
}

fn below_nw_ray(p: HalfPoint, start: HalfPoint) -> bool {
    p.dx <= start.dx && p.dy <= start.dy + (start.dx - p.dx)
}

fn below_ne_ray(p: HalfPoint, start: HalfPoint) -> bool {
    p.dx >= start.dx && p.dy <= start.dy + (p.dx - start.dx)
}

/// Counting identity and containment for a window: member count equals the
/// lattice count of the base-tip segment minus the hole count, promotions
/// are injective and land outside the chain whites, every member stays
/// below the base-tip diagonal extended one SE step, and a hole in the
/// second column confines the members below two bounding rays.
pub fn check_prop6(window: &Window) -> CheckOutcome {
    let view;
    let w = match window.dir {
        WindowDir::NE => window,
        WindowDir::NW => {
            view = mirrored(window);
            &view
        }
    };
    let orig = |p: (i64, i64)| match window.dir {
        WindowDir::NE => p,
        WindowDir::NW => (mirror_x(window.cols, p.0), p.1),
    };

    if let Some(d) = w.defects.first() {
        let (x, y) = orig(d.at);
        return CheckOutcome::fail(CheckId::Prop6, format!("{} at ({x}, {y})", d.message));
    }
    let mut seen = BTreeSet::new();
    for &(peak, target) in &w.promotions {
        if !seen.insert(target) || w.chain_whites.contains(&target) {
            let (px, py) = orig(peak);
            let (tx, ty) = orig(target);
            return CheckOutcome::fail(
                CheckId::Prop6,
                format!("promotion of peak ({px}, {py}) collides at ({tx}, {ty})"),
            );
        }
    }

    let base = HalfPoint::lattice(w.base.0, w.base.1);
    let segment = Segment::new(base, w.tip).expect("tip is validated to sit on the base ray");
    let expected = lattice_count(&segment) as i64 - w.holes.len() as i64;
    if w.members.len() as i64 != expected {
        return CheckOutcome::fail(
            CheckId::Prop6,
            format!(
                "window holds {} whites, expected {} = {} lattice points - {} holes",
                w.members.len(),
                expected,
                lattice_count(&segment),
                w.holes.len()
            ),
        );
    }

    let bound = Polyline::new(vec![base, w.tip, w.tip.step(Dir::SE, 1)])
        .expect("base-tip diagonal with one SE step is x-monotone");
    for &(x, y) in &w.members {
        if !below(HalfPoint::lattice(x, y), &bound) {
            let (ox, oy) = orig((x, y));
            return CheckOutcome::fail(
                CheckId::Prop6,
                format!("member ({ox}, {oy}) rises above the window diagonal"),
            );
        }
    }

    for &(hx, hy) in &w.holes {
        if hx != 2 {
            continue;
        }
        let hole = HalfPoint::lattice(hx, hy);
        let nw_start = hole.step(Dir::NW, 1);
        let ne_start = hole.step(Dir::SE, 1);
        for &(x, y) in &w.members {
            let p = HalfPoint::lattice(x, y);
            if !below_nw_ray(p, nw_start) && !below_ne_ray(p, ne_start) {
                let (ox, oy) = orig((x, y));
                return CheckOutcome::fail(
                    CheckId::Prop6,
                    format!("member ({ox}, {oy}) escapes the rays around the column-2 hole"),
                );
            }
        }
    }
    CheckOutcome::ok(CheckId::Prop6)
}

/// Hole placement rules: heights in `{2, rows+1}`, columns at most
/// `cols - rows`, pairwise column distance at least `rows + 1`, at most
/// one low hole within `rows` columns of the base, and no hole at all in
/// windows narrower than `rows + 1` columns.
pub fn check_prop7(window: &Window) -> CheckOutcome {
    let view;
    let w = match window.dir {
        WindowDir::NE => window,
        WindowDir::NW => {
            view = mirrored(window);
            &view
        }
    };
    let orig = |p: (i64, i64)| match window.dir {
        WindowDir::NE => p,
        WindowDir::NW => (mirror_x(window.cols, p.0), p.1),
    };
    let fail = |p: (i64, i64), why: &str| {
        let (x, y) = orig(p);
        CheckOutcome::fail(CheckId::Prop7, format!("hole ({x}, {y}) {why}"))
    };

    for &(x, y) in &w.holes {
        if y != 2 && y != w.rows + 1 {
            return fail((x, y), "has a height other than 2 or rows+1");
        }
        if x > w.cols - w.rows {
            return fail((x, y), "sits within the last rows columns");
        }
    }
    for (i, &(xi, yi)) in w.holes.iter().enumerate() {
        for &(xj, _) in &w.holes[i + 1..] {
            if (xi - xj).abs() < w.rows + 1 {
                return fail((xi, yi), "is closer than rows+1 columns to another hole");
            }
        }
    }
    let mut near_base = 0;
    for &(x, y) in &w.holes {
        if w.base.0 < x && x < w.base.0 + w.rows {
            near_base += 1;
            if y != 2 {
                return fail((x, y), "is within rows columns of the base but not at height 2");
            }
            if near_base > 1 {
                return fail((x, y), "is a second hole within rows columns of the base");
            }
        }
    }
    if w.tip.dx < 2 * (w.base.0 + w.rows + 1) {
        if let Some(&(x, y)) = w.holes.first() {
            return fail((x, y), "appears in a window narrower than rows+1 columns");
        }
    }
    CheckOutcome::ok(CheckId::Prop7)
}

/// Every white vertex off a boundary row or column keeps a white companion
/// in its four-point neighborhood toward that boundary.
pub fn check_lemma2(m: i64, n: i64, white: &BTreeSet<(i64, i64)>) -> CheckOutcome {
    for &(x, y) in white {
        let mut sides = Vec::with_capacity(4);
        if y < m {
            sides.push(Cardinal::North);
        }
        if y > 1 {
            sides.push(Cardinal::South);
        }
        if x < n {
            sides.push(Cardinal::East);
        }
        if x > 1 {
            sides.push(Cardinal::West);
        }
        for side in sides {
            let hit = neighborhood_set(HalfPoint::lattice(x, y), side)
                .into_iter()
                .filter_map(|p| p.lattice_coords())
                .any(|(px, py)| {
                    (1..=n).contains(&px) && (1..=m).contains(&py) && white.contains(&(px, py))
                });
            if !hit {
                return CheckOutcome::fail(
                    CheckId::Lemma2,
                    format!("white vertex ({x}, {y}) has no white {side:?} companion"),
                );
            }
        }
    }
    CheckOutcome::ok(CheckId::Lemma2)
}

/// The white set meets the first and last column, every consecutive column
/// pair, and the same for rows.
pub fn check_lemma3(m: i64, n: i64, white: &BTreeSet<(i64, i64)>) -> CheckOutcome {
    let cols: BTreeSet<i64> = white.iter().map(|&(x, _)| x).collect();
    let rows: BTreeSet<i64> = white.iter().map(|&(_, y)| y).collect();
    let scan = |touched: &BTreeSet<i64>, len: i64, what: &str| -> Option<String> {
        if !touched.contains(&1) {
            return Some(format!("no white in the first {what}"));
        }
        if !touched.contains(&len) {
            return Some(format!("no white in the last {what}"));
        }
        for j in 1..len {
            if !touched.contains(&j) && !touched.contains(&(j + 1)) {
                return Some(format!("no white in {what}s {j} and {}", j + 1));
            }
        }
        None
    };
    if let Some(why) = scan(&cols, n, "column") {
        return CheckOutcome::fail(CheckId::Lemma3, why);
    }
    if let Some(why) = scan(&rows, m, "row") {
        return CheckOutcome::fail(CheckId::Lemma3, why);
    }
    CheckOutcome::ok(CheckId::Lemma3)
}

#[derive(Clone, Debug, Serialize)]
pub struct SideReport {
    pub side: Side,
    pub windows_checked: usize,
    pub prop4: CheckOutcome,
    pub prop5: CheckOutcome,
    pub prop6: CheckOutcome,
    pub prop7: CheckOutcome,
}

impl SideReport {
    pub fn pass(&self) -> bool {
        self.prop4.pass && self.prop5.pass && self.prop6.pass && self.prop7.pass
    }

    fn broken(side: Side, why: String) -> Self {
        SideReport {
            side,
            windows_checked: 0,
            prop4: CheckOutcome::fail(CheckId::Prop4, why.clone()),
            prop5: CheckOutcome::fail(CheckId::Prop5, why.clone()),
            prop6: CheckOutcome::fail(CheckId::Prop6, why.clone()),
            prop7: CheckOutcome::fail(CheckId::Prop7, why),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub lemma2: CheckOutcome,
    pub lemma3: CheckOutcome,
    pub sides: Vec<SideReport>,
    pub pass: bool,
}

fn side_report(m: i64, n: i64, white: &BTreeSet<(i64, i64)>, side: Side) -> SideReport {
    let staircase = match build_staircase(m, n, white, side) {
        Ok(s) => s,
        Err(e) => return SideReport::broken(side, e.to_string()),
    };
    let (rows, cols) = (staircase.frame_rows, staircase.frame_cols);
    let frame_white: BTreeSet<(i64, i64)> =
        white.iter().map(|&p| side.to_frame(m, n, p)).collect();

    let prop4 = check_prop4(m, n, white, &staircase);
    let prop5 = check_prop5(&staircase);
    let mut prop6 = CheckOutcome::ok(CheckId::Prop6);
    let mut prop7 = CheckOutcome::ok(CheckId::Prop7);
    let mut windows_checked = 0;

    for &(ax, _) in &staircase.anchors {
        for dir in [WindowDir::NE, WindowDir::NW] {
            let exit = match dir {
                WindowDir::NE => (rows - 1).min(cols - ax),
                WindowDir::NW => (rows - 1).min(ax - 1),
            };
            let mut tips = vec![0, exit];
            tips.dedup();
            for t in tips {
                let step_dir = if matches!(dir, WindowDir::NE) { Dir::NE } else { Dir::NW };
                let tip = HalfPoint::lattice(ax, 1).step(step_dir, t);
                let window = match compute_window(rows, cols, &frame_white, (ax, 1), tip, dir) {
                    Ok(w) => w,
                    Err(e) => {
                        return SideReport::broken(side, e.to_string());
                    }
                };
                windows_checked += 1;
                let tag = |msg: &str| {
                    format!("window base ({ax}, 1) tip {tip} {dir:?} on {side:?}: {msg}")
                };
                if prop6.pass {
                    let c = check_prop6(&window);
                    if !c.pass {
                        prop6 =
                            CheckOutcome::fail(CheckId::Prop6, tag(&c.counterexample.unwrap()));
                    }
                }
                if prop7.pass {
                    let c = check_prop7(&window);
                    if !c.pass {
                        prop7 =
                            CheckOutcome::fail(CheckId::Prop7, tag(&c.counterexample.unwrap()));
                    }
                }
            }
        }
    }
    SideReport { side, windows_checked, prop4, prop5, prop6, prop7 }
}

/// Runs all six certificate checks over every side of the grid.
pub fn certify_grid(m: i64, n: i64, white: &BTreeSet<(i64, i64)>) -> CertificateReport {
    let lemma2 = check_lemma2(m, n, white);
    let lemma3 = check_lemma3(m, n, white);
    let sides: Vec<SideReport> =
        Side::ALL.iter().map(|&side| side_report(m, n, white, side)).collect();
    let pass = lemma2.pass && lemma3.pass && sides.iter().all(|s| s.pass());
    CertificateReport { lemma2, lemma3, sides, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::build_witness;

    fn set(points: &[(i64, i64)]) -> BTreeSet<(i64, i64)> {
        points.iter().copied().collect()
    }

    fn wide_example() -> BTreeSet<(i64, i64)> {
        set(&[
            (1, 3),
            (2, 2),
            (3, 1),
            (4, 2),
            (5, 3),
            (6, 3),
            (7, 2),
            (8, 1),
            (10, 1),
            (11, 2),
        ])
    }

    fn low_example() -> BTreeSet<(i64, i64)> {
        set(&[
            (2, 1),
            (8, 1),
            (9, 1),
            (11, 1),
            (13, 1),
            (15, 1),
            (1, 2),
            (3, 2),
            (4, 3),
            (6, 3),
            (7, 2),
            (12, 2),
            (13, 3),
        ])
    }

    #[test]
    fn wide_example_peaks() {
        let s = build_staircase(6, 11, &wide_example(), Side::XY).unwrap();
        assert_eq!(s.anchors, vec![(3, 1), (8, 1), (10, 1)]);
        assert_eq!(
            s.peaks,
            vec![
                HalfPoint::lattice(1, 3),
                HalfPoint::halves(11, 7),
                HalfPoint::lattice(9, 2),
                HalfPoint::lattice(11, 2),
            ]
        );
        assert!(check_prop5(&s).pass);
    }

    #[test]
    fn low_example_peaks() {
        let s = build_staircase(3, 15, &low_example(), Side::XY).unwrap();
        assert_eq!(s.peaks[0], HalfPoint::lattice(1, 2));
        assert_eq!(s.peaks[1], HalfPoint::lattice(5, 4));
        assert_eq!(s.peaks[2], HalfPoint::halves(17, 3));
        assert_eq!(s.peaks[4], HalfPoint::lattice(12, 2));
        assert_eq!(s.peaks[6], HalfPoint::lattice(15, 1));
        assert!(check_prop4(3, 15, &low_example(), &s).pass);
        assert!(check_prop5(&s).pass);
    }

    #[test]
    fn single_anchor_peaks() {
        let s = build_staircase(3, 7, &set(&[(1, 1)]), Side::XY).unwrap();
        assert_eq!(s.peaks, vec![HalfPoint::lattice(1, 1), HalfPoint::lattice(7, 7)]);
        assert!(!check_prop5(&s).pass);
    }

    #[test]
    fn staircase_needs_a_boundary_white() {
        let err = build_staircase(3, 3, &set(&[(2, 2)]), Side::XY).unwrap_err();
        assert_eq!(err, StaircaseError::EmptyBoundary { side: Side::XY });
    }

    #[test]
    fn peaks_sit_on_anchor_rays() {
        for anchor_mask in 1u32..32 {
            let anchors: Vec<(i64, i64)> =
                (0..5).filter(|i| anchor_mask >> i & 1 == 1).map(|i| (2 * i + 1, 1)).collect();
            let s = build_staircase(4, 9, &anchors.iter().copied().collect(), Side::XY).unwrap();
            for (i, w) in s.anchors.windows(2).enumerate() {
                let p = s.peaks[i + 1];
                assert_eq!(p.dx - 2 * w[0].0, p.dy - 2, "NE ray of the left anchor");
                assert_eq!(2 * w[1].0 - p.dx, p.dy - 2, "NW ray of the right anchor");
            }
        }
    }

    #[test]
    fn side_frames_are_grid_bijections() {
        let (m, n) = (3, 5);
        for side in Side::ALL {
            let (rows, cols) = side.frame_dims(m, n);
            let mut seen = BTreeSet::new();
            for x in 1..=n {
                for y in 1..=m {
                    let (u, v) = side.to_frame(m, n, (x, y));
                    assert!((1..=cols).contains(&u) && (1..=rows).contains(&v), "{side:?}");
                    assert!(seen.insert((u, v)));
                    assert_eq!(side.from_frame(m, n, (u, v)), (x, y));
                    let half = side.from_frame_half(m, n, HalfPoint::lattice(u, v));
                    assert_eq!(half, HalfPoint::lattice(x, y));
                }
            }
            assert_eq!(seen.len() as i64, m * n);
        }
    }

    #[test]
    fn prop4_flags_whites_below_and_black_chain_vertices() {
        let mut white = wide_example();
        let s = build_staircase(6, 11, &white, Side::XY).unwrap();
        assert!(check_prop4(6, 11, &white, &s).pass);

        white.insert((4, 1));
        let out = check_prop4(6, 11, &white, &s);
        assert!(!out.pass);
        assert!(out.counterexample.unwrap().contains("(4, 1)"));

        let mut missing = wide_example();
        missing.remove(&(6, 3));
        let s = build_staircase(6, 11, &missing, Side::XY).unwrap();
        let out = check_prop4(6, 11, &missing, &s);
        assert!(!out.pass);
        assert!(out.counterexample.unwrap().contains("(6, 3)"));
    }

    #[test]
    fn prop5_flags_a_far_first_anchor() {
        let s = build_staircase(2, 9, &set(&[(5, 1)]), Side::XY).unwrap();
        let out = check_prop5(&s);
        assert!(!out.pass);
        assert!(out.counterexample.unwrap().contains("(1, 5)"));
    }

    #[test]
    fn window_mechanics_match_the_worked_example() {
        let white = low_example();
        let w = compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(13, 12), WindowDir::NE)
            .unwrap();
        assert!(w.defects.is_empty());
        assert_eq!(w.holes, vec![(5, 4)]);
        assert_eq!(w.promotions, vec![((10, 2), (13, 3))]);
        assert_eq!(w.members.len(), 11);
        assert!(w.members.contains(&(12, 2)));
        assert!(check_prop6(&w).pass);
        assert!(check_prop7(&w).pass);
    }

    #[test]
    fn peak_on_the_window_edge_promotes_southeast() {
        let white = low_example();
        let w = compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(10, 9), WindowDir::NE)
            .unwrap();
        assert_eq!(w.holes, vec![(5, 4)]);
        assert_eq!(w.promotions, vec![((10, 2), (11, 1))]);
        assert_eq!(w.members.len(), 8);
        assert!(check_prop6(&w).pass);
        assert!(check_prop7(&w).pass);
    }

    #[test]
    fn zero_length_window_is_its_own_base() {
        let white = low_example();
        let w = compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(2, 1), WindowDir::NE)
            .unwrap();
        assert_eq!(w.members, set(&[(2, 1)]));
        assert!(w.holes.is_empty());
        assert!(check_prop6(&w).pass);
        assert!(check_prop7(&w).pass);
    }

    #[test]
    fn window_rejects_bad_bases_and_tips() {
        let white = low_example();
        assert!(matches!(
            compute_window(3, 15, &white, (3, 1), HalfPoint::lattice(5, 3), WindowDir::NE),
            Err(StaircaseError::BadWindow(_))
        ));
        assert!(matches!(
            compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(5, 3), WindowDir::NE),
            Err(StaircaseError::BadWindow(_))
        ));
        assert!(matches!(
            compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(16, 15), WindowDir::NE),
            Err(StaircaseError::BadWindow(_))
        ));
    }

    #[test]
    fn low_hole_in_the_second_column_stays_inside_its_rays() {
        let white = set(&[(1, 1), (3, 1), (4, 2), (5, 1)]);
        let w = compute_window(2, 5, &white, (1, 1), HalfPoint::lattice(5, 5), WindowDir::NE)
            .unwrap();
        assert_eq!(w.holes, vec![(2, 2)]);
        assert_eq!(w.members.len(), 4);
        assert!(check_prop6(&w).pass);
        assert!(check_prop7(&w).pass);
    }

    #[test]
    fn prop6_rejects_fabricated_violations() {
        let white = low_example();
        let good = compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(13, 12), WindowDir::NE)
            .unwrap();

        let mut short = good.clone();
        short.members.remove(&(13, 3));
        assert!(!check_prop6(&short).pass);

        let mut escaped = good.clone();
        escaped.members.remove(&(13, 3));
        escaped.members.insert((3, 4));
        assert!(check_prop6(&escaped).counterexample.unwrap().contains("(3, 4)"));

        let mut defective = good;
        defective.defects.push(Defect { at: (9, 9), message: "non-peak chain vertex is black" });
        assert!(!check_prop6(&defective).pass);
    }

    #[test]
    fn prop7_rejects_fabricated_violations() {
        let white = low_example();
        let base = compute_window(3, 15, &white, (2, 1), HalfPoint::lattice(13, 12), WindowDir::NE)
            .unwrap();

        let mut crowded = base.clone();
        crowded.holes = vec![(5, 2), (7, 2)];
        assert!(check_prop7(&crowded).counterexample.unwrap().contains("closer than"));

        let mut tall = base.clone();
        tall.holes = vec![(5, 3)];
        assert!(check_prop7(&tall).counterexample.unwrap().contains("height"));

        let mut narrow = base;
        narrow.tip = HalfPoint::lattice(5, 4);
        narrow.holes = vec![(5, 4)];
        assert!(check_prop7(&narrow).counterexample.unwrap().contains("narrower"));
    }

    #[test]
    fn lemma_checks_match_small_examples() {
        assert!(check_lemma2(2, 2, &set(&[(1, 1), (2, 2)])).pass);
        let out = check_lemma2(3, 3, &set(&[(1, 1)]));
        assert!(out.counterexample.unwrap().contains("(1, 1)"));

        let witness: BTreeSet<(i64, i64)> =
            build_witness(2, 4).unwrap().white.into_iter().collect();
        assert!(check_lemma3(2, 4, &witness).pass);
        let out = check_lemma3(3, 5, &set(&[(1, 1), (5, 3)]));
        assert!(!out.pass);
    }

    #[test]
    fn witnesses_certify_on_every_side() {
        for (m, n) in [(2, 5), (3, 4), (3, 7), (4, 6), (5, 5)] {
            let white: BTreeSet<(i64, i64)> =
                build_witness(m, n).unwrap().white.into_iter().collect();
            let report = certify_grid(m, n, &white);
            assert!(report.pass, "{m}x{n}: {report:?}");
        }
    }

    #[test]
    fn enumerated_minimum_sets_certify() {
        let g = crate::graph::Graph::grid(2, 4).unwrap();
        let spec = g.grid_spec().unwrap();
        let found = crate::solver::enumerate_min_blocking_sets(
            &g,
            4,
            500,
            &crate::solver::SearchBudget::default(),
        )
        .unwrap();
        assert!(!found.sets.is_empty());
        for vertices in &found.sets {
            let white: BTreeSet<(i64, i64)> = vertices.iter().map(|&v| spec.coords(v)).collect();
            let report = certify_grid(2, 4, &white);
            assert!(report.pass, "{white:?}: {report:?}");
        }
    }

    #[test]
    fn certificates_flag_a_moved_vertex() {
        let mut white: BTreeSet<(i64, i64)> =
            build_witness(2, 5).unwrap().white.into_iter().collect();
        white.remove(&(2, 2));
        white.insert((2, 1));
        let report = certify_grid(2, 5, &white);
        assert!(!report.pass);
    }

    #[test]
    fn reports_serialize_to_json() {
        let white: BTreeSet<(i64, i64)> =
            build_witness(2, 5).unwrap().white.into_iter().collect();
        let report = certify_grid(2, 5, &white);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"Prop6\""));
        assert!(json.contains("\"pass\":true"));
    }

    proptest::proptest! {
        #[test]
        fn certification_accumulates_on_arbitrary_sets(
            mask in 0u32..(1 << 20),
            rows in 2i64..=4,
            extra_cols in 0i64..=3,
        ) {
            let cols = rows + extra_cols;
            let mut white = BTreeSet::new();
            for bit in 0..(rows * cols).min(20) {
                if mask & (1 << bit) != 0 {
                    white.insert((bit % cols + 1, bit / cols + 1));
                }
            }
            let report = certify_grid(rows, cols, &white);
            proptest::prop_assert_eq!(report.sides.len(), 4);
            let aggregate = report.lemma2.pass
                && report.lemma3.pass
                && report.sides.iter().all(SideReport::pass);
            proptest::prop_assert_eq!(report.pass, aggregate);
            for side in &report.sides {
                for check in [&side.prop4, &side.prop5, &side.prop6, &side.prop7] {
                    proptest::prop_assert_eq!(check.pass, check.counterexample.is_none());
                }
            }
        }
    }
}
