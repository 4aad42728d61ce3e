//! Closed-form blocking numbers for grids and the witness construction.
//!
//! For a grid with `2 <= m <= n`, write `n - m = q(m+1) - r` with
//! `q = ceil((n-m)/(m+1))` and `0 <= r <= m`. The minimum blocking set size
//! is `n - q + ceil(r/2)` when `r <= 2q` and `n - q + m - 1` otherwise.
//! [`build_witness`] realizes the bound with an explicit stalled white set:
//! a wave that bounces between the bottom and top rows, skipping one column
//! per hole in the tight branch, plus a left-edge crossing gadget when
//! `r > 2q`. Every witness is re-verified by the forcing engine before it is
//! returned.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::forcing::{closure, is_stalled, ColorState};
use crate::graph::{Graph, DEFAULT_VERTEX_LIMIT};
use crate::solver::{enumerate_min_blocking_sets, SearchBudget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("closed forms need both grid sides at least 2 (got {m}x{n})")]
    Unsupported { m: i64, n: i64 },
    #[error("grid side {0} exceeds the 10^9 cap for closed forms")]
    SideTooLong(i64),
    #[error("{m}x{n} grid is too large to verify a witness against the engine")]
    GridTooLarge { m: i64, n: i64 },
    #[error("witness construction for {m}x{n} failed verification and no fallback was found")]
    WitnessConstruction { m: i64, n: i64 },
}

const SIDE_CAP: i64 = 1_000_000_000;

/// The division parameters behind the closed form, for the normalized
/// orientation `m <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaParams {
    pub m: i64,
    pub n: i64,
    pub q: i64,
    pub r: i64,
    pub tight: bool,
}

/// Computes `q`, `r`, and the branch selector, transposing so `m <= n`.
pub fn qr_params(m: i64, n: i64) -> Result<FormulaParams, TheoryError> {
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    if m < 2 {
        return Err(TheoryError::Unsupported { m, n });
    }
    if n > SIDE_CAP {
        return Err(TheoryError::SideTooLong(n));
    }
    let gap = n - m;
    let q = (gap + m) / (m + 1);
    let r = q * (m + 1) - gap;
    debug_assert!((0..=m).contains(&r));
    Ok(FormulaParams { m, n, q, r, tight: r <= 2 * q })
}

/// Exact minimum blocking set size of the `m x n` grid.
pub fn blocking_number_formula(m: i64, n: i64) -> Result<i64, TheoryError> {
    let p = qr_params(m, n)?;
    if p.tight {
        Ok(p.n - p.q + (p.r + 1) / 2)
    } else {
        Ok(p.n - p.q + p.m - 1)
    }
}

/// The constructive upper bound in its published two-branch form. Agrees
/// with [`blocking_number_formula`] everywhere; kept separate so that the
/// agreement stays checkable.
pub fn upper_bound_bcc(m: i64, n: i64) -> Result<i64, TheoryError> {
    let p = qr_params(m, n)?;
    let ceil_div = p.q;
    let floor_div = (p.n - p.m) / (p.m - 1);
    if ceil_div <= floor_div {
        Ok(p.m * (p.q + 1) - p.r / 2)
    } else {
        Ok(p.n + p.m - (p.n - p.m) / (p.m + 1) - 2)
    }
}

/// One way of spending the horizontal span `n - m` on gap pieces of width
/// `m-1`, `m`, and `m+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GapDecomposition {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// All `(a, b, c)` with `a(m-1) + bm + c(m+1) = n - m`, ordered by `(c, a)`.
pub fn lemma8_decompositions(m: i64, n: i64) -> Result<Vec<GapDecomposition>, TheoryError> {
    let p = qr_params(m, n)?;
    let (m, gap) = (p.m, p.n - p.m);
    let mut out = Vec::new();
    for c in 0..=gap / (m + 1) {
        let after_c = gap - c * (m + 1);
        for a in 0..=after_c / (m - 1) {
            let rem = after_c - a * (m - 1);
            if rem % m == 0 {
                out.push(GapDecomposition { a, b: rem / m, c });
            }
        }
    }
    out.sort_by_key(|d| (d.c, d.a));
    Ok(out)
}

/// Largest skip count over all gap decompositions, `None` when none exist.
/// A decomposition can exist only in the tight branch, and its skip count
/// never exceeds `q - ceil(r/2)`.
pub fn lemma8_max_c(m: i64, n: i64) -> Result<Option<i64>, TheoryError> {
    Ok(lemma8_decompositions(m, n)?.into_iter().map(|d| d.c).max())
}

/// How a witness was assembled: the bottom-row anchor columns and the
/// virtual peaks of the skipped columns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionLog {
    pub anchors: Vec<i64>,
    pub holes: Vec<(i64, i64)>,
    pub crossing: bool,
}

/// A verified minimum blocking set for a grid, white vertices sorted by
/// `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub m: i64,
    pub n: i64,
    pub white: Vec<(i64, i64)>,
    pub size: usize,
    pub verified: bool,
    pub log: ConstructionLog,
}

enum Gap {
    Plain,
    Pause,
    Skip,
}

struct Wave {
    x: i64,
    y: i64,
    ascending: bool,
    points: BTreeSet<(i64, i64)>,
    holes: Vec<(i64, i64)>,
}

impl Wave {
    fn start(x: i64, y: i64, ascending: bool) -> Self {
        let mut points = BTreeSet::new();
        points.insert((x, y));
        Wave { x, y, ascending, points, holes: Vec::new() }
    }

    /// Plays one gap: an optional push along the current row, then `m - 1`
    /// diagonal steps, then a direction flip.
    fn run(&mut self, m: i64, gap: &Gap) {
        match gap {
            Gap::Plain => {}
            Gap::Pause => {
                self.x += 1;
                self.points.insert((self.x, self.y));
            }
            Gap::Skip => {
                let peak_y = if self.y == 1 { 2 } else { m + 1 };
                self.holes.push((self.x + 1, peak_y));
                self.x += 2;
                self.points.insert((self.x, self.y));
            }
        }
        for _ in 0..(m - 1) {
            self.x += 1;
            self.y += if self.ascending { 1 } else { -1 };
            self.points.insert((self.x, self.y));
        }
        self.ascending = !self.ascending;
    }
}

fn tight_witness(m: i64, n: i64, q: i64, r: i64) -> (BTreeSet<(i64, i64)>, ConstructionLog) {
    let skips = q - (r + 1) / 2;
    let pauses = r % 2;
    let extra_plains = r / 2;
    let mut gaps = vec![Gap::Plain];
    gaps.extend((0..extra_plains).map(|_| Gap::Plain));
    gaps.extend((0..pauses).map(|_| Gap::Pause));
    gaps.extend((0..skips).map(|_| Gap::Skip));

    let mut wave = Wave::start(1, 1, true);
    for gap in &gaps {
        wave.run(m, gap);
    }
    debug_assert_eq!(wave.x, n);
    let log = ConstructionLog {
        anchors: wave.points.iter().filter(|&&(_, y)| y == 1).map(|&(x, _)| x).collect(),
        holes: wave.holes.clone(),
        crossing: false,
    };
    (wave.points, log)
}

/// The `r > 2q` construction: two diagonals crossing near the left edge,
/// then a plain wave with `q - 1` skips.
fn crossing_witness(m: i64, n: i64, q: i64, r: i64) -> (BTreeSet<(i64, i64)>, ConstructionLog) {
    let y0 = r - 1;
    debug_assert!((2..=m - 1).contains(&y0));
    let mut points = BTreeSet::new();
    points.insert((1, y0));
    for j in 1..=(y0 - 1) {
        points.insert((1 + j, y0 - j));
    }
    for j in 1..=(m - y0) {
        points.insert((y0 + j, 1 + j));
        points.insert((1 + j, y0 + j));
    }

    let mut wave = Wave::start(m - y0 + 1, m, false);
    let mut gaps = vec![Gap::Plain];
    gaps.extend((0..q - 1).map(|_| Gap::Skip));
    for gap in &gaps {
        wave.run(m, gap);
    }
    debug_assert_eq!(wave.x, n);
    points.extend(wave.points.iter().copied());

    let log = ConstructionLog {
        anchors: points.iter().filter(|&&(_, y)| y == 1).map(|&(x, _)| x).collect(),
        holes: wave.holes.clone(),
        crossing: true,
    };
    (points, log)
}

fn verify_stalled_blocking(g: &Graph, white: &[(i64, i64)]) -> bool {
    let ids: Option<Vec<usize>> = white
        .iter()
        .map(|&(x, y)| g.vertex_at(crate::geometry::HalfPoint::lattice(x, y)).ok())
        .collect();
    let Some(ids) = ids else { return false };
    let state = ColorState::from_white(g.vertex_count(), ids);
    let (done, trace) = closure(g, &state);
    trace.is_empty() && is_stalled(g, &state) && !done.is_all_black()
}

/// Builds a verified minimum blocking set for the `m x n` grid.
///
/// The returned coordinates are in the caller's orientation even when
/// `m > n` internally transposes. Verification runs the forcing engine on
/// the whole grid, so sides beyond the default vertex limit are rejected.
pub fn build_witness(m: i64, n: i64) -> Result<Witness, TheoryError> {
    let transposed = m > n;
    let p = qr_params(m, n)?;
    if (p.m as i128) * (p.n as i128) > DEFAULT_VERTEX_LIMIT as i128 {
        return Err(TheoryError::GridTooLarge { m, n });
    }
    let target = blocking_number_formula(p.m, p.n)? as usize;
    let (points, mut log) = if p.tight {
        tight_witness(p.m, p.n, p.q, p.r)
    } else {
        crossing_witness(p.m, p.n, p.q, p.r)
    };

    let g = Graph::grid(p.m as usize, p.n as usize).expect("grid within vertex limit");
    let mut white: Vec<(i64, i64)> = points.into_iter().collect();
    let mut verified = white.len() == target && verify_stalled_blocking(&g, &white);
    if !verified {
        if let Ok(found) = enumerate_min_blocking_sets(&g, target, 1, &SearchBudget::default()) {
            if let Some(set) = found.sets.first() {
                white = set
                    .iter()
                    .map(|&v| {
                        let spec = g.grid_spec().expect("grid graph");
                        spec.coords(v)
                    })
                    .collect();
                log = ConstructionLog::default();
                verified = verify_stalled_blocking(&g, &white);
            }
        }
        if !verified {
            return Err(TheoryError::WitnessConstruction { m, n });
        }
    }

    if transposed {
        white = white.into_iter().map(|(x, y)| (y, x)).collect();
        log.anchors.clear();
        log.holes = log.holes.drain(..).map(|(x, y)| (y, x)).collect();
    }
    white.sort();
    Ok(Witness { m, n, white, size: target, verified, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::min_blocking_grid;

    #[test]
    fn division_parameters() {
        let p = qr_params(6, 11).unwrap();
        assert_eq!((p.q, p.r, p.tight), (1, 2, true));
        let p = qr_params(3, 4).unwrap();
        assert_eq!((p.q, p.r, p.tight), (1, 3, false));
        let p = qr_params(5, 5).unwrap();
        assert_eq!((p.q, p.r, p.tight), (0, 0, true));
        let p = qr_params(11, 6).unwrap();
        assert_eq!((p.m, p.n), (6, 11));
        assert!(qr_params(1, 9).is_err());
    }

    #[test]
    fn formula_matches_pinned_values() {
        for (m, n, expected) in [
            (2, 2, 2),
            (2, 3, 3),
            (3, 3, 3),
            (2, 4, 4),
            (3, 4, 5),
            (2, 5, 4),
            (6, 11, 11),
            (2, 14, 10),
        ] {
            assert_eq!(blocking_number_formula(m, n).unwrap(), expected, "{m}x{n}");
            assert_eq!(blocking_number_formula(n, m).unwrap(), expected, "{n}x{m}");
        }
    }

    #[test]
    fn bound_and_formula_share_every_value() {
        for m in 2..=80i64 {
            for n in m..=80 {
                assert_eq!(
                    upper_bound_bcc(m, n).unwrap(),
                    blocking_number_formula(m, n).unwrap(),
                    "{m}x{n}"
                );
            }
        }
    }

    #[test]
    fn formula_agrees_with_search_on_small_grids() {
        for (m, n) in [(2, 2), (2, 5), (2, 7), (3, 4), (3, 5), (4, 4)] {
            let searched = min_blocking_grid(m as usize, n as usize, &SearchBudget::default())
                .unwrap()
                .value
                .unwrap() as i64;
            assert_eq!(blocking_number_formula(m, n).unwrap(), searched, "{m}x{n}");
        }
    }

    #[test]
    fn decompositions_enumerate_gap_splits() {
        let ds = lemma8_decompositions(3, 15).unwrap();
        assert!(ds.contains(&GapDecomposition { a: 0, b: 0, c: 3 }));
        assert!(ds.iter().all(|d| d.a * 2 + d.b * 3 + d.c * 4 == 12));
        assert_eq!(lemma8_max_c(3, 15).unwrap(), Some(3));

        assert_eq!(lemma8_max_c(3, 4).unwrap(), None);
        assert_eq!(lemma8_max_c(4, 4).unwrap(), Some(0));
    }

    #[test]
    fn skip_counts_never_beat_the_tight_budget() {
        for m in 2..=20i64 {
            for n in m..=60 {
                let p = qr_params(m, n).unwrap();
                if let Some(c) = lemma8_max_c(m, n).unwrap() {
                    assert!(p.tight, "{m}x{n}: decomposition exists off the tight branch");
                    assert!(c <= p.q - (p.r + 1) / 2, "{m}x{n}");
                }
            }
        }
    }

    #[test]
    fn witness_matches_documented_small_cases() {
        let w = build_witness(2, 5).unwrap();
        assert_eq!(w.white, vec![(1, 1), (2, 2), (4, 2), (5, 1)]);
        assert_eq!(w.log.holes, vec![(3, 3)]);
        assert!(w.verified);

        let w = build_witness(3, 4).unwrap();
        assert_eq!(w.white, vec![(1, 2), (2, 1), (2, 3), (3, 2), (4, 1)]);
        assert!(w.log.crossing);
        assert_eq!(w.size, 5);
    }

    #[test]
    fn witnesses_verify_across_a_sweep() {
        for m in 2..=12i64 {
            for n in m..=24 {
                let w = build_witness(m, n).unwrap();
                assert!(w.verified, "{m}x{n}");
                assert_eq!(w.size as i64, blocking_number_formula(m, n).unwrap(), "{m}x{n}");
                assert_eq!(w.white.len(), w.size, "{m}x{n}");
            }
        }
    }

    #[test]
    fn transposed_witnesses_swap_coordinates() {
        let tall = build_witness(5, 2).unwrap();
        assert!(tall.verified);
        assert_eq!(tall.white, vec![(1, 1), (1, 5), (2, 2), (2, 4)]);
        assert_eq!(tall.size, 4);
    }

    #[test]
    fn witness_sizes_match_search_on_small_grids() {
        for (m, n) in [(2, 6), (3, 6), (4, 5), (4, 6), (5, 5)] {
            let w = build_witness(m, n).unwrap();
            let searched = min_blocking_grid(m as usize, n as usize, &SearchBudget::default())
                .unwrap()
                .value
                .unwrap();
            assert_eq!(w.size, searched, "{m}x{n}");
        }
    }
}
