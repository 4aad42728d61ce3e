//! Simple undirected graphs in compressed adjacency form, plus the grid
//! constructor and the plain-text edge list format.
//!
//! Grid vertices are laid out row-major: `(x, y)` maps to index
//! `(y - 1) * cols + (x - 1)`, with `x` the column in `1..=cols` and `y` the
//! row in `1..=rows`. Graphs built by [`Graph::grid`] remember their shape,
//! which unlocks coordinate lookups and the grid-aware search paths.

use crate::geometry::HalfPoint;
use thiserror::Error;

pub type VertexId = usize;

/// Refuse to materialize grids above this many vertices unless the caller
/// raises the limit explicitly.
pub const DEFAULT_VERTEX_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{vertices} vertices exceed the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("grid sides must be at least 1 (got {rows}x{cols})")]
    EmptyGrid { rows: usize, cols: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: vertex {id} out of range 1..={max}")]
    VertexRange { line: usize, id: i64, max: usize },
    #[error("line {line}: self-loop at vertex {id}")]
    SelfLoop { line: usize, id: usize },
    #[error("graph has no grid shape")]
    NotAGrid,
    #[error("{point} is not a vertex of the {rows}x{cols} grid")]
    OutsideGrid { point: HalfPoint, rows: usize, cols: usize },
    #[error("vertex index {id} out of range for {count} vertices")]
    BadVertex { id: usize, count: usize },
}

/// Shape tag carried by graphs built as grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
}

impl GridSpec {
    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= 1 && y >= 1 && (x as usize) <= self.cols && (y as usize) <= self.rows
    }

    pub fn index(&self, x: i64, y: i64) -> Option<VertexId> {
        if self.contains(x, y) {
            Some((y as usize - 1) * self.cols + (x as usize - 1))
        } else {
            None
        }
    }

    pub fn coords(&self, v: VertexId) -> (i64, i64) {
        debug_assert!(v < self.vertex_count());
        ((v % self.cols + 1) as i64, (v / self.cols + 1) as i64)
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    offsets: Vec<u32>,
    adjacency: Vec<u32>,
    grid: Option<GridSpec>,
}

impl Graph {
    /// The `rows x cols` grid graph: vertices adjacent iff their coordinates
    /// differ by one in exactly one axis.
    pub fn grid(rows: usize, cols: usize) -> Result<Self, GraphError> {
        Self::grid_with_limit(rows, cols, DEFAULT_VERTEX_LIMIT)
    }

    pub fn grid_with_limit(rows: usize, cols: usize, limit: usize) -> Result<Self, GraphError> {
        if rows == 0 || cols == 0 {
            return Err(GraphError::EmptyGrid { rows, cols });
        }
        let vertices = rows
            .checked_mul(cols)
            .ok_or(GraphError::TooLarge { vertices: usize::MAX, limit })?;
        if vertices > limit {
            return Err(GraphError::TooLarge { vertices, limit });
        }
        let spec = GridSpec { rows, cols };
        let mut offsets = Vec::with_capacity(vertices + 1);
        let mut adjacency = Vec::with_capacity(2 * (rows * (cols - 1) + cols * (rows - 1)));
        offsets.push(0);
        for v in 0..vertices {
            let (x, y) = spec.coords(v);
            for (nx, ny) in [(x, y - 1), (x - 1, y), (x + 1, y), (x, y + 1)] {
                if let Some(u) = spec.index(nx, ny) {
                    adjacency.push(u as u32);
                }
            }
            offsets.push(adjacency.len() as u32);
        }
        Ok(Graph { vertex_count: vertices, offsets, adjacency, grid: Some(spec) })
    }

    /// Builds from an explicit undirected edge list over `0..vertex_count`.
    /// Duplicate edges collapse; self-loops are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut cleaned: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count {
                return Err(GraphError::BadVertex { id: u, count: vertex_count });
            }
            if v >= vertex_count {
                return Err(GraphError::BadVertex { id: v, count: vertex_count });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: 0, id: u });
            }
            cleaned.push((u.min(v) as u32, u.max(v) as u32));
        }
        cleaned.sort_unstable();
        cleaned.dedup();
        let mut degree = vec![0u32; vertex_count];
        for &(u, v) in &cleaned {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0u32);
        for v in 0..vertex_count {
            offsets.push(offsets[v] + degree[v]);
        }
        let mut cursor: Vec<u32> = offsets[..vertex_count].to_vec();
        let mut adjacency = vec![0u32; 2 * cleaned.len()];
        for &(u, v) in &cleaned {
            adjacency[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            adjacency[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        let mut graph = Graph { vertex_count, offsets, adjacency, grid: None };
        graph.sort_neighbors();
        Ok(graph)
    }

    fn sort_neighbors(&mut self) {
        for v in 0..self.vertex_count {
            let lo = self.offsets[v] as usize;
            let hi = self.offsets[v + 1] as usize;
            self.adjacency[lo..hi].sort_unstable();
        }
    }

    /// Parses the `p V E` / `e u v` edge list format (1-based vertex ids).
    pub fn from_edge_list_text(text: &str) -> Result<Self, GraphError> {
        let mut vertex_count: Option<usize> = None;
        let mut declared_edges = 0usize;
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        let mut edge_lines = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let tag = parts.next().unwrap();
            match tag {
                "p" if vertex_count.is_none() => {
                    let v = parse_field(&mut parts, line, "vertex count")?;
                    let e = parse_field(&mut parts, line, "edge count")?;
                    if parts.next().is_some() {
                        return Err(GraphError::Parse { line, message: "trailing tokens after header".into() });
                    }
                    if v < 0 || e < 0 {
                        return Err(GraphError::Parse { line, message: "negative header counts".into() });
                    }
                    vertex_count = Some(v as usize);
                    declared_edges = e as usize;
                }
                "p" => {
                    return Err(GraphError::Parse { line, message: "duplicate header".into() });
                }
                "e" => {
                    let max = vertex_count.ok_or(GraphError::Parse {
                        line,
                        message: "edge before header".into(),
                    })?;
                    let u = parse_field(&mut parts, line, "edge endpoint")?;
                    let v = parse_field(&mut parts, line, "edge endpoint")?;
                    if parts.next().is_some() {
                        return Err(GraphError::Parse { line, message: "trailing tokens after edge".into() });
                    }
                    for id in [u, v] {
                        if id < 1 || id > max as i64 {
                            return Err(GraphError::VertexRange { line, id, max });
                        }
                    }
                    if u == v {
                        return Err(GraphError::SelfLoop { line, id: u as usize });
                    }
                    edge_lines += 1;
                    edges.push((u as usize - 1, v as usize - 1));
                }
                other => {
                    return Err(GraphError::Parse {
                        line,
                        message: format!("unknown record tag {other:?}"),
                    });
                }
            }
        }
        let vertex_count = vertex_count.ok_or(GraphError::Parse { line: 1, message: "missing header".into() })?;
        if edge_lines != declared_edges {
            return Err(GraphError::Parse {
                line: text.lines().count(),
                message: format!("header declares {declared_edges} edges, found {edge_lines}"),
            });
        }
        Self::from_edges(vertex_count, &edges)
    }

    /// Canonical edge list text: header, then `e u v` with `u < v`,
    /// ascending, 1-based, LF line endings.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.vertex_count, self.edge_count());
        for v in 0..self.vertex_count {
            for &u in self.neighbors(v) {
                let u = u as usize;
                if v < u {
                    out.push_str(&format!("e {} {}\n", v + 1, u + 1));
                }
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        let lo = self.offsets[v] as usize;
        let hi = self.offsets[v + 1] as usize;
        &self.adjacency[lo..hi]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn grid_spec(&self) -> Option<&GridSpec> {
        self.grid.as_ref()
    }

    /// Lattice coordinates of a grid vertex.
    pub fn coords(&self, v: VertexId) -> Result<HalfPoint, GraphError> {
        let spec = self.grid.as_ref().ok_or(GraphError::NotAGrid)?;
        if v >= self.vertex_count {
            return Err(GraphError::BadVertex { id: v, count: self.vertex_count });
        }
        let (x, y) = spec.coords(v);
        Ok(HalfPoint::lattice(x, y))
    }

    /// Grid vertex at a lattice point.
    pub fn vertex_at(&self, p: HalfPoint) -> Result<VertexId, GraphError> {
        let spec = self.grid.as_ref().ok_or(GraphError::NotAGrid)?;
        let outside = GraphError::OutsideGrid { point: p, rows: spec.rows, cols: spec.cols };
        let (x, y) = p.lattice_coords().ok_or_else(|| outside.clone())?;
        spec.index(x, y).ok_or(outside)
    }

    /// Per-vertex adjacency bitmasks, available for graphs of at most 64
    /// vertices.
    pub(crate) fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count > 64 {
            return None;
        }
        let mut masks = vec![0u64; self.vertex_count];
        for v in 0..self.vertex_count {
            for &u in self.neighbors(v) {
                masks[v] |= 1u64 << u;
            }
        }
        Some(masks)
    }
}

fn parse_field<'a>(
    parts: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<i64, GraphError> {
    let token = parts.next().ok_or_else(|| GraphError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| GraphError::Parse {
        line,
        message: format!("bad {what} {token:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn grid_counts_match_closed_forms() {
        for (m, n) in [(1, 4), (2, 2), (2, 5), (6, 11), (20, 20)] {
            let g = Graph::grid(m, n).unwrap();
            assert_eq!(g.vertex_count(), m * n);
            assert_eq!(g.edge_count(), m * (n - 1) + n * (m - 1));
        }
    }

    #[test]
    fn grid_adjacency_is_manhattan_distance_one() {
        for m in 1..=6usize {
            for n in 1..=6usize {
                let g = Graph::grid(m, n).unwrap();
                for v in 0..g.vertex_count() {
                    let (vx, vy) = g.grid_spec().unwrap().coords(v);
                    let nbrs: BTreeSet<usize> = g.neighbors(v).iter().map(|&u| u as usize).collect();
                    for u in 0..g.vertex_count() {
                        let (ux, uy) = g.grid_spec().unwrap().coords(u);
                        let touching = (vx - ux).abs() + (vy - uy).abs() == 1;
                        assert_eq!(nbrs.contains(&u), touching, "grid {m}x{n}: {v} vs {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn transposed_grids_are_isomorphic() {
        let g = Graph::grid(3, 5).unwrap();
        let t = Graph::grid(5, 3).unwrap();
        let map = |v: usize| -> usize {
            let (x, y) = g.grid_spec().unwrap().coords(v);
            t.grid_spec().unwrap().index(y, x).unwrap()
        };
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in 0..g.vertex_count() {
            for &u in g.neighbors(v) {
                let (a, b) = (map(v), map(u as usize));
                edges.insert((a.min(b), a.max(b)));
            }
        }
        let mut t_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in 0..t.vertex_count() {
            for &u in t.neighbors(v) {
                t_edges.insert((v.min(u as usize), v.max(u as usize)));
            }
        }
        assert_eq!(edges, t_edges);
    }

    #[test]
    fn vertex_limit_is_enforced() {
        assert!(matches!(
            Graph::grid_with_limit(100, 101, 10_000),
            Err(GraphError::TooLarge { .. })
        ));
        assert!(Graph::grid_with_limit(100, 100, 10_000).is_ok());
    }

    #[test]
    fn coordinate_round_trip() {
        let g = Graph::grid(6, 11).unwrap();
        for v in 0..g.vertex_count() {
            let p = g.coords(v).unwrap();
            assert_eq!(g.vertex_at(p).unwrap(), v);
        }
        assert!(g.vertex_at(HalfPoint::lattice(12, 1)).is_err());
        assert!(g.vertex_at(HalfPoint::halves(3, 3)).is_err());
    }

    #[test]
    fn edge_list_round_trip_is_canonical() {
        let g = Graph::grid(2, 3).unwrap();
        let text = g.to_edge_list_text();
        assert_eq!(text, "p 6 7\ne 1 2\ne 1 4\ne 2 3\ne 2 5\ne 3 6\ne 4 5\ne 5 6\n");
        let parsed = Graph::from_edge_list_text(&text).unwrap();
        assert_eq!(parsed.to_edge_list_text(), text);
    }

    #[test]
    fn edge_list_parser_reports_defects() {
        let dup = "p 3 3\ne 1 2\ne 2 1\ne 2 3\n";
        let g = Graph::from_edge_list_text(dup).unwrap();
        assert_eq!(g.edge_count(), 2);

        assert!(matches!(
            Graph::from_edge_list_text("p 3 1\ne 1 4\n"),
            Err(GraphError::VertexRange { line: 2, id: 4, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list_text("p 3 1\ne 2 2\n"),
            Err(GraphError::SelfLoop { line: 2, id: 2 })
        ));
        assert!(matches!(
            Graph::from_edge_list_text("p 3 1\ne 1 two\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list_text("p 3 2\ne 1 2\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Graph::from_edge_list_text("e 1 2\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }
}
