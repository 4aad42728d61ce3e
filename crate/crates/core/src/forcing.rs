//! The color-change engine.
//!
//! A black vertex with exactly one white neighbor forces that neighbor
//! black. [`closure`] applies the rule until it stalls; the fixed point does
//! not depend on the order forces are applied in, which
//! [`closure_with_order`] exists to exercise. A set is a zero forcing set
//! when its closure is everything, and a white set is a blocking set when
//! the closure of its complement is not.

use std::collections::BTreeSet;

use crate::bitset::VertexSet;
use crate::graph::{Graph, VertexId};

/// Black/white coloring of a graph's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorState {
    black: VertexSet,
}

impl ColorState {
    pub fn from_black(capacity: usize, black: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = VertexSet::new(capacity);
        for v in black {
            set.insert(v);
        }
        ColorState { black: set }
    }

    pub fn from_white(capacity: usize, white: impl IntoIterator<Item = VertexId>) -> Self {
        let mut state = Self::from_black(capacity, white);
        state.black = state.black.complement();
        state
    }

    pub fn from_black_set(black: VertexSet) -> Self {
        ColorState { black }
    }

    pub fn all_black(capacity: usize) -> Self {
        ColorState { black: VertexSet::full(capacity) }
    }

    pub fn black(&self) -> &VertexSet {
        &self.black
    }

    pub fn white(&self) -> VertexSet {
        self.black.complement()
    }

    pub fn is_black(&self, v: VertexId) -> bool {
        self.black.contains(v)
    }

    pub fn is_all_black(&self) -> bool {
        self.black.len() == self.black.capacity()
    }
}

/// The forces applied by a closure run, in order, as `(forcer, forced)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForceTrace {
    steps: Vec<(VertexId, VertexId)>,
}

impl ForceTrace {
    pub fn steps(&self) -> &[(VertexId, VertexId)] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

struct Engine<'g> {
    graph: &'g Graph,
    black: VertexSet,
    white_neighbors: Vec<u32>,
    ready: BTreeSet<VertexId>,
}

impl<'g> Engine<'g> {
    fn new(graph: &'g Graph, initial: &ColorState) -> Self {
        assert_eq!(
            initial.black.capacity(),
            graph.vertex_count(),
            "color state capacity must match the graph"
        );
        let black = initial.black.clone();
        let mut white_neighbors = vec![0u32; graph.vertex_count()];
        for v in 0..graph.vertex_count() {
            white_neighbors[v] = graph
                .neighbors(v)
                .iter()
                .filter(|&&u| !black.contains(u as usize))
                .count() as u32;
        }
        let ready = (0..graph.vertex_count())
            .filter(|&v| black.contains(v) && white_neighbors[v] == 1)
            .collect();
        Engine { graph, black, white_neighbors, ready }
    }

    /// Applies the force available at `v`; `v` must be in `ready`.
    fn force_from(&mut self, v: VertexId) -> (VertexId, VertexId) {
        debug_assert!(self.black.contains(v) && self.white_neighbors[v] == 1);
        let target = self
            .graph
            .neighbors(v)
            .iter()
            .map(|&u| u as usize)
            .find(|&u| !self.black.contains(u))
            .expect("ready vertex must have a white neighbor");
        self.black.insert(target);
        for &u in self.graph.neighbors(target) {
            let u = u as usize;
            self.white_neighbors[u] -= 1;
            if self.black.contains(u) {
                match self.white_neighbors[u] {
                    1 => {
                        self.ready.insert(u);
                    }
                    0 => {
                        self.ready.remove(&u);
                    }
                    _ => {}
                }
            }
        }
        if self.white_neighbors[target] == 1 {
            self.ready.insert(target);
        }
        (v, target)
    }

    fn finish(self) -> ColorState {
        ColorState { black: self.black }
    }
}

/// Runs the forcing rule to its fixed point, lowest-index forcer first.
pub fn closure(graph: &Graph, initial: &ColorState) -> (ColorState, ForceTrace) {
    let mut engine = Engine::new(graph, initial);
    let mut steps = Vec::new();
    while let Some(&v) = engine.ready.iter().next() {
        engine.ready.remove(&v);
        steps.push(engine.force_from(v));
    }
    (engine.finish(), ForceTrace { steps })
}

/// Runs the forcing rule to its fixed point, letting `pick` choose among the
/// currently applicable forcers: it receives the count of ready vertices and
/// must return an index below it.
pub fn closure_with_order(
    graph: &Graph,
    initial: &ColorState,
    mut pick: impl FnMut(usize) -> usize,
) -> (ColorState, ForceTrace) {
    let mut engine = Engine::new(graph, initial);
    let mut steps = Vec::new();
    while !engine.ready.is_empty() {
        let idx = pick(engine.ready.len());
        assert!(idx < engine.ready.len(), "pick returned {idx} of {}", engine.ready.len());
        let v = *engine.ready.iter().nth(idx).unwrap();
        engine.ready.remove(&v);
        steps.push(engine.force_from(v));
    }
    (engine.finish(), ForceTrace { steps })
}

/// True when no force applies to the state.
pub fn is_stalled(graph: &Graph, state: &ColorState) -> bool {
    state.black().iter().all(|v| {
        let white = graph
            .neighbors(v)
            .iter()
            .filter(|&&u| !state.is_black(u as usize))
            .count();
        white != 1
    })
}

/// True when starting all-black on `black` forces the entire graph.
pub fn is_zero_forcing_set(graph: &Graph, black: &VertexSet) -> bool {
    let (finished, _) = closure(graph, &ColorState::from_black_set(black.clone()));
    finished.is_all_black()
}

/// True when whitening exactly `white` survives the closure of its
/// complement, i.e. the complement fails to force the graph.
pub fn is_blocking_set(graph: &Graph, white: &VertexSet) -> bool {
    let (finished, _) = closure(graph, &ColorState::from_black_set(white.complement()));
    !finished.is_all_black()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        Graph::grid(1, n).unwrap()
    }

    #[test]
    fn single_end_forces_a_path() {
        let g = path(5);
        let (done, trace) = closure(&g, &ColorState::from_black(5, [0]));
        assert!(done.is_all_black());
        assert_eq!(trace.steps(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn middle_vertex_of_a_path_stalls() {
        let g = path(5);
        let initial = ColorState::from_black(5, [2]);
        let (done, trace) = closure(&g, &initial);
        assert!(!done.is_all_black());
        assert!(trace.is_empty());
        assert!(is_stalled(&g, &initial));
    }

    #[test]
    fn blocking_and_forcing_predicates() {
        let g = Graph::grid(2, 2).unwrap();
        let zf = ColorState::from_black(4, [0, 1]);
        assert!(is_zero_forcing_set(&g, zf.black()));

        let diagonal = ColorState::from_black(4, [0, 3]);
        assert!(is_blocking_set(&g, diagonal.black()));
        let single = ColorState::from_black(4, [0]);
        assert!(!is_blocking_set(&g, single.black()));
    }

    #[test]
    fn stalled_diagonal_produces_empty_trace() {
        let g = Graph::grid(2, 5).unwrap();
        let whites = [(1i64, 1i64), (2, 2), (4, 2), (5, 1)];
        let ids: Vec<usize> = whites
            .iter()
            .map(|&(x, y)| g.vertex_at(crate::geometry::HalfPoint::lattice(x, y)).unwrap())
            .collect();
        let state = ColorState::from_white(10, ids.iter().copied());
        let (done, trace) = closure(&g, &state);
        assert!(trace.is_empty());
        assert_eq!(done.black(), state.black());
        assert!(is_stalled(&g, &state));
    }

    fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
        let n = rng.gen_range(1..=max_vertices);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.3) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn closure_is_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let g = random_graph(&mut rng, 12);
            let n = g.vertex_count();
            let black: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let initial = ColorState::from_black(n, black);
            let (reference, _) = closure(&g, &initial);
            for _ in 0..8 {
                let mut order_rng = ChaCha8Rng::seed_from_u64(rng.gen());
                let (shuffled, _) =
                    closure_with_order(&g, &initial, |k| order_rng.gen_range(0..k));
                assert_eq!(shuffled.black(), reference.black());
            }
        }
    }

    proptest! {
        #[test]
        fn closure_is_monotone(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, 10);
            let n = g.vertex_count();
            let small: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
            let mut large = small.clone();
            for v in 0..n {
                if rng.gen_bool(0.2) {
                    large.push(v);
                }
            }
            let (small_done, _) = closure(&g, &ColorState::from_black(n, small));
            let (large_done, _) = closure(&g, &ColorState::from_black(n, large));
            prop_assert!(small_done.black().is_subset_of(large_done.black()));
        }

        #[test]
        fn closure_contains_start_and_is_idempotent(seed in 0u64..300) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(7919));
            let g = random_graph(&mut rng, 10);
            let n = g.vertex_count();
            let black: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
            let initial = ColorState::from_black(n, black);
            let (done, _) = closure(&g, &initial);
            prop_assert!(initial.black().is_subset_of(done.black()));
            prop_assert!(is_stalled(&g, &done));
            let (again, trace) = closure(&g, &done);
            prop_assert_eq!(again.black(), done.black());
            prop_assert!(trace.is_empty());
        }
    }
}
