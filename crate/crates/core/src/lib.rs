//! Zero blocking numbers of grid graphs.
//!
//! A black vertex with exactly one white neighbor forces it black; a white
//! set whose complement fails to force the whole graph is a blocking set,
//! and the size of a largest failed zero forcing set is the vertex count
//! minus the smallest blocking set. This crate computes that minimum three
//! independent ways: an exhaustive solver over colorings, closed-form values
//! with an explicit witness construction, and staircase certificates that
//! check a claimed witness locally.
//!
//! Module map: [`forcing`] is the shared engine, [`graph`] the compressed
//! adjacency and grid plumbing, [`geometry`] exact half-integer lattice
//! primitives, [`solver`] the search, [`theory`] the closed forms and the
//! witness builder, and [`staircase`] the certificate checks.

pub mod bitset;
pub mod forcing;
pub mod geometry;
pub mod graph;
pub mod solver;
pub mod staircase;
pub mod theory;

pub use bitset::VertexSet;
pub use forcing::{
    closure, closure_with_order, is_blocking_set, is_stalled, is_zero_forcing_set, ColorState,
    ForceTrace,
};
pub use graph::{Graph, GraphError, GridSpec, VertexId};
pub use staircase::{
    build_staircase, certify_grid, check_lemma2, check_lemma3, check_prop4, check_prop5,
    check_prop6, check_prop7, compute_window, CertificateReport, CheckId, CheckOutcome, Side,
    SideReport, Staircase, StaircaseError, Window, WindowDir,
};

pub use theory::{
    blocking_number_formula, build_witness, lemma8_decompositions, lemma8_max_c, qr_params,
    upper_bound_bcc, FormulaParams, GapDecomposition, TheoryError, Witness,
};

pub use solver::{
    enumerate_min_blocking_sets, failed_zero_forcing_number, min_blocking_grid,
    min_blocking_number, zero_forcing_number, EnumerationResult, SearchBudget, SolveError,
    SolveResult,
};
