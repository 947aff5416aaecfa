//! b-colorings of `Q_n^p` and `H_{n,q}^p`.

mod coloring;
mod coset;
mod graph;
mod singleton;
mod solver;
mod witness;

pub use coloring::{every_vertex_dominates, validate_coloring, BColorCertificate, Coloring};
pub use coset::{
    coset_color, coset_coloring, coset_coloring_hypercube, verify_coset_bcoloring, CosetVerification,
    MAX_COSET_VERTICES,
};
pub use graph::{GraphKind, HammingVertex, PowerGraph};
pub use singleton::{singleton_certificate, SingletonReport};
pub use solver::{
    exact_b_chromatic, exact_b_chromatic_dense, greedy_b_coloring, Budget, DenseGraph, SolveOptions,
    SolveOutcome, SolveStatus, MAX_SOLVER_VERTICES,
};
pub use witness::{WitnessDoc, MAX_WITNESS_BYTES};
