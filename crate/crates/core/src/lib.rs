//! Disjoint hypercube packings of Fibonacci cubes.
//!
//! * [`graph`]: Fibonacci numbers and explicit Fibonacci cubes `Γ_n`.
//! * [`sequences`]: exact `q_k(n)`, `P_k(n)` and the identities between them.
//! * [`poly`]: the per-residue polynomials of `P_k(n)`.
//! * [`subcubes`]: induced `Q_k` of `Γ_n` as `{0, 1, *}` patterns.
//! * [`packing`]: exact maximum packing solver used as an independent oracle.
//! * [`selftest`] and [`cli`]: the command-line surface.

pub mod cli;
pub mod error;
pub mod graph;
pub mod packing;
pub mod poly;
pub mod selftest;
pub mod sequences;
pub mod subcubes;

pub use error::{Error, Result};
pub use graph::{adjacent, build_cube, fib, FibCube, SequenceValue, Vertex};
pub use packing::{matching_max, max_packing, verify_packing, PackingResult, SolverConfig};
pub use poly::{derive_poly, eval_poly, table1, RationalPoly};
pub use sequences::{
    check_identity, coverage_ratio, fib_asymptotic_estimate, p_value, q_from_p, q_value,
    AsymptoticConstants, SequenceTable,
};
pub use subcubes::{
    cross_check_induced, enumerate_patterns, is_valid_pattern, pattern_vertices, SubcubePattern,
};
