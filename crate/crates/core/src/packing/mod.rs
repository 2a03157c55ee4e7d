//! Exact maximum packing of vertex-disjoint `Q_k` subcubes in `Γ_n`.
//!
//! The generic solver is a depth-first branch-and-bound. At every node it
//! takes the lowest-index undecided vertex `v` and branches, in canonical
//! pattern order, on each still-available pattern whose smallest vertex is
//! `v`, and finally on leaving `v` permanently uncovered. A pattern is
//! available while all of its vertices are undecided, so any pattern that
//! covers `v` at this point must have `v` as its minimum.
//!
//! The first bound is the volume bound `chosen + ⌊live / 2^k⌋`, where `live`
//! counts undecided vertices that still lie in at least one available pattern.
//! When it fails to prune, an integer dual certificate from the fractional
//! covering LP is tried (see `dual`); certificates stay valid in every
//! descendant because the set of available patterns only shrinks.
//! Subproblems are identified by their undecided vertex set; once a node's
//! subtree is exhausted, the best improvement it could offer is remembered
//! and reused when the same set is reached again.
//!
//! For `k = 1` a maximum matching (Hopcroft–Karp on the parity bipartition)
//! answers the question directly unless the fast path is disabled.

mod dual;
mod matching;
mod search;

use std::time::Duration;

use crate::error::{Error, Result};
use crate::graph::{build_cube, FibCube, Vertex};
use crate::subcubes::{enumerate_patterns, is_valid_pattern, pattern_vertices, SubcubePattern};

use matching::maximum_matching;
use search::Search;

/// Largest `n` accepted by [`max_packing`] and [`matching_max`].
pub const MAX_PACKING_DIM: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    /// Use maximum matching for `k = 1`.
    pub matching_fast_path: bool,
    /// Tighten the volume bound with LP dual certificates.
    pub lp_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit: None,
            node_limit: None,
            matching_fast_path: true,
            lp_bound: true,
        }
    }
}

impl SolverConfig {
    pub fn exhaustive() -> Self {
        SolverConfig {
            matching_fast_path: false,
            ..Self::default()
        }
    }

    /// Generic search with only the volume bound.
    pub fn volume_only() -> Self {
        SolverConfig {
            matching_fast_path: false,
            lp_bound: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.time_limit.is_some_and(|t| t.is_zero()) {
            return Err(Error::InvalidConfig("time limit must be positive".into()));
        }
        if self.node_limit == Some(0) {
            return Err(Error::InvalidConfig("node limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingResult {
    pub n: u32,
    pub k: u32,
    /// Chosen patterns in canonical order.
    pub chosen: Vec<SubcubePattern>,
    pub covered_count: u64,
    /// Vertices outside every chosen pattern, ascending.
    pub uncovered: Vec<Vertex>,
    /// False when a limit stopped the search before optimality was proven.
    pub optimal: bool,
    pub nodes_explored: u64,
}

impl PackingResult {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered.len()
    }
}

fn check_inputs(n: u32, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("hypercube order k must be at least 1".into()));
    }
    if n > MAX_PACKING_DIM {
        return Err(Error::Capacity {
            n,
            max: MAX_PACKING_DIM,
        });
    }
    Ok(())
}

/// Maximum family of vertex-disjoint `Q_k` in `Γ_n`.
pub fn max_packing(n: u32, k: u32, config: &SolverConfig) -> Result<PackingResult> {
    check_inputs(n, k)?;
    config.validate()?;
    let cube = build_cube(n)?;
    if k == 1 && config.matching_fast_path {
        return Ok(packing_from_matching(&cube));
    }
    let patterns = enumerate_patterns(n, k)?;
    // Recursion depth is bounded by the vertex count.
    let stack = (64 << 20) + cube.len() * 512;
    let config = config.clone();
    let outcome = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .name("packing-search".into())
            .stack_size(stack)
            .spawn_scoped(scope, || Search::new(&cube, k, &patterns, &config).run())
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    });
    Ok(assemble(
        &cube,
        k,
        outcome.chosen,
        outcome.optimal,
        outcome.nodes,
    ))
}

fn assemble(
    cube: &FibCube,
    k: u32,
    mut chosen: Vec<SubcubePattern>,
    optimal: bool,
    nodes_explored: u64,
) -> PackingResult {
    chosen.sort_unstable();
    let uncovered = cube
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !chosen.iter().any(|p| p.contains(v)))
        .collect();
    PackingResult {
        n: cube.dim(),
        k,
        covered_count: (chosen.len() as u64) << k,
        chosen,
        uncovered,
        optimal,
        nodes_explored,
    }
}

fn packing_from_matching(cube: &FibCube) -> PackingResult {
    let verts = cube.vertices();
    let chosen = maximum_matching(cube)
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (verts[a].bits(), verts[b].bits());
            SubcubePattern::from_masks(x ^ y, x & y, cube.dim())
        })
        .collect();
    assemble(cube, 1, chosen, true, 0)
}

/// Size of a maximum matching of `Γ_n`.
pub fn matching_max(n: u32) -> Result<u64> {
    check_inputs(n, 1)?;
    Ok(maximum_matching(&build_cube(n)?).len() as u64)
}

/// Checks a packing against `cube`: valid patterns of the right order, inside
/// the cube, pairwise disjoint, consistent counts, and an uncovered list equal
/// to the complement.
pub fn verify_packing(cube: &FibCube, result: &PackingResult) -> bool {
    if result.n != cube.dim() {
        return false;
    }
    let mut covered = vec![false; cube.len()];
    for p in &result.chosen {
        if !is_valid_pattern(p) || p.width() != cube.dim() || p.order() != result.k {
            return false;
        }
        let Ok(verts) = pattern_vertices(p) else {
            return false;
        };
        for v in verts {
            match cube.index_of(v) {
                Some(i) if !covered[i] => covered[i] = true,
                _ => return false,
            }
        }
    }
    if result.covered_count != (result.chosen.len() as u64) << result.k {
        return false;
    }
    let complement: Vec<Vertex> = cube
        .vertices()
        .iter()
        .zip(&covered)
        .filter(|(_, &c)| !c)
        .map(|(&v, _)| v)
        .collect();
    result.uncovered == complement
}
