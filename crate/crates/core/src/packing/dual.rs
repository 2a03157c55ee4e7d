//! Integer dual certificates for the packing bound.
//!
//! A weighting `w` of the vertices with `Σ_{u ∈ c} w_u ≥ SCALE` for every
//! available pattern `c` bounds any disjoint family of those patterns by
//! `⌊Σ w / SCALE⌋`: each chosen pattern consumes at least `SCALE` of the total
//! weight. The uniform weighting `SCALE / 2^k` is the volume bound. A better
//! weighting comes from the fractional covering LP; its floating solution is
//! rounded up to integers and repaired until every constraint holds exactly,
//! so the bound never depends on floating-point accuracy.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

/// Denominator of the integer weights.
pub(crate) const SCALE: u64 = 1 << 24;

/// Returns per-vertex weights (indexed like `live_vertices`' source space,
/// length `vertex_count`) satisfying every constraint in `patterns`, or `None`
/// when the LP could not be solved.
pub(crate) fn covering_weights<'a, I>(
    vertex_count: usize,
    live_vertices: &[u32],
    patterns: I,
) -> Option<Vec<u64>>
where
    I: Iterator<Item = &'a [u32]> + Clone,
{
    let mut weights = vec![0u64; vertex_count];
    if live_vertices.is_empty() {
        return Some(weights);
    }
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let mut var_of = vec![None; vertex_count];
    for &u in live_vertices {
        var_of[u as usize] = Some(problem.add_var(1.0, (0.0, 1.0)));
    }
    for verts in patterns.clone() {
        let terms: Vec<_> = verts
            .iter()
            .map(|&u| (var_of[u as usize].expect("available patterns use live vertices"), 1.0))
            .collect();
        problem.add_constraint(terms.as_slice(), ComparisonOp::Ge, 1.0);
    }
    let solution = problem.solve().ok()?.into_solution().ok()?;
    for &u in live_vertices {
        let y = solution.var_value_raw(var_of[u as usize].expect("registered above"));
        let scaled = (y.max(0.0) * SCALE as f64).ceil();
        weights[u as usize] = scaled.min(SCALE as f64) as u64;
    }
    // Exact repair: raise the heaviest vertex of any violated pattern.
    for verts in patterns {
        let total: u64 = verts.iter().map(|&u| weights[u as usize]).sum();
        if total < SCALE {
            let &heaviest = verts
                .iter()
                .max_by_key(|&&u| weights[u as usize])
                .expect("patterns are non-empty");
            weights[heaviest as usize] += SCALE - total;
        }
    }
    Some(weights)
}
