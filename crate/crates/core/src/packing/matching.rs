//! Maximum matching of `Γ_n`.
//!
//! `Γ_n` is bipartite (every edge changes the number of ones by one), so
//! Hopcroft–Karp on the even/odd weight split finds a maximum matching.

use std::collections::VecDeque;

use crate::graph::FibCube;

/// Maximum matching of `Γ_n` as pairs of vertex indices into the sorted cube.
pub(crate) fn maximum_matching(cube: &FibCube) -> Vec<(usize, usize)> {
    let verts = cube.vertices();
    // Left side: even weight. Every edge joins the two sides.
    let left: Vec<usize> = (0..verts.len()).filter(|&i| verts[i].weight().is_multiple_of(2)).collect();
    let mut right_slot = vec![usize::MAX; verts.len()];
    let mut right_count = 0;
    for (i, v) in verts.iter().enumerate() {
        if v.weight() % 2 == 1 {
            right_slot[i] = right_count;
            right_count += 1;
        }
    }
    let mut right_vertex = vec![0usize; right_count];
    for (i, &slot) in right_slot.iter().enumerate() {
        if slot != usize::MAX {
            right_vertex[slot] = i;
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
    let mut left_slot = vec![usize::MAX; verts.len()];
    for (slot, &i) in left.iter().enumerate() {
        left_slot[i] = slot;
    }
    for (a, b) in cube.edges() {
        let (l, r) = if left_slot[a] != usize::MAX { (a, b) } else { (b, a) };
        adj[left_slot[l]].push(right_slot[r]);
    }

    let matching = hopcroft_karp(&adj, right_count);
    let mut pairs: Vec<(usize, usize)> = matching
        .iter()
        .enumerate()
        .filter_map(|(l, m)| m.map(|r| (left[l], right_vertex[r])))
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Returns, for each left vertex, its matched right vertex.
pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let left_count = adj.len();
    let mut match_left = vec![FREE; left_count];
    let mut match_right = vec![FREE; right_count];
    let mut dist = vec![u32::MAX; left_count];

    loop {
        // Layer the graph from all free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left_count {
            if match_left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = u32::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_right[r];
                if next == FREE {
                    reachable_free = true;
                } else if dist[next] == u32::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !reachable_free {
            break;
        }

        // Vertex-disjoint shortest augmenting paths, iterative DFS.
        let mut cursor = vec![0usize; left_count];
        for start in 0..left_count {
            if match_left[start] != FREE {
                continue;
            }
            let mut path: Vec<usize> = vec![start];
            while let Some(&l) = path.last() {
                if cursor[l] >= adj[l].len() {
                    dist[l] = u32::MAX;
                    path.pop();
                    continue;
                }
                let r = adj[l][cursor[l]];
                cursor[l] += 1;
                let next = match_right[r];
                if next == FREE {
                    // Flip the path: each left vertex on it takes the right
                    // vertex its cursor last stepped through.
                    let mut r_cur = r;
                    while let Some(l_cur) = path.pop() {
                        let prev = match_left[l_cur];
                        match_left[l_cur] = r_cur;
                        match_right[r_cur] = l_cur;
                        r_cur = prev;
                    }
                    break;
                } else if dist[next] == dist[l] + 1 {
                    path.push(next);
                }
            }
        }
    }
    match_left
        .into_iter()
        .map(|r| (r != FREE).then_some(r))
        .collect()
}
