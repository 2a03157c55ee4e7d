//! Depth-first branch-and-bound over canonical patterns.

use std::collections::HashMap;
use std::time::Instant;

use crate::graph::FibCube;
use crate::subcubes::{pattern_vertices, SubcubePattern};

use super::dual::{covering_weights, SCALE};
use super::SolverConfig;

/// Subproblem memo entries kept before the memo stops growing.
const MEMO_CAPACITY: usize = 1 << 22;

/// Above this many live vertices the covering LP is not solved: its cost
/// grows steeply and the simplex cannot be interrupted by a deadline.
const LP_MAX_LIVE: usize = 512;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Undecided,
    Covered,
    Skipped,
}

pub(crate) struct SearchOutcome {
    pub chosen: Vec<SubcubePattern>,
    pub optimal: bool,
    pub nodes: u64,
}

pub(crate) struct Search<'a> {
    k: u32,
    patterns: &'a [SubcubePattern],
    cand_vertices: Vec<Vec<u32>>,
    by_min: Vec<Vec<u32>>,
    by_vertex: Vec<Vec<u32>>,
    available: Vec<bool>,
    /// Available patterns through each vertex.
    support: Vec<u32>,
    mark: Vec<Mark>,
    /// Undecided vertices with non-zero support.
    live: usize,
    killed: Vec<u32>,
    chosen: Vec<u32>,
    best: Vec<u32>,
    root_bound: usize,
    /// Dual weightings valid for the current node, innermost last.
    certificates: Vec<Vec<u64>>,
    use_lp: bool,
    memo: HashMap<Vec<u64>, u32>,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    aborted: bool,
    done: bool,
}

impl<'a> Search<'a> {
    pub fn new(
        cube: &FibCube,
        k: u32,
        patterns: &'a [SubcubePattern],
        config: &SolverConfig,
    ) -> Self {
        let count = cube.len();
        let mut cand_vertices = Vec::with_capacity(patterns.len());
        let mut by_min = vec![Vec::new(); count];
        let mut by_vertex = vec![Vec::new(); count];
        let mut support = vec![0u32; count];
        for (id, p) in patterns.iter().enumerate() {
            let verts: Vec<u32> = pattern_vertices(p)
                .expect("enumerated patterns are valid")
                .into_iter()
                .map(|v| cube.index_of(v).expect("pattern lies in the cube") as u32)
                .collect();
            by_min[verts[0] as usize].push(id as u32);
            for &u in &verts {
                by_vertex[u as usize].push(id as u32);
                support[u as usize] += 1;
            }
            cand_vertices.push(verts);
        }
        let live = support.iter().filter(|&&s| s > 0).count();
        Search {
            k,
            patterns,
            cand_vertices,
            by_min,
            by_vertex,
            available: vec![true; patterns.len()],
            support,
            mark: vec![Mark::Undecided; count],
            live,
            killed: Vec::new(),
            chosen: Vec::new(),
            best: Vec::new(),
            root_bound: live >> k,
            certificates: Vec::new(),
            use_lp: config.lp_bound,
            memo: HashMap::new(),
            nodes: 0,
            node_limit: config.node_limit,
            deadline: config.time_limit.map(|t| Instant::now() + t),
            aborted: false,
            done: false,
        }
    }

    pub fn run(mut self) -> SearchOutcome {
        if self.use_lp {
            if let Some(weights) = self.fresh_certificate() {
                self.root_bound = self.root_bound.min(self.certified_gain(&weights));
                self.certificates.push(weights);
            }
        }
        self.descend(0);
        SearchOutcome {
            chosen: self
                .best
                .iter()
                .map(|&id| self.patterns[id as usize])
                .collect(),
            optimal: !self.aborted,
            nodes: self.nodes,
        }
    }

    fn kill(&mut self, id: u32) {
        self.available[id as usize] = false;
        self.killed.push(id);
        for &u in &self.cand_vertices[id as usize] {
            let s = &mut self.support[u as usize];
            *s -= 1;
            if *s == 0 && self.mark[u as usize] == Mark::Undecided {
                self.live -= 1;
            }
        }
    }

    fn kill_through(&mut self, u: u32) {
        for t in 0..self.by_vertex[u as usize].len() {
            let id = self.by_vertex[u as usize][t];
            if self.available[id as usize] {
                self.kill(id);
            }
        }
    }

    fn revive_to(&mut self, trail: usize) {
        while self.killed.len() > trail {
            let id = self.killed.pop().expect("trail is non-empty");
            self.available[id as usize] = true;
            for &u in &self.cand_vertices[id as usize] {
                let s = &mut self.support[u as usize];
                if *s == 0 && self.mark[u as usize] == Mark::Undecided {
                    self.live += 1;
                }
                *s += 1;
            }
        }
    }

    fn is_live(&self, u: usize) -> bool {
        self.mark[u] == Mark::Undecided && self.support[u] > 0
    }

    fn certified_gain(&self, weights: &[u64]) -> usize {
        let total: u64 = (0..self.mark.len())
            .filter(|&u| self.is_live(u))
            .map(|u| weights[u])
            .sum();
        (total / SCALE) as usize
    }

    /// Solves the covering LP of the current residual problem.
    fn fresh_certificate(&self) -> Option<Vec<u64>> {
        if self.live > LP_MAX_LIVE {
            return None;
        }
        let live: Vec<u32> = (0..self.mark.len())
            .filter(|&u| self.is_live(u))
            .map(|u| u as u32)
            .collect();
        let available = (0..self.patterns.len())
            .filter(|&id| self.available[id])
            .map(|id| self.cand_vertices[id].as_slice());
        covering_weights(self.mark.len(), &live, available)
    }

    fn memo_key(&self, from: usize) -> Vec<u64> {
        let mut key = Vec::with_capacity((self.mark.len() - from) / 64 + 2);
        key.push(from as u64);
        for chunk in self.mark[from..].chunks(64) {
            let mut word = 0u64;
            for (i, m) in chunk.iter().enumerate() {
                if *m == Mark::Undecided {
                    word |= 1 << i;
                }
            }
            key.push(word);
        }
        key
    }

    fn out_of_budget(&self) -> bool {
        if self.node_limit.is_some_and(|limit| self.nodes >= limit) {
            return true;
        }
        self.deadline.is_some_and(|deadline| Instant::now() >= deadline)
    }

    /// Returns true when the node can be discarded by a dual certificate.
    /// May push one certificate, which the caller pops.
    fn prune_by_certificate(&mut self) -> (bool, bool) {
        let best = self.best.len();
        if let Some(weights) = self.certificates.last() {
            if self.chosen.len() + self.certified_gain(weights) <= best {
                return (true, false);
            }
        }
        if !self.use_lp {
            return (false, false);
        }
        let Some(weights) = self.fresh_certificate() else {
            return (false, false);
        };
        let pruned = self.chosen.len() + self.certified_gain(&weights) <= best;
        if pruned {
            return (true, false);
        }
        self.certificates.push(weights);
        (false, true)
    }

    /// Explores the subtree whose lowest undecided vertex is at or after `from`.
    fn descend(&mut self, from: usize) {
        if self.done {
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.best.len() >= self.root_bound {
                self.done = true;
                return;
            }
        }
        if self.chosen.len() + (self.live >> self.k) <= self.best.len() {
            return;
        }
        let Some(v) = (from..self.mark.len()).find(|&i| self.mark[i] == Mark::Undecided) else {
            return;
        };
        if self.out_of_budget() {
            self.aborted = true;
            self.done = true;
            return;
        }
        self.nodes += 1;

        let key = self.memo_key(v);
        if let Some(&gain) = self.memo.get(&key) {
            if self.chosen.len() + gain as usize <= self.best.len() {
                return;
            }
        }
        let (pruned, pushed) = self.prune_by_certificate();
        if pruned {
            return;
        }

        self.branch(v);

        if pushed {
            self.certificates.pop();
        }
        if self.done {
            return;
        }
        if self.memo.len() < MEMO_CAPACITY || self.memo.contains_key(&key) {
            let gain = (self.best.len() - self.chosen.len()) as u32;
            let entry = self.memo.entry(key).or_insert(gain);
            *entry = (*entry).min(gain);
        }
    }

    fn branch(&mut self, v: usize) {
        for i in 0..self.by_min[v].len() {
            let id = self.by_min[v][i];
            if !self.available[id as usize] {
                continue;
            }
            let trail = self.killed.len();
            let verts = self.cand_vertices[id as usize].clone();
            for &u in &verts {
                self.mark[u as usize] = Mark::Covered;
                self.live -= 1;
            }
            for &u in &verts {
                self.kill_through(u);
            }

            self.chosen.push(id);
            self.descend(v + 1);
            self.chosen.pop();

            self.revive_to(trail);
            for &u in &verts {
                self.mark[u as usize] = Mark::Undecided;
                self.live += 1;
            }
            if self.done {
                return;
            }
        }

        let trail = self.killed.len();
        if self.support[v] > 0 {
            self.live -= 1;
        }
        self.mark[v] = Mark::Skipped;
        self.kill_through(v as u32);
        self.descend(v + 1);
        self.revive_to(trail);
        self.mark[v] = Mark::Undecided;
        if self.support[v] > 0 {
            self.live += 1;
        }
    }
}
