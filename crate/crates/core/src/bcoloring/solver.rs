//! Exact b-chromatic number for graphs on at most 256 vertices.
//!
//! For each `k` from an upper bound downward, a restricted-growth backtracking
//! search colors vertices in BFS order. A partial coloring is abandoned when
//! some color can no longer receive a dominating vertex: a vertex can still
//! dominate only if its distinct neighbor colors plus its uncolored neighbors
//! reach `k - 1`. A b-coloring found greedily gives the lower end, so the
//! search never reports less than a known value.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::coloring::{validate_coloring, Coloring};
use super::graph::{GraphKind, PowerGraph};
use crate::bounds::bound_report;
use crate::error::{Error, Result};

pub const MAX_SOLVER_VERTICES: usize = 256;

const WORDS: usize = MAX_SOLVER_VERTICES / 64;
const UNCOLORED: u32 = u32::MAX;
const CLOCK_EVERY: u64 = 1 << 12;

type Row = [u64; WORDS];

/// Adjacency rows for a small graph.
#[derive(Clone, Debug)]
pub struct DenseGraph {
    len: usize,
    adj: Vec<Row>,
    nbrs: Vec<Vec<u16>>,
}

impl DenseGraph {
    pub fn from_edges(len: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if len > MAX_SOLVER_VERTICES {
            return Err(Error::Infeasible(format!(
                "exact solver handles at most {MAX_SOLVER_VERTICES} vertices, got {len}"
            )));
        }
        let mut adj = vec![[0u64; WORDS]; len];
        for &(u, v) in edges {
            if u >= len || v >= len {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v) as u64,
                    count: len as u64,
                });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u][v / 64] |= 1 << (v % 64);
            adj[v][u / 64] |= 1 << (u % 64);
        }
        let nbrs = adj
            .iter()
            .map(|row| (0..len).filter(|&u| row[u / 64] >> (u % 64) & 1 == 1).map(|u| u as u16).collect())
            .collect();
        Ok(Self { len, adj, nbrs })
    }

    pub fn from_power_graph(g: &PowerGraph) -> Result<Self> {
        let len = g.vertex_count();
        if len > MAX_SOLVER_VERTICES as u64 {
            return Err(Error::Infeasible(format!(
                "exact solver handles at most {MAX_SOLVER_VERTICES} vertices, {g} has {len}"
            )));
        }
        let mut edges = Vec::new();
        for v in 0..len {
            g.for_each_neighbor(v, |u| {
                if u > v {
                    edges.push((v as usize, u as usize));
                }
            })?;
        }
        Self::from_edges(len as usize, &edges)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Largest `m` such that at least `m` vertices have degree `>= m - 1`.
    pub fn m_degree(&self) -> usize {
        let mut deg: Vec<usize> = (0..self.len).map(|v| self.degree(v)).collect();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        (1..=self.len).take_while(|&m| deg[m - 1] + 1 >= m).last().unwrap_or(0)
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len];
        let mut order = Vec::with_capacity(self.len);
        for root in 0..self.len {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &u in &self.nbrs[v] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        queue.push_back(u as usize);
                    }
                }
            }
        }
        order
    }
}

/// Limits on a single solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 500_000_000,
            max_time: Duration::from_secs(45),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Cap the starting `k` with the closed-form upper bounds for `b(Q_n^p)`
    /// where they apply. Off by default so the solver stays independent of them.
    pub use_formula_bounds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Exact,
    /// The budget ran out; `value` is a lower bound and `upper` an upper bound.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub value: u32,
    pub upper: u32,
    pub start_k: u32,
    pub witness: Coloring,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SolveOutcome {
    pub fn is_exact(&self) -> bool {
        self.status == SolveStatus::Exact
    }

    /// `b = 4` or `b unknown >= 4 (<= 6)`.
    pub fn summary(&self) -> String {
        match self.status {
            SolveStatus::Exact => format!("b = {}", self.value),
            SolveStatus::Unknown => format!("b unknown >= {} (<= {})", self.value, self.upper),
        }
    }
}

struct Exhausted;

struct Search<'a> {
    g: &'a DenseGraph,
    k: usize,
    order: Vec<usize>,
    color: Vec<u32>,
    counts: Vec<u16>,
    distinct: Vec<u32>,
    uncolored_nbrs: Vec<u32>,
    used: usize,
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
    mark: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a DenseGraph, k: usize, order: Vec<usize>, node_limit: u64, deadline: Instant) -> Self {
        Self {
            g,
            k,
            order,
            color: vec![UNCOLORED; g.len],
            counts: vec![0; g.len * k],
            distinct: vec![0; g.len],
            uncolored_nbrs: (0..g.len).map(|v| g.degree(v) as u32).collect(),
            used: 0,
            nodes: 0,
            node_limit,
            deadline,
            mark: vec![false; k],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c as u32;
        for &u in &self.g.nbrs[v] {
            let u = u as usize;
            self.uncolored_nbrs[u] -= 1;
            let slot = &mut self.counts[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.distinct[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = UNCOLORED;
        for &u in &self.g.nbrs[v] {
            let u = u as usize;
            self.uncolored_nbrs[u] += 1;
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[u] -= 1;
            }
        }
    }

    /// Whether every color can still get a dominating vertex.
    fn viable(&mut self, remaining: usize) -> bool {
        let k = self.k;
        if k - self.used > remaining {
            return false;
        }
        self.mark[..self.used].iter_mut().for_each(|m| *m = false);
        let mut fresh_candidates = 0usize;
        for w in 0..self.g.len {
            let reach = (self.distinct[w] + self.uncolored_nbrs[w]) as usize + 1 >= k;
            match self.color[w] {
                UNCOLORED => {
                    if self.distinct[w] as usize >= k {
                        return false;
                    }
                    if reach {
                        fresh_candidates += 1;
                        let row = &self.counts[w * k..w * k + self.used];
                        for (m, &cnt) in self.mark[..self.used].iter_mut().zip(row) {
                            if cnt == 0 {
                                *m = true;
                            }
                        }
                    }
                }
                c if reach => self.mark[c as usize] = true,
                _ => {}
            }
        }
        fresh_candidates >= k - self.used && self.mark[..self.used].iter().all(|&m| m)
    }

    fn run(&mut self, pos: usize) -> Result<bool, Exhausted> {
        if pos == self.order.len() {
            return Ok(self.used == self.k);
        }
        let v = self.order[pos];
        let remaining = self.order.len() - pos - 1;
        let mut choices: Vec<usize> = Vec::with_capacity(self.used + 1);
        if self.used < self.k {
            choices.push(self.used);
        }
        choices.extend((0..self.used).filter(|&c| self.counts[v * self.k + c] == 0));
        for c in choices {
            self.nodes += 1;
            if self.nodes >= self.node_limit
                || (self.nodes.is_multiple_of(CLOCK_EVERY) && Instant::now() >= self.deadline)
            {
                return Err(Exhausted);
            }
            let fresh = c == self.used;
            if fresh {
                self.used += 1;
            }
            self.assign(v, c);
            let found = self.viable(remaining) && self.run(pos + 1)?;
            if found {
                return Ok(true);
            }
            self.unassign(v, c);
            if fresh {
                self.used -= 1;
            }
        }
        Ok(false)
    }
}

/// Proper first-fit coloring refined into a b-coloring: while some class has
/// no dominating vertex, each of its vertices moves to a color missing from
/// its neighborhood and the class is dropped.
pub fn greedy_b_coloring(g: &DenseGraph) -> Vec<u32> {
    let n = g.len;
    let mut color = vec![UNCOLORED; n];
    for v in g.bfs_order() {
        let mut taken = vec![false; n];
        for &u in &g.nbrs[v] {
            let c = color[u as usize];
            if c != UNCOLORED {
                taken[c as usize] = true;
            }
        }
        color[v] = taken.iter().position(|&t| !t).unwrap_or(0) as u32;
    }
    let mut k = color.iter().max().map_or(0, |&c| c + 1) as usize;
    loop {
        let mut seen = vec![vec![false; k]; n];
        for (row, nbrs) in seen.iter_mut().zip(&g.nbrs) {
            for &u in nbrs {
                row[color[u as usize] as usize] = true;
            }
        }
        let dominates = |v: usize| (0..k).all(|c| c == color[v] as usize || seen[v][c]);
        let Some(bad) = (0..k).find(|&c| !(0..n).any(|v| color[v] as usize == c && dominates(v))) else {
            return color;
        };
        for v in 0..n {
            if color[v] as usize == bad {
                let to = (0..k)
                    .find(|&c| c != bad && !seen[v][c])
                    .expect("a non-dominating vertex misses some color");
                color[v] = to as u32;
            }
        }
        let last = (k - 1) as u32;
        for c in color.iter_mut() {
            if *c == last {
                *c = bad as u32;
            }
        }
        k -= 1;
    }
}

/// Exact `b(G)` on a dense graph, starting the descent at `min(Δ+1, m(G), cap)`.
pub fn exact_b_chromatic_dense(g: &DenseGraph, budget: Budget, cap: Option<u32>) -> Result<SolveOutcome> {
    let started = Instant::now();
    let deadline = started + budget.max_time;
    let greedy = greedy_b_coloring(g);
    let lower = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut start = (g.max_degree() + 1).min(g.m_degree()) as u32;
    if let Some(cap) = cap {
        start = start.min(cap);
    }
    let start = start.max(lower);
    let order = g.bfs_order();
    let mut nodes = 0u64;
    let mut k = start;
    while k > lower {
        let mut search = Search::new(g, k as usize, order.clone(), budget.max_nodes.saturating_sub(nodes), deadline);
        let result = search.run(0);
        nodes += search.nodes;
        match result {
            Ok(true) => {
                let witness = Coloring::new(search.color, k)?;
                return Ok(SolveOutcome {
                    status: SolveStatus::Exact,
                    value: k,
                    upper: k,
                    start_k: start,
                    witness,
                    nodes,
                    elapsed: started.elapsed(),
                });
            }
            Ok(false) => k -= 1,
            Err(Exhausted) => {
                return Ok(SolveOutcome {
                    status: SolveStatus::Unknown,
                    value: lower,
                    upper: k,
                    start_k: start,
                    witness: Coloring::new(greedy, lower)?,
                    nodes,
                    elapsed: started.elapsed(),
                });
            }
        }
    }
    Ok(SolveOutcome {
        status: SolveStatus::Exact,
        value: lower,
        upper: lower,
        start_k: start,
        witness: Coloring::new(greedy, lower)?,
        nodes,
        elapsed: started.elapsed(),
    })
}

/// Exact `b(G)` for a power graph; the witness is re-checked with
/// [`validate_coloring`] before it is returned.
pub fn exact_b_chromatic(g: &PowerGraph, options: SolveOptions) -> Result<SolveOutcome> {
    let dense = DenseGraph::from_power_graph(g)?;
    let cap = match g.kind() {
        GraphKind::Hypercube { n } if options.use_formula_bounds && n >= 2 && g.p() >= 1 => {
            let report = bound_report(n, g.p().min(n))?;
            report
                .exact
                .or_else(|| report.best_upper())
                .map(|v| v.min(u32::MAX as u128) as u32)
        }
        _ => None,
    };
    let outcome = exact_b_chromatic_dense(&dense, options.budget, cap)?;
    let cert = validate_coloring(g, &outcome.witness)?;
    if !cert.valid_b {
        return Err(Error::Integrity(format!(
            "solver witness for {g} with {} colors is not a b-coloring",
            outcome.witness.k()
        )));
    }
    Ok(outcome)
}
