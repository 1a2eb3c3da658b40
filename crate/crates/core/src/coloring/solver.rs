//! Exact total coloring by backtracking.
//!
//! Vertices and edges become the nodes of the total graph; a total
//! k-coloring is a proper k-coloring of that graph. The search picks the
//! uncolored element with the fewest remaining colors (ties: most uncolored
//! neighbors, then smallest index), tries colors in increasing order, and
//! prunes neighbors' domains as it goes. Colors that nothing uses yet are
//! interchangeable, so only the smallest of them is ever tried.

use thiserror::Error;

use super::{Color, ColorSet, TotalColoring, MAX_PALETTE};
use crate::plane::PlaneGraph;

/// Result of an exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    NoneExists,
    /// The node budget ran out before the search was decided.
    Exhausted { nodes: u64 },
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("palette size {0} unsupported")]
    Palette(usize),
}

/// Colors for `n` vertices followed by one color per edge.
pub type RawColoring = Vec<Color>;

/// Exact total coloring of the abstract graph on `0..n` with the given
/// edges. `budget` bounds the number of search nodes (`None`: unlimited).
pub fn solve_total(n: usize, edges: &[(usize, usize)], k: usize, budget: Option<u64>) -> Outcome<RawColoring> {
    let max_deg = {
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    };
    if k < max_deg + 1 || (k == 0 && n > 0) {
        return Outcome::NoneExists;
    }
    if k > MAX_PALETTE {
        // Greedy always succeeds with this many colors; stay in range anyway.
        return solve_total(n, edges, MAX_PALETTE, budget);
    }
    let total = n + edges.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut link = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let e = n + i;
        link(u, v);
        link(u, e);
        link(v, e);
        at[u].push(e);
        at[v].push(e);
    }
    for list in &at {
        for (i, &e) in list.iter().enumerate() {
            for &f in &list[i + 1..] {
                link(e, f);
            }
        }
    }
    let mut search = Search {
        adj,
        domain: vec![ColorSet::full(k); total],
        color: vec![0; total],
        usage: vec![0; k + 1],
        trail: Vec::new(),
        nodes: 0,
        budget,
        k,
    };
    match search.run(total) {
        Some(true) => Outcome::Found(search.color),
        Some(false) => Outcome::NoneExists,
        None => Outcome::Exhausted { nodes: search.nodes },
    }
}

struct Search {
    adj: Vec<Vec<usize>>,
    domain: Vec<ColorSet>,
    color: Vec<Color>,
    usage: Vec<u32>,
    trail: Vec<(usize, Color)>,
    nodes: u64,
    budget: Option<u64>,
    k: usize,
}

impl Search {
    /// `Some(found)` when decided, `None` when the budget ran out.
    fn run(&mut self, remaining: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        let x = self.select();
        let fresh = (1..=self.k as Color).find(|&c| self.usage[c as usize] == 0);
        for c in self.domain[x].iter() {
            if self.usage[c as usize] == 0 && Some(c) != fresh {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return None;
            }
            let mark = self.trail.len();
            self.color[x] = c;
            self.usage[c as usize] += 1;
            let mut wiped = false;
            for i in 0..self.adj[x].len() {
                let y = self.adj[x][i];
                if self.color[y] == 0 && self.domain[y].contains(c) {
                    self.domain[y].remove(c);
                    self.trail.push((y, c));
                    if self.domain[y].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped {
                match self.run(remaining - 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            while self.trail.len() > mark {
                let (y, c) = self.trail.pop().unwrap();
                self.domain[y].insert(c);
            }
            self.usage[c as usize] -= 1;
            self.color[x] = 0;
        }
        Some(false)
    }

    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (usize::MAX, 0usize);
        for x in 0..self.color.len() {
            if self.color[x] != 0 {
                continue;
            }
            let size = self.domain[x].len();
            if size > key.0 {
                continue;
            }
            let open = self.adj[x].iter().filter(|&&y| self.color[y] == 0).count();
            if size < key.0 || open > key.1 {
                key = (size, open);
                best = x;
            }
        }
        best
    }
}

/// Exact total k-coloring of a plane graph.
pub fn exact_total_coloring(g: &PlaneGraph, k: usize, budget: Option<u64>) -> Outcome<TotalColoring> {
    if k == 0 {
        return Outcome::NoneExists;
    }
    match solve_total(g.vertex_count(), g.edges(), k, budget) {
        Outcome::Found(raw) => {
            let mut c = TotalColoring::for_graph(g, k.min(MAX_PALETTE));
            let n = g.vertex_count();
            for v in 0..n {
                c.set_vertex(v, Some(raw[v]));
            }
            for e in 0..g.edge_count() {
                c.set_edge(e, Some(raw[n + e]));
            }
            Outcome::Found(c)
        }
        Outcome::NoneExists => Outcome::NoneExists,
        Outcome::Exhausted { nodes } => Outcome::Exhausted { nodes },
    }
}

/// Smallest k with a total k-coloring, searching upward from `Δ + 1`. The
/// budget applies to each k separately.
pub fn total_chromatic_number(g: &PlaneGraph, budget: Option<u64>) -> Result<usize, SolverError> {
    chromatic_from(g.vertex_count(), g.edges(), budget)
}

pub(crate) fn chromatic_from(n: usize, edges: &[(usize, usize)], budget: Option<u64>) -> Result<usize, SolverError> {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let start = deg.into_iter().max().unwrap_or(0) + 1;
    for k in start..=MAX_PALETTE {
        match solve_total(n, edges, k, budget) {
            Outcome::Found(_) => return Ok(k),
            Outcome::NoneExists => {}
            Outcome::Exhausted { nodes } => return Err(SolverError::BudgetExhausted { nodes }),
        }
    }
    Err(SolverError::Palette(MAX_PALETTE + 1))
}
