//! Masters of 2-vertices.
//!
//! The edges joining a 2-vertex to a 6-vertex span a subgraph which, in a
//! reducible-configuration-free graph, is a forest whose leaves are all
//! 6-vertices. Such a forest has a matching covering every 2-vertex; the
//! 6-vertex matched to a 2-vertex is its master.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::plane::{PlaneGraph, VertexId};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MasterAssignment {
    /// 2-vertex → master.
    pub masters: BTreeMap<VertexId, VertexId>,
}

impl MasterAssignment {
    pub fn master_of(&self, v: VertexId) -> Option<VertexId> {
        self.masters.get(&v).copied()
    }

    pub fn is_master(&self, u: VertexId, v: VertexId) -> bool {
        self.master_of(v) == Some(u)
    }

    pub fn is_empty(&self) -> bool {
        self.masters.is_empty()
    }

    /// Checks that every pair is a 2–6 edge and no 6-vertex is used twice.
    pub fn check(&self, g: &PlaneGraph) -> Result<(), String> {
        let mut used = BTreeMap::new();
        for (&v, &m) in &self.masters {
            if v >= g.vertex_count() || m >= g.vertex_count() {
                return Err(format!("pair ({v}, {m}) names an unknown vertex"));
            }
            if g.degree(v) != 2 || g.degree(m) != 6 || !g.has_edge(v, m) {
                return Err(format!("pair ({v}, {m}) is not a 2-6 edge"));
            }
            if let Some(w) = used.insert(m, v) {
                return Err(format!("6-vertex {m} is master of both {w} and {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MasterError {
    #[error("2-6 subgraph component {component:?} contains a cycle")]
    Cycle { component: Vec<VertexId> },
    #[error("no matching of 2-6 component {component:?} covers 2-vertex {vertex}")]
    Unsaturated {
        component: Vec<VertexId>,
        vertex: VertexId,
    },
}

/// The strict assignment: fails on the first component that is not a tree
/// or whose greedy leaf matching leaves a 2-vertex uncovered.
pub fn master_assignment(g: &PlaneGraph) -> Result<MasterAssignment, MasterError> {
    let (assignment, failures) = assign(g);
    match failures.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(assignment),
    }
}

/// Best-effort assignment for auditing: components with cycles are matched
/// greedily as well, and 2-vertices that stay uncovered get no master. All
/// problems are returned alongside.
pub fn partial_master_assignment(g: &PlaneGraph) -> (MasterAssignment, Vec<MasterError>) {
    assign(g)
}

fn assign(g: &PlaneGraph) -> (MasterAssignment, Vec<MasterError>) {
    let n = g.vertex_count();
    let in_forest = |v: VertexId| g.degree(v) == 2 || g.degree(v) == 6;
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut list: Vec<VertexId> = match g.degree(v) {
                2 => g.neighbors(v).iter().copied().filter(|&w| g.degree(w) == 6).collect(),
                6 => g.neighbors(v).iter().copied().filter(|&w| g.degree(w) == 2).collect(),
                _ => Vec::new(),
            };
            list.sort_unstable();
            list
        })
        .collect();

    let mut assignment = MasterAssignment::default();
    let mut failures = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        // Components without a 2-vertex need no masters.
        if seen[s] || g.degree(s) != 2 {
            continue;
        }
        let mut component = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < component.len() {
            for &w in &adj[component[i]] {
                if !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
            i += 1;
        }
        component.sort_unstable();
        debug_assert!(component.iter().all(|&v| in_forest(v)));
        let edges: usize = component.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
        if edges >= component.len() {
            failures.push(MasterError::Cycle {
                component: component.clone(),
            });
        }
        match_component(g, &adj, &component, &mut assignment, &mut failures);
    }
    (assignment, failures)
}

/// Greedy matching: repeatedly take the smallest-id leaf and match it with
/// its only remaining neighbor. With no leaf left (only on cycles) the
/// smallest remaining 2-vertex takes its smallest free neighbor.
fn match_component(
    g: &PlaneGraph,
    adj: &[Vec<VertexId>],
    component: &[VertexId],
    assignment: &mut MasterAssignment,
    failures: &mut Vec<MasterError>,
) {
    let mut alive: BTreeMap<VertexId, Vec<VertexId>> =
        component.iter().map(|&v| (v, adj[v].clone())).collect();
    let mut uncovered = Vec::new();

    let remove = |alive: &mut BTreeMap<VertexId, Vec<VertexId>>, v: VertexId| {
        if let Some(nbrs) = alive.remove(&v) {
            for w in nbrs {
                if let Some(list) = alive.get_mut(&w) {
                    list.retain(|&x| x != v);
                }
            }
        }
    };

    loop {
        // Isolated leftovers: 6-vertices are simply done, 2-vertices are lost.
        let isolated: Vec<VertexId> = alive
            .iter()
            .filter(|(_, nbrs)| nbrs.is_empty())
            .map(|(&v, _)| v)
            .collect();
        for v in isolated {
            if g.degree(v) == 2 {
                uncovered.push(v);
            }
            alive.remove(&v);
        }
        if alive.is_empty() {
            break;
        }
        let pair = match alive.iter().find(|(_, nbrs)| nbrs.len() == 1) {
            Some((&leaf, nbrs)) => (leaf, nbrs[0]),
            None => {
                let (&two, nbrs) = alive
                    .iter()
                    .find(|(&v, _)| g.degree(v) == 2)
                    .expect("a leafless nonempty remainder contains a 2-vertex");
                (two, nbrs[0])
            }
        };
        let (two, six) = if g.degree(pair.0) == 2 { pair } else { (pair.1, pair.0) };
        assignment.masters.insert(two, six);
        remove(&mut alive, two);
        remove(&mut alive, six);
    }

    uncovered.sort_unstable();
    for vertex in uncovered {
        failures.push(MasterError::Unsaturated {
            component: component.to_vec(),
            vertex,
        });
    }
}
