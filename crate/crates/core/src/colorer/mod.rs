//! Constructive total 7-coloring.
//!
//! Repeatedly finds a reducible configuration, deletes its designated edges
//! and continues on the smaller graph. Once the graph is small (or nothing
//! reducible is left) it is colored exactly, and the deletions are undone
//! in reverse, each one repaired by the extension for its configuration.

pub mod extend;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{find_first_in_order, ConfigurationKind, ConfigurationMatch};
use crate::coloring::{exact_total_coloring, first_conflict_partial, Outcome, TotalColoring};
use crate::patterns::{hereditary_ok, hypothesis_report, HypothesisReport};
use crate::plane::{PlaneGraph, VertexId};

pub use extend::{branch_labels, removed_edges, PALETTE};

#[derive(Debug, Clone)]
pub struct ColorOptions {
    /// Kinds to look for, in order.
    pub order: Vec<ConfigurationKind>,
    /// Graphs with at most this many non-isolated vertices plus edges go to
    /// the exact solver.
    pub base_size: usize,
    /// Node budget of the exact solver at the base.
    pub base_budget: Option<u64>,
    /// Re-check the hereditary hypotheses on every intermediate graph.
    pub check_heredity: bool,
    /// Reject inputs outside the class. When off, any graph with maximum
    /// degree at most 6 is attempted.
    pub require_hypothesis: bool,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions {
            order: ConfigurationKind::ALL.to_vec(),
            base_size: 14,
            base_budget: Some(5_000_000),
            check_heredity: false,
            require_hypothesis: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    #[serde(rename = "match")]
    pub matched: ConfigurationMatch,
    pub removed: Vec<(VertexId, VertexId)>,
    /// Branch of the extension taken while unwinding.
    pub branch: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorRun {
    pub coloring: TotalColoring,
    /// Reductions in the order they were found.
    pub steps: Vec<ReductionStep>,
    /// Non-isolated vertices plus edges of the graph handed to the exact solver.
    pub base_elements: usize,
}

#[derive(Debug, Clone, Error)]
pub enum ColorError {
    #[error("input is outside the supported class")]
    Hypothesis(Box<HypothesisReport>),
    #[error("maximum degree {0} exceeds 6")]
    DegreeTooLarge(usize),
    #[error("extension of step {step} failed: {reason}")]
    Defect { step: usize, reason: String },
    #[error("base graph with {elements} elements could not be colored: {reason}")]
    Base { elements: usize, reason: String },
    #[error("intermediate graph at step {step} violates the hereditary hypotheses")]
    Heredity { step: usize },
}

/// Total 7-coloring of a graph in the class.
pub fn color7(g: &PlaneGraph) -> Result<TotalColoring, ColorError> {
    color7_with(g, &ColorOptions::default()).map(|run| run.coloring)
}

/// Accepted inputs: maximum degree 6 with all hypotheses, or maximum degree
/// at most 5 with the hereditary ones.
pub fn accepts(g: &PlaneGraph) -> Result<(), ColorError> {
    let report = hypothesis_report(g);
    if report.max_degree > 6 {
        return Err(ColorError::DegreeTooLarge(report.max_degree));
    }
    let hereditary = report.diamond_witness.is_none()
        && report.house_witness.is_none()
        && report.cycle_violations.is_empty();
    if hereditary {
        Ok(())
    } else {
        Err(ColorError::Hypothesis(Box::new(report)))
    }
}

pub fn color7_with(g: &PlaneGraph, opts: &ColorOptions) -> Result<ColorRun, ColorError> {
    if opts.require_hypothesis {
        accepts(g)?;
    } else if g.max_degree() > 6 {
        return Err(ColorError::DegreeTooLarge(g.max_degree()));
    }

    let mut levels: Vec<PlaneGraph> = Vec::new();
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut current = g.clone();
    while active_size(&current) > opts.base_size {
        let Some(m) = find_first_in_order(&current, &opts.order) else {
            break;
        };
        let removed = removed_edges(&current, &m);
        let next = current.without_edges(&removed);
        if opts.check_heredity && !hereditary_ok(&next) {
            return Err(ColorError::Heredity { step: steps.len() });
        }
        steps.push(ReductionStep {
            matched: m,
            removed,
            branch: "",
        });
        levels.push(std::mem::replace(&mut current, next));
    }

    let base_elements = active_size(&current);
    let mut coloring = match exact_total_coloring(&current, PALETTE, opts.base_budget) {
        Outcome::Found(c) => c,
        Outcome::NoneExists => {
            return Err(ColorError::Base {
                elements: base_elements,
                reason: "no total 7-coloring exists".into(),
            })
        }
        Outcome::Exhausted { nodes } => {
            return Err(ColorError::Base {
                elements: base_elements,
                reason: format!("solver budget exhausted after {nodes} nodes"),
            })
        }
    };

    for (i, parent) in levels.iter().enumerate().rev() {
        let mut lifted = lift(&current, parent, &coloring);
        let defect = |reason: String| ColorError::Defect { step: i, reason };
        steps[i].branch = extend::extend(parent, &mut lifted, &steps[i].matched).map_err(defect)?;
        match first_conflict_partial(parent, &lifted) {
            Ok(None) if lifted.is_complete() => {}
            Ok(None) => return Err(defect("extension left elements uncolored".into())),
            Ok(Some(conflict)) => return Err(defect(format!("extension produced {conflict:?}"))),
            Err(e) => return Err(defect(e.to_string())),
        }
        coloring = lifted;
        current = parent.clone();
    }

    Ok(ColorRun {
        coloring,
        steps,
        base_elements,
    })
}

fn active_size(g: &PlaneGraph) -> usize {
    (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).count() + g.edge_count()
}

/// Carries a coloring of `child` (same vertices, fewer edges) over to
/// `parent`; the edges missing from `child` stay uncolored.
fn lift(child: &PlaneGraph, parent: &PlaneGraph, c: &TotalColoring) -> TotalColoring {
    let mut out = TotalColoring::for_graph(parent, c.palette_size());
    for v in 0..parent.vertex_count() {
        out.set_vertex(v, c.vertex(v));
    }
    for (e, &(u, v)) in child.edges().iter().enumerate() {
        let pe = parent.edge_id(u, v).expect("child edges are parent edges");
        out.set_edge(pe, c.edge(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;

    fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        PlaneGraph::build_from_rotation(n, rot).unwrap()
    }

    #[test]
    fn long_cycle_is_reduced_then_extended() {
        let g = cycle(30);
        let run = color7_with(&g, &ColorOptions::default()).unwrap();
        assert_eq!(is_valid(&g, &run.coloring), Ok(true));
        assert!(!run.steps.is_empty());
        assert!(run.base_elements <= 14 || run.steps.is_empty());
        assert!(run.steps.iter().all(|s| !s.branch.is_empty()));
    }

    #[test]
    fn rejects_degree_seven() {
        let rot = std::iter::once((1..8).collect())
            .chain((1..8).map(|_| vec![0]))
            .collect();
        let g = PlaneGraph::build_from_rotation(8, rot).unwrap();
        assert!(matches!(color7(&g), Err(ColorError::DegreeTooLarge(7))));
    }

    #[test]
    fn rejects_diamond() {
        let g = PlaneGraph::from_drawing(
            &[(0.0, 1.0), (-1.0, 0.0), (1.0, 0.0), (0.0, -1.0)],
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert!(matches!(color7(&g), Err(ColorError::Hypothesis(_))));
    }
}
