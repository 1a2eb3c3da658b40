//! Detectors for the structural hypotheses: maximum degree, diamonds,
//! houses, and the short-cycle condition at 6-vertices.
//!
//! A diamond is `K4` minus an edge and a house is a 5-cycle with one chord,
//! i.e. a triangle glued along an edge to a quadrilateral. Both are looked
//! for as (not necessarily induced) subgraphs.

use serde::Serialize;
use thiserror::Error;

use crate::plane::{short_cycles_through, Adjacency, Cycle, PlaneGraph, VertexId};

/// Diamond witness `[x, y, a, b]`: `xy` is the shared edge and `a`, `b` are
/// both adjacent to `x` and `y`.
pub type DiamondWitness = [VertexId; 4];

/// House witness `[a, x, y, d, e]`: triangle `a x y` and quadrilateral
/// `x y d e` share the edge `xy`.
pub type HouseWitness = [VertexId; 5];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CycleViolation {
    /// Two distinct 4-cycles through the vertex sharing an edge.
    AdjacentFourCycles { first: Cycle, second: Cycle },
    /// Three distinct cycles through the vertex with sizes `{3,3,4}` or `{3,4,4}`.
    ThreeCycles { sizes: [usize; 3], cycles: [Cycle; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixVertexViolation {
    pub vertex: VertexId,
    pub violation: CycleViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub max_degree: usize,
    pub diamond_witness: Option<DiamondWitness>,
    pub house_witness: Option<HouseWitness>,
    pub cycle_violations: Vec<SixVertexViolation>,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("vertex {vertex} has degree {degree}, expected 6")]
    NotSixVertex { vertex: VertexId, degree: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

pub fn max_degree(g: &PlaneGraph) -> usize {
    g.max_degree()
}

pub fn contains_diamond(g: &PlaneGraph) -> Option<DiamondWitness> {
    diamond_with_spine_at(g, 0..g.vertex_count())
}

pub fn contains_house(g: &PlaneGraph) -> Option<HouseWitness> {
    house_with_base_at(g, 0..g.vertex_count())
}

/// Checks the short-cycle condition at a 6-vertex. Returns `Ok(None)` when
/// the vertex is fine and the violation otherwise.
pub fn six_vertex_cycle_ok(
    g: &PlaneGraph,
    v: VertexId,
) -> Result<Option<CycleViolation>, PatternError> {
    if v >= g.vertex_count() {
        return Err(PatternError::UnknownVertex(v));
    }
    if g.degree(v) != 6 {
        return Err(PatternError::NotSixVertex {
            vertex: v,
            degree: g.degree(v),
        });
    }
    Ok(cycle_violation_at(g, v))
}

pub fn hypothesis_report(g: &PlaneGraph) -> HypothesisReport {
    let max_degree = g.max_degree();
    let diamond_witness = contains_diamond(g);
    let house_witness = contains_house(g);
    let cycle_violations: Vec<_> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 6)
        .filter_map(|v| {
            cycle_violation_at(g, v).map(|violation| SixVertexViolation { vertex: v, violation })
        })
        .collect();
    let satisfied = max_degree == 6
        && diamond_witness.is_none()
        && house_witness.is_none()
        && cycle_violations.is_empty();
    HypothesisReport {
        max_degree,
        diamond_witness,
        house_witness,
        cycle_violations,
        satisfied,
    }
}

/// The hypotheses that pass to subgraphs: no diamond, no house, and the
/// cycle condition at every 6-vertex.
pub fn hereditary_ok(g: &PlaneGraph) -> bool {
    contains_diamond(g).is_none()
        && contains_house(g).is_none()
        && (0..g.vertex_count())
            .filter(|&v| g.degree(v) == 6)
            .all(|v| cycle_violation_at(g, v).is_none())
}

pub fn is_diamond(g: &PlaneGraph, w: &DiamondWitness) -> bool {
    let [x, y, a, b] = *w;
    distinct(w)
        && [(x, y), (x, a), (y, a), (x, b), (y, b)]
            .iter()
            .all(|&(p, q)| g.has_edge(p, q))
}

pub fn is_house(g: &PlaneGraph, w: &HouseWitness) -> bool {
    let [a, x, y, d, e] = *w;
    distinct(w)
        && [(a, x), (a, y), (x, y), (y, d), (d, e), (e, x)]
            .iter()
            .all(|&(p, q)| g.has_edge(p, q))
}

/// True when `c` is a cycle of `g` through its first vertex.
pub fn is_cycle(g: &PlaneGraph, c: &Cycle) -> bool {
    let k = c.len();
    k >= 3
        && distinct(&c.vertices)
        && (0..k).all(|i| g.has_edge(c.vertices[i], c.vertices[(i + 1) % k]))
}

fn distinct(xs: &[VertexId]) -> bool {
    let mut s = xs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// First diamond whose shared edge has an endpoint among `xs`.
pub(crate) fn diamond_with_spine_at<A: Adjacency>(
    g: &A,
    xs: impl IntoIterator<Item = VertexId>,
) -> Option<DiamondWitness> {
    for x in xs {
        let mut nx: Vec<VertexId> = g.nbrs(x).to_vec();
        nx.sort_unstable();
        for &y in &nx {
            let common: Vec<VertexId> = nx
                .iter()
                .copied()
                .filter(|&w| w != y && g.adjacent(w, y))
                .take(2)
                .collect();
            if common.len() == 2 {
                return Some([x, y, common[0], common[1]]);
            }
        }
    }
    None
}

/// First house in which some `x` from `xs` is an end of the shared edge.
pub(crate) fn house_with_base_at<A: Adjacency>(
    g: &A,
    xs: impl IntoIterator<Item = VertexId>,
) -> Option<HouseWitness> {
    for x in xs {
        let mut nx: Vec<VertexId> = g.nbrs(x).to_vec();
        nx.sort_unstable();
        for &y in &nx {
            for &a in &nx {
                if a == y || !g.adjacent(a, y) {
                    continue;
                }
                for &e in &nx {
                    if e == a || e == y {
                        continue;
                    }
                    let mut ny: Vec<VertexId> = g.nbrs(y).to_vec();
                    ny.sort_unstable();
                    if let Some(&d) = ny
                        .iter()
                        .find(|&&d| d != x && d != a && d != e && g.adjacent(d, e))
                    {
                        return Some([a, x, y, d, e]);
                    }
                }
            }
        }
    }
    None
}

/// Cycle-condition violation at `v`, if any. Three-cycle patterns are
/// reported before adjacent 4-cycles.
pub(crate) fn cycle_violation_at<A: Adjacency>(g: &A, v: VertexId) -> Option<CycleViolation> {
    let cycles = short_cycles_through(g, v, 4);
    let (tri, quad): (Vec<&Cycle>, Vec<&Cycle>) = cycles.iter().partition(|c| c.len() == 3);
    if tri.len() >= 2 && !quad.is_empty() {
        return Some(CycleViolation::ThreeCycles {
            sizes: [3, 3, 4],
            cycles: [tri[0].clone(), tri[1].clone(), quad[0].clone()],
        });
    }
    if !tri.is_empty() && quad.len() >= 2 {
        return Some(CycleViolation::ThreeCycles {
            sizes: [3, 4, 4],
            cycles: [tri[0].clone(), quad[0].clone(), quad[1].clone()],
        });
    }
    for (i, c) in quad.iter().enumerate() {
        if let Some(d) = quad[i + 1..].iter().find(|d| c.shares_edge_with(d)) {
            return Some(CycleViolation::AdjacentFourCycles {
                first: (*c).clone(),
                second: (*d).clone(),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let t = i as f64 * std::f64::consts::TAU / n as f64;
                (t.cos(), t.sin())
            })
            .collect()
    }

    /// Straight-line drawing with the vertices on a circle.
    fn on_circle(n: usize, edges: &[(usize, usize)]) -> PlaneGraph {
        PlaneGraph::from_drawing(&ring(n), edges).unwrap()
    }

    /// A hub at the origin (vertex 0) and `k` vertices on a circle.
    fn hub(k: usize, edges: &[(usize, usize)]) -> PlaneGraph {
        let mut pts = vec![(0.0, 0.0)];
        pts.extend(ring(k));
        PlaneGraph::from_drawing(&pts, edges).unwrap()
    }

    fn k4() -> PlaneGraph {
        PlaneGraph::from_drawing(
            &[(0.0, 2.0), (-2.0, -1.0), (2.0, -1.0), (0.0, 0.0)],
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    fn star(k: usize) -> PlaneGraph {
        hub(k, &(1..=k).map(|i| (0, i)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> PlaneGraph {
        on_circle(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn wheel(k: usize) -> PlaneGraph {
        let mut pts = vec![(0.0, 0.0)];
        let mut edges = Vec::new();
        for i in 0..k {
            let t = i as f64 * std::f64::consts::TAU / k as f64;
            pts.push((t.cos(), t.sin()));
            edges.push((0, i + 1));
            edges.push((i + 1, (i + 1) % k + 1));
        }
        PlaneGraph::from_drawing(&pts, &edges).unwrap()
    }

    #[test]
    fn maximum_degree_examples() {
        assert_eq!(max_degree(&k4()), 3);
        assert_eq!(max_degree(&star(6)), 6);
        assert_eq!(max_degree(&cycle(5)), 2);
    }

    #[test]
    fn diamond_examples() {
        let d = on_circle(4, &[(0, 1), (0, 3), (1, 3), (1, 2), (2, 3)]);
        let w = contains_diamond(&d).unwrap();
        assert!(is_diamond(&d, &w));
        let w = contains_diamond(&k4()).unwrap();
        assert!(is_diamond(&k4(), &w));
        assert_eq!(contains_diamond(&cycle(4)), None);
    }

    #[test]
    fn house_examples() {
        let h = on_circle(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let w = contains_house(&h).unwrap();
        assert!(is_house(&h, &w));
        assert_eq!(contains_house(&cycle(5)), None);
        assert_eq!(contains_house(&k4()), None);
    }

    #[test]
    fn six_vertex_examples() {
        match six_vertex_cycle_ok(&wheel(6), 0).unwrap() {
            Some(CycleViolation::ThreeCycles { sizes, .. }) => assert_eq!(sizes, [3, 3, 4]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(six_vertex_cycle_ok(&star(6), 0).unwrap(), None);
        // Three pendant triangles at a hub of degree 6.
        let fan = hub(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)]);
        assert_eq!(six_vertex_cycle_ok(&fan, 0).unwrap(), None);
        assert_eq!(
            six_vertex_cycle_ok(&k4(), 0),
            Err(PatternError::NotSixVertex { vertex: 0, degree: 3 })
        );
    }

    #[test]
    fn adjacent_four_cycles_without_triangles() {
        // K_{2,3} with extra pendants to raise one side to degree 6.
        let mut edges = vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        edges.extend((5..8).map(|p| (0, p)));
        let pts = [
            (0.0, 1.0),
            (0.0, -1.0),
            (-1.0, 0.0),
            (0.0, 0.0),
            (1.0, 0.0),
            (-0.5, 2.0),
            (0.0, 2.0),
            (0.5, 2.0),
        ];
        let g = PlaneGraph::from_drawing(&pts, &edges).unwrap();
        match six_vertex_cycle_ok(&g, 0).unwrap() {
            Some(CycleViolation::AdjacentFourCycles { first, second }) => {
                assert!(is_cycle(&g, &first) && is_cycle(&g, &second));
                assert!(first.shares_edge_with(&second));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports() {
        let r = hypothesis_report(&k4());
        assert!(!r.satisfied);
        assert_eq!(r.max_degree, 3);
        assert!(r.diamond_witness.is_some());
        assert!(hypothesis_report(&star(6)).satisfied);
    }
}
