//! Total colorings: the partial/complete coloring value, validity checks,
//! the exact solver, and the list-coloring routines used by the extensions.

pub mod lists;
pub mod solver;

use serde::Serialize;
use thiserror::Error;

use crate::plane::{EdgeId, PlaneGraph, VertexId};
pub use lists::{list_edge_color_even_cycle, list_total_color_triangle, ColorSet, ListError};
pub use solver::{exact_total_coloring, total_chromatic_number, Outcome, SolverError};

/// Colors are `1..=k`.
pub type Color = u8;

/// Largest palette the bit-set representation supports.
pub const MAX_PALETTE: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", content = "id", rename_all = "snake_case")]
pub enum Element {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

/// Two adjacent or incident elements sharing a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Conflict {
    pub first: Element,
    pub second: Element,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring is partial: {0} is uncolored")]
    Partial(Element),
    #[error("{element} has color {color} outside 1..={k}")]
    OutOfPalette { element: Element, color: Color, k: usize },
    #[error("coloring covers {vertices} vertices and {edges} edges, graph has {n} and {m}")]
    Shape {
        vertices: usize,
        edges: usize,
        n: usize,
        m: usize,
    },
}

/// A possibly partial total coloring with palette `1..=k`. Edge colors are
/// indexed by the edge ids of the graph the coloring belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalColoring {
    k: usize,
    vertex: Vec<Option<Color>>,
    edge: Vec<Option<Color>>,
}

impl TotalColoring {
    /// The empty coloring for `n` vertices and `m` edges.
    pub fn empty(k: usize, n: usize, m: usize) -> Self {
        assert!((1..=MAX_PALETTE).contains(&k), "palette size {k} unsupported");
        TotalColoring {
            k,
            vertex: vec![None; n],
            edge: vec![None; m],
        }
    }

    pub fn for_graph(g: &PlaneGraph, k: usize) -> Self {
        Self::empty(k, g.vertex_count(), g.edge_count())
    }

    pub fn palette_size(&self) -> usize {
        self.k
    }

    pub fn palette(&self) -> ColorSet {
        ColorSet::full(self.k)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge.len()
    }

    pub fn vertex(&self, v: VertexId) -> Option<Color> {
        self.vertex[v]
    }

    pub fn edge(&self, e: EdgeId) -> Option<Color> {
        self.edge[e]
    }

    pub fn get(&self, x: Element) -> Option<Color> {
        match x {
            Element::Vertex(v) => self.vertex[v],
            Element::Edge(e) => self.edge[e],
        }
    }

    pub fn set_vertex(&mut self, v: VertexId, c: Option<Color>) {
        self.vertex[v] = c;
    }

    pub fn set_edge(&mut self, e: EdgeId, c: Option<Color>) {
        self.edge[e] = c;
    }

    pub fn set(&mut self, x: Element, c: Option<Color>) {
        match x {
            Element::Vertex(v) => self.vertex[v] = c,
            Element::Edge(e) => self.edge[e] = c,
        }
    }

    pub fn vertex_colors(&self) -> &[Option<Color>] {
        &self.vertex
    }

    pub fn edge_colors(&self) -> &[Option<Color>] {
        &self.edge
    }

    pub fn is_complete(&self) -> bool {
        self.vertex.iter().chain(&self.edge).all(Option::is_some)
    }

    /// First uncolored element, vertices before edges.
    pub fn first_uncolored(&self) -> Option<Element> {
        if let Some(v) = self.vertex.iter().position(Option::is_none) {
            return Some(Element::Vertex(v));
        }
        self.edge.iter().position(Option::is_none).map(Element::Edge)
    }

    /// Relabels every color through `perm`, where `perm[c]` is the new
    /// color of `c` (index 0 unused).
    pub fn permute(&mut self, perm: &[Color]) {
        for c in self.vertex.iter_mut().chain(self.edge.iter_mut()).flatten() {
            *c = perm[*c as usize];
        }
    }

    /// Colors on `v` and on its colored incident edges.
    pub fn colors_at(&self, g: &PlaneGraph, v: VertexId) -> ColorSet {
        let mut s = ColorSet::EMPTY;
        if let Some(c) = self.vertex[v] {
            s.insert(c);
        }
        for e in g.incident_edges(v) {
            if let Some(c) = self.edge[e] {
                s.insert(c);
            }
        }
        s
    }

    /// Palette colors absent from `v` and its incident edges.
    pub fn missing_at(&self, g: &PlaneGraph, v: VertexId) -> ColorSet {
        self.palette().difference(self.colors_at(g, v))
    }

    /// Colors currently forbidden for vertex `v`: its incident edges and
    /// its neighbors.
    pub fn blocked_for_vertex(&self, g: &PlaneGraph, v: VertexId) -> ColorSet {
        let mut s = ColorSet::EMPTY;
        for e in g.incident_edges(v) {
            if let Some(c) = self.edge[e] {
                s.insert(c);
            }
        }
        for &w in g.neighbors(v) {
            if let Some(c) = self.vertex[w] {
                s.insert(c);
            }
        }
        s
    }

    /// Colors currently forbidden for edge `e`: both ends and all edges
    /// meeting it.
    pub fn blocked_for_edge(&self, g: &PlaneGraph, e: EdgeId) -> ColorSet {
        let (u, v) = g.edges()[e];
        let mut s = ColorSet::EMPTY;
        for x in [u, v] {
            if let Some(c) = self.vertex[x] {
                s.insert(c);
            }
            for f in g.incident_edges(x) {
                if f != e {
                    if let Some(c) = self.edge[f] {
                        s.insert(c);
                    }
                }
            }
        }
        s
    }

    fn check_shape(&self, g: &PlaneGraph) -> Result<(), ColoringError> {
        if self.vertex.len() != g.vertex_count() || self.edge.len() != g.edge_count() {
            return Err(ColoringError::Shape {
                vertices: self.vertex.len(),
                edges: self.edge.len(),
                n: g.vertex_count(),
                m: g.edge_count(),
            });
        }
        Ok(())
    }
}

/// The lexicographically first conflict of a complete coloring, or `None`
/// when it is a proper total coloring.
pub fn first_conflict(g: &PlaneGraph, c: &TotalColoring) -> Result<Option<Conflict>, ColoringError> {
    c.check_shape(g)?;
    if let Some(x) = c.first_uncolored() {
        return Err(ColoringError::Partial(x));
    }
    first_conflict_partial(g, c)
}

/// Like [`first_conflict`], ignoring uncolored elements.
pub fn first_conflict_partial(
    g: &PlaneGraph,
    c: &TotalColoring,
) -> Result<Option<Conflict>, ColoringError> {
    c.check_shape(g)?;
    let k = c.palette_size();
    let elements = (0..g.vertex_count())
        .map(Element::Vertex)
        .chain((0..g.edge_count()).map(Element::Edge));
    for x in elements {
        if let Some(color) = c.get(x) {
            if color == 0 || color as usize > k {
                return Err(ColoringError::OutOfPalette { element: x, color, k });
            }
        }
    }

    let mut best: Option<Conflict> = None;
    let mut consider = |a: Element, b: Element| {
        if let (Some(x), Some(y)) = (c.get(a), c.get(b)) {
            if x == y {
                let (first, second) = if a < b { (a, b) } else { (b, a) };
                let found = Conflict { first, second, color: x };
                if best.is_none_or(|cur| (found.first, found.second) < (cur.first, cur.second)) {
                    best = Some(found);
                }
            }
        }
    };
    for v in 0..g.vertex_count() {
        let inc: Vec<EdgeId> = g.incident_edges(v).collect();
        for &w in g.neighbors(v) {
            if v < w {
                consider(Element::Vertex(v), Element::Vertex(w));
            }
        }
        for (i, &e) in inc.iter().enumerate() {
            consider(Element::Vertex(v), Element::Edge(e));
            for &f in &inc[i + 1..] {
                consider(Element::Edge(e), Element::Edge(f));
            }
        }
    }
    Ok(best)
}

/// True iff `c` is a complete proper total coloring of `g`.
pub fn is_valid(g: &PlaneGraph, c: &TotalColoring) -> Result<bool, ColoringError> {
    first_conflict(g, c).map(|x| x.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> PlaneGraph {
        PlaneGraph::build_from_rotation(2, vec![vec![1], vec![0]]).unwrap()
    }

    fn c3() -> PlaneGraph {
        PlaneGraph::build_from_rotation(3, vec![vec![2, 1], vec![0, 2], vec![1, 0]]).unwrap()
    }

    #[test]
    fn k2_examples() {
        let g = k2();
        let mut c = TotalColoring::for_graph(&g, 3);
        c.set_vertex(0, Some(1));
        c.set_vertex(1, Some(2));
        c.set_edge(0, Some(3));
        assert_eq!(is_valid(&g, &c), Ok(true));
        c.set_edge(0, Some(1));
        assert_eq!(
            first_conflict(&g, &c).unwrap(),
            Some(Conflict {
                first: Element::Vertex(0),
                second: Element::Edge(0),
                color: 1
            })
        );
    }

    #[test]
    fn c3_cyclic_shift_is_valid() {
        let g = c3();
        let mut c = TotalColoring::for_graph(&g, 3);
        for v in 0..3 {
            c.set_vertex(v, Some(v as Color + 1));
        }
        c.set_edge(g.edge_id(0, 1).unwrap(), Some(3));
        c.set_edge(g.edge_id(1, 2).unwrap(), Some(1));
        c.set_edge(g.edge_id(0, 2).unwrap(), Some(2));
        assert_eq!(is_valid(&g, &c), Ok(true));
    }

    #[test]
    fn partial_and_out_of_palette_are_errors() {
        let g = k2();
        let mut c = TotalColoring::for_graph(&g, 3);
        assert_eq!(is_valid(&g, &c), Err(ColoringError::Partial(Element::Vertex(0))));
        c.set_vertex(0, Some(4));
        c.set_vertex(1, Some(1));
        c.set_edge(0, Some(2));
        assert!(matches!(is_valid(&g, &c), Err(ColoringError::OutOfPalette { .. })));
    }

    #[test]
    fn missing_colors() {
        let g = c3();
        let mut c = TotalColoring::for_graph(&g, 4);
        c.set_vertex(0, Some(1));
        c.set_edge(g.edge_id(0, 1).unwrap(), Some(2));
        assert_eq!(c.missing_at(&g, 0).iter().collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(c.blocked_for_edge(&g, g.edge_id(0, 2).unwrap()).iter().collect::<Vec<_>>(), vec![1, 2]);
    }
}
