//! Plane graphs given by a rotation system.
//!
//! A [`PlaneGraph`] is built from the clockwise cyclic order of neighbors at
//! every vertex. Each undirected edge `e` is split into two darts, `2e`
//! (from the smaller endpoint) and `2e + 1` (from the larger one). Faces are
//! never part of the input: they are traced with the usual next-dart rule,
//! i.e. from a dart `d` we step to its reverse and then to the successor of
//! that reverse in the rotation at its tail.
//!
//! Planarity of the embedding is checked through Euler's formula on every
//! component, so a rotation system describing a higher-genus embedding is
//! rejected at construction time.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DartId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("graph has no vertices")]
    Empty,
    #[error("expected {expected} rotation lists, got {got}")]
    RotationCount { expected: usize, got: usize },
    #[error("vertex {vertex}: neighbor {neighbor} is not a vertex")]
    UnknownNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {vertex} has a loop")]
    Loop { vertex: VertexId },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {vertex} lists {neighbor}, but {neighbor} does not list {vertex}")]
    Asymmetric { vertex: VertexId, neighbor: VertexId },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("rotation system is not planar: component of vertex {vertex} has V - E + F = {euler}")]
    NotPlanar { vertex: VertexId, euler: i64 },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("cycle length bound must be 3 or 4, got {0}")]
    CycleLength(usize),
}

/// Read-only adjacency shared by the plane graph and the generator's
/// mutable working copy.
pub(crate) trait Adjacency {
    fn nbrs(&self, v: VertexId) -> &[VertexId];
    fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.nbrs(u).contains(&v)
    }
}

impl Adjacency for Vec<Vec<VertexId>> {
    fn nbrs(&self, v: VertexId) -> &[VertexId] {
        &self[v]
    }
}

/// A face: its boundary walk as a cyclic dart sequence.
///
/// The face of an isolated vertex has no darts; its vertex list still names
/// the vertex so that incidence queries stay total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    darts: Vec<DartId>,
    vertices: Vec<VertexId>,
}

impl Face {
    /// Number of edge traversals on the boundary; a cut-edge counts twice.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    pub fn darts(&self) -> &[DartId] {
        &self.darts
    }

    /// Boundary vertices in walk order (tails of the boundary darts).
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// True when the boundary walk visits pairwise distinct vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// A cycle of the underlying graph, listed as a closed vertex sequence
/// starting at the query vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as normalized `(min, max)` pairs, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let k = self.vertices.len();
        let mut out: Vec<_> = (0..k)
            .map(|i| ordered(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn shares_edge_with(&self, other: &Cycle) -> bool {
        let mine = self.edges();
        other.edges().iter().any(|e| mine.binary_search(e).is_ok())
    }
}

pub(crate) fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotation: Vec<Vec<VertexId>>,
    out_darts: Vec<Vec<DartId>>,
    dart_pos: Vec<usize>,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: Vec<Vec<(VertexId, EdgeId)>>,
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    vertex_faces: Vec<Vec<FaceId>>,
    component_of: Vec<usize>,
    component_count: usize,
}

/// Two plane graphs are equal when their rotation systems are; everything
/// else is derived from the rotations.
impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds a connected plane graph from per-vertex neighbor lists given in
    /// clockwise order.
    pub fn build_from_rotation(
        vertex_count: usize,
        rotations: Vec<Vec<VertexId>>,
    ) -> Result<Self, PlaneError> {
        if rotations.len() != vertex_count {
            return Err(PlaneError::RotationCount {
                expected: vertex_count,
                got: rotations.len(),
            });
        }
        Self::assemble(rotations, true)
    }

    /// Builds a plane graph from a straight-line drawing: the rotation at each
    /// vertex is the clockwise angular order of its neighbors. The drawing has
    /// to be crossing-free, otherwise the Euler check fails.
    pub fn from_drawing(
        points: &[(f64, f64)],
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, PlaneError> {
        let n = points.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                let (vertex, neighbor) = if u >= n { (v, u) } else { (u, v) };
                return Err(PlaneError::UnknownNeighbor { vertex, neighbor });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            let (x0, y0) = points[v];
            let angle = |w: &VertexId| {
                let (x, y) = points[*w];
                (y - y0).atan2(x - x0)
            };
            // Decreasing angle is clockwise.
            list.sort_by(|a, b| angle(b).total_cmp(&angle(a)).then(a.cmp(b)));
        }
        Self::assemble(adj, true)
    }

    pub(crate) fn assemble(
        rotation: Vec<Vec<VertexId>>,
        require_connected: bool,
    ) -> Result<Self, PlaneError> {
        let n = rotation.len();
        if n == 0 {
            return Err(PlaneError::Empty);
        }
        for (v, list) in rotation.iter().enumerate() {
            let mut seen = list.clone();
            seen.sort_unstable();
            for (i, &w) in seen.iter().enumerate() {
                if w >= n {
                    return Err(PlaneError::UnknownNeighbor { vertex: v, neighbor: w });
                }
                if w == v {
                    return Err(PlaneError::Loop { vertex: v });
                }
                if i > 0 && seen[i - 1] == w {
                    return Err(PlaneError::DuplicateNeighbor { vertex: v, neighbor: w });
                }
            }
        }
        for (v, list) in rotation.iter().enumerate() {
            for &w in list {
                if !rotation[w].contains(&v) {
                    return Err(PlaneError::Asymmetric { vertex: v, neighbor: w });
                }
            }
        }

        let mut edges: Vec<(VertexId, VertexId)> = rotation
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
            .collect();
        edges.sort_unstable();

        let mut edge_index: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            edge_index[u].push((v, e));
            edge_index[v].push((u, e));
        }
        for list in &mut edge_index {
            list.sort_unstable();
        }

        let lookup = |index: &[Vec<(VertexId, EdgeId)>], u: VertexId, v: VertexId| {
            let list = &index[u];
            list[list.binary_search_by_key(&v, |&(w, _)| w).expect("edge indexed")].1
        };

        let mut out_darts = vec![Vec::new(); n];
        let mut dart_pos = vec![0; 2 * edges.len()];
        for (v, list) in rotation.iter().enumerate() {
            for (i, &w) in list.iter().enumerate() {
                let e = lookup(&edge_index, v, w);
                let d = if v < w { 2 * e } else { 2 * e + 1 };
                out_darts[v].push(d);
                dart_pos[d] = i;
            }
        }

        let mut graph = PlaneGraph {
            rotation,
            out_darts,
            dart_pos,
            edges,
            edge_index,
            faces: Vec::new(),
            dart_face: Vec::new(),
            vertex_faces: Vec::new(),
            component_of: Vec::new(),
            component_count: 0,
        };
        graph.trace_faces();
        graph.label_components();

        if require_connected && graph.component_count > 1 {
            return Err(PlaneError::Disconnected {
                components: graph.component_count,
            });
        }
        graph.check_euler()?;
        Ok(graph)
    }

    fn trace_faces(&mut self) {
        let dart_count = 2 * self.edges.len();
        let mut dart_face = vec![usize::MAX; dart_count];
        let mut faces = Vec::new();
        for start in 0..dart_count {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                dart_face[d] = id;
                darts.push(d);
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            let vertices = darts.iter().map(|&d| self.tail(d)).collect();
            faces.push(Face { darts, vertices });
        }

        let n = self.rotation.len();
        let mut vertex_faces = vec![Vec::new(); n];
        for v in 0..n {
            if self.out_darts[v].is_empty() {
                vertex_faces[v].push(faces.len());
                faces.push(Face {
                    darts: Vec::new(),
                    vertices: vec![v],
                });
            } else {
                vertex_faces[v] = self.out_darts[v].iter().map(|&d| dart_face[d]).collect();
            }
        }
        self.faces = faces;
        self.dart_face = dart_face;
        self.vertex_faces = vertex_faces;
    }

    fn label_components(&mut self) {
        let n = self.rotation.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.rotation[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        self.component_of = comp;
        self.component_count = count;
    }

    fn check_euler(&self) -> Result<(), PlaneError> {
        let c = self.component_count;
        let mut chi = vec![0i64; c];
        let mut rep = vec![usize::MAX; c];
        for (v, &k) in self.component_of.iter().enumerate() {
            chi[k] += 1;
            rep[k] = rep[k].min(v);
        }
        for &(u, _) in &self.edges {
            chi[self.component_of[u]] -= 1;
        }
        for f in &self.faces {
            chi[self.component_of[f.vertices[0]]] += 1;
        }
        match chi.iter().position(|&x| x != 2) {
            Some(k) => Err(PlaneError::NotPlanar {
                vertex: rep[k],
                euler: chi[k],
            }),
            None => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `|V| + |E|`, the size measure of the reduction induction.
    pub fn element_count(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in clockwise rotation order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    /// Edges as `(u, v)` with `u < v`, indexed by edge id.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.edge_index.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Edges at `v` in clockwise order.
    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_darts[v].iter().map(|&d| d / 2)
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn tail(&self, d: DartId) -> VertexId {
        let (u, v) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.tail(d ^ 1)
    }

    pub fn twin(&self, d: DartId) -> DartId {
        d ^ 1
    }

    /// Next dart along the boundary walk of the face containing `d`.
    pub fn face_successor(&self, d: DartId) -> DartId {
        let t = d ^ 1;
        let h = self.tail(t);
        let out = &self.out_darts[h];
        out[(self.dart_pos[t] + 1) % out.len()]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    /// Face to the side of dart `d` that the boundary walk of `d` traces.
    pub fn dart_face(&self, d: DartId) -> FaceId {
        self.dart_face[d]
    }

    /// Faces around `v` in rotation order, one per corner; a face meeting `v`
    /// in several corners is repeated.
    pub fn incident_faces(&self, v: VertexId) -> Result<&[FaceId], PlaneError> {
        self.vertex_faces
            .get(v)
            .map(Vec::as_slice)
            .ok_or(PlaneError::UnknownVertex(v))
    }

    /// The two faces on either side of edge `e`; equal for a cut-edge.
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.dart_face[2 * e], self.dart_face[2 * e + 1])
    }

    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v]
    }

    /// All cycles of length at most `max_len` (3 or 4) through `v`, each
    /// listed once, starting at `v`.
    pub fn cycles_through(&self, v: VertexId, max_len: usize) -> Result<Vec<Cycle>, PlaneError> {
        if v >= self.vertex_count() {
            return Err(PlaneError::UnknownVertex(v));
        }
        if !(3..=4).contains(&max_len) {
            return Err(PlaneError::CycleLength(max_len));
        }
        Ok(short_cycles_through(self, v, max_len))
    }

    /// The subgraph obtained by deleting the given edges. The embedding is
    /// inherited, so the result stays plane; it may be disconnected.
    pub fn without_edges(&self, removed: &[(VertexId, VertexId)]) -> PlaneGraph {
        let mut drop: Vec<(VertexId, VertexId)> =
            removed.iter().map(|&(u, v)| ordered(u, v)).collect();
        drop.sort_unstable();
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, list)| {
                list.iter()
                    .copied()
                    .filter(|&w| drop.binary_search(&ordered(v, w)).is_err())
                    .collect()
            })
            .collect();
        PlaneGraph::assemble(rotation, false).expect("edge deletion keeps the embedding plane")
    }

    /// Vertices within graph distance `radius` of any of `sources`.
    pub fn ball(&self, sources: &[VertexId], radius: usize) -> Vec<VertexId> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if dist[v] == radius {
                continue;
            }
            for &w in &self.rotation[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        (0..self.vertex_count()).filter(|&v| dist[v] != usize::MAX).collect()
    }
}

impl Adjacency for PlaneGraph {
    fn nbrs(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }
    fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.has_edge(u, v)
    }
}

/// Cycles of length 3 and (if `max_len == 4`) 4 through `v`. A cycle
/// `v, a, .., b` is emitted only with `a < b`, so each appears once.
pub(crate) fn short_cycles_through<A: Adjacency>(g: &A, v: VertexId, max_len: usize) -> Vec<Cycle> {
    let mut nbrs: Vec<VertexId> = g.nbrs(v).to_vec();
    nbrs.sort_unstable();
    let mut out = Vec::new();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.adjacent(a, b) {
                out.push(Cycle {
                    vertices: vec![v, a, b],
                });
            }
        }
    }
    if max_len >= 4 {
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                let mut mids: Vec<VertexId> = g
                    .nbrs(a)
                    .iter()
                    .copied()
                    .filter(|&x| x != v && x != b && g.adjacent(x, b))
                    .collect();
                mids.sort_unstable();
                for x in mids {
                    out.push(Cycle {
                        vertices: vec![v, a, x, b],
                    });
                }
            }
        }
    }
    out
}
