//! Reducible configurations: local structures that a smallest graph without
//! a total 7-coloring cannot contain.
//!
//! Every match carries its witness vertices in a fixed order per kind (see
//! [`ConfigurationKind`]) and, for face kinds, the face it sits on.

pub mod figure;
pub mod masters;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::plane::{FaceId, PlaneGraph, VertexId};
use figure::Layout;

pub use masters::{master_assignment, partial_master_assignment, MasterAssignment, MasterError};

/// Upper bound on the number of cycles reported for [`ConfigurationKind::TwoSixCycle`].
pub const TWO_SIX_CYCLE_LIMIT: usize = 4096;

/// Configuration kinds, in the order [`find_any_reducible`] tries them.
///
/// Witness orders:
/// - `LowEdge`: `[u, v]` for an edge with `d(u) <= 3` and `d(u) + d(v) <= 7`;
///   `u` is the endpoint of smaller degree (smaller id on ties).
/// - `TwoTwoOnFourFace`: the four boundary vertices of a 4-face with at least
///   two 2-vertices, in walk order from its smallest-id 2-vertex.
/// - `TriangleTwoMasters`: `[v1, v2, v3, u, w]` where `v1 v2 v3` is a 3-face,
///   `d(v1) = 2`, `d(v2) = 6`, `u` is another 2-neighbor of `v2` (not on the
///   face) and `w` is the other neighbor of `u`.
/// - `Face444`: the three vertices of a 3-face with all degrees 4, in walk
///   order from the smallest id.
/// - `Face3535`: a 4-face `[a, b, c, d]` with degrees 3, 5, 3, 5, starting at
///   its smaller 3-vertex.
/// - `SixVertexSixLow`: `[v, v1, ..]` for a 6-vertex whose neighbors all have
///   degree at most 3; `v1` is its smallest 2-neighbor and the other
///   neighbors follow in clockwise order after `v1`.
/// - `Fig2One`, `Fig2Two`, `Fig2Three`: one vertex per slot of the layouts
///   in [`figure`].
/// - `TwoSixCycle`: a cycle of edges each joining a 2-vertex and a 6-vertex,
///   `[x0, w0, x1, w1, ..]` starting at its smallest 6-vertex `x0`, toward
///   the smaller of the two 2-vertices next to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigurationKind {
    LowEdge,
    TwoTwoOnFourFace,
    TriangleTwoMasters,
    Face444,
    Face3535,
    SixVertexSixLow,
    #[serde(rename = "Fig2_1")]
    Fig2One,
    #[serde(rename = "Fig2_2")]
    Fig2Two,
    #[serde(rename = "Fig2_3")]
    Fig2Three,
    TwoSixCycle,
}

impl ConfigurationKind {
    pub const ALL: [ConfigurationKind; 10] = [
        ConfigurationKind::LowEdge,
        ConfigurationKind::TwoTwoOnFourFace,
        ConfigurationKind::TriangleTwoMasters,
        ConfigurationKind::Face444,
        ConfigurationKind::Face3535,
        ConfigurationKind::SixVertexSixLow,
        ConfigurationKind::Fig2One,
        ConfigurationKind::Fig2Two,
        ConfigurationKind::Fig2Three,
        ConfigurationKind::TwoSixCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigurationKind::LowEdge => "LowEdge",
            ConfigurationKind::TwoTwoOnFourFace => "TwoTwoOnFourFace",
            ConfigurationKind::TriangleTwoMasters => "TriangleTwoMasters",
            ConfigurationKind::Face444 => "Face444",
            ConfigurationKind::Face3535 => "Face3535",
            ConfigurationKind::SixVertexSixLow => "SixVertexSixLow",
            ConfigurationKind::Fig2One => "Fig2_1",
            ConfigurationKind::Fig2Two => "Fig2_2",
            ConfigurationKind::Fig2Three => "Fig2_3",
            ConfigurationKind::TwoSixCycle => "TwoSixCycle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn layout(self) -> Option<&'static Layout> {
        match self {
            ConfigurationKind::Fig2One => Some(&figure::FIG2_ONE),
            ConfigurationKind::Fig2Two => Some(&figure::FIG2_TWO),
            ConfigurationKind::Fig2Three => Some(&figure::FIG2_THREE),
            _ => None,
        }
    }
}

impl std::fmt::Display for ConfigurationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigurationMatch {
    pub kind: ConfigurationKind,
    pub vertices: Vec<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceId>,
}

impl ConfigurationMatch {
    /// Re-checks the witness against `g`.
    pub fn validate(&self, g: &PlaneGraph) -> bool {
        let w = &self.vertices;
        if w.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        let d = |v: VertexId| g.degree(v);
        match self.kind {
            ConfigurationKind::LowEdge => {
                w.len() == 2
                    && g.has_edge(w[0], w[1])
                    && d(w[0]) <= 3
                    && d(w[0]) + d(w[1]) <= 7
                    && (d(w[0]), w[0]) < (d(w[1]), w[1])
            }
            ConfigurationKind::TwoTwoOnFourFace => {
                self.on_face(g, 4)
                    && d(w[0]) == 2
                    && w.iter().filter(|&&v| d(v) == 2).count() >= 2
                    && w.iter().filter(|&&v| d(v) == 2).all(|&v| v >= w[0])
            }
            ConfigurationKind::TriangleTwoMasters => {
                w.len() == 5
                    && self.face.is_some_and(|f| {
                        let fv = g.face(f).vertices();
                        g.face(f).degree() == 3
                            && g.face(f).is_simple()
                            && w[..3].iter().all(|v| fv.contains(v))
                    })
                    && distinct(&w[..4])
                    && d(w[0]) == 2
                    && d(w[1]) == 6
                    && d(w[3]) == 2
                    && g.has_edge(w[1], w[3])
                    && g.has_edge(w[3], w[4])
                    && w[4] != w[1]
            }
            ConfigurationKind::Face444 => {
                self.on_face(g, 3) && w.iter().all(|&v| d(v) == 4) && w[0] == *w.iter().min().unwrap()
            }
            ConfigurationKind::Face3535 => {
                self.on_face(g, 4)
                    && [3, 5, 3, 5].iter().zip(w).all(|(&k, &v)| d(v) == k)
                    && w[0] < w[2]
            }
            ConfigurationKind::SixVertexSixLow => {
                if w.len() != 7 || d(w[0]) != 6 {
                    return false;
                }
                let rot = g.neighbors(w[0]);
                let Some(p) = rot.iter().position(|&x| x == w[1]) else {
                    return false;
                };
                let in_order = (0..6).all(|i| rot[(p + i) % 6] == w[1 + i]);
                let smallest_two = rot.iter().filter(|&&x| d(x) == 2).min() == Some(&w[1]);
                in_order && smallest_two && rot.iter().all(|&x| d(x) <= 3)
            }
            ConfigurationKind::Fig2One | ConfigurationKind::Fig2Two | ConfigurationKind::Fig2Three => {
                let layout = self.kind.layout().unwrap();
                w.len() == layout.len() && fits_layout(g, layout, w)
            }
            ConfigurationKind::TwoSixCycle => valid_two_six_cycle(g, w),
        }
    }

    /// Witness equals the boundary of `self.face`, which has `k` distinct
    /// vertices, read in walk order.
    fn on_face(&self, g: &PlaneGraph, k: usize) -> bool {
        let Some(f) = self.face else { return false };
        if f >= g.face_count() {
            return false;
        }
        let face = g.face(f);
        if face.degree() != k || !face.is_simple() || self.vertices.len() != k {
            return false;
        }
        let fv = face.vertices();
        let Some(p) = fv.iter().position(|&x| x == self.vertices[0]) else {
            return false;
        };
        (0..k).all(|i| fv[(p + i) % k] == self.vertices[i])
    }
}

fn distinct(xs: &[VertexId]) -> bool {
    let mut s = xs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

fn fits_layout(g: &PlaneGraph, layout: &Layout, w: &[VertexId]) -> bool {
    distinct(w)
        && (1..=6).all(|i| g.has_edge(w[0], w[i]))
        && layout.degrees.iter().all(|&(s, k)| g.degree(w[s]) == k)
        && layout.edges.iter().all(|&(a, b)| g.has_edge(w[a], w[b]))
        && layout.ascending.iter().all(|&(a, b)| w[a] < w[b])
}

fn valid_two_six_cycle(g: &PlaneGraph, w: &[VertexId]) -> bool {
    let k = w.len();
    if k < 4 || !k.is_multiple_of(2) || !distinct(w) {
        return false;
    }
    let sixes_ok = w.iter().step_by(2).all(|&x| g.degree(x) == 6);
    let twos_ok = w.iter().skip(1).step_by(2).all(|&x| g.degree(x) == 2);
    let closed = (0..k).all(|i| g.has_edge(w[i], w[(i + 1) % k]));
    let smallest = w.iter().step_by(2).all(|&x| x >= w[0]);
    sixes_ok && twos_ok && closed && smallest && w[1] < w[k - 1]
}

/// All matches of `kind`, in a deterministic order.
pub fn find_matches(g: &PlaneGraph, kind: ConfigurationKind) -> Vec<ConfigurationMatch> {
    let mut out = Vec::new();
    scan(g, kind, &mut |m| {
        out.push(m);
        true
    });
    out
}

/// First match in kind order, if any.
pub fn find_any_reducible(g: &PlaneGraph) -> Option<ConfigurationMatch> {
    find_first_in_order(g, &ConfigurationKind::ALL)
}

/// First match trying kinds in the given order.
pub fn find_first_in_order(
    g: &PlaneGraph,
    order: &[ConfigurationKind],
) -> Option<ConfigurationMatch> {
    order.iter().find_map(|&kind| first_match(g, kind))
}

pub fn first_match(g: &PlaneGraph, kind: ConfigurationKind) -> Option<ConfigurationMatch> {
    let mut found = None;
    scan(g, kind, &mut |m| {
        found = Some(m);
        false
    });
    found
}

/// Calls `emit` for each match until it returns `false`.
fn scan(g: &PlaneGraph, kind: ConfigurationKind, emit: &mut dyn FnMut(ConfigurationMatch) -> bool) {
    let mk = |vertices: Vec<VertexId>, face: Option<FaceId>| ConfigurationMatch { kind, vertices, face };
    let d = |v: VertexId| g.degree(v);
    match kind {
        ConfigurationKind::LowEdge => {
            for &(a, b) in g.edges() {
                let (u, v) = if (d(a), a) < (d(b), b) { (a, b) } else { (b, a) };
                if d(u) <= 3 && d(u) + d(v) <= 7 && !emit(mk(vec![u, v], None)) {
                    return;
                }
            }
        }
        ConfigurationKind::TwoTwoOnFourFace => {
            for (f, face) in g.faces().iter().enumerate() {
                if face.degree() != 4 || !face.is_simple() {
                    continue;
                }
                let fv = face.vertices();
                let twos: Vec<usize> = (0..4).filter(|&i| d(fv[i]) == 2).collect();
                if twos.len() < 2 {
                    continue;
                }
                let start = *twos.iter().min_by_key(|&&i| fv[i]).unwrap();
                let w = (0..4).map(|i| fv[(start + i) % 4]).collect();
                if !emit(mk(w, Some(f))) {
                    return;
                }
            }
        }
        ConfigurationKind::TriangleTwoMasters => {
            for (f, face) in g.faces().iter().enumerate() {
                if face.degree() != 3 || !face.is_simple() {
                    continue;
                }
                let fv = face.vertices();
                for i in 0..3 {
                    let v1 = fv[i];
                    if d(v1) != 2 {
                        continue;
                    }
                    for (v2, v3) in [(fv[(i + 1) % 3], fv[(i + 2) % 3]), (fv[(i + 2) % 3], fv[(i + 1) % 3])] {
                        if d(v2) != 6 {
                            continue;
                        }
                        let mut us: Vec<VertexId> = g
                            .neighbors(v2)
                            .iter()
                            .copied()
                            .filter(|&u| d(u) == 2 && u != v1 && u != v3)
                            .collect();
                        us.sort_unstable();
                        for u in us {
                            let w = other_neighbor(g, u, v2);
                            if !emit(mk(vec![v1, v2, v3, u, w], Some(f))) {
                                return;
                            }
                        }
                    }
                }
            }
        }
        ConfigurationKind::Face444 => {
            for (f, face) in g.faces().iter().enumerate() {
                if face.degree() == 3 && face.is_simple() && face.vertices().iter().all(|&v| d(v) == 4)
                    && !emit(mk(rotate_to_min(face.vertices()), Some(f))) {
                        return;
                    }
            }
        }
        ConfigurationKind::Face3535 => {
            for (f, face) in g.faces().iter().enumerate() {
                if face.degree() != 4 || !face.is_simple() {
                    continue;
                }
                let fv = face.vertices();
                let starts: Vec<usize> = (0..2)
                    .filter(|&s| (0..4).all(|i| d(fv[(s + i) % 4]) == [3, 5, 3, 5][i]))
                    .collect();
                if let Some(&s) = starts.first() {
                    let s = if fv[(s + 2) % 4] < fv[s] { s + 2 } else { s };
                    let w = (0..4).map(|i| fv[(s + i) % 4]).collect();
                    if !emit(mk(w, Some(f))) {
                        return;
                    }
                }
            }
        }
        ConfigurationKind::SixVertexSixLow => {
            for v in 0..g.vertex_count() {
                let rot = g.neighbors(v);
                if rot.len() != 6 || rot.iter().any(|&x| d(x) > 3) {
                    continue;
                }
                let Some(v1) = rot.iter().copied().filter(|&x| d(x) == 2).min() else {
                    continue;
                };
                let p = rot.iter().position(|&x| x == v1).unwrap();
                let mut w = vec![v];
                w.extend((0..6).map(|i| rot[(p + i) % 6]));
                if !emit(mk(w, None)) {
                    return;
                }
            }
        }
        ConfigurationKind::Fig2One | ConfigurationKind::Fig2Two | ConfigurationKind::Fig2Three => {
            let layout = kind.layout().unwrap();
            for v in 0..g.vertex_count() {
                if d(v) != 6 {
                    continue;
                }
                let mut slots = vec![v];
                if !place_slots(g, layout, &mut slots, &mut |w| emit(mk(w.to_vec(), None))) {
                    return;
                }
            }
        }
        ConfigurationKind::TwoSixCycle => two_six_cycles(g, &mut |w| emit(mk(w, None))),
    }
}

pub(crate) fn other_neighbor(g: &PlaneGraph, u: VertexId, not: VertexId) -> VertexId {
    *g.neighbors(u).iter().find(|&&x| x != not).expect("2-vertex has two neighbors")
}

fn rotate_to_min(vs: &[VertexId]) -> Vec<VertexId> {
    let k = vs.len();
    let p = (0..k).min_by_key(|&i| vs[i]).unwrap();
    (0..k).map(|i| vs[(p + i) % k]).collect()
}

/// Backtracking over the layout slots after the center. Neighbor slots range
/// over `N(v)`; a later slot ranges over the neighbors of the first earlier
/// slot it must be adjacent to. Returns `false` once `emit` asks to stop.
fn place_slots(
    g: &PlaneGraph,
    layout: &Layout,
    slots: &mut Vec<VertexId>,
    emit: &mut dyn FnMut(&[VertexId]) -> bool,
) -> bool {
    let i = slots.len();
    if i == layout.len() {
        return emit(slots);
    }
    let mut candidates: Vec<VertexId> = if i <= 6 {
        g.neighbors(slots[0]).to_vec()
    } else {
        let anchor = layout
            .edges
            .iter()
            .find_map(|&(a, b)| match (a, b) {
                (a, b) if b == i && a < i => Some(a),
                (a, b) if a == i && b < i => Some(b),
                _ => None,
            })
            .expect("every outer slot is attached to an earlier slot");
        g.neighbors(slots[anchor]).to_vec()
    };
    candidates.sort_unstable();
    for x in candidates {
        if slots.contains(&x) {
            continue;
        }
        if layout.degree_of(i).is_some_and(|k| g.degree(x) != k) {
            continue;
        }
        let edges_ok = layout.edges.iter().all(|&(a, b)| {
            let other = if a == i { b } else if b == i { a } else { return true };
            other > i || g.has_edge(x, slots[other])
        });
        let order_ok = layout
            .ascending
            .iter()
            .all(|&(a, b)| !(b == i && a < i) || slots[a] < x);
        if !edges_ok || !order_ok {
            continue;
        }
        slots.push(x);
        let go_on = place_slots(g, layout, slots, emit);
        slots.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Cycles of the 2–6 subgraph. Each 2-vertex with two 6-neighbors acts as
/// an edge between them; cycles are enumerated from their smallest 6-vertex
/// and emitted once per direction class, up to [`TWO_SIX_CYCLE_LIMIT`].
fn two_six_cycles(g: &PlaneGraph, emit: &mut dyn FnMut(Vec<VertexId>) -> bool) {
    let n = g.vertex_count();
    // links[x] = (2-vertex, other 6-vertex), sorted.
    let mut links: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); n];
    for w in 0..n {
        if g.degree(w) != 2 {
            continue;
        }
        let (a, b) = (g.neighbors(w)[0], g.neighbors(w)[1]);
        if g.degree(a) == 6 && g.degree(b) == 6 {
            links[a].push((w, b));
            links[b].push((w, a));
        }
    }
    for list in &mut links {
        list.sort_unstable();
    }
    let mut count = 0;
    let mut on_path = vec![false; n];
    for s in 0..n {
        if links[s].len() < 2 {
            continue;
        }
        let mut path = vec![s];
        on_path[s] = true;
        let go_on = cycle_dfs(&links, s, &mut path, &mut on_path, &mut count, emit);
        on_path[s] = false;
        if !go_on {
            return;
        }
    }
}

fn cycle_dfs(
    links: &[Vec<(VertexId, VertexId)>],
    s: VertexId,
    path: &mut Vec<VertexId>,
    on_path: &mut [bool],
    count: &mut usize,
    emit: &mut dyn FnMut(Vec<VertexId>) -> bool,
) -> bool {
    let x = *path.last().unwrap();
    for &(w, y) in &links[x] {
        if on_path[w] {
            continue;
        }
        if y == s && path.len() >= 3 {
            // Emit each cycle once: the first 2-vertex is the smaller end.
            if path[1] < w {
                let mut cycle = path.clone();
                cycle.push(w);
                *count += 1;
                if !emit(cycle) || *count >= TWO_SIX_CYCLE_LIMIT {
                    return false;
                }
            }
            continue;
        }
        if y <= s || on_path[y] {
            continue;
        }
        on_path[w] = true;
        on_path[y] = true;
        path.push(w);
        path.push(y);
        let go_on = cycle_dfs(links, s, path, on_path, count, emit);
        path.pop();
        path.pop();
        on_path[w] = false;
        on_path[y] = false;
        if !go_on {
            return false;
        }
    }
    true
}

/// Every match of every kind, in kind order.
pub fn find_all(g: &PlaneGraph) -> Vec<ConfigurationMatch> {
    ConfigurationKind::ALL
        .iter()
        .flat_map(|&k| find_matches(g, k))
        .collect()
}

/// Kinds present in `g`.
pub fn kinds_present(g: &PlaneGraph) -> BTreeSet<ConfigurationKind> {
    ConfigurationKind::ALL
        .into_iter()
        .filter(|&k| first_match(g, k).is_some())
        .collect()
}
