//! Extension procedures: given a total 7-coloring of the graph with a
//! configuration's designated edges deleted, color those edges (recoloring
//! nearby elements where needed) to obtain a total 7-coloring of the graph.

use crate::catalog::figure::{ONE_U, TWO_U, U1, U2, U3, V, V1, V2, V3, V4, V5};
use crate::catalog::{ConfigurationKind, ConfigurationMatch};
use crate::coloring::{
    list_edge_color_even_cycle, list_total_color_triangle, Color, ColorSet, TotalColoring,
};
use crate::plane::{ordered, EdgeId, PlaneGraph, VertexId};

/// Palette the recoloring case trees are written for.
pub const PALETTE: usize = 7;

/// Edges deleted before recursing on a match.
pub fn removed_edges(g: &PlaneGraph, m: &ConfigurationMatch) -> Vec<(VertexId, VertexId)> {
    let w = &m.vertices;
    let ring = |vs: &[VertexId]| -> Vec<(VertexId, VertexId)> {
        (0..vs.len()).map(|i| ordered(vs[i], vs[(i + 1) % vs.len()])).collect()
    };
    match m.kind {
        ConfigurationKind::LowEdge => vec![ordered(w[0], w[1])],
        ConfigurationKind::TwoTwoOnFourFace => match two_two_partner(g, w) {
            Partner::Opposite => ring(w),
            Partner::Adjacent(x) => vec![ordered(w[0], x)],
        },
        ConfigurationKind::TwoSixCycle | ConfigurationKind::Face444 | ConfigurationKind::Face3535 => ring(w),
        ConfigurationKind::TriangleTwoMasters => vec![ordered(w[0], w[1])],
        ConfigurationKind::SixVertexSixLow
        | ConfigurationKind::Fig2One
        | ConfigurationKind::Fig2Two
        | ConfigurationKind::Fig2Three => vec![ordered(w[V], w[V1])],
    }
}

enum Partner {
    Opposite,
    Adjacent(VertexId),
}

/// For a 4-face with 2-vertex `w[0]`: use the opposite 2-vertex when there is
/// one, otherwise the neighboring 2-vertex on the face.
fn two_two_partner(g: &PlaneGraph, w: &[VertexId]) -> Partner {
    if g.degree(w[2]) == 2 {
        Partner::Opposite
    } else if g.degree(w[1]) == 2 {
        Partner::Adjacent(w[1])
    } else {
        Partner::Adjacent(w[3])
    }
}

/// Runs the extension for `m`. `c` must be a proper coloring of `g` in
/// which exactly the edges of [`removed_edges`] are uncolored. Returns the
/// label of the branch taken; an error means an extension guarantee failed.
pub fn extend(g: &PlaneGraph, c: &mut TotalColoring, m: &ConfigurationMatch) -> Result<&'static str, String> {
    let w = &m.vertices;
    match m.kind {
        ConfigurationKind::LowEdge => low_edge(g, c, w[0], w[1]),
        ConfigurationKind::TwoTwoOnFourFace => match two_two_partner(g, w) {
            Partner::Opposite => {
                even_ring(g, c, w, &[w[0], w[2]])?;
                Ok("opposite")
            }
            Partner::Adjacent(x) => {
                low_edge(g, c, w[0], x)?;
                Ok("adjacent")
            }
        },
        ConfigurationKind::TwoSixCycle => {
            let twos: Vec<VertexId> = w.iter().skip(1).step_by(2).copied().collect();
            even_ring(g, c, w, &twos)?;
            Ok("cycle")
        }
        ConfigurationKind::Face3535 => {
            even_ring(g, c, w, &[w[0], w[2]])?;
            Ok("cycle")
        }
        ConfigurationKind::Face444 => triangle(g, c, [w[0], w[1], w[2]]),
        ConfigurationKind::TriangleTwoMasters => triangle_two_masters(g, c, w),
        ConfigurationKind::SixVertexSixLow => six_low(g, c, w),
        ConfigurationKind::Fig2One => figure_config(g, c, w, m.kind, fig2_one),
        ConfigurationKind::Fig2Two => figure_config(g, c, w, m.kind, fig2_two),
        ConfigurationKind::Fig2Three => figure_config(g, c, w, m.kind, fig2_three),
    }
}

fn eid(g: &PlaneGraph, a: VertexId, b: VertexId) -> Result<EdgeId, String> {
    g.edge_id(a, b).ok_or_else(|| format!("{a}{b} is not an edge"))
}

fn get(c: &TotalColoring, e: EdgeId) -> Result<Color, String> {
    c.edge(e).ok_or_else(|| format!("edge {e} is unexpectedly uncolored"))
}

/// Colors vertex `v` with the smallest color it can take.
fn greedy_vertex(g: &PlaneGraph, c: &mut TotalColoring, v: VertexId) -> Result<(), String> {
    let free = c.palette().difference(c.blocked_for_vertex(g, v));
    let color = free.min().ok_or_else(|| format!("no color left for vertex {v}"))?;
    c.set_vertex(v, Some(color));
    Ok(())
}

fn greedy_edge(g: &PlaneGraph, c: &mut TotalColoring, e: EdgeId) -> Result<(), String> {
    let free = c.palette().difference(c.blocked_for_edge(g, e));
    let color = free.min().ok_or_else(|| format!("no color left for edge {e}"))?;
    c.set_edge(e, Some(color));
    Ok(())
}

/// `d(u) + d(v) <= 7`, `d(u) <= 3`: uncolor `u`, color `uv` (it sees at most
/// six colors), then `u` (it sees at most `2 d(u) <= 6`).
fn low_edge(g: &PlaneGraph, c: &mut TotalColoring, u: VertexId, v: VertexId) -> Result<&'static str, String> {
    c.set_vertex(u, None);
    greedy_edge(g, c, eid(g, u, v)?)?;
    greedy_vertex(g, c, u)?;
    Ok("greedy")
}

/// Colors the uncolored even cycle `ring` from lists of available colors,
/// after uncoloring `erase`, then recolors the erased vertices greedily.
fn even_ring(g: &PlaneGraph, c: &mut TotalColoring, ring: &[VertexId], erase: &[VertexId]) -> Result<(), String> {
    for &x in erase {
        c.set_vertex(x, None);
    }
    let k = ring.len();
    let edges: Vec<EdgeId> = (0..k)
        .map(|i| eid(g, ring[i], ring[(i + 1) % k]))
        .collect::<Result<_, _>>()?;
    let lists: Vec<ColorSet> = edges
        .iter()
        .map(|&e| c.palette().difference(c.blocked_for_edge(g, e)))
        .collect();
    let colors = list_edge_color_even_cycle(&lists).map_err(|e| format!("cycle lists {lists:?}: {e}"))?;
    for (&e, &col) in edges.iter().zip(&colors) {
        c.set_edge(e, Some(col));
    }
    for &x in erase {
        greedy_vertex(g, c, x)?;
    }
    Ok(())
}

/// A 3-face of 4-vertices: uncolor the vertices; every vertex and edge of
/// the triangle keeps at least three available colors.
fn triangle(g: &PlaneGraph, c: &mut TotalColoring, t: [VertexId; 3]) -> Result<&'static str, String> {
    for x in t {
        c.set_vertex(x, None);
    }
    let edges = [eid(g, t[0], t[1])?, eid(g, t[1], t[2])?, eid(g, t[2], t[0])?];
    let lists: [ColorSet; 6] = std::array::from_fn(|i| {
        let blocked = if i < 3 {
            // Only the vertices and edges outside the triangle are colored.
            c.blocked_for_vertex(g, t[i])
        } else {
            c.blocked_for_edge(g, edges[i - 3])
        };
        c.palette().difference(blocked)
    });
    let out = list_total_color_triangle(lists).map_err(|e| format!("triangle lists {lists:?}: {e}"))?;
    for i in 0..3 {
        c.set_vertex(t[i], Some(out[i]));
        c.set_edge(edges[i], Some(out[3 + i]));
    }
    Ok("lists")
}

/// Permutation of `1..=7` with inverse.
struct Relabel {
    forward: [Color; 8],
    inverse: [Color; 8],
}

impl Relabel {
    /// Sends each `from` to its `to`; the remaining colors follow in order.
    fn new(pairs: &[(Color, Color)]) -> Self {
        let mut forward = [0; 8];
        let mut used = ColorSet::EMPTY;
        for &(a, b) in pairs {
            forward[a as usize] = b;
            used.insert(b);
        }
        let mut spare = ColorSet::full(PALETTE).difference(used).iter();
        for a in 1..=PALETTE as Color {
            if forward[a as usize] == 0 {
                forward[a as usize] = spare.next().expect("pairs form a partial bijection");
            }
        }
        let mut inverse = [0; 8];
        for a in 1..=PALETTE {
            inverse[forward[a] as usize] = a as Color;
        }
        Relabel { forward, inverse }
    }
}

/// The one color missing at `v` once an edge at `v` is uncolored.
fn missing_color(g: &PlaneGraph, c: &TotalColoring, v: VertexId) -> Result<Color, String> {
    let missing = c.missing_at(g, v);
    if missing.len() != 1 {
        return Err(format!("vertex {v} misses {missing:?}, expected exactly one color"));
    }
    Ok(missing.min().unwrap())
}

fn require_palette(c: &TotalColoring) -> Result<(), String> {
    if c.palette_size() != PALETTE {
        return Err(format!("case analysis needs {PALETTE} colors, got {}", c.palette_size()));
    }
    Ok(())
}

/// 3-face `v1 v2 v3` with `d(v1) = 2`, `d(v2) = 6` and a second 2-neighbor
/// `u` of `v2`, whose other neighbor is `w`. `v1v2` is uncolored.
fn triangle_two_masters(g: &PlaneGraph, c: &mut TotalColoring, w: &[VertexId]) -> Result<&'static str, String> {
    require_palette(c)?;
    let (v1, v2, v3, u, x) = (w[0], w[1], w[2], w[3], w[4]);
    c.set_vertex(v1, None);
    c.set_vertex(u, None);
    let m = missing_color(g, c, v2)?;
    let relabel = Relabel::new(&[(m, 7)]);
    c.permute(&relabel.forward);

    let e12 = eid(g, v1, v2)?;
    let e13 = eid(g, v1, v3)?;
    let e23 = eid(g, v2, v3)?;
    let e2u = eid(g, v2, u)?;
    let euw = eid(g, u, x)?;
    let branch = if get(c, e13)? != 7 {
        c.set_edge(e12, Some(7));
        "direct"
    } else if get(c, euw)? != 7 {
        let y = get(c, e2u)?;
        c.set_edge(e12, Some(y));
        c.set_edge(e2u, Some(7));
        "shift"
    } else {
        let x = get(c, e23)?;
        let y = get(c, e2u)?;
        c.set_edge(e13, Some(x));
        c.set_edge(e23, Some(7));
        c.set_edge(e12, Some(y));
        c.set_edge(e2u, Some(x));
        "exchange"
    };
    c.permute(&relabel.inverse);
    greedy_vertex(g, c, v1)?;
    greedy_vertex(g, c, u)?;
    Ok(branch)
}

/// 6-vertex `v` with all neighbors of degree at most 3, `v1` a 2-vertex and
/// `vv1` uncolored.
fn six_low(g: &PlaneGraph, c: &mut TotalColoring, w: &[VertexId]) -> Result<&'static str, String> {
    require_palette(c)?;
    let v = w[0];
    for &x in &w[1..] {
        c.set_vertex(x, None);
    }
    let m = missing_color(g, c, v)?;
    let relabel = Relabel::new(&[(m, 7)]);
    c.permute(&relabel.forward);
    let vv1 = eid(g, v, w[1])?;
    let other = eid(g, w[1], crate::catalog::other_neighbor(g, w[1], v))?;
    let branch = if get(c, other)? != 7 {
        c.set_edge(vv1, Some(7));
        "direct"
    } else {
        let a = c.vertex(v).ok_or("center is uncolored")?;
        c.set_edge(vv1, Some(a));
        c.set_vertex(v, Some(7));
        "recolor-center"
    };
    c.permute(&relabel.inverse);
    for &x in &w[1..] {
        greedy_vertex(g, c, x)?;
    }
    Ok(branch)
}

/// Witness-slot view used by the figure case trees: edges by slot pairs.
struct Slots<'a> {
    g: &'a PlaneGraph,
    w: &'a [VertexId],
}

impl Slots<'_> {
    fn e(&self, a: usize, b: usize) -> Result<EdgeId, String> {
        eid(self.g, self.w[a], self.w[b])
    }
}

type CaseTree = fn(&Slots, &mut TotalColoring) -> Result<&'static str, String>;

/// Common frame for the three figure configurations: uncolor the bullets,
/// relabel so that `vvi` has color `i - 1` (`i = 2..6`), `v` has color 6
/// and 7 is missing at `v`, run the case tree, undo the relabeling, and
/// recolor the bullets.
fn figure_config(
    g: &PlaneGraph,
    c: &mut TotalColoring,
    w: &[VertexId],
    kind: ConfigurationKind,
    tree: CaseTree,
) -> Result<&'static str, String> {
    require_palette(c)?;
    let layout = kind.layout().unwrap();
    let bullets: Vec<VertexId> = layout.bullets().map(|s| w[s]).collect();
    for &b in &bullets {
        c.set_vertex(b, None);
    }
    let v = w[V];
    let mut pairs = Vec::with_capacity(7);
    for i in 2..=6 {
        pairs.push((get(c, eid(g, v, w[i])?)?, (i - 1) as Color));
    }
    pairs.push((c.vertex(v).ok_or("center is uncolored")?, 6));
    pairs.push((missing_color(g, c, v)?, 7));
    let relabel = Relabel::new(&pairs);
    c.permute(&relabel.forward);
    let branch = tree(&Slots { g, w }, c)?;
    c.permute(&relabel.inverse);
    for &b in &bullets {
        greedy_vertex(g, c, b)?;
    }
    Ok(branch)
}

/// `u1u2 := 7`, `u1v1 := c1`, `u2v2 := c1`, `vv1 := 7`.
fn recolor_pair(s: &Slots, c: &mut TotalColoring, c1: Color) -> Result<(), String> {
    c.set_edge(s.e(U1, U2)?, Some(7));
    c.set_edge(s.e(V1, U1)?, Some(c1));
    c.set_edge(s.e(V2, U2)?, Some(c1));
    c.set_edge(s.e(V, V1)?, Some(7));
    Ok(())
}

fn swap(s: &Slots, c: &mut TotalColoring, a: usize, b: usize) -> Result<(), String> {
    let (ea, eb) = (s.e(V, a)?, s.e(V, b)?);
    let (x, y) = (get(c, ea)?, get(c, eb)?);
    c.set_edge(ea, Some(y));
    c.set_edge(eb, Some(x));
    Ok(())
}

/// Moves 7 onto `v vi` and gives `vv1` the old color of `v vi`.
fn shift(s: &Slots, c: &mut TotalColoring, i: usize) -> Result<(), String> {
    let e = s.e(V, i)?;
    let old = get(c, e)?;
    c.set_edge(e, Some(7));
    c.set_edge(s.e(V, V1)?, Some(old));
    Ok(())
}

fn fig2_one(s: &Slots, c: &mut TotalColoring) -> Result<&'static str, String> {
    if get(c, s.e(V1, U1)?)? != 7 {
        c.set_edge(s.e(V, V1)?, Some(7));
        return Ok("direct");
    }
    if get(c, s.e(V2, U2)?)? != 7 {
        shift(s, c, V2)?;
        return Ok("shift-v2");
    }
    if get(c, s.e(V4, ONE_U)?)? != 7 {
        shift(s, c, V4)?;
        return Ok("shift-v4");
    }
    let c1 = get(c, s.e(U1, U2)?)?;
    if c1 != get(c, s.e(V, V2)?)? {
        recolor_pair(s, c, c1)?;
        Ok("recolor")
    } else {
        swap(s, c, V2, V4)?;
        recolor_pair(s, c, c1)?;
        Ok("interchange")
    }
}

fn fig2_two(s: &Slots, c: &mut TotalColoring) -> Result<&'static str, String> {
    if get(c, s.e(V1, U1)?)? != 7 {
        c.set_edge(s.e(V, V1)?, Some(7));
        return Ok("direct");
    }
    if get(c, s.e(V3, U3)?)? != 7 {
        shift(s, c, V3)?;
        return Ok("shift-v3");
    }
    // Here 7 sits on u3v3, so it is not on v2u3.
    if get(c, s.e(V2, U2)?)? != 7 {
        shift(s, c, V2)?;
        return Ok("shift-v2");
    }
    if get(c, s.e(V5, TWO_U)?)? != 7 {
        shift(s, c, V5)?;
        return Ok("shift-v5");
    }
    let c1 = get(c, s.e(U1, U2)?)?;
    let c2 = get(c, s.e(V2, U3)?)?;
    let double = |c: &mut TotalColoring| -> Result<(), String> {
        c.set_edge(s.e(V2, U3)?, Some(7));
        c.set_edge(s.e(V3, U3)?, Some(c1));
        recolor_pair(s, c, c1)
    };
    if c1 != 1 && c1 != c2 {
        recolor_pair(s, c, c1)?;
        Ok("recolor")
    } else if c1 == 1 {
        if c2 != 4 {
            swap(s, c, V2, V5)?;
            recolor_pair(s, c, c1)?;
            Ok("interchange-v2v5")
        } else {
            swap(s, c, V2, V3)?;
            recolor_pair(s, c, c1)?;
            Ok("interchange-v2v3")
        }
    } else if c1 != 2 {
        double(c)?;
        Ok("double-recolor")
    } else {
        swap(s, c, V3, V5)?;
        double(c)?;
        Ok("interchange-v3v5")
    }
}

fn fig2_three(s: &Slots, c: &mut TotalColoring) -> Result<&'static str, String> {
    if get(c, s.e(V1, U1)?)? != 7 {
        c.set_edge(s.e(V, V1)?, Some(7));
        return Ok("direct");
    }
    if get(c, s.e(V2, U2)?)? != 7 {
        shift(s, c, V2)?;
        return Ok("shift-v2");
    }
    // Here 7 sits on u2v2, so it is not on u2v3.
    if get(c, s.e(V3, U3)?)? != 7 {
        shift(s, c, V3)?;
        return Ok("shift-v3");
    }
    let c1 = get(c, s.e(U1, U2)?)?;
    if c1 != 1 {
        recolor_pair(s, c, c1)?;
        Ok("recolor")
    } else {
        let c2 = get(c, s.e(V3, U2)?)?;
        c.set_edge(s.e(U1, U2)?, Some(7));
        c.set_edge(s.e(V1, U1)?, Some(1));
        c.set_edge(s.e(V2, U2)?, Some(c2));
        c.set_edge(s.e(V3, U2)?, Some(1));
        c.set_edge(s.e(V, V1)?, Some(7));
        Ok("split-recolor")
    }
}

/// Every branch label the case trees can return, per kind.
pub fn branch_labels(kind: ConfigurationKind) -> &'static [&'static str] {
    match kind {
        ConfigurationKind::LowEdge => &["greedy"],
        ConfigurationKind::TwoTwoOnFourFace => &["opposite", "adjacent"],
        ConfigurationKind::TwoSixCycle | ConfigurationKind::Face3535 => &["cycle"],
        ConfigurationKind::Face444 => &["lists"],
        ConfigurationKind::TriangleTwoMasters => &["direct", "shift", "exchange"],
        ConfigurationKind::SixVertexSixLow => &["direct", "recolor-center"],
        ConfigurationKind::Fig2One => &["direct", "shift-v2", "shift-v4", "recolor", "interchange"],
        ConfigurationKind::Fig2Two => &[
            "direct",
            "shift-v3",
            "shift-v2",
            "shift-v5",
            "recolor",
            "interchange-v2v5",
            "interchange-v2v3",
            "double-recolor",
            "interchange-v3v5",
        ],
        ConfigurationKind::Fig2Three => &["direct", "shift-v2", "shift-v3", "recolor", "split-recolor"],
    }
}
