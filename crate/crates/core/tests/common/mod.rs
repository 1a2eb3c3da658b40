//! Builders and oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use tc7_core::catalog::{find_all, partial_master_assignment, ConfigurationKind, ConfigurationMatch, MasterAssignment};
use tc7_core::coloring::{first_conflict_partial, Color, TotalColoring};
use tc7_core::colorer::extend::extend;
use tc7_core::discharge::{apply_rules, ChargeLedger, Rational};
use tc7_core::patterns::hereditary_ok;
use tc7_core::plane::{EdgeId, FaceId, PlaneGraph, VertexId};
use tc7_core::is_valid;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// A straight-line drawing built up point by point.
#[derive(Default, Clone)]
pub struct Drawing {
    pub points: Vec<(f64, f64)>,
    pub edges: Vec<(usize, usize)>,
}

impl Drawing {
    pub fn at(&mut self, x: f64, y: f64) -> usize {
        self.points.push((x, y));
        self.points.len() - 1
    }

    pub fn polar(&mut self, radius: f64, angle: f64) -> usize {
        self.at(radius * angle.cos(), radius * angle.sin())
    }

    pub fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Hangs leaves on `v` until it has degree `target`. The leaves sit at
    /// distance `reach` from the origin, fanned closely around `angle`.
    pub fn fill(&mut self, v: usize, target: usize, reach: f64, angle: f64) {
        let have = self.degree(v);
        assert!(have <= target, "vertex {v} already has degree {have} > {target}");
        let missing = target - have;
        for j in 0..missing {
            let off = (j as f64 - (missing as f64 - 1.0) / 2.0) * 0.03;
            let leaf = self.polar(reach, angle + off);
            self.edge(v, leaf);
        }
    }

    /// Like [`Drawing::fill`], but the leaves point away from `from` at
    /// distance `dist` from `v`.
    pub fn fill_outward(&mut self, v: usize, target: usize, from: (f64, f64), dist: f64) {
        let (x, y) = self.points[v];
        let angle = (y - from.1).atan2(x - from.0);
        let have = self.degree(v);
        assert!(have <= target, "vertex {v} already has degree {have} > {target}");
        let missing = target - have;
        for j in 0..missing {
            let a = angle + (j as f64 - (missing as f64 - 1.0) / 2.0) * 0.25;
            let leaf = self.at(x + dist * a.cos(), y + dist * a.sin());
            self.edge(v, leaf);
        }
    }

    pub fn build(&self) -> PlaneGraph {
        PlaneGraph::from_drawing(&self.points, &self.edges).expect("drawing is plane")
    }
}

// ---------------------------------------------------------------------------
// Wheels: a center vertex with prescribed faces around it.

#[derive(Clone, Copy, Debug)]
pub enum Sector {
    /// No face closes here; the sector opens onto the outer face.
    Open,
    /// A 3-face through the two neighbors.
    Tri,
    /// A 4-face whose fourth vertex has the given degree.
    Quad(usize),
}

/// Center vertex 0 with neighbors `1..=d` at the given degrees; sector `i`
/// lies between neighbor `i` and neighbor `i + 1` (cyclically). A 2-neighbor
/// not closed off by a sector gets a fresh 6-vertex as its other neighbor.
#[derive(Clone, Debug)]
pub struct Wheel {
    pub degrees: Vec<usize>,
    pub sectors: Vec<Sector>,
    /// Neighbors (by index) whose master is the center; every other
    /// 2-neighbor is mastered by its other neighbor.
    pub center_masters: Vec<usize>,
}

pub struct BuiltWheel {
    pub g: PlaneGraph,
    pub center: VertexId,
    pub neighbors: Vec<VertexId>,
    pub masters: MasterAssignment,
}

impl Wheel {
    pub fn new(degrees: &[usize]) -> Self {
        Wheel {
            degrees: degrees.to_vec(),
            sectors: vec![Sector::Open; degrees.len()],
            center_masters: Vec::new(),
        }
    }

    pub fn sector(mut self, i: usize, s: Sector) -> Self {
        self.sectors[i] = s;
        self
    }

    pub fn master(mut self, i: usize) -> Self {
        self.center_masters.push(i);
        self
    }

    pub fn build(&self) -> BuiltWheel {
        let d = self.degrees.len();
        let step = TAU / d as f64;
        let theta = |i: usize| i as f64 * step;
        let mut dr = Drawing::default();
        let center = dr.at(0.0, 0.0);
        let nbrs: Vec<usize> = (0..d).map(|i| dr.polar(2.0, theta(i))).collect();
        for &n in &nbrs {
            dr.edge(center, n);
        }
        let mut fourth = Vec::new();
        for (i, s) in self.sectors.iter().enumerate() {
            let (a, b) = (nbrs[i], nbrs[(i + 1) % d]);
            match *s {
                Sector::Open => {}
                Sector::Tri => dr.edge(a, b),
                Sector::Quad(deg) => {
                    let mid = theta(i) + step / 2.0;
                    let w = dr.polar(3.2, mid);
                    dr.edge(a, w);
                    dr.edge(w, b);
                    fourth.push((w, deg, mid));
                }
            }
        }
        for i in 0..d {
            if self.degrees[i] == 2 && dr.degree(nbrs[i]) == 1 {
                let hub = dr.polar(3.6, theta(i));
                dr.edge(nbrs[i], hub);
                dr.fill(hub, 6, 5.0, theta(i));
            }
            dr.fill(nbrs[i], self.degrees[i], 4.2, theta(i));
        }
        for (w, deg, mid) in fourth {
            dr.fill(w, deg, 4.6, mid);
        }
        let g = dr.build();
        let mut masters = MasterAssignment::default();
        for (i, &n) in nbrs.iter().enumerate() {
            if g.degree(n) != 2 {
                continue;
            }
            let m = if self.center_masters.contains(&i) {
                center
            } else {
                *g.neighbors(n).iter().find(|&&x| x != center).unwrap()
            };
            masters.masters.insert(n, m);
        }
        masters.check(&g).expect("wheel masters are valid");
        BuiltWheel {
            g,
            center,
            neighbors: nbrs,
            masters,
        }
    }
}

impl BuiltWheel {
    pub fn ledger(&self) -> ChargeLedger {
        apply_rules(&self.g, &self.masters).unwrap()
    }
}

// ---------------------------------------------------------------------------
// Face gadgets: one bounded face with decorations on its outside.

/// A face with boundary vertices `0..k` (ids equal positions) drawn on the
/// unit circle, the face being the inside. Edge `i` joins `i` and `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGadget {
    pub degrees: Vec<usize>,
    /// 2-vertex `i` lies on a 3-face with its two neighbors.
    pub tri2: Vec<bool>,
    /// A 3-face on edge `i` whose apex has this degree.
    pub apex: Vec<Option<usize>>,
    /// A 4-face on edge `i` with two new 6-vertices.
    pub quad: Vec<bool>,
    /// For a 2-vertex `i`: a 4-face through `i - 1`, `i`, `i + 1` and a new
    /// 6-vertex.
    pub bridge: Vec<bool>,
}

impl FaceGadget {
    pub fn new(degrees: &[usize]) -> Self {
        let k = degrees.len();
        FaceGadget {
            degrees: degrees.to_vec(),
            tri2: vec![false; k],
            apex: vec![None; k],
            quad: vec![false; k],
            bridge: vec![false; k],
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    /// Whether the prescribed degrees leave room for the decorations.
    pub fn fits(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| {
            let prev = (i + k - 1) % k;
            let next = (i + 1) % k;
            let mut need = 2;
            need += usize::from(self.tri2[prev]) + usize::from(self.tri2[next]);
            need += usize::from(self.apex[prev].is_some()) + usize::from(self.apex[i].is_some());
            need += usize::from(self.quad[prev]) + usize::from(self.quad[i]);
            need += usize::from(self.bridge[prev]) + usize::from(self.bridge[next]);
            need <= self.degrees[i]
        })
    }

    pub fn build(&self) -> (PlaneGraph, FaceId) {
        let k = self.len();
        let step = TAU / k as f64;
        let theta = |i: usize| i as f64 * step;
        let mut dr = Drawing::default();
        for i in 0..k {
            dr.polar(if self.tri2[i] { 0.35 } else { 1.0 }, theta(i));
        }
        for i in 0..k {
            dr.edge(i, (i + 1) % k);
        }
        let mut extra = Vec::new();
        for i in 0..k {
            let (prev, next) = ((i + k - 1) % k, (i + 1) % k);
            if self.tri2[i] {
                dr.edge(prev, next);
            }
            if let Some(deg) = self.apex[i] {
                let z = dr.polar(1.5, theta(i) + step / 2.0);
                dr.edge(i, z);
                dr.edge(z, next);
                extra.push((z, deg, theta(i) + step / 2.0));
            }
            if self.quad[i] {
                let q0 = dr.polar(1.6, theta(i) + 0.3 * step);
                let q1 = dr.polar(1.6, theta(i) + 0.7 * step);
                dr.edge(i, q0);
                dr.edge(q0, q1);
                dr.edge(q1, next);
                extra.push((q0, 6, theta(i) + 0.3 * step));
                extra.push((q1, 6, theta(i) + 0.7 * step));
            }
            if self.bridge[i] {
                let q = dr.polar(1.6, theta(i));
                dr.edge(prev, q);
                dr.edge(q, next);
                extra.push((q, 6, theta(i)));
            }
        }
        for i in 0..k {
            dr.fill(i, self.degrees[i], 2.5, theta(i));
        }
        for (x, deg, angle) in extra {
            dr.fill(x, deg, 3.0, angle);
        }
        let g = dr.build();
        let f = (0..g.face_count())
            .find(|&f| {
                let face = g.face(f);
                face.degree() == k && face.is_simple() && (0..k).all(|v| face.vertices().contains(&v))
            })
            .expect("gadget face present");
        (g, f)
    }
}

/// Matches that only exist because leaves stand in for the rest of a
/// graph: a low edge or an all-low 6-vertex involving a leaf.
fn is_leaf_artifact(g: &PlaneGraph, m: &ConfigurationMatch) -> bool {
    matches!(m.kind, ConfigurationKind::LowEdge | ConfigurationKind::SixVertexSixLow)
        && m.vertices.iter().any(|&x| g.degree(x) == 1)
}

/// First reducible configuration that does not involve a leaf in a
/// degree-constrained position.
pub fn core_reducible(g: &PlaneGraph) -> Option<ConfigurationMatch> {
    find_all(g).into_iter().find(|m| !is_leaf_artifact(g, m))
}

/// A gadget can occur in a smallest counterexample: the class hypotheses
/// hold and no reducible configuration is present apart from leaf
/// artifacts.
pub fn admissible(g: &PlaneGraph) -> bool {
    hereditary_ok(g) && core_reducible(g).is_none()
}

pub fn rules(g: &PlaneGraph) -> ChargeLedger {
    apply_rules(g, &partial_master_assignment(g).0).unwrap()
}

/// Degree alphabet of face boundaries.
pub const FACE_DEGREES: [usize; 5] = [2, 3, 4, 5, 6];

/// Low edge test on two degrees: such a pair cannot be adjacent.
pub fn low_pair(a: usize, b: usize) -> bool {
    a.min(b) <= 3 && a + b <= 7
}

/// All degree sequences of length `k`, cyclic without low pairs.
pub fn cyclic_sequences(k: usize, cyclic: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, cyclic: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            if !cyclic || !low_pair(cur[0], cur[k - 1]) {
                out.push(cur.clone());
            }
            return;
        }
        for d in FACE_DEGREES {
            if cur.last().is_some_and(|&p| low_pair(p, d)) {
                continue;
            }
            cur.push(d);
            rec(k, cyclic, cur, out);
            cur.pop();
        }
    }
    rec(k, cyclic, &mut cur, &mut out);
    out
}

/// Smallest rotation or reflection, for deduplicating cyclic sequences.
pub fn dihedral_min(s: &[usize]) -> Vec<usize> {
    let k = s.len();
    let mut best = s.to_vec();
    for shift in 0..k {
        let fwd: Vec<usize> = (0..k).map(|i| s[(shift + i) % k]).collect();
        let back: Vec<usize> = (0..k).map(|i| s[(shift + k - i) % k]).collect();
        best = best.min(fwd).min(back);
    }
    best
}

/// The one apex on edge `i` that changes what the face pays: it makes a
/// 3-vertex lie on a 3-face, or it creates a (4-,4-,5+)-face.
pub fn relevant_apex(a: usize, b: usize) -> Option<usize> {
    if a == 2 || b == 2 {
        return None;
    }
    match (a.min(b), a.max(b)) {
        (3, _) => Some(5),
        (4, 4) => Some(5),
        (4, _) => Some(4),
        _ => None,
    }
}

/// Optional decorations of a gadget whose boundary degrees are set:
/// 3-faces at 2-vertices and relevant apexes. `skip_edges` are edges that
/// must stay free (for example because a 4-face sits there).
pub fn decoration_slots(gadget: &FaceGadget, skip_edges: &[usize], skip_vertices: &[usize]) -> Vec<Slot> {
    let k = gadget.len();
    let d = &gadget.degrees;
    let mut slots = Vec::new();
    for i in 0..k {
        if d[i] == 2 && !skip_vertices.contains(&i) {
            slots.push(Slot::Tri2(i));
        }
        if skip_edges.contains(&i) {
            continue;
        }
        if let Some(deg) = relevant_apex(d[i], d[(i + 1) % k]) {
            slots.push(Slot::Apex(i, deg));
        }
    }
    slots
}

#[derive(Clone, Copy, Debug)]
pub enum Slot {
    Tri2(usize),
    Apex(usize, usize),
}

/// Every subset of the slots applied to `base`, keeping those that fit.
pub fn decorated(base: &FaceGadget, slots: &[Slot]) -> Vec<FaceGadget> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        let mut g = base.clone();
        for (j, s) in slots.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            match *s {
                Slot::Tri2(i) => g.tri2[i] = true,
                Slot::Apex(i, deg) => g.apex[i] = Some(deg),
            }
        }
        if g.fits() {
            out.push(g);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Exhaustive precolorings around a configuration.

/// A configuration drawn with every non-bullet vertex other than the center
/// saturated to degree 6 by leaves, plus the normalization the case trees
/// assume.
pub struct Arena {
    pub g: PlaneGraph,
    pub m: ConfigurationMatch,
    /// The uncolored edge.
    pub removed: EdgeId,
    /// Edges whose colors are enumerated.
    pub free: Vec<EdgeId>,
    /// Fixed colors.
    pub fixed_edges: Vec<(EdgeId, Color)>,
    pub fixed_vertices: Vec<(VertexId, Color)>,
    /// Vertices colored first, before the leaves, with the least color they
    /// can take.
    pub context: Vec<VertexId>,
}

#[derive(Debug, Default)]
pub struct Exhaustion {
    pub precolorings: usize,
    pub branches: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

fn least_vertex(g: &PlaneGraph, c: &mut TotalColoring, v: VertexId) -> bool {
    match c.palette().difference(c.blocked_for_vertex(g, v)).min() {
        Some(x) => {
            c.set_vertex(v, Some(x));
            true
        }
        None => false,
    }
}

fn least_edge(g: &PlaneGraph, c: &mut TotalColoring, e: EdgeId) -> bool {
    match c.palette().difference(c.blocked_for_edge(g, e)).min() {
        Some(x) => {
            c.set_edge(e, Some(x));
            true
        }
        None => false,
    }
}

impl Arena {
    /// Runs the extension on every proper assignment of the free edges.
    pub fn exhaust(&self) -> Exhaustion {
        let g = &self.g;
        let k = tc7_core::colorer::PALETTE;
        let mut base = TotalColoring::for_graph(g, k);
        for &(e, x) in &self.fixed_edges {
            base.set_edge(e, Some(x));
        }
        for &(v, x) in &self.fixed_vertices {
            base.set_vertex(v, Some(x));
        }
        let mut out = Exhaustion::default();
        let n = self.free.len();
        let mut digits = vec![1 as Color; n];
        'outer: loop {
            let mut c = base.clone();
            for (&e, &x) in self.free.iter().zip(&digits) {
                c.set_edge(e, Some(x));
            }
            if matches!(first_conflict_partial(g, &c), Ok(None)) && self.complete(&mut c) {
                out.precolorings += 1;
                let mut work = c.clone();
                match extend(g, &mut work, &self.m) {
                    Ok(branch) => {
                        *out.branches.entry(branch).or_default() += 1;
                        if is_valid(g, &work) != Ok(true) {
                            out.failures.push(format!("{branch}: invalid result from {digits:?}"));
                        }
                    }
                    Err(e) => out.failures.push(format!("{digits:?}: {e}")),
                }
            }
            for i in 0..n {
                if (digits[i] as usize) < k {
                    digits[i] += 1;
                    continue 'outer;
                }
                digits[i] = 1;
            }
            break;
        }
        out
    }

    /// Colors everything except the removed edge: context vertices, then the
    /// remaining edges, then the remaining vertices, each with its least
    /// available color.
    fn complete(&self, c: &mut TotalColoring) -> bool {
        let g = &self.g;
        for &v in &self.context {
            if c.vertex(v).is_none() && !least_vertex(g, c, v) {
                return false;
            }
        }
        for e in 0..g.edge_count() {
            if e != self.removed && c.edge(e).is_none() && !least_edge(g, c, e) {
                return false;
            }
        }
        for v in 0..g.vertex_count() {
            if c.vertex(v).is_none() && !least_vertex(g, c, v) {
                return false;
            }
        }
        matches!(first_conflict_partial(g, c), Ok(None))
    }
}

// ---------------------------------------------------------------------------
// Naive total coloring oracle.

/// Whether the abstract graph has a total k-coloring, by plain backtracking
/// over vertices then edges in index order.
pub fn naive_total_colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    let m = edges.len();
    // Elements 0..n are vertices, n.. are edges.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    let mut link = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for (i, &(u, v)) in edges.iter().enumerate() {
        link(u, v);
        link(n + i, u);
        link(n + i, v);
        for (j, &(x, y)) in edges.iter().enumerate().take(i) {
            if x == u || x == v || y == u || y == v {
                link(n + i, n + j);
            }
        }
    }
    let mut color = vec![0usize; n + m];
    fn go(i: usize, k: usize, adj: &[Vec<usize>], color: &mut [usize]) -> bool {
        if i == color.len() {
            return true;
        }
        for x in 1..=k {
            if adj[i].iter().all(|&j| j > i || color[j] != x) {
                color[i] = x;
                if go(i + 1, k, adj, color) {
                    return true;
                }
            }
        }
        color[i] = 0;
        false
    }
    go(0, k, &adj, &mut color)
}

/// Least k with a total k-coloring, by the naive oracle.
pub fn naive_total_chromatic(n: usize, edges: &[(usize, usize)]) -> usize {
    (1..).find(|&k| naive_total_colorable(n, edges, k)).unwrap()
}

/// Connected straight-line plane graph on `points`: the Euclidean minimum
/// spanning tree (which never crosses itself), then the candidate edges in
/// order unless they cross an edge already present or push a degree past
/// `max_degree`. Random points are in general position with probability
/// one, so only proper crossings are checked.
pub fn greedy_plane(points: &[(f64, f64)], candidates: &[(usize, usize)], max_degree: usize) -> PlaneGraph {
    fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
    }
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let (pa, pb, pc, pd) = (points[a], points[b], points[c], points[d]);
        orient(pa, pb, pc) * orient(pa, pb, pd) < 0.0 && orient(pc, pd, pa) * orient(pc, pd, pb) < 0.0
    };
    let n = points.len();
    let dist = |a: usize, b: usize| (points[a].0 - points[b].0).hypot(points[a].1 - points[b].1);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut in_tree = vec![false; n];
    let mut best: Vec<(f64, usize)> = vec![(f64::INFINITY, 0); n];
    let mut next = 0;
    for step in 0..n {
        in_tree[next] = true;
        if step > 0 {
            let p = best[next].1;
            edges.push((p.min(next), p.max(next)));
        }
        for w in 0..n {
            if !in_tree[w] && dist(next, w) < best[w].0 {
                best[w] = (dist(next, w), next);
            }
        }
        match (0..n).filter(|&w| !in_tree[w]).min_by(|&a, &b| best[a].0.total_cmp(&best[b].0)) {
            Some(w) => next = w,
            None => break,
        }
    }
    let mut deg = vec![0; n];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    for &(a, b) in candidates {
        let e = (a.min(b), a.max(b));
        if a == b || deg[a] >= max_degree || deg[b] >= max_degree || edges.contains(&e) || edges.iter().any(|&f| crosses(e, f)) {
            continue;
        }
        deg[a] += 1;
        deg[b] += 1;
        edges.push(e);
    }
    PlaneGraph::from_drawing(points, &edges).unwrap_or_else(|e| panic!("{e}: {points:?} {edges:?}"))
}

/// Random connected plane graphs with `min_n..=max_n` vertices and maximum
/// degree at most `max_degree` (beyond what the spanning tree forces).
/// Coordinates come from a seeded RNG so that shrinking never collapses
/// points onto each other.
pub fn arb_plane(min_n: usize, max_n: usize, max_degree: usize) -> impl proptest::strategy::Strategy<Value = PlaneGraph> {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    (min_n..=max_n)
        .prop_flat_map(|n| (Just(n), any::<u64>(), proptest::collection::vec((0..n, 0..n), 0..4 * n)))
        .prop_map(move |(n, seed, candidates)| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0))).collect();
            greedy_plane(&points, &candidates, max_degree)
        })
}
