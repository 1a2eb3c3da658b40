//! Seeded generation of connected plane graphs in the class, and of graphs
//! that miss it by one planted obstruction.
//!
//! Graphs grow from a star by local operations on the rotation system
//! (pendant, subdivision, a new vertex inside a face joined to two or three
//! of its corners, a chord across a face). An operation is kept only if the
//! result is still plane, keeps the maximum degree at most 6 and, for the
//! hypothesis profile, creates no diamond, house or cycle violation near
//! the vertices it touched.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{kinds_present, ConfigurationKind};
use crate::patterns::{cycle_violation_at, diamond_with_spine_at, house_with_base_at};
use crate::plane::{PlaneGraph, VertexId};

/// Operations tried before giving up on one graph.
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Maximum degree 6, no diamond, no house, cycle condition everywhere.
    Hypothesis,
    NearMissDiamond,
    NearMissHouse,
    NearMissCycles,
    /// Only planarity and maximum degree at most 6.
    Unconstrained,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::Hypothesis,
        Profile::NearMissDiamond,
        Profile::NearMissHouse,
        Profile::NearMissCycles,
        Profile::Unconstrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Hypothesis => "hypothesis",
            Profile::NearMissDiamond => "near-miss-diamond",
            Profile::NearMissHouse => "near-miss-house",
            Profile::NearMissCycles => "near-miss-cycles",
            Profile::Unconstrained => "unconstrained",
        }
    }

    pub fn from_name(s: &str) -> Option<Profile> {
        Profile::ALL.into_iter().find(|p| p.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub target_n: usize,
    pub profile: Profile,
}

impl GenSpec {
    pub fn new(seed: u64, target_n: usize, profile: Profile) -> Self {
        GenSpec { seed, target_n, profile }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ForgeError {
    #[error("target size {0} is below 3")]
    TooSmall(usize),
    #[error("reached {reached} of {target} vertices after {attempts} attempted operations")]
    Exhausted {
        attempts: usize,
        reached: usize,
        target: usize,
    },
    #[error("could not plant the {profile} obstruction after {attempts} attempts")]
    Plant { profile: &'static str, attempts: usize },
}

pub fn generate(spec: &GenSpec) -> Result<PlaneGraph, ForgeError> {
    generate_with(spec, DEFAULT_MAX_ATTEMPTS)
}

pub fn generate_with(spec: &GenSpec, max_attempts: usize) -> Result<PlaneGraph, ForgeError> {
    if spec.target_n < 3 {
        return Err(ForgeError::TooSmall(spec.target_n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let gadget = gadget_for(spec.profile);
    let grow_to = match gadget {
        Some(gd) => spec.target_n.saturating_sub(gd.new_vertices).max(3),
        None => spec.target_n,
    };
    let strict = spec.profile != Profile::Unconstrained;
    let mut work = Work::star(grow_to.min(7) - 1);
    let mut attempts = 0;
    while work.rot.len() < grow_to {
        if attempts == max_attempts {
            return Err(ForgeError::Exhausted {
                attempts,
                reached: work.rot.len(),
                target: grow_to,
            });
        }
        attempts += 1;
        work.try_random_op(&mut rng, strict);
    }
    if let Some(gd) = gadget {
        let mut tries = 0;
        loop {
            if tries == max_attempts {
                return Err(ForgeError::Plant {
                    profile: spec.profile.name(),
                    attempts: tries,
                });
            }
            tries += 1;
            if work.try_plant(&mut rng, gd) {
                break;
            }
        }
    }
    Ok(PlaneGraph::assemble(work.rot, true).expect("every kept operation was checked to be plane"))
}

/// Mutable rotation system under construction.
struct Work {
    rot: Vec<Vec<VertexId>>,
}

/// Where a new neighbor goes in a rotation: before index `at`.
#[derive(Clone, Copy)]
struct Corner {
    vertex: VertexId,
    at: usize,
}

impl Work {
    fn star(leaves: usize) -> Self {
        let mut rot = vec![(1..=leaves).collect::<Vec<_>>()];
        rot.extend((0..leaves).map(|_| vec![0]));
        Work { rot }
    }

    /// Corners of the face containing the corner before `rot[a][i]`, in walk order.
    fn face_corners(&self, a: VertexId, i: usize) -> Vec<Corner> {
        let mut out = vec![Corner { vertex: a, at: i }];
        let (mut x, mut y) = (a, self.rot[a][i]);
        loop {
            let p = self.rot[y].iter().position(|&w| w == x).unwrap();
            let at = (p + 1) % self.rot[y].len();
            if y == a && at == i {
                break;
            }
            out.push(Corner { vertex: y, at });
            x = y;
            y = self.rot[y][at];
        }
        out
    }

    fn random_corner<R: Rng>(&self, rng: &mut R) -> Vec<Corner> {
        let a = rng.gen_range(0..self.rot.len());
        let i = rng.gen_range(0..self.rot[a].len());
        self.face_corners(a, i)
    }

    fn try_random_op<R: Rng>(&mut self, rng: &mut R, strict: bool) -> bool {
        let weights = [(Op::Pendant, 3), (Op::Subdivide, 2), (Op::FaceVertex(2), 2), (Op::FaceVertex(3), 1), (Op::Chord, 3)];
        let op = weights.choose_weighted(rng, |w| w.1).unwrap().0;
        let Some((candidate, touched)) = self.propose(rng, op) else {
            return false;
        };
        if !admissible(&candidate, &touched, strict) {
            return false;
        }
        self.rot = candidate;
        true
    }

    fn propose<R: Rng>(&self, rng: &mut R, op: Op) -> Option<(Vec<Vec<VertexId>>, Vec<VertexId>)> {
        let mut rot = self.rot.clone();
        let w = rot.len();
        match op {
            Op::Pendant => {
                let c = *self.random_corner(rng).first()?;
                rot[c.vertex].insert(c.at, w);
                rot.push(vec![c.vertex]);
                Some((rot, vec![c.vertex, w]))
            }
            Op::Subdivide => {
                let u = rng.gen_range(0..w);
                let v = *self.rot[u].choose(rng)?;
                let pu = rot[u].iter().position(|&x| x == v).unwrap();
                rot[u][pu] = w;
                let pv = rot[v].iter().position(|&x| x == u).unwrap();
                rot[v][pv] = w;
                rot.push(vec![u, v]);
                Some((rot, vec![u, v, w]))
            }
            Op::FaceVertex(k) => {
                let corners = self.random_corner(rng);
                let picks = pick_distinct(rng, &corners, k)?;
                for c in &picks {
                    rot[c.vertex].insert(c.at, w);
                }
                let mut around: Vec<VertexId> = picks.iter().map(|c| c.vertex).collect();
                rot.push(around.clone());
                if PlaneGraph::assemble(rot.clone(), true).is_err() {
                    around.reverse();
                    rot[w] = around;
                }
                let mut touched: Vec<VertexId> = picks.iter().map(|c| c.vertex).collect();
                touched.push(w);
                Some((rot, touched))
            }
            Op::Chord => {
                let corners = self.random_corner(rng);
                let picks = pick_distinct(rng, &corners, 2)?;
                let (a, b) = (picks[0], picks[1]);
                if self.rot[a.vertex].contains(&b.vertex) {
                    return None;
                }
                rot[a.vertex].insert(a.at, b.vertex);
                rot[b.vertex].insert(b.at, a.vertex);
                Some((rot, vec![a.vertex, b.vertex]))
            }
        }
    }

    /// Attaches the gadget to a random vertex with room for it.
    fn try_plant<R: Rng>(&mut self, rng: &mut R, gd: Gadget) -> bool {
        let base = self.rot.len();
        let fits = |d: usize| match gd.anchor_degree {
            Some(target) => d + gd.anchor_edges() == target,
            None => d + gd.anchor_edges() <= 6,
        };
        let anchors: Vec<VertexId> = (0..base).filter(|&v| fits(self.rot[v].len())).collect();
        let Some(&v) = anchors.choose(rng) else {
            return false;
        };
        let at = rng.gen_range(0..self.rot[v].len().max(1));
        // Gadget slot 0 is the anchor, slot i > 0 is vertex base + i - 1.
        let id = |s: usize| if s == 0 { v } else { base + s - 1 };
        let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); gd.new_vertices + 1];
        for &(a, b) in gd.edges {
            nbrs[a].push(id(b));
            nbrs[b].push(id(a));
        }
        // Try every cyclic order of the anchor's block and of each new vertex.
        let mut block = nbrs[0].clone();
        let block_orders = permutations(&mut block);
        let new_orders: Vec<Vec<Vec<VertexId>>> = nbrs[1..].iter().map(|l| cyclic_orders(l)).collect();
        let mut choice = vec![0usize; new_orders.len()];
        for order in &block_orders {
            loop {
                let mut rot = self.rot.clone();
                for (j, &x) in order.iter().enumerate() {
                    rot[v].insert(at + j, x);
                }
                for (i, &c) in choice.iter().enumerate() {
                    rot.push(new_orders[i][c].clone());
                }
                if PlaneGraph::assemble(rot.clone(), true).is_ok() {
                    self.rot = rot;
                    return true;
                }
                if !advance(&mut choice, &new_orders) {
                    break;
                }
            }
            choice.iter_mut().for_each(|c| *c = 0);
        }
        false
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    Pendant,
    Subdivide,
    FaceVertex(usize),
    Chord,
}

/// `k` corners at distinct vertices, kept in walk order.
fn pick_distinct<R: Rng>(rng: &mut R, corners: &[Corner], k: usize) -> Option<Vec<Corner>> {
    let mut idx: Vec<usize> = (0..corners.len()).collect();
    idx.shuffle(rng);
    let mut picked: Vec<usize> = Vec::with_capacity(k);
    for i in idx {
        if picked.iter().all(|&j| corners[j].vertex != corners[i].vertex) {
            picked.push(i);
            if picked.len() == k {
                picked.sort_unstable();
                return Some(picked.into_iter().map(|i| corners[i]).collect());
            }
        }
    }
    None
}

fn permutations(xs: &mut [VertexId]) -> Vec<Vec<VertexId>> {
    fn go(k: usize, xs: &mut [VertexId], out: &mut Vec<Vec<VertexId>>) {
        if k == xs.len() {
            out.push(xs.to_vec());
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            go(k + 1, xs, out);
            xs.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(0, xs, &mut out);
    out
}

/// Distinct cyclic orders of `xs` (first element fixed).
fn cyclic_orders(xs: &[VertexId]) -> Vec<Vec<VertexId>> {
    if xs.len() <= 2 {
        return vec![xs.to_vec()];
    }
    let mut rest = xs[1..].to_vec();
    permutations(&mut rest)
        .into_iter()
        .map(|p| std::iter::once(xs[0]).chain(p).collect())
        .collect()
}

fn advance(choice: &mut [usize], options: &[Vec<Vec<VertexId>>]) -> bool {
    for (i, c) in choice.iter_mut().enumerate() {
        *c += 1;
        if *c < options[i].len() {
            return true;
        }
        *c = 0;
    }
    false
}

fn ball(rot: &[Vec<VertexId>], sources: &[VertexId], radius: usize) -> Vec<VertexId> {
    let mut dist = vec![usize::MAX; rot.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        if dist[v] == radius {
            continue;
        }
        for &w in &rot[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    out
}

/// Checks an operation's result near the touched vertices. Every diamond,
/// house or short cycle through a touched vertex lies within distance two.
fn admissible(rot: &Vec<Vec<VertexId>>, touched: &[VertexId], strict: bool) -> bool {
    if touched.iter().any(|&v| rot[v].len() > 6) {
        return false;
    }
    if PlaneGraph::assemble(rot.clone(), true).is_err() {
        return false;
    }
    if !strict {
        return true;
    }
    let near = ball(rot, touched, 2);
    diamond_with_spine_at(rot, ball(rot, touched, 1)).is_none()
        && house_with_base_at(rot, near.iter().copied()).is_none()
        && near
            .iter()
            .filter(|&&v| rot[v].len() == 6)
            .all(|&v| cycle_violation_at(rot, v).is_none())
}

/// A small graph glued onto one existing vertex (slot 0).
#[derive(Clone, Copy)]
struct Gadget {
    new_vertices: usize,
    edges: &'static [(usize, usize)],
    /// Degree the anchor must end up with, if fixed.
    anchor_degree: Option<usize>,
}

impl Gadget {
    fn anchor_edges(self) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == 0 || b == 0).count()
    }
}

/// Diamond with the anchor on its shared edge.
const DIAMOND: Gadget = Gadget {
    new_vertices: 3,
    edges: &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
    anchor_degree: None,
};

/// House whose roof apex is the anchor.
const HOUSE: Gadget = Gadget {
    new_vertices: 4,
    edges: &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 1)],
    anchor_degree: None,
};

/// Two 4-cycles through a 6-vertex anchor sharing the edge from the anchor to slot 1.
const ADJACENT_QUADS: Gadget = Gadget {
    new_vertices: 5,
    edges: &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 0)],
    anchor_degree: Some(6),
};

fn gadget_for(p: Profile) -> Option<Gadget> {
    match p {
        Profile::NearMissDiamond => Some(DIAMOND),
        Profile::NearMissHouse => Some(HOUSE),
        Profile::NearMissCycles => Some(ADJACENT_QUADS),
        Profile::Hypothesis | Profile::Unconstrained => None,
    }
}

/// A generated corpus: graphs with their specs, and the specs that failed.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub graphs: Vec<(GenSpec, PlaneGraph)>,
    pub failures: Vec<(GenSpec, ForgeError)>,
}

/// `count` hypothesis-profile graphs with sizes spread evenly over
/// `min_n..=max_n`. Failed generations are recorded and skipped.
pub fn corpus(count: usize, min_n: usize, max_n: usize, seed: u64) -> Corpus {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let span = max_n.saturating_sub(min_n) + 1;
    let mut out = Corpus {
        graphs: Vec::with_capacity(count),
        failures: Vec::new(),
    };
    for i in 0..count {
        let spec = GenSpec::new(seeds.gen(), min_n + i * span / count.max(1), Profile::Hypothesis);
        match generate(&spec) {
            Ok(g) => out.graphs.push((spec, g)),
            Err(e) => out.failures.push((spec, e)),
        }
    }
    out
}

/// How many corpus graphs contain each feature.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Coverage {
    pub graphs: usize,
    pub per_kind: BTreeMap<ConfigurationKind, usize>,
    pub with_two_vertex: usize,
    pub with_six_on_four_face: usize,
}

impl Coverage {
    pub fn fraction(&self, kind: ConfigurationKind) -> f64 {
        if self.graphs == 0 {
            return 0.0;
        }
        *self.per_kind.get(&kind).unwrap_or(&0) as f64 / self.graphs as f64
    }
}

pub fn coverage<'a>(graphs: impl IntoIterator<Item = &'a PlaneGraph>) -> Coverage {
    let mut cov = Coverage::default();
    for k in ConfigurationKind::ALL {
        cov.per_kind.insert(k, 0);
    }
    for g in graphs {
        cov.graphs += 1;
        for k in kinds_present(g) {
            *cov.per_kind.entry(k).or_default() += 1;
        }
        if (0..g.vertex_count()).any(|v| g.degree(v) == 2) {
            cov.with_two_vertex += 1;
        }
        let six_on_four = g
            .faces()
            .iter()
            .any(|f| f.degree() == 4 && f.vertices().iter().any(|&v| g.degree(v) == 6));
        if six_on_four {
            cov.with_six_on_four_face += 1;
        }
    }
    cov
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::hypothesis_report;

    #[test]
    fn hypothesis_graphs_are_in_class_and_deterministic() {
        let spec = GenSpec::new(1, 30, Profile::Hypothesis);
        let g = generate(&spec).unwrap();
        assert_eq!(g.vertex_count(), 30);
        assert!(hypothesis_report(&g).satisfied);
        assert_eq!(generate(&spec).unwrap(), g);
    }

    #[test]
    fn near_misses_fail_the_named_hypothesis() {
        let d = generate(&GenSpec::new(3, 25, Profile::NearMissDiamond)).unwrap();
        assert!(hypothesis_report(&d).diamond_witness.is_some());
        let h = generate(&GenSpec::new(3, 25, Profile::NearMissHouse)).unwrap();
        assert!(hypothesis_report(&h).house_witness.is_some());
        let c = generate(&GenSpec::new(3, 25, Profile::NearMissCycles)).unwrap();
        let r = hypothesis_report(&c);
        assert!(!r.satisfied);
        assert!(r.diamond_witness.is_none() && r.house_witness.is_none());
    }

    #[test]
    fn tiny_targets() {
        assert_eq!(generate(&GenSpec::new(0, 2, Profile::Hypothesis)), Err(ForgeError::TooSmall(2)));
        let g = generate(&GenSpec::new(0, 3, Profile::Hypothesis)).unwrap();
        assert_eq!(g.vertex_count(), 3);
    }
}
