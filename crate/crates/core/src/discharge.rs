//! Discharging with exact rationals.
//!
//! Every vertex and face `x` starts with charge `d(x) - 4`; by Euler's
//! formula the total is `-8` on a connected plane graph. Rules R1–R6 move
//! charge between vertices and faces, all amounts being decided on the
//! initial graph; R7 then hands the positive remainder of each face of
//! degree at least 4 to its incident 6-vertices. A face meeting a vertex at
//! several corners (only possible at cut vertices) is treated once per
//! corner.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{find_all, partial_master_assignment, ConfigurationMatch, MasterAssignment, MasterError};
use crate::plane::{FaceId, PlaneGraph, VertexId};

pub type Rational = Ratio<i64>;

fn r(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

/// Formats a rational as `p/q` in lowest terms, always with a denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn ser_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

fn ser_rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_rational))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", content = "id", rename_all = "snake_case")]
pub enum Site {
    Vertex(VertexId),
    Face(FaceId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Site,
    pub to: Site,
    #[serde(serialize_with = "ser_rational")]
    pub amount: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    #[serde(serialize_with = "ser_rationals")]
    pub vertex_charge: Vec<Rational>,
    #[serde(serialize_with = "ser_rationals")]
    pub face_charge: Vec<Rational>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn charge(&self, x: Site) -> Rational {
        match x {
            Site::Vertex(v) => self.vertex_charge[v],
            Site::Face(f) => self.face_charge[f],
        }
    }

    pub fn total(&self) -> Rational {
        self.vertex_charge.iter().chain(&self.face_charge).sum()
    }

    fn apply(&mut self, t: Transfer) {
        *self.slot(t.from) -= t.amount;
        *self.slot(t.to) += t.amount;
        self.transfers.push(t);
    }

    fn slot(&mut self, x: Site) -> &mut Rational {
        match x {
            Site::Vertex(v) => &mut self.vertex_charge[v],
            Site::Face(f) => &mut self.face_charge[f],
        }
    }

    /// Sum of transfers into `to` by `rule` (optionally only from `from`).
    pub fn received(&self, to: Site, rule: Option<Rule>, from: Option<Site>) -> Rational {
        self.transfers
            .iter()
            .filter(|t| t.to == to && rule.is_none_or(|x| t.rule == x) && from.is_none_or(|x| t.from == x))
            .map(|t| t.amount)
            .sum()
    }

    /// Sum of transfers out of `from` by `rule`.
    pub fn sent(&self, from: Site, rule: Option<Rule>) -> Rational {
        self.transfers
            .iter()
            .filter(|t| t.from == from && rule.is_none_or(|x| t.rule == x))
            .map(|t| t.amount)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("master assignment does not fit the graph: {0}")]
    Masters(String),
}

/// Local counts around a vertex or face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LocalProfile {
    Vertex {
        degree: usize,
        /// Incident 3-faces.
        n3: usize,
        /// Incident 4-faces.
        n4: usize,
        /// Adjacent 2-vertices.
        t2: usize,
    },
    Face {
        degree: usize,
        /// Incident 2-vertices.
        m2: usize,
        /// Incident 3-vertices.
        m3: usize,
        /// Vertex degrees along the boundary walk.
        degrees: Vec<usize>,
    },
}

pub fn local_profile(g: &PlaneGraph, x: Site) -> LocalProfile {
    match x {
        Site::Vertex(v) => {
            let faces: BTreeSet<FaceId> = g.incident_faces(v).unwrap().iter().copied().collect();
            let count = |k: usize| faces.iter().filter(|&&f| g.face(f).degree() == k).count();
            LocalProfile::Vertex {
                degree: g.degree(v),
                n3: count(3),
                n4: count(4),
                t2: g.neighbors(v).iter().filter(|&&w| g.degree(w) == 2).count(),
            }
        }
        Site::Face(f) => {
            let face = g.face(f);
            let vs: BTreeSet<VertexId> = face.vertices().iter().copied().collect();
            LocalProfile::Face {
                degree: face.degree(),
                m2: vs.iter().filter(|&&v| g.degree(v) == 2).count(),
                m3: vs.iter().filter(|&&v| g.degree(v) == 3).count(),
                degrees: face.vertices().iter().map(|&v| g.degree(v)).collect(),
            }
        }
    }
}

pub fn initial_charges(g: &PlaneGraph) -> Result<ChargeLedger, DischargeError> {
    if !g.is_connected() {
        return Err(DischargeError::Disconnected(g.component_count()));
    }
    Ok(ChargeLedger {
        vertex_charge: (0..g.vertex_count()).map(|v| Rational::from(g.degree(v) as i64 - 4)).collect(),
        face_charge: g.faces().iter().map(|f| Rational::from(f.degree() as i64 - 4)).collect(),
        transfers: Vec::new(),
    })
}

/// A degree bound inside a 4-face pattern.
#[derive(Clone, Copy)]
enum Deg {
    Is(usize),
    AtLeast(usize),
}

impl Deg {
    fn fits(self, d: usize) -> bool {
        match self {
            Deg::Is(k) => d == k,
            Deg::AtLeast(k) => d >= k,
        }
    }
}

/// 4-face types paying off a 6-vertex under R2, most specific first.
const R2_TABLE: [([Deg; 4], (i64, i64)); 7] = [
    ([Deg::Is(2), Deg::Is(6), Deg::Is(3), Deg::Is(6)], (5, 12)),
    ([Deg::Is(2), Deg::Is(6), Deg::AtLeast(4), Deg::Is(6)], (1, 4)),
    ([Deg::Is(3), Deg::Is(6), Deg::Is(3), Deg::Is(5)], (7, 15)),
    ([Deg::Is(3), Deg::Is(6), Deg::Is(3), Deg::Is(6)], (1, 3)),
    ([Deg::Is(3), Deg::Is(6), Deg::Is(4), Deg::Is(6)], (1, 6)),
    ([Deg::Is(3), Deg::Is(6), Deg::Is(4), Deg::Is(5)], (2, 15)),
    ([Deg::Is(3), Deg::AtLeast(5), Deg::AtLeast(5), Deg::AtLeast(5)], (2, 15)),
];

/// Whether the cyclic degree sequence matches `pattern` under some rotation
/// or reflection.
fn dihedral_match(degrees: &[usize], pattern: &[Deg; 4]) -> bool {
    if degrees.len() != 4 {
        return false;
    }
    (0..4).any(|s| {
        (0..4).all(|i| pattern[i].fits(degrees[(s + i) % 4]))
            || (0..4).all(|i| pattern[i].fits(degrees[(s + 4 - i) % 4]))
    })
}

/// R2 amount a 6-vertex sends to a 4-face with these boundary degrees.
pub fn r2_amount(degrees: &[usize]) -> Rational {
    R2_TABLE
        .iter()
        .find(|(p, _)| dihedral_match(degrees, p))
        .map_or_else(Rational::zero, |&(_, (n, d))| r(n, d))
}

/// Applies R1–R7 with the given masters.
pub fn apply_rules(g: &PlaneGraph, masters: &MasterAssignment) -> Result<ChargeLedger, DischargeError> {
    masters.check(g).map_err(DischargeError::Masters)?;
    let mut ledger = initial_charges(g)?;
    let d = |v: VertexId| g.degree(v);
    let on_triangle: Vec<bool> = (0..g.vertex_count())
        .map(|v| g.incident_faces(v).unwrap().iter().any(|&f| g.face(f).degree() == 3))
        .collect();
    let face_degrees: Vec<Vec<usize>> = g
        .faces()
        .iter()
        .map(|f| f.vertices().iter().map(|&v| d(v)).collect())
        .collect();
    let low_triangle = |f: FaceId| {
        let ds = &face_degrees[f];
        ds.len() == 3 && ds.iter().filter(|&&x| x <= 4).count() == 2
    };

    let mut pending = Vec::new();
    let mut send = |rule, from, to, amount: Rational| {
        if !amount.is_zero() {
            pending.push(Transfer { rule, from, to, amount });
        }
    };

    // R1, R2: vertex to incident face, per corner.
    for v in 0..g.vertex_count() {
        for &f in g.incident_faces(v).unwrap() {
            let ds = &face_degrees[f];
            let amount = match (d(v), ds.len()) {
                (5 | 6, 3) => match ds.iter().filter(|&&x| x <= 4).count() {
                    0 => r(1, 3),
                    1 | 2 => r(1, 2),
                    _ => Rational::zero(),
                },
                (5, 4) if ds.iter().any(|&x| x == 2 || x == 3) => r(1, 5),
                _ => Rational::zero(),
            };
            send(Rule::R1, Site::Vertex(v), Site::Face(f), amount);
            if d(v) == 6 && ds.len() == 4 {
                send(Rule::R2, Site::Vertex(v), Site::Face(f), r2_amount(ds));
            }
        }
    }

    // R3: 6-vertex to adjacent 2-vertex.
    for v in (0..g.vertex_count()).filter(|&v| d(v) == 2) {
        for &u in g.neighbors(v) {
            if d(u) != 6 {
                continue;
            }
            let amount = if on_triangle[v] {
                r(1, 2)
            } else if masters.is_master(u, v) {
                r(4, 5)
            } else {
                r(1, 5)
            };
            send(Rule::R3, Site::Vertex(u), Site::Vertex(v), amount);
        }
    }

    // R4, R5: face to incident 2- and 3-vertices, per corner.
    for (f, face) in g.faces().iter().enumerate() {
        let k = face.degree();
        if k < 4 {
            continue;
        }
        for &v in face.vertices() {
            let tri = on_triangle[v];
            let amount = match (k, d(v), tri) {
                (4, 2, false) => r(1, 2),
                (4, 3, false) => r(1, 3),
                (4, _, _) => Rational::zero(),
                (_, 2, true) => r(1, 1),
                (_, 2, false) => r(1, 2),
                (_, 3, true) => r(1, 2),
                (_, 3, false) => r(1, 3),
                _ => Rational::zero(),
            };
            let rule = if k == 4 { Rule::R4 } else { Rule::R5 };
            send(rule, Site::Face(f), Site::Vertex(v), amount);
        }
    }

    // R6: 5+-face to an adjacent (4-,4-,5+)-face, once per shared edge.
    for e in 0..g.edge_count() {
        let (f1, f2) = g.edge_faces(e);
        if f1 == f2 {
            continue;
        }
        for (a, b) in [(f1, f2), (f2, f1)] {
            if g.face(a).degree() >= 5 && low_triangle(b) {
                send(Rule::R6, Site::Face(a), Site::Face(b), r(1, 6));
            }
        }
    }

    for t in pending {
        ledger.apply(t);
    }

    // R7: positive remainder of a 4+-face split over its 6-vertex corners.
    for (f, face) in g.faces().iter().enumerate() {
        let left = ledger.face_charge[f];
        if face.degree() < 4 || !left.is_positive() {
            continue;
        }
        let sixes: Vec<VertexId> = face.vertices().iter().copied().filter(|&v| d(v) == 6).collect();
        if sixes.is_empty() {
            continue;
        }
        let share = left / Rational::from(sixes.len() as i64);
        for v in sixes {
            ledger.apply(Transfer {
                rule: Rule::R7,
                from: Site::Face(f),
                to: Site::Vertex(v),
                amount: share,
            });
        }
    }
    Ok(ledger)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeElement {
    pub site: Site,
    #[serde(serialize_with = "ser_rational")]
    pub charge: Rational,
    /// A configuration with a witness vertex within distance 2, if any.
    pub nearby: Option<ConfigurationMatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    #[serde(serialize_with = "ser_rational")]
    pub initial_total: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub final_total: Rational,
    pub ledger: ChargeLedger,
    pub masters: MasterAssignment,
    /// Problems with the master assignment; 2-vertices left without a master
    /// receive the non-master R3 amount from every 6-neighbor.
    pub master_failures: Vec<MasterError>,
    pub negatives: Vec<NegativeElement>,
}

impl AuditReport {
    /// Every negative element has a configuration nearby.
    pub fn all_localized(&self) -> bool {
        self.negatives.iter().all(|n| n.nearby.is_some())
    }
}

/// Runs the rules with a best-effort master assignment and localizes every
/// negative final charge.
pub fn audit(g: &PlaneGraph) -> Result<AuditReport, DischargeError> {
    let initial_total = initial_charges(g)?.total();
    let (masters, master_failures) = partial_master_assignment(g);
    let ledger = apply_rules(g, &masters)?;
    let sites = (0..g.vertex_count())
        .map(Site::Vertex)
        .chain((0..g.face_count()).map(Site::Face));
    let negative: Vec<Site> = sites.filter(|&x| ledger.charge(x).is_negative()).collect();
    let matches = if negative.is_empty() { Vec::new() } else { find_all(g) };
    let negatives = negative
        .into_iter()
        .map(|site| NegativeElement {
            site,
            charge: ledger.charge(site),
            nearby: nearby_match(g, site, &matches),
        })
        .collect();
    Ok(AuditReport {
        initial_total,
        final_total: ledger.total(),
        ledger,
        masters,
        master_failures,
        negatives,
    })
}

/// Vertices of a site: the vertex itself, or the boundary of a face.
pub fn anchors(g: &PlaneGraph, x: Site) -> Vec<VertexId> {
    match x {
        Site::Vertex(v) => vec![v],
        Site::Face(f) => g.face(f).vertices().to_vec(),
    }
}

fn nearby_match(g: &PlaneGraph, x: Site, matches: &[ConfigurationMatch]) -> Option<ConfigurationMatch> {
    let ball: BTreeSet<VertexId> = g.ball(&anchors(g, x), 2).into_iter().collect();
    matches
        .iter()
        .find(|m| m.vertices.iter().any(|v| ball.contains(v)))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{master_assignment, ConfigurationKind};

    fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        PlaneGraph::build_from_rotation(n, rot).unwrap()
    }

    fn cube() -> PlaneGraph {
        let pts = [
            (-2.0, -2.0),
            (2.0, -2.0),
            (2.0, 2.0),
            (-2.0, 2.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
        ];
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ];
        PlaneGraph::from_drawing(&pts, &edges).unwrap()
    }

    fn star(k: usize) -> PlaneGraph {
        let rot = std::iter::once((1..=k).collect()).chain((1..=k).map(|_| vec![0])).collect();
        PlaneGraph::build_from_rotation(k + 1, rot).unwrap()
    }

    #[test]
    fn initial_charge_examples() {
        let g = star(6);
        let c = initial_charges(&g).unwrap();
        assert_eq!(c.vertex_charge[0], r(2, 1));
        assert_eq!(c.vertex_charge[1], r(-3, 1));
        assert_eq!(c.face_charge, vec![r(8, 1)]);
        assert_eq!(c.total(), r(-8, 1));
        let q = initial_charges(&cube()).unwrap();
        assert!(q.vertex_charge.iter().all(|&x| x == r(-1, 1)));
        assert!(q.face_charge.iter().all(|x| x.is_zero()));
        assert_eq!(q.total(), r(-8, 1));
    }

    #[test]
    fn c4_is_negative_and_localized() {
        let a = audit(&cycle(4)).unwrap();
        assert_eq!(a.final_total, r(-8, 1));
        // Each face pays 1/2 to all four 2-vertices: vertices end at -1,
        // faces at -2, and every one of them sits next to a low edge.
        assert_eq!(a.negatives.len(), 6);
        assert!(a.negatives.iter().all(|n| n.nearby.as_ref().unwrap().kind == ConfigurationKind::LowEdge));
        for n in &a.negatives {
            let want = match n.site {
                Site::Vertex(_) => r(-1, 1),
                Site::Face(_) => r(-2, 1),
            };
            assert_eq!(n.charge, want);
        }
    }

    #[test]
    fn cube_faces_pay_their_three_vertices() {
        let g = cube();
        let ledger = apply_rules(&g, &master_assignment(&g).unwrap()).unwrap();
        assert!(ledger.vertex_charge.iter().all(|x| x.is_zero()));
        assert!(ledger.face_charge.iter().all(|&x| x == r(-4, 3)));
        let a = audit(&g).unwrap();
        assert_eq!(a.negatives.len(), 6);
        assert!(a.all_localized());
    }

    #[test]
    fn r2_table_is_most_specific_first() {
        assert_eq!(r2_amount(&[2, 6, 3, 6]), r(5, 12));
        assert_eq!(r2_amount(&[6, 4, 6, 2]), r(1, 4));
        assert_eq!(r2_amount(&[5, 3, 6, 3]), r(7, 15));
        assert_eq!(r2_amount(&[3, 6, 3, 6]), r(1, 3));
        assert_eq!(r2_amount(&[6, 4, 6, 3]), r(1, 6));
        assert_eq!(r2_amount(&[3, 5, 4, 6]), r(2, 15));
        assert_eq!(r2_amount(&[3, 6, 6, 5]), r(2, 15));
        assert_eq!(r2_amount(&[4, 6, 4, 6]), Rational::zero());
    }

    #[test]
    fn star_has_no_transfers_but_r7() {
        let g = star(6);
        let ledger = apply_rules(&g, &MasterAssignment::default()).unwrap();
        // The outer face meets the center at six corners.
        assert_eq!(ledger.transfers.len(), 6);
        assert!(ledger.transfers.iter().all(|t| t.rule == Rule::R7 && t.amount == r(4, 3)));
        assert_eq!(ledger.vertex_charge[0], r(10, 1));
        assert_eq!(format_rational(&ledger.total()), "-8/1");
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = cycle(4).without_edges(&[(0, 1), (2, 3)]);
        assert_eq!(initial_charges(&g), Err(DischargeError::Disconnected(2)));
    }
}
