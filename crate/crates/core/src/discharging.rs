//! Integer charge accounting for triangulated targets.
//!
//! Charges are in tenths: a vertex of degree `d` starts with `10d - 60`.
//! Vertices outside `C` then pay 5 across every edge into `C`, and big
//! vertices feed nearby internal degree-5 vertices by rules R1 to R3.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::constructive::Target;
use crate::plane_graph::{Dart, PlaneGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Payment from a vertex outside `C` to a neighbor in `C`.
    CT,
    R1,
    R2,
    R3,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Vertex,
    pub to: Vertex,
    pub amount: i64,
    /// Hub of an R3 fan.
    pub hub: Option<Vertex>,
    /// `v1 .. vk` for R3, empty otherwise.
    pub path: Vec<Vertex>,
}

impl Transfer {
    /// The pair `(v2, x)` the charge departs through, for R3.
    pub fn departs(&self) -> Option<(Vertex, Vertex)> {
        Some((*self.path.get(1)?, self.hub?))
    }

    /// The pair `(v_{k-1}, x)` the charge arrives through, for R3.
    pub fn arrives(&self) -> Option<(Vertex, Vertex)> {
        let k = self.path.len();
        Some((*self.path.get(k.checked_sub(2)?)?, self.hub?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexRole {
    pub a: usize,
    pub b: usize,
    pub in_k: bool,
    pub in_c: bool,
    pub big: bool,
    pub internal: bool,
}

impl VertexRole {
    fn is(&self, a: usize, max_b: usize) -> bool {
        self.internal && !self.in_c && self.a == a && self.b <= max_b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCharge {
    pub role: VertexRole,
    pub c0_raw: i64,
    pub c0: i64,
    pub c_final: i64,
}

/// An edge `yz` through which R3 charge leaves `sender` in both orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeavyEdge {
    pub sender: Vertex,
    pub y: Vertex,
    pub z: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChargeLedger {
    pub vertices: BTreeMap<Vertex, VertexCharge>,
    pub transfers: Vec<Transfer>,
    pub heavy: Vec<HeavyEdge>,
}

impl ChargeLedger {
    pub fn total_raw(&self) -> i64 {
        self.vertices.values().map(|v| v.c0_raw).sum()
    }

    pub fn total_c0(&self) -> i64 {
        self.vertices.values().map(|v| v.c0).sum()
    }

    pub fn total_final(&self) -> i64 {
        self.vertices.values().map(|v| v.c_final).sum()
    }

    pub fn charge(&self, v: Vertex) -> Option<&VertexCharge> {
        self.vertices.get(&v)
    }

    fn send(&mut self, t: Transfer) {
        self.vertices
            .get_mut(&t.from)
            .expect("sender exists")
            .c_final -= t.amount;
        self.vertices
            .get_mut(&t.to)
            .expect("receiver exists")
            .c_final += t.amount;
        self.transfers.push(t);
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargingError {
    #[error("face at dart {dart} has length {len}, expected 3")]
    NotTriangulated { dart: Dart, len: usize },
}

fn classes(g: &PlaneGraph, c: &BTreeSet<Vertex>) -> BTreeMap<Vertex, (usize, usize)> {
    g.vertices()
        .map(|v| {
            let b = g.rotation(v).filter(|&d| c.contains(&g.target(d))).count();
            (v, (g.degree(v) - b, b))
        })
        .collect()
}

/// Charges `10 deg - 60`, counting parallel edges.
pub fn initial_charges(t: &Target) -> ChargeLedger {
    let mut ledger = ChargeLedger::default();
    for (v, (a, b)) in classes(&t.g, &t.c) {
        let raw = 10 * (a + b) as i64 - 60;
        let role = VertexRole {
            a,
            b,
            in_k: t.k.contains(&v),
            in_c: t.c.contains(&v),
            big: false,
            internal: !t.k.contains(&v),
        };
        ledger.vertices.insert(
            v,
            VertexCharge {
                role,
                c0_raw: raw,
                c0: raw,
                c_final: raw,
            },
        );
    }
    ledger
}

/// Every vertex outside `C` pays 5 per edge into `C`. Sets `c0` and the big
/// flags.
pub fn c_transfer(mut ledger: ChargeLedger, t: &Target) -> ChargeLedger {
    let g = &t.g;
    for v in g.vertices().filter(|v| !t.c.contains(v)) {
        for d in g.rotation(v) {
            let w = g.target(d);
            if t.c.contains(&w) {
                ledger.send(Transfer {
                    rule: Rule::CT,
                    from: v,
                    to: w,
                    amount: 5,
                    hub: None,
                    path: Vec::new(),
                });
            }
        }
    }
    for vc in ledger.vertices.values_mut() {
        vc.c0 = vc.c_final;
        vc.role.big = !vc.role.in_c && (vc.role.in_k || vc.c0 > 0);
    }
    ledger
}

/// Whether every face other than the outer one is a triangle.
pub fn is_triangulated(g: &PlaneGraph) -> bool {
    non_triangle(g).is_none()
}

fn non_triangle(g: &PlaneGraph) -> Option<DischargingError> {
    let fm = g.face_map();
    fm.walks
        .iter()
        .enumerate()
        .find(|&(i, w)| Some(i) != fm.outer && w.len() != 3)
        .map(|(_, w)| DischargingError::NotTriangulated {
            dart: w.darts[0],
            len: w.len(),
        })
}

/// All three stages: raw charges, the transfer into `C`, then R1 to R3.
pub fn apply_rules(t: &Target) -> Result<ChargeLedger, DischargingError> {
    if let Some(e) = non_triangle(&t.g) {
        return Err(e);
    }
    let mut ledger = c_transfer(initial_charges(t), t);
    let g = &t.g;
    let role = |v: Vertex| ledger.vertices[&v].role;

    let mut sends = Vec::new();
    for v in g.vertices().filter(|&v| role(v).big) {
        for d in g.rotation(v) {
            let w = g.target(d);
            let r = role(w);
            if r.is(5, 0) {
                sends.push(Transfer {
                    rule: Rule::R1,
                    from: v,
                    to: w,
                    amount: 2,
                    hub: None,
                    path: Vec::new(),
                });
            } else if r.is(5, 1) {
                sends.push(Transfer {
                    rule: Rule::R2,
                    from: v,
                    to: w,
                    amount: 1,
                    hub: None,
                    path: Vec::new(),
                });
            }
        }
    }

    let fm = g.face_map();
    let triangle = |d: Dart| !fm.is_outer(d) && fm.walk_of(d).len() == 3;
    let mut seen: BTreeSet<(Vertex, Vec<Vertex>)> = BTreeSet::new();
    for x in g.vertices() {
        let rx = role(x);
        if !(rx.big || rx.is(6, 0)) {
            continue;
        }
        let darts: Vec<Dart> = g.rotation(x).collect();
        let deg = darts.len();
        for forward in [true, false] {
            for start in 0..deg {
                let v1 = g.target(darts[start]);
                if !role(v1).big || v1 == x {
                    continue;
                }
                let mut path = vec![v1];
                let mut pos = start;
                for _ in 1..deg {
                    let next = if forward {
                        (pos + 1) % deg
                    } else {
                        (pos + deg - 1) % deg
                    };
                    // the corner between consecutive darts at x
                    let corner = if forward {
                        g.twin(darts[pos])
                    } else {
                        g.twin(darts[next])
                    };
                    if !triangle(corner) {
                        break;
                    }
                    let v = g.target(darts[next]);
                    if v == x || path.contains(&v) {
                        break;
                    }
                    path.push(v);
                    pos = next;
                    let r = role(v);
                    if r.is(6, 0) {
                        continue;
                    }
                    if path.len() >= 3 && r.is(5, 1) && seen.insert((x, path.clone())) {
                        sends.push(Transfer {
                            rule: Rule::R3,
                            from: v1,
                            to: v,
                            amount: 1,
                            hub: Some(x),
                            path: path.clone(),
                        });
                    }
                    break;
                }
            }
        }
    }

    let mut departures: BTreeSet<(Vertex, Vertex, Vertex)> = BTreeSet::new();
    for s in &sends {
        if let Some((y, z)) = s.departs() {
            departures.insert((s.from, y, z));
        }
    }
    for &(sender, y, z) in &departures {
        if y < z && departures.contains(&(sender, z, y)) {
            ledger.heavy.push(HeavyEdge { sender, y, z });
        }
    }
    for s in sends {
        ledger.send(s);
    }
    Ok(ledger)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// An internal vertex outside `C` ending with negative charge.
    NegativeInternal,
    /// A big vertex below `8a + 7b - 60`.
    BigBound { bound: i64 },
    /// A vertex of `K` below -30.
    KBound,
    /// A heavy edge with an internal `(5, <=1)` endpoint.
    HeavyEndpoint { y: Vertex, z: Vertex },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub vertex: Vertex,
    pub kind: ViolationKind,
    pub charge: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::NegativeInternal => {
                write!(f, "{}:negative_internal:{}", self.vertex, self.charge)
            }
            ViolationKind::BigBound { bound } => {
                write!(f, "{}:big_bound:{}<{}", self.vertex, self.charge, bound)
            }
            ViolationKind::KBound => write!(f, "{}:k_bound:{}<-30", self.vertex, self.charge),
            ViolationKind::HeavyEndpoint { y, z } => {
                write!(f, "{}:heavy_endpoint:{}-{}", self.vertex, y, z)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub ledger: ChargeLedger,
    pub k_size: usize,
    /// Every non-outer face is a triangle, so the rules were applied.
    pub triangulated: bool,
    /// `-60 - 20|K|` when the graph is connected, triangulated and its outer
    /// face is a walk of length `|K|`.
    pub expected_total: Option<i64>,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn total_raw(&self) -> i64 {
        self.ledger.total_raw()
    }

    pub fn total_final(&self) -> i64 {
        self.ledger.total_final()
    }

    pub fn conserved(&self) -> bool {
        let l = &self.ledger;
        l.total_final() == l.total_raw() && l.total_c0() == l.total_raw()
    }

    pub fn identity_holds(&self) -> Option<bool> {
        self.expected_total
            .map(|e| e == self.total_raw() && e == self.total_final())
    }
}

/// Runs the charge rules where they apply and lists the vertices whose final
/// charge falls below what a minimal counterexample would guarantee.
pub fn audit(t: &Target) -> AuditReport {
    let g = &t.g;
    let (ledger, triangulated) = match apply_rules(t) {
        Ok(l) => (l, true),
        Err(_) => (c_transfer(initial_charges(t), t), false),
    };
    let outer_len = g.outer_face().map(|w| w.len());
    let expected_total = (triangulated && g.component_count() == 1 && outer_len == Some(t.k.len()))
        .then(|| -60 - 20 * t.k.len() as i64);

    let mut violations = Vec::new();
    for (&v, vc) in &ledger.vertices {
        let r = vc.role;
        let c = vc.c_final;
        if r.in_c {
            continue;
        }
        if r.internal && c < 0 {
            violations.push(Violation {
                vertex: v,
                kind: ViolationKind::NegativeInternal,
                charge: c,
            });
        }
        if r.big {
            let bound = 8 * r.a as i64 + 7 * r.b as i64 - 60;
            if c < bound {
                violations.push(Violation {
                    vertex: v,
                    kind: ViolationKind::BigBound { bound },
                    charge: c,
                });
            }
        }
        if r.in_k && c < -30 {
            violations.push(Violation {
                vertex: v,
                kind: ViolationKind::KBound,
                charge: c,
            });
        }
    }
    for h in &ledger.heavy {
        let low = |u: Vertex| {
            let r = ledger.vertices[&u].role;
            r.is(5, 1)
        };
        if low(h.y) || low(h.z) {
            let charge = ledger.vertices[&h.sender].c_final;
            violations.push(Violation {
                vertex: h.sender,
                kind: ViolationKind::HeavyEndpoint { y: h.y, z: h.z },
                charge,
            });
        }
    }
    AuditReport {
        ledger,
        k_size: t.k.len(),
        triangulated,
        expected_total,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{kleetope, named, random_triangulation, Family};

    fn target(g: PlaneGraph, c: &[usize]) -> Target {
        let k = g.outer_vertices();
        Target::new(g, k, c.iter().map(|&v| Vertex(v)).collect())
    }

    #[test]
    fn icosahedron_total() {
        let r = audit(&target(named(Family::Icosahedron).unwrap(), &[]));
        assert!(r.triangulated);
        assert_eq!(r.total_raw(), -120);
        assert_eq!(r.total_final(), -120);
        assert_eq!(r.identity_holds(), Some(true));
    }

    #[test]
    fn icosahedron_rules_come_from_k() {
        let t = target(named(Family::Icosahedron).unwrap(), &[]);
        let l = apply_rules(&t).unwrap();
        assert!(l.transfers.iter().all(|tr| t.k.contains(&tr.from)));
        assert!(l.transfers.iter().all(|tr| tr.rule == Rule::R1));
        // each K vertex has 3 internal neighbors
        assert_eq!(l.transfers.len(), 9);
    }

    #[test]
    fn tetrahedron_total() {
        let r = audit(&target(named(Family::Tetrahedron).unwrap(), &[]));
        assert_eq!(r.total_raw(), -120);
        assert_eq!(r.identity_holds(), Some(true));
    }

    #[test]
    fn c_transfer_classes() {
        // double wheel on 8 rim vertices: apexes have degree 8
        let g = named(Family::DoubleWheel(8)).unwrap();
        let apex = g.vertices().find(|&v| g.degree(v) == 8).unwrap();
        let rim = g.vertices().find(|&v| g.degree(v) == 4).unwrap();
        let t = Target::new(g, BTreeSet::new(), [rim].into());
        let l = c_transfer(initial_charges(&t), &t);
        let vc = l.charge(rim).unwrap();
        assert_eq!(vc.c0_raw, -20);
        assert_eq!(vc.c0, 0);
        // the apex is a (7,1)-vertex
        assert_eq!(l.charge(apex).unwrap().c0, 10 * 7 + 5 - 60);
        assert_eq!(l.total_c0(), l.total_raw());
    }

    #[test]
    fn r3_fans_are_well_formed() {
        let mut found = 0;
        for seed in 0..40 {
            let t = target(random_triangulation(40, seed, 150).unwrap(), &[]);
            let l = apply_rules(&t).unwrap();
            for tr in l.transfers.iter().filter(|tr| tr.rule == Rule::R3) {
                found += 1;
                let x = tr.hub.unwrap();
                let p = &tr.path;
                assert!(p.len() >= 3);
                assert_eq!((tr.from, tr.to), (p[0], *p.last().unwrap()));
                assert!(l.vertices[&p[0]].role.big);
                let rx = l.vertices[&x].role;
                assert!(rx.big || rx.is(6, 0));
                for v in &p[1..p.len() - 1] {
                    assert!(l.vertices[v].role.is(6, 0));
                }
                assert!(l.vertices[&tr.to].role.is(5, 1));
                let nx = t.g.distinct_neighbors(x);
                assert!(p.iter().all(|v| nx.contains(v)));
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn non_triangulated_is_rejected_but_audited() {
        let g = named(Family::Dodecahedron).unwrap();
        let t = target(g, &[]);
        assert!(matches!(
            apply_rules(&t),
            Err(DischargingError::NotTriangulated { len: 5, .. })
        ));
        let r = audit(&t);
        assert!(!r.triangulated);
        assert!(r.conserved());
        assert_eq!(r.expected_total, None);
    }

    #[test]
    fn kleetope_has_fans() {
        let g = kleetope(&named(Family::Dodecahedron).unwrap());
        let r = audit(&target(g, &[]));
        assert!(r.conserved());
        assert_eq!(r.identity_holds(), Some(true));
    }

    #[test]
    fn random_triangulations_conserve() {
        for seed in 0..10 {
            let g = random_triangulation(60, seed, 100).unwrap();
            let r = audit(&target(g, &[]));
            assert!(r.conserved());
            assert_eq!(r.identity_holds(), Some(true));
        }
    }
}
