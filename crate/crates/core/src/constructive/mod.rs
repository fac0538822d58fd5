//! Constructive orderings with back-degree at most 7 for plane graphs.
//!
//! A target `(G, K, C)` is repeatedly simplified by local reductions that
//! shrink a lexicographic measure. Each reduction knows how to turn an
//! ordering of the smaller target into one for the larger, so unwinding the
//! sequence produces the answer.

mod normalize;
mod scan;
mod step;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ordering::{self, OrderingError, VertexOrdering};
use crate::plane_graph::{GraphError, PlaneGraph, Vertex};

pub use normalize::{normalize, Normalized};
pub use scan::find_reduction;
pub use step::{apply, reconstruct, ReductionStep, StepKind};

/// Back-degree bound guaranteed by the construction.
pub const BACK_DEGREE: usize = 7;

/// A plane graph with its outer-face set `k` and exceptional set `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub g: PlaneGraph,
    pub k: BTreeSet<Vertex>,
    pub c: BTreeSet<Vertex>,
}

/// Lexicographic size of a target; smaller is simpler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure {
    pub n: i64,
    pub neg_c: i64,
    pub e_c: i64,
    pub q: i64,
    pub neg_t: i64,
    pub e: i64,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.n, self.neg_c, self.e_c, self.q, self.neg_t, self.e
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructiveError {
    #[error("vertex {0} of K is not on the outer face")]
    KNotOnOuterFace(Vertex),
    #[error("bad exceptional set: {0}")]
    BadC(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("no reduction applies to a target that is not a base case")]
    IrreducibleTarget { target: Box<Target> },
    #[error("certification failed at vertex {vertex}: {reason}")]
    CertificationFailed {
        vertex: Vertex,
        reason: String,
        target: Box<Target>,
    },
    #[error("step {step} is not applicable: {reason}")]
    InapplicableStep { step: StepKind, reason: String },
    #[error("measure did not decrease: {before} -> {after} after {step}")]
    MeasureNotDecreasing {
        step: StepKind,
        before: Measure,
        after: Measure,
        target: Box<Target>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
}

impl ConstructiveError {
    /// The target to dump for replay, when the error is a falsification event.
    pub fn falsification_target(&self) -> Option<&Target> {
        match self {
            ConstructiveError::IrreducibleTarget { target }
            | ConstructiveError::CertificationFailed { target, .. }
            | ConstructiveError::MeasureNotDecreasing { target, .. } => Some(target),
            _ => None,
        }
    }
}

impl Target {
    pub fn new(g: PlaneGraph, k: BTreeSet<Vertex>, c: BTreeSet<Vertex>) -> Self {
        Target { g, k, c }
    }

    pub fn measure(&self) -> Measure {
        let g = &self.g;
        let e_c = g
            .edges()
            .filter(|&d| self.c.contains(&g.origin(d)) || self.c.contains(&g.target(d)))
            .count();
        let t = g.faces().iter().filter(|f| f.len() == 3).count();
        Measure {
            n: g.vertex_count() as i64,
            neg_c: -(self.c.len() as i64),
            e_c: e_c as i64,
            q: g.component_count() as i64,
            neg_t: -(t as i64),
            e: g.edge_count() as i64,
        }
    }

    /// Checks the target conditions, plus connectivity which every target
    /// produced here maintains.
    pub fn validate(&self) -> Result<(), ConstructiveError> {
        let g = &self.g;
        for v in self.k.iter().chain(&self.c) {
            if !g.has_vertex(*v) {
                return Err(ConstructiveError::InvalidTarget(format!(
                    "vertex {v} is not in the graph"
                )));
            }
        }
        if let Some(v) = self.k.intersection(&self.c).next() {
            return Err(ConstructiveError::InvalidTarget(format!(
                "vertex {v} is in both K and C"
            )));
        }
        if !(2..=3).contains(&self.k.len()) {
            return Err(ConstructiveError::InvalidTarget(format!(
                "|K| = {}",
                self.k.len()
            )));
        }
        if g.outer_vertices() != self.k {
            return Err(ConstructiveError::InvalidTarget(format!(
                "outer face vertices {:?} differ from K {:?}",
                g.outer_vertices(),
                self.k
            )));
        }
        check_c_bound(g, &self.c)?;
        if g.component_count() != 1 {
            return Err(ConstructiveError::InvalidTarget(
                "graph is not connected".into(),
            ));
        }
        Ok(())
    }

    /// The ordering domain `V \ C`.
    pub fn domain(&self) -> Vec<Vertex> {
        self.g.vertices().filter(|v| !self.c.contains(v)).collect()
    }

    /// Checks `ord` against this target with back-degree bound `d`.
    pub fn verify(
        &self,
        ord: &VertexOrdering,
        d: usize,
    ) -> Result<ordering::BackProfile, OrderingError> {
        ordering::verify(&self.g.underlying(), &self.k, &self.c, ord, d)
    }
}

/// Every vertex of `c` has at most 4 neighbors outside `c`, with multiplicity.
pub(crate) fn check_c_bound(g: &PlaneGraph, c: &BTreeSet<Vertex>) -> Result<(), ConstructiveError> {
    for &v in c {
        let outside = g.neighbors(v).iter().filter(|w| !c.contains(w)).count();
        if outside > 4 {
            return Err(ConstructiveError::BadC(format!(
                "vertex {v} has {outside} neighbors outside C"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Re-verify every reconstructed ordering and the per-neighbor friend
    /// bounds of appended vertices.
    pub certify: bool,
    /// Record one trace entry per applied step.
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub step: ReductionStep,
    pub before: Measure,
    pub after: Vec<Measure>,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "depth={} kind={} {} before={}",
            self.depth,
            self.step.kind(),
            self.step.params(),
            self.before
        )?;
        let after: Vec<String> = self.after.iter().map(Measure::to_string).collect();
        write!(f, " after={}", after.join(";"))
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub ordering: VertexOrdering,
    pub profile: ordering::BackProfile,
    pub steps: usize,
    pub trace: Vec<TraceEntry>,
}

/// One applied step, kept until the frame's ordering is rebuilt.
struct Record {
    step: ReductionStep,
    snapshot: Option<Target>,
}

struct Frame {
    target: Target,
    depth: usize,
    records: Vec<Record>,
    split: Option<PendingSplit>,
}

struct PendingSplit {
    second: Option<Target>,
    first_result: Option<VertexOrdering>,
}

enum Progress {
    Split(Box<Target>, Box<Target>),
    Done(VertexOrdering),
}

struct Solver {
    opts: SolveOptions,
    trace: Vec<TraceEntry>,
    steps: usize,
}

impl Solver {
    /// Applies single-child steps until a split or a base case.
    fn advance(&mut self, frame: &mut Frame) -> Result<Progress, ConstructiveError> {
        loop {
            let step = find_reduction(&frame.target)?;
            let before = frame.target.measure();
            let children = apply(&frame.target, &step)?;
            let mut after = Vec::with_capacity(children.len());
            for child in &children {
                let m = child.measure();
                if m >= before {
                    return Err(ConstructiveError::MeasureNotDecreasing {
                        step: step.kind(),
                        before,
                        after: m,
                        target: Box::new(frame.target.clone()),
                    });
                }
                after.push(m);
            }
            if self.opts.trace {
                self.trace.push(TraceEntry {
                    depth: frame.depth,
                    step: step.clone(),
                    before,
                    after,
                });
            }
            if let ReductionStep::BaseCase { order } = &step {
                return Ok(Progress::Done(VertexOrdering::new(order.clone())));
            }
            self.steps += 1;
            let snapshot = self.opts.certify.then(|| frame.target.clone());
            let mut children = children.into_iter();
            let first = children.next().expect("non-base step has a child");
            frame.records.push(Record { step, snapshot });
            match children.next() {
                Some(second) => return Ok(Progress::Split(Box::new(first), Box::new(second))),
                None => frame.target = first,
            }
        }
    }

    /// Rebuilds the ordering of the frame's original target from the ordering
    /// of its last child (or the combined split result).
    fn unwind(
        &self,
        frame: Frame,
        mut ord: VertexOrdering,
        split_parts: Option<(VertexOrdering, VertexOrdering)>,
    ) -> Result<VertexOrdering, ConstructiveError> {
        let mut parts = split_parts;
        for rec in frame.records.into_iter().rev() {
            ord = match (&rec.step, parts.take()) {
                (ReductionStep::SplitOnCycle { .. }, Some((a, b))) => {
                    reconstruct(&rec.step, &[a, b])
                }
                _ => reconstruct(&rec.step, &[ord]),
            };
            if let Some(parent) = &rec.snapshot {
                certify_step(parent, &rec.step, &ord)?;
            }
        }
        Ok(ord)
    }

    fn run(&mut self, root: Target) -> Result<VertexOrdering, ConstructiveError> {
        let mut stack = vec![Frame {
            target: root,
            depth: 0,
            records: Vec::new(),
            split: None,
        }];
        let mut finished: Option<VertexOrdering> = None;
        loop {
            let top = stack.last_mut().expect("stack is never empty here");
            if let Some(result) = finished.take() {
                let pending = top
                    .split
                    .as_mut()
                    .expect("child result without a pending split");
                if pending.first_result.is_none() {
                    pending.first_result = Some(result);
                    let second = pending.second.take().expect("second child pending");
                    let depth = top.depth + 1;
                    stack.push(Frame {
                        target: second,
                        depth,
                        records: Vec::new(),
                        split: None,
                    });
                    continue;
                }
                let first = pending.first_result.take().unwrap();
                let frame = stack.pop().unwrap();
                let ord = self.unwind(
                    frame,
                    VertexOrdering::new(Vec::new()),
                    Some((first, result)),
                )?;
                if stack.is_empty() {
                    return Ok(ord);
                }
                finished = Some(ord);
                continue;
            }
            match self.advance(top)? {
                Progress::Split(a, b) => {
                    top.split = Some(PendingSplit {
                        second: Some(*b),
                        first_result: None,
                    });
                    let depth = top.depth + 1;
                    stack.push(Frame {
                        target: *a,
                        depth,
                        records: Vec::new(),
                        split: None,
                    });
                }
                Progress::Done(base) => {
                    let frame = stack.pop().unwrap();
                    let ord = self.unwind(frame, base, None)?;
                    if stack.is_empty() {
                        return Ok(ord);
                    }
                    finished = Some(ord);
                }
            }
        }
    }
}

/// Verifies a reconstructed ordering for its parent target, plus the
/// per-neighbor friend bounds of the vertices the step appended.
fn certify_step(
    parent: &Target,
    step: &ReductionStep,
    ord: &VertexOrdering,
) -> Result<(), ConstructiveError> {
    let fail = |vertex: Vertex, reason: String| ConstructiveError::CertificationFailed {
        vertex,
        reason,
        target: Box::new(parent.clone()),
    };
    let sg = parent.g.underlying();
    match ordering::verify(&sg, &parent.k, &parent.c, ord, BACK_DEGREE) {
        Ok(_) => {}
        Err(OrderingError::BackDegreeExceeded {
            vertex, back_set, ..
        }) => {
            return Err(fail(
                vertex,
                format!("back-set {back_set:?} has more than {BACK_DEGREE} vertices"),
            ))
        }
        Err(e) => {
            return Err(fail(
                ord.as_slice().first().copied().unwrap_or(Vertex(0)),
                e.to_string(),
            ))
        }
    }
    for (u, v, limit) in step.friend_bounds(&sg) {
        let f = ordering::friends(&sg, &parent.c, ord, u, v)?;
        if f.len() > limit {
            return Err(fail(
                u,
                format!(
                    "{} friends via {v}, expected at most {limit}: {f:?}",
                    f.len()
                ),
            ));
        }
    }
    Ok(())
}

/// Finds a valid ordering of `V \ C` for a target: back-degree at most 7
/// relative to `C`, with `K` first.
pub fn solve(t: &Target, opts: SolveOptions) -> Result<Solution, ConstructiveError> {
    t.validate()?;
    let mut solver = Solver {
        opts,
        trace: Vec::new(),
        steps: 0,
    };
    let ordering = solver.run(t.clone())?;
    let profile = t.verify(&ordering, BACK_DEGREE).map_err(|e| match e {
        OrderingError::BackDegreeExceeded {
            vertex, back_set, ..
        } => ConstructiveError::CertificationFailed {
            vertex,
            reason: format!("back-set {back_set:?} has more than {BACK_DEGREE} vertices"),
            target: Box::new(t.clone()),
        },
        other => ConstructiveError::Ordering(other),
    })?;
    Ok(Solution {
        ordering,
        profile,
        steps: solver.steps,
        trace: solver.trace,
    })
}

/// Normalizes `(g, k0, c)`, solves, and restricts the result to the original
/// graph. The returned profile is computed on `g` itself.
pub fn order_with(
    g: &PlaneGraph,
    k0: &BTreeSet<Vertex>,
    c: &BTreeSet<Vertex>,
    opts: SolveOptions,
) -> Result<Solution, ConstructiveError> {
    let norm = normalize(g, k0, c)?;
    let mut sol = solve(&norm.target, opts)?;
    let seq: Vec<Vertex> = sol
        .ordering
        .as_slice()
        .iter()
        .copied()
        .filter(|v| !norm.added.contains(v))
        .collect();
    let ord = VertexOrdering::new(seq);
    let profile =
        ordering::verify(&g.underlying(), k0, c, &ord, BACK_DEGREE).map_err(|e| match e {
            OrderingError::BackDegreeExceeded {
                vertex, back_set, ..
            } => ConstructiveError::CertificationFailed {
                vertex,
                reason: format!(
                    "restricted back-set {back_set:?} has more than {BACK_DEGREE} vertices"
                ),
                target: Box::new(norm.target.clone()),
            },
            other => ConstructiveError::Ordering(other),
        })?;
    sol.ordering = ord;
    sol.profile = profile;
    Ok(sol)
}

/// An ordering of all vertices of `g` with every back-set of size at most 7.
pub fn col2_order_planar(g: &PlaneGraph) -> Result<VertexOrdering, ConstructiveError> {
    order_with(
        g,
        &BTreeSet::new(),
        &BTreeSet::new(),
        SolveOptions::default(),
    )
    .map(|s| s.ordering)
}
