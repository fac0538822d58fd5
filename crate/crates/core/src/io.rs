//! Text formats for graphs, orderings and reports.
//!
//! A graph file is line based. Blank lines and anything after `#` are
//! ignored.
//!
//! ```text
//! format_version 1
//! family icosahedron
//! seed 7
//! vertices 0 1 2
//! dart 0 0 1 2
//! outer 0
//! K 0 1 2
//! C
//! ```
//!
//! Each `dart` line is `id vertex twin rnext`. `family` and `seed` are
//! optional, `outer` may be `none`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ordering::VertexOrdering;
use crate::plane_graph::{Dart, DartSpec, GraphError, PlaneGraph, RotationSpec, Vertex};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Embedding { line: usize, source: GraphError },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub family: Option<String>,
    pub seed: Option<u64>,
    pub graph: PlaneGraph,
    pub k: BTreeSet<Vertex>,
    pub c: BTreeSet<Vertex>,
}

impl GraphFile {
    pub fn new(graph: PlaneGraph) -> Self {
        GraphFile {
            family: None,
            seed: None,
            graph,
            k: BTreeSet::new(),
            c: BTreeSet::new(),
        }
    }
}

fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn numbers<T: FromStr>(line: usize, fields: &[&str]) -> Result<Vec<T>, FormatError> {
    fields
        .iter()
        .map(|f| {
            f.parse()
                .map_err(|_| syntax(line, format!("expected a number, found `{f}`")))
        })
        .collect()
}

impl FromStr for GraphFile {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, FormatError> {
        let mut version = None;
        let mut family = None;
        let mut seed = None;
        let mut vertices: Option<(usize, Vec<Vertex>)> = None;
        let mut darts = Vec::new();
        let mut dart_lines: BTreeMap<Dart, usize> = BTreeMap::new();
        let mut outer: Option<(usize, Option<Dart>)> = None;
        let mut k: Option<(usize, Vec<Vertex>)> = None;
        let mut c: Option<(usize, Vec<Vertex>)> = None;
        let mut last = 0;

        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            last = line;
            let text = content(raw);
            if text.is_empty() {
                continue;
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            let (key, rest) = (fields[0], &fields[1..]);
            let once = |seen: bool| {
                if seen {
                    Err(syntax(line, format!("duplicate `{key}` line")))
                } else {
                    Ok(())
                }
            };
            match key {
                "format_version" => {
                    once(version.is_some())?;
                    let [v] = numbers::<u32>(line, rest)?[..] else {
                        return Err(syntax(line, "format_version takes one value"));
                    };
                    if v != FORMAT_VERSION {
                        return Err(syntax(line, format!("unsupported format version {v}")));
                    }
                    version = Some(v);
                }
                "family" => {
                    once(family.is_some())?;
                    if rest.len() != 1 {
                        return Err(syntax(line, "family takes one value"));
                    }
                    family = Some(rest[0].to_string());
                }
                "seed" => {
                    once(seed.is_some())?;
                    let [v] = numbers::<u64>(line, rest)?[..] else {
                        return Err(syntax(line, "seed takes one value"));
                    };
                    seed = Some(v);
                }
                "vertices" => {
                    once(vertices.is_some())?;
                    let ids = numbers::<usize>(line, rest)?;
                    vertices = Some((line, ids.into_iter().map(Vertex).collect()));
                }
                "dart" => {
                    let [id, origin, twin, rnext] = numbers::<usize>(line, rest)?[..] else {
                        return Err(syntax(line, "dart takes four values: id vertex twin rnext"));
                    };
                    if dart_lines.insert(Dart(id), line).is_some() {
                        return Err(syntax(line, format!("dart {id} declared twice")));
                    }
                    darts.push(DartSpec {
                        id: Dart(id),
                        origin: Vertex(origin),
                        twin: Dart(twin),
                        rnext: Dart(rnext),
                    });
                }
                "outer" => {
                    once(outer.is_some())?;
                    let d = match rest {
                        ["none"] => None,
                        [v] => Some(Dart(v.parse().map_err(|_| {
                            syntax(line, format!("expected a dart id, found `{v}`"))
                        })?)),
                        _ => return Err(syntax(line, "outer takes one value")),
                    };
                    outer = Some((line, d));
                }
                "K" => {
                    once(k.is_some())?;
                    k = Some((
                        line,
                        numbers::<usize>(line, rest)?
                            .into_iter()
                            .map(Vertex)
                            .collect(),
                    ));
                }
                "C" => {
                    once(c.is_some())?;
                    c = Some((
                        line,
                        numbers::<usize>(line, rest)?
                            .into_iter()
                            .map(Vertex)
                            .collect(),
                    ));
                }
                other => return Err(syntax(line, format!("unknown key `{other}`"))),
            }
        }

        if version.is_none() {
            return Err(syntax(1, "missing format_version line"));
        }
        let (vline, vertices) = vertices.ok_or_else(|| syntax(last, "missing vertices line"))?;
        let (oline, outer) = match outer {
            Some(o) => o,
            None if darts.is_empty() => (last, None),
            None => return Err(syntax(last, "missing outer line")),
        };
        if let Some(d) = outer {
            if !dart_lines.contains_key(&d) {
                return Err(syntax(oline, format!("outer dart {d} is not declared")));
            }
        }
        let spec = RotationSpec {
            vertices,
            darts,
            outer,
        };
        let graph = PlaneGraph::build(&spec).map_err(|e| {
            let at = match &e {
                GraphError::MalformedEmbedding { dart: Some(d), .. }
                | GraphError::LoopPresent { dart: d } => dart_lines.get(d).copied(),
                _ => None,
            };
            FormatError::Embedding {
                line: at.unwrap_or(vline),
                source: e,
            }
        })?;

        let mut sets = Vec::new();
        for entry in [k, c] {
            let (line, list) = entry.unwrap_or((last, Vec::new()));
            let mut set = BTreeSet::new();
            for v in list {
                if !graph.has_vertex(v) {
                    return Err(syntax(line, format!("vertex {v} is not in the graph")));
                }
                if !set.insert(v) {
                    return Err(syntax(line, format!("vertex {v} listed twice")));
                }
            }
            sets.push(set);
        }
        let c = sets.pop().unwrap();
        let k = sets.pop().unwrap();
        Ok(GraphFile {
            family,
            seed,
            graph,
            k,
            c,
        })
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| format!(" {x}")).collect()
}

impl fmt::Display for GraphFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "format_version {FORMAT_VERSION}")?;
        if let Some(family) = &self.family {
            writeln!(f, "family {family}")?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "seed {seed}")?;
        }
        let spec = self.graph.to_spec();
        writeln!(f, "vertices{}", join(&spec.vertices))?;
        for d in &spec.darts {
            writeln!(f, "dart {} {} {} {}", d.id, d.origin, d.twin, d.rnext)?;
        }
        match spec.outer {
            Some(d) => writeln!(f, "outer {d}")?,
            None => writeln!(f, "outer none")?,
        }
        writeln!(f, "K{}", join(&self.k))?;
        writeln!(f, "C{}", join(&self.c))
    }
}

/// An ordering, optionally with the back-degree it claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingFile {
    pub d: Option<usize>,
    pub order: VertexOrdering,
}

impl FromStr for OrderingFile {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, FormatError> {
        let mut d = None;
        let mut seq = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = content(raw);
            if text.is_empty() {
                continue;
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            match fields[..] {
                ["d", v] => {
                    if d.is_some() || !seq.is_empty() {
                        return Err(syntax(line, "the `d` header must come first and only once"));
                    }
                    d =
                        Some(v.parse().map_err(|_| {
                            syntax(line, format!("expected a number, found `{v}`"))
                        })?);
                }
                [v] => {
                    let id: usize = v
                        .parse()
                        .map_err(|_| syntax(line, format!("expected a vertex id, found `{v}`")))?;
                    if !seen.insert(id) {
                        return Err(syntax(line, format!("vertex {id} listed twice")));
                    }
                    seq.push(Vertex(id));
                }
                _ => return Err(syntax(line, "expected one vertex id per line")),
            }
        }
        Ok(OrderingFile {
            d,
            order: VertexOrdering::new(seq),
        })
    }
}

impl fmt::Display for OrderingFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.d {
            writeln!(f, "d {d}")?;
        }
        for v in self.order.as_slice() {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `key=value` lines followed by one `summary` line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    fields: Vec<(String, String)>,
    summary: String,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn summary(mut self, text: impl Into<String>) -> Self {
        self.summary = text.into();
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Reads a report back from its text form.
    pub fn parse(s: &str) -> Report {
        let mut r = Report::new();
        for line in s.lines() {
            if let Some(rest) = line.strip_prefix("summary: ") {
                r.summary = rest.to_string();
            } else if let Some((k, v)) = line.split_once('=') {
                r.fields.push((k.to_string(), v.to_string()));
            }
        }
        r
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}={v}")?;
        }
        writeln!(f, "summary: {}", self.summary)
    }
}

/// Space-separated vertex ids.
pub fn vertex_list<'a>(vs: impl IntoIterator<Item = &'a Vertex>) -> String {
    vs.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
