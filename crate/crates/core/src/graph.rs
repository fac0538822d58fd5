//! Simple undirected graphs over sparse vertex identifiers.

use crate::plane_graph::Vertex;

/// Adjacency lists of a simple graph. Vertex identifiers index a dense
/// vector; identifiers that were never added are absent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    present: Vec<bool>,
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn with_capacity(n: usize) -> Self {
        SimpleGraph {
            present: vec![false; n],
            adj: vec![Vec::new(); n],
        }
    }

    /// Graph on vertices `0..n` with the given edges. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::with_capacity(n);
        for v in 0..n {
            g.add_vertex(Vertex(v));
        }
        for &(u, v) in edges {
            g.add_edge(Vertex(u), Vertex(v));
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        if v.0 >= self.present.len() {
            self.present.resize(v.0 + 1, false);
            self.adj.resize(v.0 + 1, Vec::new());
        }
        self.present[v.0] = true;
    }

    /// Adds `uv` unless it is present already. Loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if u == v {
            return;
        }
        self.add_vertex(u);
        self.add_vertex(v);
        if let Err(i) = self.adj[u.0].binary_search(&v) {
            self.adj[u.0].insert(i, v);
            let j = self.adj[v.0].binary_search(&u).unwrap_err();
            self.adj[v.0].insert(j, u);
        }
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if let Ok(i) = self.adj[u.0].binary_search(&v) {
            self.adj[u.0].remove(i);
            let j = self.adj[v.0].binary_search(&u).unwrap();
            self.adj[v.0].remove(j);
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v.0).copied().unwrap_or(false)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.adj[u.0].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.0].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| Vertex(i))
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Exclusive upper bound on identifiers.
    pub fn capacity(&self) -> usize {
        self.present.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u.0]
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }
}
