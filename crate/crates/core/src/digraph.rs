//! Finite acyclic digraphs, topological labelings, and path enumeration.
//!
//! Vertex names are opaque strings; everything internal works with dense
//! indices assigned in declaration order, which also fixes the canonical
//! (lexicographic) order on paths.

use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Caps, Error, Result};

/// Dense vertex index, assigned at parse time in declaration order.
pub type Vertex = usize;

/// An acyclic digraph without multiple edges or self-loops.
#[derive(Clone, Debug)]
pub struct Digraph {
    names: Vec<String>,
    edges: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

/// JSON document form: `{"vertices": ["1","2"], "edges": [["1","2"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// A directed path, stored as its vertex sequence. Nontrivial by invariant:
/// at least two vertices, consecutive pairs are edges of the host digraph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    verts: Vec<Vertex>,
}

impl Path {
    fn new(verts: Vec<Vertex>) -> Self {
        debug_assert!(verts.len() >= 2);
        Path { verts }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn tail(&self) -> Vertex {
        self.verts[0]
    }

    pub fn head(&self) -> Vertex {
        *self.verts.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Which way edge labels grow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `label(u) < label(v)` along every edge `(u,v)`.
    Forward,
    /// `label(u) > label(v)` along every edge.
    Reverse,
}

/// A bijective labeling of the vertices by `1..=n`.
#[derive(Clone, Debug)]
pub struct Labeling {
    labels: Vec<u32>,
    pub direction: Direction,
}

impl Labeling {
    pub fn label(&self, v: Vertex) -> u32 {
        self.labels[v]
    }
}

impl Digraph {
    /// Builds and validates a digraph from vertex names and named edges.
    pub fn new(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Digraph> {
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex `{name}`")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let ui = *index
                .get(u)
                .ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let vi = *index
                .get(v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(Error::CycleDetected(u.clone()));
            }
            if !seen.insert((ui, vi)) {
                return Err(Error::DuplicateEdge(u.clone(), v.clone()));
            }
            idx_edges.push((ui, vi));
        }
        let n = vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &idx_edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }
        let g = Digraph {
            names: vertices,
            edges: idx_edges,
            out_adj,
            in_adj,
        };
        // Kahn's algorithm; a leftover vertex witnesses a cycle.
        let mut indeg: Vec<usize> = (0..n).map(|v| g.in_adj[v].len()).collect();
        let mut queue: Vec<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &w in &g.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if removed < n {
            let witness = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CycleDetected(g.names[witness].clone()));
        }
        Ok(g)
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Digraph> {
        let edges: Vec<(String, String)> = doc
            .edges
            .iter()
            .map(|[u, v]| (u.clone(), v.clone()))
            .collect();
        Digraph::new(doc.vertices.clone(), &edges)
    }

    pub fn parse_json(text: &str) -> Result<Digraph> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        Digraph::from_doc(&doc)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    /// Deterministic topological labeling: Kahn's algorithm always removing
    /// the smallest available vertex index, so equal inputs give equal
    /// labelings. The reverse direction is `n+1 - forward`.
    pub fn topological_labeling(&self, direction: Direction) -> Labeling {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut heap: BinaryHeap<std::cmp::Reverse<Vertex>> = (0..n)
            .filter(|&v| indeg[v] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut labels = vec![0u32; n];
        let mut next = 1u32;
        while let Some(std::cmp::Reverse(v)) = heap.pop() {
            labels[v] = next;
            next += 1;
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(std::cmp::Reverse(w));
                }
            }
        }
        if direction == Direction::Reverse {
            for l in &mut labels {
                *l = n as u32 + 1 - *l;
            }
        }
        Labeling { labels, direction }
    }

    /// All nontrivial paths, canonically sorted (lexicographic on vertex
    /// index sequences). Exhaustive DFS from every vertex.
    pub fn enumerate_paths(&self, caps: &Caps) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for v in 0..self.vertex_count() {
            stack.push(v);
            self.extend_paths(&mut stack, &mut out, caps)?;
            stack.pop();
        }
        out.sort();
        Ok(out)
    }

    fn extend_paths(
        &self,
        stack: &mut Vec<Vertex>,
        out: &mut Vec<Path>,
        caps: &Caps,
    ) -> Result<()> {
        for &w in &self.out_adj[*stack.last().unwrap()] {
            stack.push(w);
            if out.len() >= caps.max_paths {
                return Err(Error::CapExceeded(format!(
                    "more than {} paths",
                    caps.max_paths
                )));
            }
            out.push(Path::new(stack.clone()));
            self.extend_paths(stack, out, caps)?;
            stack.pop();
        }
        Ok(())
    }

    /// All routes: inclusion-maximal nontrivial paths. Each runs from an
    /// in-degree-0 vertex to an out-degree-0 vertex.
    pub fn enumerate_routes(&self, caps: &Caps) -> Result<Vec<Path>> {
        let paths = self.enumerate_paths(caps)?;
        Ok(paths
            .into_iter()
            .filter(|p| self.in_degree(p.tail()) == 0 && self.out_degree(p.head()) == 0)
            .collect())
    }

    /// Concatenation `p * q` of a tandem (head of `p` = tail of `q`).
    pub fn concatenate(&self, p: &Path, q: &Path) -> Result<Path> {
        if p.head() != q.tail() {
            return Err(Error::NotATandem(
                self.names[p.head()].clone(),
                self.names[q.tail()].clone(),
            ));
        }
        let mut verts = p.verts.clone();
        verts.extend_from_slice(&q.verts[1..]);
        Ok(Path::new(verts))
    }

    pub fn path_name(&self, p: &Path) -> String {
        p.verts
            .iter()
            .map(|&v| self.names[v].as_str())
            .collect::<Vec<_>>()
            .join("")
    }

    /// Looks up a path from vertex names, checking every step is an edge.
    pub fn path_from_names(&self, names: &[String]) -> Result<Path> {
        if names.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "path needs at least two vertices, got {names:?}"
            )));
        }
        let mut verts = Vec::with_capacity(names.len());
        for name in names {
            verts.push(
                self.vertex_by_name(name)
                    .ok_or_else(|| Error::UnknownVertex(name.clone()))?,
            );
        }
        for w in verts.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(Error::InvalidInput(format!(
                    "({}, {}) is not an edge",
                    self.names[w[0]], self.names[w[1]]
                )));
            }
        }
        Ok(Path::new(verts))
    }
}

/// The worked 5-vertex example graph used across tests and examples:
/// two routes 1-2-3-4 and 1-2-3-4' sharing the prefix 1-2-3.
pub fn branching_example() -> Digraph {
    let vs = ["1", "2", "3", "4", "4'"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let es: Vec<(String, String)> = [("1", "2"), ("2", "3"), ("3", "4"), ("3", "4'")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    Digraph::new(vs, &es).unwrap()
}

/// A directed path graph on `n` vertices named "1".."n".
pub fn path_graph(n: usize) -> Digraph {
    let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let es: Vec<(String, String)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
    Digraph::new(vs, &es).unwrap()
}
