//! Immutable simple graphs and the structural operations built on them.
//!
//! Vertices are `0..n`. Edges are stored canonically as `(min, max)` pairs in
//! lexicographic order, so two graphs compare equal exactly when they have the
//! same vertex count and the same edge set. The optional family tag records
//! where a graph came from (e.g. `"K_4"`, `"Q_3"`) and is ignored by equality.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Hard size cap; everything in this crate is desk-scale.
pub const MAX_VERTICES: usize = 10_000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6Parse { offset: usize, message: String },
    #[error("edge list parse error on line {line}: {message}")]
    EdgeListParse { line: usize, message: String },
}

/// A finite simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    family_tag: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        // family_tag is provenance metadata, not structure
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl Graph {
    /// Builds a graph, validating and canonicalizing the edge list.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::InvalidParams(format!(
                "vertex count {n} exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            family_tag: None,
        })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("empty graph is always valid")
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.family_tag = Some(tag.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as canonical `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn family_tag(&self) -> Option<&str> {
        self.family_tag.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Degrees indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Degree sequence sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = self.degrees();
        deg.sort_unstable();
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Pairs `(u, v)` with `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The same graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Graph::new(self.n, edges)
    }

    /// Join: both graphs side by side plus all edges between them.
    /// Vertices of `other` are shifted by `self.n`.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        for u in 0..self.n {
            for v in 0..other.n {
                edges.push((u, v + self.n));
            }
        }
        Graph::new(n, edges).expect("join of valid graphs is valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph::new(n, edges).expect("disjoint union of valid graphs is valid")
    }

    /// Cartesian product. Vertex `(u1, u2)` is numbered `u1 * other.n + u2`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n = self.n * other.n;
        let idx = |u1: usize, u2: usize| u1 * other.n + u2;
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            for w in 0..other.n {
                edges.push((idx(u, w), idx(v, w)));
            }
        }
        for &(u, v) in &other.edges {
            for w in 0..self.n {
                edges.push((idx(w, u), idx(w, v)));
            }
        }
        Graph::new(n, edges).expect("cartesian product of valid graphs is valid")
    }

    /// Renders the human-readable edge list format: a `n=<k>` header line
    /// followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge list format produced by [`Graph::to_edge_list`].
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if n.is_some() {
                    return Err(GraphError::EdgeListParse {
                        line: lineno,
                        message: "duplicate n= header".into(),
                    });
                }
                n = Some(rest.trim().parse().map_err(|_| GraphError::EdgeListParse {
                    line: lineno,
                    message: format!("bad vertex count {rest:?}"),
                })?);
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(GraphError::EdgeListParse {
                        line: lineno,
                        message: format!("expected `u v`, got {line:?}"),
                    })
                }
            };
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::EdgeListParse {
                    line: lineno,
                    message: format!("bad vertex {s:?}"),
                })
            };
            edges.push((parse(u)?, parse(v)?));
        }
        let n = n.ok_or(GraphError::EdgeListParse {
            line: 0,
            message: "missing n= header".into(),
        })?;
        Graph::new(n, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family_tag {
            Some(tag) => write!(f, "{} (n={}, m={})", tag, self.n, self.edges.len()),
            None => write!(f, "graph (n={}, m={})", self.n, self.edges.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0))));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(2, [(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn canonical_edge_order() {
        let g = Graph::new(4, [(3, 1), (2, 0), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3)]);
        assert!(g.has_edge(1, 3) && g.has_edge(3, 1));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn join_k1_k1_is_k2() {
        let k1 = Graph::empty(1);
        let k2 = k1.join(&k1);
        assert_eq!(k2, FamilySpec::complete(2).unwrap().generate());
    }

    #[test]
    fn join_of_empties_is_complete_bipartite() {
        let j = Graph::empty(2).join(&Graph::empty(3));
        // parts {0,1} and {2,3,4}
        let expected = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(j, expected);
        assert_eq!(j.edge_count(), 6);
    }

    #[test]
    fn join_edge_count() {
        let g1 = FamilySpec::complete(3).unwrap().generate();
        let g2 = FamilySpec::cycle(4).unwrap().generate();
        let j = g1.join(&g2);
        assert_eq!(j.n(), 7);
        assert_eq!(j.edge_count(), 3 + 4 + 3 * 4);
    }

    #[test]
    fn disjoint_union_identity_and_shift() {
        let k3 = FamilySpec::complete(3).unwrap().generate();
        let g = k3.disjoint_union(&Graph::empty(0));
        assert_eq!(g, k3);
        let two = k3.disjoint_union(&k3);
        assert_eq!(two, FamilySpec::cluster(2, 3).unwrap().generate());
        let two_k4 = FamilySpec::complete(4)
            .unwrap()
            .generate()
            .disjoint_union(&FamilySpec::complete(4).unwrap().generate());
        assert_eq!(two_k4.edge_count(), 12);
        assert_eq!(two_k4, FamilySpec::cluster(2, 4).unwrap().generate());
    }

    #[test]
    fn cartesian_product_examples() {
        let p2 = FamilySpec::path(2).unwrap().generate();
        let q1 = FamilySpec::hypercube(1).unwrap().generate();
        // Q_1 square P_2 = C_4 = Q_2 (identical numbering)
        let q2 = q1.cartesian_product(&p2);
        assert_eq!(q2, FamilySpec::hypercube(2).unwrap().generate());

        let p3 = FamilySpec::path(3).unwrap().generate();
        assert_eq!(p3.cartesian_product(&p2), FamilySpec::ladder(6).unwrap().generate());

        let q3 = FamilySpec::hypercube(2).unwrap().generate().cartesian_product(&p2);
        assert_eq!(q3, FamilySpec::hypercube(3).unwrap().generate());
    }

    #[test]
    fn degree_sequence_examples() {
        let star = FamilySpec::complete_bipartite(1, 3).unwrap().generate();
        assert_eq!(star.degree_sequence(), vec![1, 1, 1, 3]);
        let q3 = FamilySpec::hypercube(3).unwrap().generate();
        assert_eq!(q3.degree_sequence(), vec![3; 8]);
        let ladder = FamilySpec::ladder(6).unwrap().generate();
        assert_eq!(ladder.degree_sequence(), vec![2, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = FamilySpec::ladder(6).unwrap().generate();
        let text = g.to_edge_list();
        assert!(text.starts_with("n=6\n"));
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
        assert!(Graph::from_edge_list("0 1\n").is_err());
        assert!(Graph::from_edge_list("n=2\n0 2\n").is_err());
    }
}
