//! Deterministic generators for every graph family used in the crate.
//!
//! Vertex numbering conventions are frozen because the labeling constructions
//! assign ranks by position:
//!
//! * `complete(n)`: vertices `0..n`.
//! * `complete_bipartite(m, n)` / `complete_multipartite(parts)`: parts are
//!   normalized to non-increasing size order and laid out consecutively, so
//!   part `i` occupies the next `parts[i]` vertices.
//! * `cycle(m)`: edges `(i, i+1 mod m)`.
//! * `path(n)`: edges `(i, i+1)`.
//! * `hypercube(d)`: vertices are binary indices `0..2^d`; edges join indices
//!   differing in exactly one bit.
//! * `cluster(c, k)` (`c` copies of `K_k`): copy `i` occupies vertices
//!   `i*k..(i+1)*k`.
//! * `ladder(2k)`: `P_k` square `P_2` with product numbering `(i, j) -> 2i+j`.
//! * `threshold_tail(n)` (`L_n`): vertices `v_1..v_n` stored 0-based; edges are
//!   exactly the pairs with `i != j` and `i + j >= n + 2` in 1-based labels.
//! * `join_family(parts)`: `L_{n1} v L_{n2} v K_{n3} v ... v K_{nk}`, parts
//!   consecutive in order.

use crate::graph::{Graph, GraphError};

/// A named graph family together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Complete { n: usize },
    /// Part sizes, non-increasing.
    CompleteBipartite { parts: [usize; 2] },
    /// Part sizes, non-increasing, at least one part.
    CompleteMultipartite { parts: Vec<usize> },
    Cycle { len: usize },
    Path { n: usize },
    Hypercube { dim: usize },
    /// `copies` disjoint copies of `K_size`.
    Cluster { copies: usize, size: usize },
    /// Total vertex count (even): `P_{n/2}` square `P_2`.
    Ladder { n: usize },
    /// The graph `L_n`.
    ThresholdTail { n: usize },
    /// `L_{n1} v L_{n2} v K_{n3} v ... v K_{nk}`, sizes non-increasing.
    JoinFamily { parts: Vec<usize> },
}

fn positive(params: &[usize], what: &str) -> Result<(), GraphError> {
    if params.contains(&0) {
        return Err(GraphError::InvalidParams(format!("{what}: sizes must be positive")));
    }
    Ok(())
}

impl FamilySpec {
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        positive(&[n], "complete")?;
        Ok(FamilySpec::Complete { n })
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Result<Self, GraphError> {
        positive(&[m, n], "complete_bipartite")?;
        Ok(FamilySpec::CompleteBipartite { parts: [m.max(n), m.min(n)] })
    }

    /// Part sizes are normalized to non-increasing order.
    pub fn complete_multipartite(parts: impl Into<Vec<usize>>) -> Result<Self, GraphError> {
        let mut parts = parts.into();
        if parts.is_empty() {
            return Err(GraphError::InvalidParams("complete_multipartite: no parts".into()));
        }
        positive(&parts, "complete_multipartite")?;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FamilySpec::CompleteMultipartite { parts })
    }

    pub fn cycle(len: usize) -> Result<Self, GraphError> {
        if len < 3 {
            return Err(GraphError::InvalidParams(format!("cycle: need length >= 3, got {len}")));
        }
        Ok(FamilySpec::Cycle { len })
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        positive(&[n], "path")?;
        Ok(FamilySpec::Path { n })
    }

    pub fn hypercube(dim: usize) -> Result<Self, GraphError> {
        if dim == 0 || dim > 13 {
            return Err(GraphError::InvalidParams(format!("hypercube: dimension {dim} out of range 1..=13")));
        }
        Ok(FamilySpec::Hypercube { dim })
    }

    pub fn cluster(copies: usize, size: usize) -> Result<Self, GraphError> {
        positive(&[copies, size], "cluster")?;
        Ok(FamilySpec::Cluster { copies, size })
    }

    pub fn ladder(n: usize) -> Result<Self, GraphError> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(GraphError::InvalidParams(format!("ladder: need an even vertex count >= 2, got {n}")));
        }
        Ok(FamilySpec::Ladder { n })
    }

    pub fn threshold_tail(n: usize) -> Result<Self, GraphError> {
        positive(&[n], "threshold_tail")?;
        Ok(FamilySpec::ThresholdTail { n })
    }

    /// Part sizes are normalized to non-increasing order.
    pub fn join_family(parts: impl Into<Vec<usize>>) -> Result<Self, GraphError> {
        let mut parts = parts.into();
        if parts.len() < 2 {
            return Err(GraphError::InvalidParams("join_family: need at least two parts".into()));
        }
        positive(&parts, "join_family")?;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FamilySpec::JoinFamily { parts })
    }

    /// Builds a spec from a kind name and parameter list (CLI entry point).
    pub fn from_kind_params(kind: &str, params: &[usize]) -> Result<Self, GraphError> {
        let arity = |want: usize| -> Result<(), GraphError> {
            if params.len() != want {
                Err(GraphError::InvalidParams(format!(
                    "{kind}: expected {want} parameter(s), got {}",
                    params.len()
                )))
            } else {
                Ok(())
            }
        };
        match kind {
            "complete" => {
                arity(1)?;
                FamilySpec::complete(params[0])
            }
            "complete_bipartite" | "bipartite" => {
                arity(2)?;
                FamilySpec::complete_bipartite(params[0], params[1])
            }
            "complete_multipartite" | "multipartite" => FamilySpec::complete_multipartite(params),
            "cycle" => {
                arity(1)?;
                FamilySpec::cycle(params[0])
            }
            "path" => {
                arity(1)?;
                FamilySpec::path(params[0])
            }
            "hypercube" => {
                arity(1)?;
                FamilySpec::hypercube(params[0])
            }
            "cluster" => {
                arity(2)?;
                FamilySpec::cluster(params[0], params[1])
            }
            "ladder" => {
                arity(1)?;
                FamilySpec::ladder(params[0])
            }
            "threshold_tail" => {
                arity(1)?;
                FamilySpec::threshold_tail(params[0])
            }
            "join_family" | "join-family" => FamilySpec::join_family(params),
            other => Err(GraphError::InvalidParams(format!("unknown family kind {other:?}"))),
        }
    }

    /// Human-readable tag, also attached to generated graphs.
    pub fn tag(&self) -> String {
        fn list(parts: &[usize]) -> String {
            parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
        match self {
            FamilySpec::Complete { n } => format!("K_{n}"),
            FamilySpec::CompleteBipartite { parts } => format!("K_{{{},{}}}", parts[0], parts[1]),
            FamilySpec::CompleteMultipartite { parts } => format!("K_{{{}}}", list(parts)),
            FamilySpec::Cycle { len } => format!("C_{len}"),
            FamilySpec::Path { n } => format!("P_{n}"),
            FamilySpec::Hypercube { dim } => format!("Q_{dim}"),
            FamilySpec::Cluster { copies, size } => format!("{copies}K_{size}"),
            FamilySpec::Ladder { n } => format!("ladder_{n}"),
            FamilySpec::ThresholdTail { n } => format!("L_{n}"),
            FamilySpec::JoinFamily { parts } => format!("join[{}]", list(parts)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            FamilySpec::Complete { n } => *n,
            FamilySpec::CompleteBipartite { parts } => parts[0] + parts[1],
            FamilySpec::CompleteMultipartite { parts } => parts.iter().sum(),
            FamilySpec::Cycle { len } => *len,
            FamilySpec::Path { n } => *n,
            FamilySpec::Hypercube { dim } => 1usize << dim,
            FamilySpec::Cluster { copies, size } => copies * size,
            FamilySpec::Ladder { n } => *n,
            FamilySpec::ThresholdTail { n } => *n,
            FamilySpec::JoinFamily { parts } => parts.iter().sum(),
        }
    }

    /// Generates the graph. Deterministic: identical output across runs.
    pub fn generate(&self) -> Graph {
        let g = match self {
            FamilySpec::Complete { n } => complete(*n),
            FamilySpec::CompleteBipartite { parts } => multipartite(&parts[..]),
            FamilySpec::CompleteMultipartite { parts } => multipartite(parts),
            FamilySpec::Cycle { len } => {
                let m = *len;
                Graph::new(m, (0..m).map(|i| (i, (i + 1) % m))).unwrap()
            }
            FamilySpec::Path { n } => path(*n),
            FamilySpec::Hypercube { dim } => hypercube(*dim),
            FamilySpec::Cluster { copies, size } => {
                let (c, k) = (*copies, *size);
                let mut edges = Vec::new();
                for i in 0..c {
                    let base = i * k;
                    for u in 0..k {
                        for v in (u + 1)..k {
                            edges.push((base + u, base + v));
                        }
                    }
                }
                Graph::new(c * k, edges).unwrap()
            }
            FamilySpec::Ladder { n } => path(n / 2).cartesian_product(&path(2)),
            FamilySpec::ThresholdTail { n } => threshold_tail(*n),
            FamilySpec::JoinFamily { parts } => {
                let mut g = threshold_tail(parts[0]);
                for (i, &p) in parts.iter().enumerate().skip(1) {
                    let part = if i == 1 { threshold_tail(p) } else { complete(p) };
                    g = g.join(&part);
                }
                g
            }
        };
        g.with_tag(self.tag())
    }
}

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).unwrap()
}

fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

fn multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut start = Vec::with_capacity(parts.len() + 1);
    let mut acc = 0;
    for &p in parts {
        start.push(acc);
        acc += p;
    }
    start.push(acc);
    let mut edges = Vec::new();
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            for u in start[i]..start[i + 1] {
                for v in start[j]..start[j + 1] {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn hypercube(dim: usize) -> Graph {
    let n = 1usize << dim;
    let mut edges = Vec::new();
    for v in 0..n {
        for b in 0..dim {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// `L_n`: 1-based labels, edges exactly the pairs `i != j` with `i + j >= n + 2`.
fn threshold_tail(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if i + j >= n + 2 {
                edges.push((i - 1, j - 1));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        let k4 = FamilySpec::complete(4).unwrap().generate();
        assert_eq!((k4.n(), k4.edge_count()), (4, 6));
        assert_eq!(k4.family_tag(), Some("K_4"));
    }

    #[test]
    fn hypercube_is_regular() {
        let q3 = FamilySpec::hypercube(3).unwrap().generate();
        assert_eq!((q3.n(), q3.edge_count()), (8, 12));
        assert!(q3.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn threshold_tail_edges() {
        // oracle: enumerate all 1-based pairs i != j with i + j >= n + 2
        for n in 1..=8 {
            let mut expected = Vec::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if i + j >= n + 2 {
                        expected.push((i - 1, j - 1));
                    }
                }
            }
            expected.sort_unstable();
            let g = FamilySpec::threshold_tail(n).unwrap().generate();
            assert_eq!(g.edges(), &expected[..], "L_{n}");
        }
        let l4 = FamilySpec::threshold_tail(4).unwrap().generate();
        assert_eq!(l4.edges(), &[(1, 3), (2, 3)]);
        // L_2 has no edges: the only pair 1+2 = 3 < 4
        assert_eq!(FamilySpec::threshold_tail(2).unwrap().generate().edge_count(), 0);
        // v_i has i-1 or i-2 neighbors
        for n in 1..=8 {
            let g = FamilySpec::threshold_tail(n).unwrap().generate();
            for (v, d) in g.degrees().into_iter().enumerate() {
                let i = v + 1;
                assert!(d + 1 == i || d + 2 == i, "L_{n} vertex {i} has degree {d}");
            }
        }
    }

    #[test]
    fn ladder_is_p3_times_p2() {
        let g = FamilySpec::ladder(6).unwrap().generate();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        assert_eq!(g.degree_sequence(), vec![2, 2, 2, 2, 3, 3]);
        assert!(FamilySpec::ladder(5).is_err());
    }

    #[test]
    fn multipartite_normalizes_parts() {
        let spec = FamilySpec::complete_multipartite(vec![1, 3, 2]).unwrap();
        assert_eq!(spec, FamilySpec::CompleteMultipartite { parts: vec![3, 2, 1] });
        let g = spec.generate();
        assert_eq!((g.n(), g.edge_count()), (6, 3 * 2 + 3 + 2));
    }

    #[test]
    fn iterated_join_of_empties_matches_multipartite() {
        for parts in [vec![3, 2], vec![3, 2, 1], vec![2, 2, 2], vec![4, 1, 1]] {
            let mut j = Graph::empty(parts[0]);
            for &p in &parts[1..] {
                j = j.join(&Graph::empty(p));
            }
            let spec = FamilySpec::complete_multipartite(parts.clone()).unwrap();
            assert_eq!(j, spec.generate(), "parts {parts:?}");
        }
    }

    #[test]
    fn hypercube_matches_iterated_product() {
        let p2 = FamilySpec::path(2).unwrap().generate();
        let mut g = FamilySpec::hypercube(1).unwrap().generate();
        for dim in 2..=6 {
            g = g.cartesian_product(&p2);
            assert_eq!(g, FamilySpec::hypercube(dim).unwrap().generate(), "Q_{dim}");
        }
    }

    #[test]
    fn join_family_l2_l2_is_k22() {
        // L_2 is edgeless, so the join of two of them is the complete bipartite K_{2,2}
        let g = FamilySpec::join_family(vec![2, 2]).unwrap().generate();
        assert_eq!(g.edge_count(), 4);
        let k22 = FamilySpec::complete_bipartite(2, 2).unwrap().generate();
        assert_eq!(g.edges(), k22.edges());
    }

    #[test]
    fn join_family_structure() {
        // join[3,2]: L_3 has edge set {(v_2, v_3)}, L_2 none, plus 6 cross edges
        let g = FamilySpec::join_family(vec![2, 3]).unwrap().generate();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 1 + 6);
        assert!(g.has_edge(1, 2));
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(FamilySpec::complete(0).is_err());
        assert!(FamilySpec::cycle(2).is_err());
        assert!(FamilySpec::complete_multipartite(vec![2, 0]).is_err());
        assert!(FamilySpec::join_family(vec![3]).is_err());
        assert!(FamilySpec::from_kind_params("nosuch", &[1]).is_err());
        assert!(FamilySpec::from_kind_params("complete", &[]).is_err());
    }
}
