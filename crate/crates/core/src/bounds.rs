//! Lower and upper bounds on the sum index, and the catalog of closed forms.
//!
//! The chain is `max_degree <= chromatic_index <= S(G) <= 2n-3`: adjacent
//! edges always get different rank sums, so the sums of any labeling induce a
//! proper edge coloring; and every graph embeds in the complete graph. The
//! degree-sequence bound (`haslegrave_bound`) is often stronger than the
//! coloring bound and is what makes the exact solver start close to the
//! answer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::FamilySpec;
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("graph has {0} vertices; need at least 2")]
    TooFewVertices(usize),
}

/// Max over `1 <= k <= n-1` of `d_k + d_{k+1} - k` on the ascending degree
/// sequence (1-indexed). A lower bound on the sum index; for a d-regular
/// graph it equals `2d - 1`.
pub fn haslegrave_bound(g: &Graph) -> Result<i64, BoundsError> {
    let n = g.n();
    if n < 2 {
        return Err(BoundsError::TooFewVertices(n));
    }
    let deg = g.degree_sequence();
    Ok((1..n)
        .map(|k| deg[k - 1] as i64 + deg[k] as i64 - k as i64)
        .max()
        .expect("n >= 2"))
}

/// Result of the chromatic index search. `lower` is always the max degree;
/// `upper` is the exact chromatic index when `exact` is set (the search
/// either found a max-degree edge coloring or exhausted all of them).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChromaticIndexBound {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

/// Determines whether the edges can be properly colored with `colors` colors.
/// `None` means the backtracking budget ran out.
fn edge_colorable(g: &Graph, colors: usize, max_nodes: u64) -> Option<bool> {
    let m = g.edge_count();
    if m == 0 {
        return Some(true);
    }
    if colors == 0 {
        return Some(false);
    }
    struct Search<'a> {
        edges: &'a [(usize, usize)],
        colors: usize,
        vertex_used: Vec<u64>,
        nodes: u64,
        max_nodes: u64,
    }

    impl Search<'_> {
        // canonical order: color c may be opened only after 0..c are in use
        fn dfs(&mut self, idx: usize, used: usize) -> Option<bool> {
            if idx == self.edges.len() {
                return Some(true);
            }
            let (u, v) = self.edges[idx];
            let blocked = self.vertex_used[u] | self.vertex_used[v];
            for c in 0..self.colors.min(used + 1) {
                if blocked & (1 << c) != 0 {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.max_nodes {
                    return None;
                }
                self.vertex_used[u] |= 1 << c;
                self.vertex_used[v] |= 1 << c;
                let res = self.dfs(idx + 1, used.max(c + 1));
                self.vertex_used[u] &= !(1 << c);
                self.vertex_used[v] &= !(1 << c);
                match res {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            Some(false)
        }
    }

    let mut search = Search {
        edges: g.edges(),
        colors,
        vertex_used: vec![0u64; g.n()],
        nodes: 0,
        max_nodes,
    };
    search.dfs(0, 0)
}

/// Brackets the chromatic index. The search looks for a proper edge coloring
/// with exactly `max_degree` colors; by Vizing's theorem the answer is either
/// that or one more. Budget exhaustion degrades to an inexact bracket.
pub fn chromatic_index(g: &Graph, max_nodes: u64) -> ChromaticIndexBound {
    let delta = g.max_degree();
    if g.edge_count() == 0 {
        return ChromaticIndexBound { lower: 0, upper: 0, exact: true };
    }
    match edge_colorable(g, delta, max_nodes) {
        Some(true) => ChromaticIndexBound { lower: delta, upper: delta, exact: true },
        Some(false) => ChromaticIndexBound { lower: delta, upper: delta + 1, exact: true },
        None => ChromaticIndexBound { lower: delta, upper: delta + 1, exact: false },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    ChromaticIndex,
    Haslegrave,
    TrivialOne,
    CompleteSubgraph,
    Edgeless,
}

/// Everything the bound chain knows about one graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_degree: usize,
    /// Known chromatic index bracket; equal when computed exactly.
    pub chromatic_index_lower: usize,
    pub chromatic_index_upper: usize,
    pub chromatic_index_exact: bool,
    /// Degree-sequence bound; absent for graphs with fewer than 2 vertices.
    pub haslegrave: Option<i64>,
    pub trivial_upper: usize,
    pub best_lower: usize,
    pub best_lower_method: BoundMethod,
    pub best_upper: usize,
    pub best_upper_method: BoundMethod,
}

/// Default backtracking budget for the chromatic index search. The value only
/// feeds a lower bound, so a cutoff just degrades to the max degree.
pub const CHROMATIC_NODE_BUDGET: u64 = 1_000_000;

/// Assembles the bound report. Edgeless graphs get the zero report: the sum
/// set is empty under every labeling, so the sum index is 0.
pub fn sum_index_bounds(g: &Graph, chromatic_nodes: u64) -> BoundReport {
    if g.edge_count() == 0 {
        return BoundReport {
            max_degree: 0,
            chromatic_index_lower: 0,
            chromatic_index_upper: 0,
            chromatic_index_exact: true,
            haslegrave: haslegrave_bound(g).ok(),
            trivial_upper: 0,
            best_lower: 0,
            best_lower_method: BoundMethod::Edgeless,
            best_upper: 0,
            best_upper_method: BoundMethod::Edgeless,
        };
    }
    let n = g.n(); // >= 2 since there is an edge
    let chrom = chromatic_index(g, chromatic_nodes);
    let chrom_lower = if chrom.exact { chrom.upper } else { chrom.lower };
    let haslegrave = haslegrave_bound(g).expect("n >= 2");
    let trivial_upper = 2 * n - 3;

    let mut best_lower = 1;
    let mut best_lower_method = BoundMethod::TrivialOne;
    if chrom_lower > best_lower {
        best_lower = chrom_lower;
        best_lower_method = BoundMethod::ChromaticIndex;
    }
    if haslegrave > best_lower as i64 {
        best_lower = haslegrave as usize;
        best_lower_method = BoundMethod::Haslegrave;
    }

    BoundReport {
        max_degree: g.max_degree(),
        chromatic_index_lower: chrom_lower,
        chromatic_index_upper: chrom.upper,
        chromatic_index_exact: chrom.exact,
        haslegrave: Some(haslegrave),
        trivial_upper,
        best_lower,
        best_lower_method,
        best_upper: trivial_upper,
        best_upper_method: BoundMethod::CompleteSubgraph,
    }
}

fn choose3(a: u64) -> u64 {
    if a < 3 {
        0
    } else {
        a * (a - 1) * (a - 2) / 6
    }
}

/// Capacity of `s` sum values for clusters of `K_3`s / `K_4`s: how many
/// clusters can be labeled with all sums drawn from an `s`-element set.
pub(crate) fn cluster_capacity(size: usize, s: u64) -> u64 {
    match size {
        3 => choose3(s),
        4 => choose3(s / 2) + choose3(s.div_ceil(2)),
        _ => unreachable!("capacity is defined for cluster sizes 3 and 4"),
    }
}

/// The closed-form sum index for catalog families, or `None` when the family
/// is not covered. Cluster formulas scan `s` upward until the binomial
/// capacity first reaches the number of clusters.
pub fn known_formula(spec: &FamilySpec) -> Option<u64> {
    match spec {
        FamilySpec::Complete { n } => Some(if *n == 1 { 0 } else { 2 * *n as u64 - 3 }),
        FamilySpec::CompleteBipartite { parts } => Some((parts[0] + parts[1] - 1) as u64),
        FamilySpec::CompleteMultipartite { parts } => {
            if parts.len() == 1 {
                return Some(0); // single part: no edges
            }
            let total: usize = parts.iter().sum();
            Some((2 * total - parts[0] - parts[1] - 1) as u64)
        }
        FamilySpec::Cycle { .. } => Some(3),
        FamilySpec::Hypercube { dim } => Some(2 * *dim as u64 - 1),
        FamilySpec::Cluster { copies, size } => match size {
            1 => Some(0), // no edges
            2 => Some(1),
            3 | 4 => {
                let n = *copies as u64;
                let mut s = 1u64;
                while cluster_capacity(*size, s) < n {
                    s += 1;
                }
                Some(s)
            }
            _ => None, // open beyond cluster size 4
        },
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haslegrave_on_regular_graphs() {
        for (spec, d) in [
            (FamilySpec::cycle(7).unwrap(), 2usize),
            (FamilySpec::hypercube(3).unwrap(), 3),
            (FamilySpec::complete(5).unwrap(), 4),
        ] {
            let g = spec.generate();
            assert_eq!(haslegrave_bound(&g).unwrap(), 2 * d as i64 - 1, "{}", spec.tag());
        }
    }

    #[test]
    fn haslegrave_examples() {
        // oracle: evaluate every k by hand on the ascending degree sequence
        let star = FamilySpec::complete_bipartite(1, 3).unwrap().generate();
        let deg = star.degree_sequence();
        let by_hand = (1..4).map(|k| deg[k - 1] as i64 + deg[k] as i64 - k as i64).max().unwrap();
        assert_eq!(by_hand, 1);
        assert_eq!(haslegrave_bound(&star).unwrap(), 1);

        let ladder = FamilySpec::ladder(6).unwrap().generate();
        assert_eq!(haslegrave_bound(&ladder).unwrap(), 3);

        assert!(haslegrave_bound(&Graph::empty(1)).is_err());
    }

    #[test]
    fn haslegrave_invariant_under_renumbering() {
        let g = FamilySpec::ladder(8).unwrap().generate();
        let n = g.n();
        // an arbitrary relabeling permutation
        let perm: Vec<usize> = (0..n).map(|v| (3 * v + 1) % n).collect();
        let h = Graph::new(n, g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect::<Vec<_>>()).unwrap();
        assert_eq!(haslegrave_bound(&g).unwrap(), haslegrave_bound(&h).unwrap());
    }

    #[test]
    fn chromatic_index_examples() {
        let c4 = FamilySpec::cycle(4).unwrap().generate();
        assert_eq!(
            chromatic_index(&c4, CHROMATIC_NODE_BUDGET),
            ChromaticIndexBound { lower: 2, upper: 2, exact: true }
        );
        // K_3: no proper 2-edge-coloring exists
        let k3 = FamilySpec::complete(3).unwrap().generate();
        assert_eq!(
            chromatic_index(&k3, CHROMATIC_NODE_BUDGET),
            ChromaticIndexBound { lower: 2, upper: 3, exact: true }
        );
        // Petersen graph with a tiny budget degrades gracefully
        let petersen = Graph::new(
            10,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(
            chromatic_index(&petersen, 10),
            ChromaticIndexBound { lower: 3, upper: 4, exact: false }
        );
        // with budget it resolves to class two
        assert_eq!(
            chromatic_index(&petersen, CHROMATIC_NODE_BUDGET),
            ChromaticIndexBound { lower: 3, upper: 4, exact: true }
        );
    }

    #[test]
    fn bound_reports() {
        // K_4: degree bound 5 meets the trivial upper bound 5
        let k4 = FamilySpec::complete(4).unwrap().generate();
        let r = sum_index_bounds(&k4, CHROMATIC_NODE_BUDGET);
        assert_eq!((r.best_lower, r.best_upper), (5, 5));
        assert_eq!(r.best_lower_method, BoundMethod::Haslegrave);

        let q3 = FamilySpec::hypercube(3).unwrap().generate();
        let r = sum_index_bounds(&q3, CHROMATIC_NODE_BUDGET);
        assert_eq!((r.best_lower, r.best_upper), (5, 13));

        let p3 = FamilySpec::path(3).unwrap().generate();
        let r = sum_index_bounds(&p3, CHROMATIC_NODE_BUDGET);
        assert_eq!((r.best_lower, r.best_upper), (2, 3));
        assert_eq!(r.best_lower_method, BoundMethod::ChromaticIndex);

        let edgeless = Graph::empty(4);
        let r = sum_index_bounds(&edgeless, CHROMATIC_NODE_BUDGET);
        assert_eq!((r.best_lower, r.best_upper), (0, 0));
    }

    #[test]
    fn closed_form_catalog() {
        assert_eq!(known_formula(&FamilySpec::complete(5).unwrap()), Some(7));
        assert_eq!(known_formula(&FamilySpec::complete(1).unwrap()), Some(0));
        // 3K_3: C(3,3) = 1 < 3 <= C(4,3) = 4
        assert_eq!(known_formula(&FamilySpec::cluster(3, 3).unwrap()), Some(4));
        // 2K_4: s=5 gives C(2,3)+C(3,3) = 1 < 2; s=6 gives C(3,3)+C(3,3) = 2
        assert_eq!(known_formula(&FamilySpec::cluster(2, 4).unwrap()), Some(6));
        assert_eq!(known_formula(&FamilySpec::cluster(1, 4).unwrap()), Some(5));
        assert_eq!(known_formula(&FamilySpec::cluster(5, 2).unwrap()), Some(1));
        assert_eq!(known_formula(&FamilySpec::complete_multipartite(vec![2, 1, 1]).unwrap()), Some(4));
        assert_eq!(known_formula(&FamilySpec::cycle(8).unwrap()), Some(3));
        assert_eq!(known_formula(&FamilySpec::hypercube(3).unwrap()), Some(5));
        assert_eq!(known_formula(&FamilySpec::path(5).unwrap()), None);
        assert_eq!(known_formula(&FamilySpec::cluster(2, 5).unwrap()), None);
    }

    #[test]
    fn multipartite_formula_consistent_with_bipartite() {
        for m in 1..=6usize {
            for n in 1..=6usize {
                let two_part = known_formula(&FamilySpec::complete_multipartite(vec![m, n]).unwrap());
                let bipartite = known_formula(&FamilySpec::complete_bipartite(m, n).unwrap());
                assert_eq!(two_part, bipartite, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn bound_chain_on_small_graphs() {
        for spec in [
            FamilySpec::complete(4).unwrap(),
            FamilySpec::cycle(5).unwrap(),
            FamilySpec::complete_bipartite(2, 3).unwrap(),
            FamilySpec::ladder(6).unwrap(),
            FamilySpec::threshold_tail(5).unwrap(),
        ] {
            let g = spec.generate();
            let r = sum_index_bounds(&g, CHROMATIC_NODE_BUDGET);
            assert!(g.max_degree() <= r.chromatic_index_lower);
            assert!(r.chromatic_index_lower <= r.best_lower);
            assert!(r.best_lower <= r.best_upper);
            assert_eq!(r.best_upper, 2 * g.n() - 3);
        }
    }
}
