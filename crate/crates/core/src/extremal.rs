//! Maximum edge counts for a fixed sum index.
//!
//! Exhaustive side: isomorphism-free enumeration of all graphs on up to 7
//! vertices (canonical form by minimizing the edge bitmask over all vertex
//! permutations) and an exact solver pass per class. Formula side: the
//! Turan-type bound, the degree-sum upper bound, the layered-construction
//! lower bound with its parity term, and the closed forms for sum index at
//! most 3. The table assembles both sides with per-entry tightness flags.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::encode_graph6;
use crate::solver::{sum_index_exact, SolverConfig, SolverError};

/// Enumeration is limited to this many vertices (at most 5040 permutations
/// per canonical form).
pub const MAX_ENUM_VERTICES: usize = 7;

#[derive(Debug, Error)]
pub enum ExtremalError {
    #[error("graph enumeration supports up to {MAX_ENUM_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("solver budget ran out on {0}")]
    Unresolved(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Column-major index of the pair `(u, v)` with `u < v`.
fn pair_index(u: usize, v: usize) -> usize {
    v * (v - 1) / 2 + u
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// For each permutation, where each pair bit moves.
fn pair_tables(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let bits = n * (n - 1) / 2;
    perms
        .iter()
        .map(|perm| {
            let mut table = vec![0usize; bits];
            for v in 0..n {
                for u in 0..v {
                    let (a, b) = (perm[u], perm[v]);
                    table[pair_index(u, v)] = pair_index(a.min(b), a.max(b));
                }
            }
            table
        })
        .collect()
}

fn apply_table(mask: u32, table: &[usize]) -> u32 {
    let mut out = 0u32;
    let mut rest = mask;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        out |= 1 << table[bit];
        rest &= rest - 1;
    }
    out
}

fn mask_of(g: &Graph) -> u32 {
    let mut mask = 0u32;
    for &(u, v) in g.edges() {
        mask |= 1 << pair_index(u, v);
    }
    mask
}

fn graph_of(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if mask & (1 << pair_index(u, v)) != 0 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("mask encodes a valid simple graph")
}

/// Canonical key of a graph on at most 7 vertices: the minimum edge bitmask
/// over all vertex permutations. Two graphs are isomorphic exactly when their
/// keys (and vertex counts) agree.
pub fn canonical_key(g: &Graph) -> Result<(usize, u32), ExtremalError> {
    let n = g.n();
    if n > MAX_ENUM_VERTICES {
        return Err(ExtremalError::TooManyVertices(n));
    }
    let perms = permutations(n);
    let tables = pair_tables(n, &perms);
    let mask = mask_of(g);
    let min = tables.iter().map(|t| apply_table(mask, t)).min().unwrap_or(0);
    Ok((n, min))
}

/// All graphs on `n` vertices, exactly one representative per isomorphism
/// class, in ascending canonical-mask order. Built by extending each class on
/// `n - 1` vertices with every possible neighborhood of a new vertex.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, ExtremalError> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(ExtremalError::TooManyVertices(n));
    }
    let mut level: Vec<u32> = vec![0]; // the single graph on one vertex
    for k in 2..=n {
        let perms = permutations(k);
        let tables = pair_tables(k, &perms);
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for &base in &level {
            for nbrs in 0..(1u32 << (k - 1)) {
                let mut mask = base;
                for u in 0..(k - 1) {
                    if nbrs & (1 << u) != 0 {
                        mask |= 1 << pair_index(u, k - 1);
                    }
                }
                let canon = tables.iter().map(|t| apply_table(mask, t)).min().unwrap();
                seen.insert(canon);
            }
        }
        level = seen.into_iter().collect();
    }
    Ok(level.into_iter().map(|mask| graph_of(n, mask)).collect())
}

/// Exact sum index for every isomorphism class on `n` vertices. With
/// `threads > 1` the per-class solves run on a rayon pool; the output order
/// is the enumeration order either way.
pub fn solve_all_classes(
    n: usize,
    cfg: &SolverConfig,
    threads: usize,
) -> Result<Vec<(Graph, Option<usize>)>, ExtremalError> {
    let classes = enumerate_graphs(n)?;
    let solve = |g: &Graph| -> Result<Option<usize>, ExtremalError> {
        Ok(sum_index_exact(g, cfg)?.sum_index)
    };
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| ExtremalError::InvalidParams(format!("thread pool: {e}")))?;
        let values: Result<Vec<Option<usize>>, ExtremalError> =
            pool.install(|| classes.par_iter().map(solve).collect());
        Ok(classes.into_iter().zip(values?).collect())
    } else {
        let mut out = Vec::with_capacity(classes.len());
        for g in classes {
            let v = solve(&g)?;
            out.push((g, v));
        }
        Ok(out)
    }
}

/// Maximum edge count over all graphs on `n` vertices with the given exact
/// sum index, with a witness; `None` when no such graph exists. Ties go to
/// the first class in enumeration order.
pub fn max_edges_exact(
    n: usize,
    sum_index: usize,
    cfg: &SolverConfig,
) -> Result<Option<(usize, Graph)>, ExtremalError> {
    if n > 6 {
        return Err(ExtremalError::TooManyVertices(n));
    }
    let mut best: Option<(usize, Graph)> = None;
    for (g, value) in solve_all_classes(n, cfg, 1)? {
        let Some(value) = value else {
            return Err(ExtremalError::Unresolved(encode_graph6(&g)));
        };
        if value == sum_index && best.as_ref().is_none_or(|(m, _)| g.edge_count() > *m) {
            best = Some((g.edge_count(), g));
        }
    }
    Ok(best)
}

/// Closed forms for sum index 1, 2, and 3: a perfect matching layer, a linear
/// forest, and the ladder-type bound. `None` outside that range.
pub fn max_edges_closed_form(n: usize, sum_index: usize) -> Option<u64> {
    match sum_index {
        1 => Some(n as u64 / 2),
        2 => Some(n as u64 - 1),
        3 => Some(if n.is_multiple_of(2) { 3 * n as u64 / 2 - 2 } else { 3 * (n as u64 - 1) / 2 }),
        _ => None,
    }
}

/// Turan-type bound: a graph with sum index `N` has no complete subgraph on
/// `ceil(N/2) + 2` vertices, so `|E| <= (1 - 1/r) n^2 / 2` with
/// `r = ceil(N/2) + 1`.
pub fn turan_bound(n: usize, sum_index: usize) -> u64 {
    let r = (sum_index as u64).div_ceil(2) + 1;
    (r - 1) * (n as u64) * (n as u64) / (2 * r)
}

/// Degree-sum upper bound on the edge count of a graph with `n` vertices and
/// sum index `N`, piecewise in whether `N` reaches `n`.
pub fn ubeg_bound(n: usize, sum_index: usize) -> Result<u64, ExtremalError> {
    if n < 2 || sum_index < 1 {
        return Err(ExtremalError::InvalidParams(format!(
            "ubeg bound needs n >= 2 and N >= 1, got n = {n}, N = {sum_index}"
        )));
    }
    let (n, nn) = (n as i64, sum_index as i64);
    let half = (nn + 1) / 2;
    let eighth = if nn < n {
        4 * nn * n - nn * nn - nn + 2 * half
    } else {
        2 * nn * n + n * n - 2 * nn + n + 2 * half - 2
    };
    Ok(eighth.div_euclid(8) as u64)
}

/// Edge count of the layered construction: the sum of its `N` layer sizes
/// `floor(n/2), floor((n-1)/2), floor((n-1)/2), floor((n-2)/2), ...`.
pub fn lbeg_count(n: usize, sum_index: usize) -> Result<u64, ExtremalError> {
    if n < 2 || sum_index < 1 || sum_index > 2 * n - 3 {
        return Err(ExtremalError::InvalidParams(format!(
            "lbeg count needs 1 <= N <= 2n-3, got n = {n}, N = {sum_index}"
        )));
    }
    Ok((0..sum_index).map(|i| ((n - i.div_ceil(2)) / 2) as u64).sum())
}

/// The closed form `Nn/2 - N^2/8 - N/4 + eps` for [`lbeg_count`], with the
/// parity term `eps` in eighths: 0 for even `N`, else +3/8 or -1/8 depending
/// on `n mod 2` and `N mod 4`.
pub fn lbeg_closed_form(n: usize, sum_index: usize) -> Result<u64, ExtremalError> {
    if n < 2 || sum_index < 1 || sum_index > 2 * n - 3 {
        return Err(ExtremalError::InvalidParams(format!(
            "lbeg closed form needs 1 <= N <= 2n-3, got n = {n}, N = {sum_index}"
        )));
    }
    let (n, nn) = (n as i64, sum_index as i64);
    let eps8 = if nn % 2 == 0 {
        0
    } else if (n % 2 == 0 && nn % 4 == 1) || (n % 2 == 1 && nn % 4 == 3) {
        3
    } else {
        -1
    };
    let eighth = 4 * nn * n - nn * nn - 2 * nn + eps8;
    debug_assert_eq!(eighth % 8, 0);
    Ok((eighth / 8) as u64)
}

/// One row of the extremal table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub n: usize,
    pub sum_index: usize,
    pub max_edges: usize,
    pub witness_graph6: String,
    pub lbeg: u64,
    pub ubeg: u64,
    pub turan: u64,
    /// Whether the layered construction is optimal here.
    pub tight: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalTable {
    pub entries: Vec<ExtremalEntry>,
    /// graph6 strings of classes the solver could not resolve in budget;
    /// empty for a complete table.
    pub unresolved: Vec<String>,
}

impl ExtremalTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,N,max_edges,lbeg,ubeg,turan,tight\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                e.n, e.sum_index, e.max_edges, e.lbeg, e.ubeg, e.turan, e.tight
            ));
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn entry(&self, n: usize, sum_index: usize) -> Option<&ExtremalEntry> {
        self.entries.iter().find(|e| e.n == n && e.sum_index == sum_index)
    }
}

/// Builds the exact extremal table for all `2 <= n <= n_max` and every
/// realized sum index. Classes the solver cannot resolve are reported in
/// `unresolved` rather than silently dropped.
pub fn build_table(n_max: usize, cfg: &SolverConfig, threads: usize) -> Result<ExtremalTable, ExtremalError> {
    if n_max > 6 {
        return Err(ExtremalError::TooManyVertices(n_max));
    }
    let mut entries: Vec<ExtremalEntry> = Vec::new();
    let mut unresolved = Vec::new();
    for n in 2..=n_max {
        let solved = solve_all_classes(n, cfg, threads)?;
        for target in 1..=(2 * n - 3) {
            let mut best: Option<(usize, &Graph)> = None;
            for (g, value) in &solved {
                if *value == Some(target) && best.is_none_or(|(m, _)| g.edge_count() > m) {
                    best = Some((g.edge_count(), g));
                }
            }
            if let Some((max_edges, witness)) = best {
                let lbeg = lbeg_count(n, target)?;
                entries.push(ExtremalEntry {
                    n,
                    sum_index: target,
                    max_edges,
                    witness_graph6: encode_graph6(witness),
                    lbeg,
                    ubeg: ubeg_bound(n, target)?,
                    turan: turan_bound(n, target),
                    tight: max_edges as u64 == lbeg,
                });
            }
        }
        for (g, value) in &solved {
            if value.is_none() {
                unresolved.push(encode_graph6(g));
            }
        }
    }
    Ok(ExtremalTable { entries, unresolved })
}

/// Per-entry comparison of the exact maximum against the layered
/// construction, for probing where the construction is optimal. Reports only;
/// asserts nothing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub sum_index: usize,
    pub max_edges: usize,
    pub lbeg: u64,
    pub tight: bool,
}

pub fn conjecture_probe(n_max: usize, cfg: &SolverConfig, threads: usize) -> Result<ConjectureReport, ExtremalError> {
    let table = build_table(n_max, cfg, threads)?;
    Ok(ConjectureReport {
        rows: table
            .entries
            .iter()
            .map(|e| ConjectureRow {
                n: e.n,
                sum_index: e.sum_index,
                max_edges: e.max_edges,
                lbeg: e.lbeg,
                tight: e.tight,
            })
            .collect(),
    })
}

impl ConjectureReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,N,max_edges,lbeg,tight\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.sum_index, r.max_edges, r.lbeg, r.tight));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    #[test]
    fn class_counts_match_the_literature() {
        // 1, 2, 4, 11, 34, 156 classes on 1..=6 vertices
        let expected = [1usize, 2, 4, 11, 34, 156];
        for (n, &count) in (1..=6).zip(&expected) {
            assert_eq!(enumerate_graphs(n).unwrap().len(), count, "n = {n}");
        }
        assert!(enumerate_graphs(8).is_err());
    }

    #[test]
    fn brute_force_count_agrees_for_small_n() {
        // oracle: canonicalize all 2^C(n,2) labeled graphs directly
        for n in 1..=4usize {
            let bits = n * (n - 1) / 2;
            let perms = permutations(n);
            let tables = pair_tables(n, &perms);
            let mut canon_set = BTreeSet::new();
            for mask in 0..(1u32 << bits) {
                canon_set.insert(tables.iter().map(|t| apply_table(mask, t)).min().unwrap());
            }
            assert_eq!(enumerate_graphs(n).unwrap().len(), canon_set.len(), "n = {n}");
        }
    }

    #[test]
    fn canonical_key_identifies_isomorphs() {
        let ladder = FamilySpec::ladder(6).unwrap().generate();
        let relabeled = Graph::new(
            6,
            ladder.edges().iter().map(|&(u, v)| ((u + 4) % 6, (v + 4) % 6)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(canonical_key(&ladder).unwrap(), canonical_key(&relabeled).unwrap());
        let c6 = FamilySpec::cycle(6).unwrap().generate();
        assert_ne!(canonical_key(&ladder).unwrap(), canonical_key(&c6).unwrap());
    }

    #[test]
    fn turan_bound_examples() {
        assert_eq!(turan_bound(6, 3), 12);
        assert_eq!(turan_bound(4, 5), 6);
        assert_eq!(turan_bound(2, 1), 1);
    }

    #[test]
    fn ubeg_bound_examples() {
        assert_eq!(ubeg_bound(6, 3).unwrap(), 8);
        assert_eq!(ubeg_bound(4, 5).unwrap(), 6);
        for n in 3..=12 {
            assert_eq!(ubeg_bound(n, 2).unwrap(), n as u64 - 1, "n = {n}");
        }
        assert!(ubeg_bound(1, 1).is_err());
    }

    #[test]
    fn lbeg_count_examples() {
        assert_eq!(lbeg_count(6, 3).unwrap(), 7);
        assert_eq!(lbeg_count(5, 3).unwrap(), 6);
        // floor(7/2) + 2*floor(6/2) + floor(5/2) = 3 + 6 + 2
        assert_eq!(lbeg_count(7, 4).unwrap(), 11);
        assert!(lbeg_count(4, 6).is_err());
    }

    #[test]
    fn lbeg_closed_form_matches_floor_sum() {
        for n in 2..=30 {
            for target in 1..=(2 * n - 3) {
                assert_eq!(
                    lbeg_count(n, target).unwrap(),
                    lbeg_closed_form(n, target).unwrap(),
                    "n = {n}, N = {target}"
                );
            }
        }
    }

    #[test]
    fn closed_forms_for_low_sum_index() {
        assert_eq!(max_edges_closed_form(10, 1), Some(5));
        assert_eq!(max_edges_closed_form(10, 2), Some(9));
        assert_eq!(max_edges_closed_form(6, 3), Some(7));
        assert_eq!(max_edges_closed_form(6, 4), None);
    }

    #[test]
    fn max_edges_exact_small_cases() {
        let cfg = SolverConfig::default();
        let (m, witness) = max_edges_exact(4, 3, &cfg).unwrap().unwrap();
        assert_eq!(m, 4);
        // the witness really has 4 edges and sum index 3 (C_4 ties with the
        // paw graph here; enumeration order decides)
        assert_eq!(witness.edge_count(), 4);
        assert_eq!(sum_index_exact(&witness, &cfg).unwrap().sum_index, Some(3));
        let c4 = FamilySpec::cycle(4).unwrap().generate();
        assert_eq!(sum_index_exact(&c4, &cfg).unwrap().sum_index, Some(3));
        let (m, _) = max_edges_exact(5, 3, &cfg).unwrap().unwrap();
        assert_eq!(m, 6);
        let (m, _) = max_edges_exact(6, 1, &cfg).unwrap().unwrap();
        assert_eq!(m, 3);
        // no 4-vertex graph has sum index above 2n-3 = 5
        assert!(max_edges_exact(4, 6, &cfg).unwrap().is_none());
    }

    #[test]
    fn extremal_construction_matches_lbeg_and_ladder() {
        use crate::constructions::extremal_construction;
        let r = extremal_construction(6, 3).unwrap();
        assert_eq!(r.graph.edge_count() as u64, lbeg_count(6, 3).unwrap());
        let ladder = FamilySpec::ladder(6).unwrap().generate();
        assert_eq!(canonical_key(&r.graph).unwrap(), canonical_key(&ladder).unwrap());
    }
}
