//! Exact sum index computation with machine-checkable certificates.
//!
//! A labeling with `k` distinct sums partitions the edges into `k` matchings
//! (adjacent edges cannot share a sum) whose class sums are pairwise
//! distinct. Conversely, such a partition is realizable by an integer
//! labeling exactly when, on the solution space of the homogeneous system
//! `x_u + x_v - s_{color(uv)} = 0`, no difference `x_u - x_v` (u != v) and no
//! difference `s_c - s_{c'}` (c != c') vanishes identically: a generic
//! rational point then avoids the finitely many bad hyperplanes and scales to
//! integers. The solver therefore enumerates canonical edge colorings with
//! incremental exact elimination, prunes a branch the moment a difference is
//! forced to zero, and scans the class count `k` upward from the bound-chain
//! lower bound; the first feasible `k` is the sum index by definition.
//!
//! The search is exact end to end: feasibility decisions use fraction-free
//! integer elimination, never floating point, and a budget cutoff yields an
//! explicit `unknown` result rather than a guess.

use num_bigint::BigInt;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundReport};
use crate::graph::Graph;
use crate::graph6::encode_graph6;
use crate::labeling::{rank_sums, Labeling, LabelingError, LabelingJson};
use crate::linalg::RowSpace;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("class count k must be at least 1")]
    BadClassCount,
    #[error("invalid edge coloring: {0}")]
    InvalidColoring(String),
    #[error("brute force guard: {0}")]
    BruteForceGuard(String),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("internal: {0}")]
    Internal(String),
}

/// Budgets and the seed for witness extraction.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Exhaustive mode is limited to this many edges; larger graphs yield an
    /// `unknown` certificate immediately.
    pub max_edges: usize,
    /// Backtracking node budget across the whole `k` scan.
    pub max_nodes: u64,
    /// Node budget for the chromatic index search feeding the lower bound.
    pub chromatic_nodes: u64,
    /// Seed for the generic-point witness extraction.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_edges: 16,
            max_nodes: 100_000_000,
            chromatic_nodes: bounds::CHROMATIC_NODE_BUDGET,
            seed: crate::DEFAULT_SEED,
        }
    }
}

/// A partition of the edges into color classes, kept in canonical form:
/// scanning edges in the graph's edge order, the first occurrence of color
/// `c` precedes the first occurrence of color `c + 1`, and every class is a
/// matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    classes: usize,
}

impl EdgeColoring {
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Self, SolverError> {
        if colors.len() != g.edge_count() {
            return Err(SolverError::InvalidColoring(format!(
                "{} colors for {} edges",
                colors.len(),
                g.edge_count()
            )));
        }
        let mut next = 0usize;
        for (i, &c) in colors.iter().enumerate() {
            if c > next {
                return Err(SolverError::InvalidColoring(format!(
                    "edge {i} opens color {c} before color {next}"
                )));
            }
            if c == next {
                next += 1;
            }
        }
        for (i, &(u1, v1)) in g.edges().iter().enumerate() {
            for (j, &(u2, v2)) in g.edges().iter().enumerate().skip(i + 1) {
                let adjacent = u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2;
                if adjacent && colors[i] == colors[j] {
                    return Err(SolverError::InvalidColoring(format!(
                        "adjacent edges {i} and {j} share color {}",
                        colors[i]
                    )));
                }
            }
        }
        Ok(EdgeColoring { colors, classes: next })
    }

    /// The coloring induced by a labeling: classes are the distinct sums,
    /// numbered by first occurrence in edge order.
    pub fn from_labeling(g: &Graph, f: &Labeling) -> Result<(Self, Vec<BigInt>), SolverError> {
        let report = crate::labeling::validate_labeling(g, f);
        if !report.is_ok() {
            return Err(LabelingError::Invalid(report).into());
        }
        let mut class_sums: Vec<BigInt> = Vec::new();
        let mut colors = Vec::with_capacity(g.edge_count());
        for &(u, v) in g.edges() {
            let s = f.rank(u) + f.rank(v);
            let c = match class_sums.iter().position(|t| *t == s) {
                Some(c) => c,
                None => {
                    class_sums.push(s);
                    class_sums.len() - 1
                }
            };
            colors.push(c);
        }
        let classes = class_sums.len();
        Ok((EdgeColoring { colors, classes }, class_sums))
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

/// Outcome of the fixed-`k` search.
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    /// A labeling realizing exactly `k` distinct sums.
    Feasible { witness: Labeling, nodes: u64 },
    /// No canonical `k`-class pattern is realizable; the search was exhaustive.
    Infeasible { nodes: u64 },
    /// Node budget ran out before the search finished.
    Unknown { nodes: u64 },
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    n: usize,
    k: usize,
    width: usize,
    vertex_colors: Vec<u64>,
    active: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
    found: Option<RowSpace>,
}

enum Step {
    Done,
    Exhausted,
    Budget,
}

impl<'a> Search<'a> {
    fn new(edges: &'a [(usize, usize)], n: usize, k: usize, max_nodes: u64) -> Self {
        Search {
            edges,
            n,
            k,
            width: n + k,
            vertex_colors: vec![0u64; n],
            active: vec![false; n],
            nodes: 0,
            max_nodes,
            found: None,
        }
    }

    /// Does any forced equality appear after the space changed? Checks every
    /// pair of active vertices and every pair of open classes.
    fn forced_collision(&self, space: &RowSpace, used: usize) -> bool {
        for u in 0..self.n {
            if !self.active[u] {
                continue;
            }
            for v in (u + 1)..self.n {
                if self.active[v] && space.difference_vanishes(u, v) {
                    return true;
                }
            }
        }
        for c in 0..used {
            for d in (c + 1)..used {
                if space.difference_vanishes(self.n + c, self.n + d) {
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self, idx: usize, used: usize, space: &RowSpace) -> Step {
        if idx == self.edges.len() {
            if used == self.k {
                self.found = Some(space.clone());
                return Step::Done;
            }
            return Step::Exhausted;
        }
        // not enough edges left to open the remaining classes
        if used + (self.edges.len() - idx) < self.k {
            return Step::Exhausted;
        }
        let (u, v) = self.edges[idx];
        let max_color = (used + 1).min(self.k);
        for c in 0..max_color {
            let bit = 1u64 << c;
            if self.vertex_colors[u] & bit != 0 || self.vertex_colors[v] & bit != 0 {
                continue; // class would stop being a matching
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Step::Budget;
            }
            let mut row = vec![0i128; self.width];
            row[u] += 1;
            row[v] += 1;
            row[self.n + c] -= 1;
            let mut next = space.clone();
            let changed = next.add(row);
            let next_used = used.max(c + 1);

            let (was_u, was_v) = (self.active[u], self.active[v]);
            self.active[u] = true;
            self.active[v] = true;
            // a dependent equation cannot create new forced equalities
            let pruned = changed && self.forced_collision(&next, next_used);
            if !pruned {
                self.vertex_colors[u] |= bit;
                self.vertex_colors[v] |= bit;
                let step = self.dfs(idx + 1, next_used, &next);
                self.vertex_colors[u] &= !bit;
                self.vertex_colors[v] &= !bit;
                match step {
                    Step::Exhausted => {}
                    done_or_budget => {
                        self.active[u] = was_u;
                        self.active[v] = was_v;
                        return done_or_budget;
                    }
                }
            }
            self.active[u] = was_u;
            self.active[v] = was_v;
        }
        Step::Exhausted
    }
}

/// Extracts an integer point from the solution space with all vertex values
/// and all class sums pairwise distinct. A generic point works because each
/// bad set is a proper hyperplane of the space; collisions trigger a retry
/// from a widened coefficient range.
fn generic_point(space: &RowSpace, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<i128>, Vec<i128>), SolverError> {
    let basis = space.nullspace_basis();
    if basis.is_empty() {
        return Err(SolverError::Internal("solution space is trivial".into()));
    }
    let mut range = 1i128 << 10;
    for _attempt in 0..64 {
        let coeffs: Vec<i128> = basis.iter().map(|_| rng.random_range(-range..=range)).collect();
        let mut point = vec![0i128; space.width()];
        for (lambda, vec) in coeffs.iter().zip(&basis) {
            for (p, &x) in point.iter_mut().zip(vec) {
                *p += lambda * x;
            }
        }
        let xs = &point[..n];
        let sums = &point[n..n + k];
        let distinct = |vals: &[i128]| {
            let mut sorted = vals.to_vec();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        };
        if distinct(xs) && distinct(sums) {
            return Ok((xs.to_vec(), sums.to_vec()));
        }
        range *= 8;
    }
    Err(SolverError::Internal("generic point extraction kept colliding".into()))
}

/// Searches for a labeling of `g` realizing exactly `k` distinct rank sums.
///
/// Exhausts all canonical `k`-class matching patterns under incremental exact
/// feasibility pruning. `Infeasible` therefore proves that the sum index
/// exceeds `k`; `Unknown` is reported if the node budget runs out first.
pub fn solve_for_k(g: &Graph, k: usize, max_nodes: u64, seed: u64) -> Result<SolveOutcome, SolverError> {
    if k == 0 {
        return Err(SolverError::BadClassCount);
    }
    if g.edge_count() == 0 {
        return Err(SolverError::NoEdges);
    }
    if k > g.edge_count() {
        return Ok(SolveOutcome::Infeasible { nodes: 0 });
    }
    let mut search = Search::new(g.edges(), g.n(), k, max_nodes);
    let space = RowSpace::new(g.n() + k);
    let step = search.dfs(0, 0, &space);
    let nodes = search.nodes;
    match step {
        Step::Done => {
            let space = search.found.expect("feasible leaf recorded");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (xs, _sums) = generic_point(&space, g.n(), k, &mut rng)?;
            let witness = Labeling::new(xs.into_iter().map(BigInt::from).collect());
            let achieved = rank_sums(g, &witness)?.count();
            if achieved != k {
                return Err(SolverError::Internal(format!(
                    "witness realizes {achieved} sums, expected {k}"
                )));
            }
            Ok(SolveOutcome::Feasible { witness, nodes })
        }
        Step::Exhausted => Ok(SolveOutcome::Infeasible { nodes }),
        Step::Budget => Ok(SolveOutcome::Unknown { nodes }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Exact,
    Unknown,
}

/// Evidence that no labeling beats the certified value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum LowerEvidence {
    /// The first feasible `k` was already the bound-chain lower bound.
    Bound { value: usize },
    /// Every listed `k` was exhausted without a feasible coloring;
    /// `colorings_examined` records the search nodes spent per `k`. The
    /// search is single-threaded, so both are identical on every run.
    Exhaustion { k_range: Vec<usize>, colorings_examined: Vec<u64> },
}

/// The exact sum index together with everything needed to check it: a witness
/// labeling achieving the value and evidence that no smaller count works.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumIndexCertificate {
    pub graph6: String,
    pub sum_index: Option<usize>,
    pub witness: Option<LabelingJson>,
    pub lower_evidence: LowerEvidence,
    pub status: CertificateStatus,
    pub budget_used: u64,
    /// Present only for unknown results: the sum index lies in this interval.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[usize; 2]>,
}

impl SumIndexCertificate {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Computes the sum index of `g` exactly.
///
/// Scans `k` upward from the bound-chain lower bound; the scan always
/// terminates because `k = min(2n-3, |E|)` is feasible. Budget exhaustion
/// produces a certificate with status `unknown` and a bracketing interval,
/// never a wrong value.
pub fn sum_index_exact(g: &Graph, cfg: &SolverConfig) -> Result<SumIndexCertificate, SolverError> {
    let graph6 = encode_graph6(g);
    let m = g.edge_count();
    if m == 0 {
        return Ok(SumIndexCertificate {
            graph6,
            sum_index: Some(0),
            witness: None,
            lower_evidence: LowerEvidence::Bound { value: 0 },
            status: CertificateStatus::Exact,
            budget_used: 0,
            bracket: None,
        });
    }
    let report: BoundReport = bounds::sum_index_bounds(g, cfg.chromatic_nodes);
    let lower = report.best_lower.max(1);
    let upper = (2 * g.n() - 3).min(m);
    if m > cfg.max_edges {
        return Ok(SumIndexCertificate {
            graph6,
            sum_index: None,
            witness: None,
            lower_evidence: LowerEvidence::Bound { value: lower },
            status: CertificateStatus::Unknown,
            budget_used: 0,
            bracket: Some([lower, upper]),
        });
    }
    let mut exhausted_k = Vec::new();
    let mut exhausted_nodes = Vec::new();
    let mut budget_used = 0u64;
    for k in lower..=upper {
        let remaining = cfg.max_nodes.saturating_sub(budget_used);
        match solve_for_k(g, k, remaining, cfg.seed)? {
            SolveOutcome::Feasible { witness, nodes } => {
                budget_used += nodes;
                let evidence = if exhausted_k.is_empty() {
                    LowerEvidence::Bound { value: lower }
                } else {
                    LowerEvidence::Exhaustion {
                        k_range: exhausted_k,
                        colorings_examined: exhausted_nodes,
                    }
                };
                let witness_json = LabelingJson::build(g, &witness)?;
                if witness_json.sum_count != k {
                    return Err(SolverError::Internal(format!(
                        "certificate witness has {} sums, value is {k}",
                        witness_json.sum_count
                    )));
                }
                return Ok(SumIndexCertificate {
                    graph6,
                    sum_index: Some(k),
                    witness: Some(witness_json),
                    lower_evidence: evidence,
                    status: CertificateStatus::Exact,
                    budget_used,
                    bracket: None,
                });
            }
            SolveOutcome::Infeasible { nodes } => {
                budget_used += nodes;
                exhausted_k.push(k);
                exhausted_nodes.push(nodes);
            }
            SolveOutcome::Unknown { nodes } => {
                budget_used += nodes;
                let evidence = if exhausted_k.is_empty() {
                    LowerEvidence::Bound { value: lower }
                } else {
                    LowerEvidence::Exhaustion {
                        k_range: exhausted_k,
                        colorings_examined: exhausted_nodes,
                    }
                };
                return Ok(SumIndexCertificate {
                    graph6,
                    sum_index: None,
                    witness: None,
                    lower_evidence: evidence,
                    status: CertificateStatus::Unknown,
                    budget_used,
                    bracket: Some([k, upper]),
                });
            }
        }
    }
    Err(SolverError::Internal(format!(
        "no feasible class count up to {upper}; this contradicts the universal upper bound"
    )))
}

/// Convenience wrapper: the exact value, or `None` when the budget ran out.
pub fn sum_index_value(g: &Graph, cfg: &SolverConfig) -> Result<Option<usize>, SolverError> {
    Ok(sum_index_exact(g, cfg)?.sum_index)
}

/// Independent oracle: minimum sum count over all injections of the vertices
/// into `{1..label_bound}` whose smallest used rank is 1 (translation
/// symmetry makes larger offsets redundant). This is an upper bound on the
/// sum index; on the small catalog instances used in tests the range is wide
/// enough for it to be exact.
///
/// Deliberately shares nothing with the coloring search: plain enumeration
/// over small integer ranks.
pub fn brute_force_min_sums(g: &Graph, label_bound: usize) -> Result<(usize, Labeling), SolverError> {
    let n = g.n();
    if n > 8 {
        return Err(SolverError::BruteForceGuard(format!("n = {n} exceeds the cap of 8")));
    }
    if label_bound < n {
        return Err(SolverError::BruteForceGuard(format!(
            "label bound {label_bound} cannot fit {n} distinct ranks"
        )));
    }
    if label_bound > n + 4 {
        return Err(SolverError::BruteForceGuard(format!(
            "label bound {label_bound} exceeds the cap n + 4 = {}",
            n + 4
        )));
    }
    if g.edge_count() == 0 {
        let ranks: Vec<i64> = (1..=n as i64).collect();
        return Ok((0, Labeling::from_i64(&ranks)));
    }

    let edges = g.edges();
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut ranks = vec![0i64; n];
    let mut used = vec![false; label_bound + 1];

    // sums live in 3..=2*label_bound, tracked in a bitmask
    fn count_sums(edges: &[(usize, usize)], ranks: &[i64], upto: usize) -> u32 {
        let mut mask = 0u64;
        for &(u, v) in edges {
            if u < upto && v < upto {
                mask |= 1 << (ranks[u] + ranks[v]);
            }
        }
        mask.count_ones()
    }

    fn assign(
        v: usize,
        n: usize,
        label_bound: usize,
        edges: &[(usize, usize)],
        ranks: &mut Vec<i64>,
        used: &mut Vec<bool>,
        best: &mut Option<(usize, Vec<i64>)>,
    ) {
        if let Some((b, _)) = best {
            if count_sums(edges, ranks, v) as usize >= *b {
                return; // sums only accumulate
            }
        }
        if v == n {
            if !used[1] {
                return; // normalize: rank 1 must be used
            }
            let count = count_sums(edges, ranks, n) as usize;
            if best.as_ref().is_none_or(|(b, _)| count < *b) {
                *best = Some((count, ranks.clone()));
            }
            return;
        }
        for r in 1..=label_bound {
            if used[r] {
                continue;
            }
            used[r] = true;
            ranks[v] = r as i64;
            assign(v + 1, n, label_bound, edges, ranks, used, best);
            used[r] = false;
        }
    }

    assign(0, n, label_bound, edges, &mut ranks, &mut used, &mut best);
    let (value, ranks) = best.expect("at least one injection exists");
    Ok((value, Labeling::from_i64(&ranks)))
}
