//! Explicit labelings that realize the closed-form sum index values.
//!
//! Every constructor returns the graph, the labeling, the claimed number of
//! distinct sums, and the recomputed count; the two counts are validated
//! against each other before anything is returned, so a construction can
//! never silently drift from the formula it is supposed to witness.

mod surd;

use surd::{Surd, SurdContext};

use num_bigint::BigInt;
use thiserror::Error;

use crate::bounds::{cluster_capacity, known_formula};
use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::labeling::{rank_sums, Labeling, LabelingError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("claim mismatch for {tag}: claimed {claimed} sums, achieved {achieved}")]
    ClaimMismatch { tag: String, claimed: u64, achieved: u64 },
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("internal: {0}")]
    Internal(String),
}

/// A self-validated construction: `achieved` always equals `claimed`.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub graph: Graph,
    pub labeling: Labeling,
    pub claimed: u64,
    pub achieved: u64,
}

fn finish(graph: Graph, labeling: Labeling, claimed: u64) -> Result<ConstructionResult, ConstructionError> {
    let achieved = rank_sums(&graph, &labeling)?.count() as u64;
    if achieved != claimed {
        return Err(ConstructionError::ClaimMismatch {
            tag: graph.family_tag().unwrap_or("graph").to_string(),
            claimed,
            achieved,
        });
    }
    Ok(ConstructionResult { graph, labeling, claimed, achieved })
}

/// Labels the complete multipartite graph on the given part sizes
/// (normalized non-increasing) with `2N - n1 - n2 - 1` distinct sums:
/// part 1 gets `1..=n1`, part 2 gets the top block `N-n2+1..=N`, and the
/// remaining vertices take the middle ranks in vertex order. Every sum then
/// lands in `[n1 + 2, 2N - n2]`.
pub fn label_multipartite(parts: &[usize]) -> Result<ConstructionResult, ConstructionError> {
    if parts.len() < 2 {
        return Err(ConstructionError::InvalidParams("need at least two parts".into()));
    }
    let spec = FamilySpec::complete_multipartite(parts.to_vec())
        .map_err(|e| ConstructionError::InvalidParams(e.to_string()))?;
    let FamilySpec::CompleteMultipartite { parts } = &spec else { unreachable!() };
    let graph = spec.generate();
    let total: usize = parts.iter().sum();
    let (n1, n2) = (parts[0], parts[1]);
    let mut ranks: Vec<i64> = Vec::with_capacity(total);
    ranks.extend(1..=n1 as i64);
    ranks.extend((total - n2 + 1) as i64..=total as i64);
    ranks.extend(n1 as i64 + 1..=(total - n2) as i64);
    let claimed = (2 * total - n1 - n2 - 1) as u64;
    finish(graph, Labeling::from_i64(&ranks), claimed)
}

/// Labels `L_{n1} v L_{n2} v K_{n3} v ... v K_{nk}` with the multipartite
/// value `2N - n1 - n2 - 1`. Ranks follow the multipartite layout except that
/// part 2 descends (`N, N-1, ...`), which keeps the internal `L_{n2}` edges at
/// or below `2N - n2`.
pub fn label_join_family(parts: &[usize]) -> Result<ConstructionResult, ConstructionError> {
    if parts.len() < 2 {
        return Err(ConstructionError::InvalidParams("need at least two parts".into()));
    }
    let spec = FamilySpec::join_family(parts.to_vec())
        .map_err(|e| ConstructionError::InvalidParams(e.to_string()))?;
    let FamilySpec::JoinFamily { parts } = &spec else { unreachable!() };
    let graph = spec.generate();
    let total: usize = parts.iter().sum();
    let (n1, n2) = (parts[0], parts[1]);
    let mut ranks: Vec<i64> = Vec::with_capacity(total);
    ranks.extend(1..=n1 as i64);
    ranks.extend(((total - n2 + 1) as i64..=total as i64).rev());
    ranks.extend(n1 as i64 + 1..=(total - n2) as i64);
    let claimed = (2 * total - n1 - n2 - 1) as u64;
    finish(graph, Labeling::from_i64(&ranks), claimed)
}

/// The hypercube sum set: `2^dim + 1` plus `2^dim + 1 +- 2^i` for
/// `0 <= i <= dim - 2`, which has exactly `2*dim - 1` elements.
pub fn hypercube_sum_set(dim: usize) -> Vec<i64> {
    let center = (1i64 << dim) + 1;
    let mut sums = vec![center];
    for i in 0..dim.saturating_sub(1) {
        sums.push(center - (1 << i));
        sums.push(center + (1 << i));
    }
    sums.sort_unstable();
    sums
}

/// Labels `Q_dim` with ranks `1..=2^dim` achieving `2*dim - 1` distinct sums.
///
/// The recursion doubles the cube: low ranks stay put, high ranks shift up by
/// `2^d`, and each copied vertex gets the reflected rank `-f(v) + 3*2^(d-1) + 1`.
/// At every level each edge keeps one endpoint in the low half of the rank
/// range and one in the high half; this is asserted as the recursion runs.
pub fn label_hypercube(dim: usize) -> Result<ConstructionResult, ConstructionError> {
    if dim == 0 || dim > 13 {
        return Err(ConstructionError::InvalidParams(format!("dimension {dim} out of range 1..=13")));
    }
    let mut ranks: Vec<i64> = vec![1, 2];
    for d in 1..dim {
        let half = 1i64 << (d - 1);
        let size = 1usize << d;
        let mut next = Vec::with_capacity(size * 2);
        next.extend(ranks.iter().map(|&r| if r <= half { r } else { r + (1 << d) }));
        next.extend(ranks.iter().map(|&r| -r + 3 * half + 1));
        ranks = next;
        let level = FamilySpec::hypercube(d + 1).expect("valid dim").generate();
        let mid = 1i64 << d;
        for &(u, v) in level.edges() {
            let low = (ranks[u] <= mid) as u8 + (ranks[v] <= mid) as u8;
            if low != 1 {
                return Err(ConstructionError::Internal(format!(
                    "rank bipartition broken at level {} on edge ({u}, {v})",
                    d + 1
                )));
            }
        }
    }
    let graph = FamilySpec::hypercube(dim).expect("valid dim").generate();
    let claimed = 2 * dim as u64 - 1;
    let result = finish(graph, Labeling::from_i64(&ranks), claimed)?;
    let expected: Vec<BigInt> = hypercube_sum_set(dim).into_iter().map(BigInt::from).collect();
    let achieved_sums = rank_sums(&result.graph, &result.labeling)?;
    if achieved_sums.sums() != &expected[..] {
        return Err(ConstructionError::Internal(format!(
            "hypercube sum set mismatch at dim {dim}"
        )));
    }
    Ok(result)
}

/// Recovers the four `K_4` ranks from its six edge sums, given as opposite
/// pairs `(a_i, b_i)` with all three totals `a_i + b_i` equal:
///
/// ```text
/// f1 = (b1 + b2 - a3) / 2    f2 = (a2 + a3 - a1) / 2
/// f3 = (a1 + a3 - a2) / 2    f4 = (a1 + a2 - a3) / 2
/// ```
///
/// The edge sums then come out as `f3+f4 = a1`, `f2+f4 = a2`, `f2+f3 = a3`,
/// `f1+f2 = b1`, `f1+f3 = b2`, `f1+f4 = b3`. Fails if the totals disagree,
/// any numerator is odd, or two recovered ranks collide.
pub fn k4_ranks_from_sums(a: &[BigInt; 3], b: &[BigInt; 3]) -> Result<[BigInt; 4], ConstructionError> {
    let total = &a[0] + &b[0];
    for i in 1..3 {
        if &a[i] + &b[i] != total {
            return Err(ConstructionError::InvalidParams(format!(
                "opposite sums disagree: a{0}+b{0} != a1+b1",
                i + 1
            )));
        }
    }
    let numerators = [
        &b[0] + &b[1] - &a[2],
        &a[1] + &a[2] - &a[0],
        &a[0] + &a[2] - &a[1],
        &a[0] + &a[1] - &a[2],
    ];
    let two = BigInt::from(2);
    let mut ranks: Vec<BigInt> = Vec::with_capacity(4);
    for num in numerators {
        if (&num % &two) != BigInt::from(0) {
            return Err(ConstructionError::InvalidParams(format!("odd numerator {num}; sums must have even parity")));
        }
        ranks.push(num / &two);
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if ranks[i] == ranks[j] {
                return Err(ConstructionError::InvalidParams(format!(
                    "ranks collide: f{} = f{} = {}",
                    i + 1,
                    j + 1,
                    ranks[i]
                )));
            }
        }
    }
    Ok([ranks[0].clone(), ranks[1].clone(), ranks[2].clone(), ranks[3].clone()])
}

/// Symbolic sum values for the cluster construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    Alpha(usize),
    Beta(usize),
    Anchor,
}

fn colex_triples(count: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for k in 2..count {
        for j in 1..k {
            for i in 0..j {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn colex_pairs(count: usize) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for j in 1..count {
        for i in 0..j {
            out.push([i, j]);
        }
    }
    out
}

/// The sum-triple patterns for `n` clusters at `s` sum values, in a fixed
/// deterministic order: triples inside the low block, then inside the high
/// block, then (odd `s`) the anchor-rooted pairs. The sandwich inequality
/// defining `s` guarantees the first `n` patterns cover all `s` values.
fn cluster_patterns(s: usize, n: usize) -> Vec<[Sym; 3]> {
    let h = s / 2;
    let mut patterns: Vec<[Sym; 3]> = Vec::new();
    for t in colex_triples(h) {
        patterns.push([Sym::Alpha(t[0]), Sym::Alpha(t[1]), Sym::Alpha(t[2])]);
    }
    for t in colex_triples(h) {
        patterns.push([Sym::Beta(t[0]), Sym::Beta(t[1]), Sym::Beta(t[2])]);
    }
    if s % 2 == 1 {
        for p in colex_pairs(h) {
            patterns.push([Sym::Anchor, Sym::Alpha(p[0]), Sym::Alpha(p[1])]);
        }
    }
    patterns.truncate(n);
    patterns
}

/// First `count` primes.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while out.len() < count {
        if (2..candidate).take_while(|d| d * d <= candidate).all(|d| !candidate.is_multiple_of(d)) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

fn label_cluster_k4(n: usize) -> Result<ConstructionResult, ConstructionError> {
    let spec = FamilySpec::cluster(n, 4).expect("validated by caller");
    let s = known_formula(&spec).expect("cluster size 4 is in the catalog") as usize;
    let h = s / 2;
    debug_assert!(cluster_capacity(4, s as u64) >= n as u64);

    let dim = h + 1;
    let mut ctx = SurdContext::new(primes(dim));
    let alphas: Vec<Surd> = (0..h).map(|i| Surd::basis(dim, i)).collect();
    let anchor = Surd::basis(dim, h);
    let betas: Vec<Surd> = alphas.iter().map(|a| anchor.scale(2).sub(a)).collect();
    let surd_of = |sym: Sym| -> Surd {
        match sym {
            Sym::Alpha(i) => alphas[i].clone(),
            Sym::Beta(i) => betas[i].clone(),
            Sym::Anchor => anchor.clone(),
        }
    };
    let mirror = |sym: Sym| -> Surd {
        // b = 2p - a swaps the low and high blocks and fixes the anchor
        match sym {
            Sym::Alpha(i) => betas[i].clone(),
            Sym::Beta(i) => alphas[i].clone(),
            Sym::Anchor => anchor.clone(),
        }
    };

    let patterns = cluster_patterns(s, n);
    if patterns.len() < n {
        return Err(ConstructionError::Internal(format!(
            "only {} patterns for {n} clusters at s = {s}",
            patterns.len()
        )));
    }

    // delta_1: minimum gap among the sum values themselves
    let mut values: Vec<Surd> = alphas.iter().chain(betas.iter()).cloned().collect();
    if s % 2 == 1 {
        values.push(anchor.clone());
    }
    // delta_2: minimum gap among the real-valued ranks across all clusters
    let mut real_ranks: Vec<Surd> = Vec::with_capacity(4 * n);
    for pat in &patterns {
        let a: Vec<Surd> = pat.iter().map(|&sym| surd_of(sym)).collect();
        let b: Vec<Surd> = pat.iter().map(|&sym| mirror(sym)).collect();
        real_ranks.push(b[0].add(&b[1]).sub(&a[2]).half());
        real_ranks.push(a[1].add(&a[2]).sub(&a[0]).half());
        real_ranks.push(a[0].add(&a[2]).sub(&a[1]).half());
        real_ranks.push(a[0].add(&a[1]).sub(&a[2]).half());
    }
    for i in 0..real_ranks.len() {
        for j in (i + 1)..real_ranks.len() {
            if real_ranks[i] == real_ranks[j] {
                return Err(ConstructionError::Internal(format!(
                    "symbolic rank collision between positions {i} and {j}"
                )));
            }
        }
    }

    let e1 = ctx.gap_exponent(&values);
    let e2 = ctx.gap_exponent(&real_ranks);
    let base_exponent = e1.max(e2);

    // Integerize at multiplier 2^exponent; a validation failure doubles the
    // multiplier. The gap certificates make failure impossible, but the
    // construction re-checks everything in exact integers anyway.
    for exponent in base_exponent..base_exponent + 20 {
        let alpha_ints: Vec<BigInt> = alphas.iter().map(|a| ctx.nearest_scaled_int(a, exponent)).collect();
        let anchor_int = ctx.nearest_scaled_int(&anchor, exponent);
        let int_of = |sym: Sym| -> BigInt {
            match sym {
                Sym::Alpha(i) => alpha_ints[i].clone(),
                Sym::Beta(i) => &anchor_int * 2 - &alpha_ints[i],
                Sym::Anchor => anchor_int.clone(),
            }
        };
        let mut ranks: Vec<BigInt> = Vec::with_capacity(4 * n);
        let mut failed = None;
        for pat in &patterns {
            // double all sums so the half-sum rank formulas stay integral
            let a = [int_of(pat[0]) * 2, int_of(pat[1]) * 2, int_of(pat[2]) * 2];
            let b = [
                &anchor_int * 4 - &a[0],
                &anchor_int * 4 - &a[1],
                &anchor_int * 4 - &a[2],
            ];
            match k4_ranks_from_sums(&a, &b) {
                Ok(four) => ranks.extend(four),
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        if failed.is_none() {
            match finish(spec.generate(), Labeling::new(ranks), s as u64) {
                Ok(result) => return Ok(result),
                Err(ConstructionError::Labeling(_) | ConstructionError::ClaimMismatch { .. }) => {}
                Err(other) => return Err(other),
            }
        }
    }
    Err(ConstructionError::Internal(
        "cluster integerization failed to validate after 20 multiplier doublings".into(),
    ))
}

fn label_cluster_k3(n: usize) -> Result<ConstructionResult, ConstructionError> {
    let spec = FamilySpec::cluster(n, 3).expect("validated by caller");
    let s = known_formula(&spec).expect("cluster size 3 is in the catalog") as usize;
    // sum values 2*4^j: signed {-1, +1} combinations of three distinct powers
    // of four are unique, so distinct triples yield disjoint rank triples
    let values: Vec<BigInt> = (0..s).map(|j| BigInt::from(2) * BigInt::from(4).pow(j as u32)).collect();
    let mut ranks: Vec<BigInt> = Vec::with_capacity(3 * n);
    for t in colex_triples(s).into_iter().take(n) {
        let (a, b, c) = (&values[t[0]], &values[t[1]], &values[t[2]]);
        ranks.push((b + c - a) / 2);
        ranks.push((a + c - b) / 2);
        ranks.push((a + b - c) / 2);
    }
    if ranks.len() != 3 * n {
        return Err(ConstructionError::Internal(format!(
            "only {} rank triples for {n} clusters at s = {s}",
            ranks.len() / 3
        )));
    }
    finish(spec.generate(), Labeling::new(ranks), s as u64)
}

/// Labels the cluster graph `n K_k` for `k` in `{2, 3, 4}` with the catalog
/// sum index value.
pub fn label_cluster(copies: usize, size: usize) -> Result<ConstructionResult, ConstructionError> {
    if copies == 0 {
        return Err(ConstructionError::InvalidParams("need at least one cluster".into()));
    }
    match size {
        2 => {
            // ranks (i+1, -i) per edge: every sum is 1
            let spec = FamilySpec::cluster(copies, 2).expect("valid");
            let mut ranks = Vec::with_capacity(2 * copies);
            for i in 0..copies as i64 {
                ranks.push(i + 1);
                ranks.push(-i);
            }
            finish(spec.generate(), Labeling::from_i64(&ranks), 1)
        }
        3 => label_cluster_k3(copies),
        4 => label_cluster_k4(copies),
        other => Err(ConstructionError::InvalidParams(format!(
            "cluster construction supports sizes 2..=4, got {other}"
        ))),
    }
}

/// The alternating target sums `n+1, n+2, n, n+3, n-1, ...` (1-based ranks),
/// `count` of them.
pub fn extremal_targets(n: usize, count: usize) -> Vec<usize> {
    let mut targets = Vec::with_capacity(count);
    let center = n + 1;
    targets.push(center);
    let mut offset = 1usize;
    while targets.len() < count {
        targets.push(center + offset);
        if targets.len() < count {
            targets.push(center - offset);
        }
        offset += 1;
    }
    targets
}

/// The layered extremal graph: ranks `1..=n` and every pair whose sum hits
/// one of the `target_sums` alternating targets becomes an edge. The labeling
/// realizes exactly `target_sums` distinct sums, so the graph's sum index is
/// at most that.
pub fn extremal_construction(n: usize, target_sums: usize) -> Result<ConstructionResult, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::InvalidParams(format!("need n >= 2, got {n}")));
    }
    if target_sums == 0 || target_sums > 2 * n - 3 {
        return Err(ConstructionError::InvalidParams(format!(
            "target count {target_sums} outside 1..=2n-3 = {}",
            2 * n - 3
        )));
    }
    let targets = extremal_targets(n, target_sums);
    let mut edges = Vec::new();
    for &t in &targets {
        // 1-based pairs i < j with i + j = t
        let mut i = 1usize.max(t.saturating_sub(n));
        while 2 * i < t {
            let j = t - i;
            if j <= n {
                edges.push((i - 1, j - 1));
            }
            i += 1;
        }
    }
    let graph = Graph::new(n, edges)
        .map_err(|e| ConstructionError::Internal(format!("target pairs produced a bad edge list: {e}")))?
        .with_tag(format!("extremal({n},{target_sums})"));
    let ranks: Vec<i64> = (1..=n as i64).collect();
    finish(graph, Labeling::from_i64(&ranks), target_sums as u64)
}
