//! Rank assignments and rank-sum signatures.
//!
//! A labeling assigns one integer rank per vertex. Ranks are arbitrary
//! precision: the cluster constructions produce ranks far beyond machine
//! range and no overflow semantics should leak in. Only the *set* of rank
//! sums matters for the sum index, so [`SumSignature`] keeps the sorted
//! distinct sums and their count.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::{decode_graph6, encode_graph6};

#[derive(Debug, Error)]
pub enum LabelingError {
    #[error("invalid labeling: {0}")]
    Invalid(ValidationReport),
    #[error("affine map with a = 0 is not injective")]
    ZeroScale,
    #[error("labeling JSON: {0}")]
    Json(String),
}

/// An injective assignment of integer ranks to the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    ranks: Vec<BigInt>,
}

impl Labeling {
    pub fn new(ranks: Vec<BigInt>) -> Self {
        Labeling { ranks }
    }

    pub fn from_i64(ranks: &[i64]) -> Self {
        Labeling { ranks: ranks.iter().map(|&r| BigInt::from(r)).collect() }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[BigInt] {
        &self.ranks
    }

    pub fn rank(&self, v: usize) -> &BigInt {
        &self.ranks[v]
    }
}

/// The set of distinct rank sums realized by a labeling on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSignature {
    sums: Vec<BigInt>,
}

impl SumSignature {
    /// Sorted distinct sums.
    pub fn sums(&self) -> &[BigInt] {
        &self.sums
    }

    pub fn count(&self) -> usize {
        self.sums.len()
    }

    pub fn contains(&self, s: &BigInt) -> bool {
        self.sums.binary_search(s).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two vertices share the same rank.
    DuplicateRank { vertices: (usize, usize), rank: BigInt },
    /// The labeling covers a different vertex set than the graph.
    DomainMismatch { expected: usize, actual: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateRank { vertices: (u, v), rank } => {
                write!(f, "vertices {u} and {v} share rank {rank}")
            }
            Violation::DomainMismatch { expected, actual } => {
                write!(f, "labeling covers {actual} vertices, graph has {expected}")
            }
        }
    }
}

/// Outcome of validating a labeling against a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks injectivity and that the labeling covers exactly the graph's vertices.
pub fn validate_labeling(g: &Graph, f: &Labeling) -> ValidationReport {
    let mut report = ValidationReport::default();
    if f.len() != g.n() {
        report.violations.push(Violation::DomainMismatch { expected: g.n(), actual: f.len() });
        return report;
    }
    let mut first_seen: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for (v, rank) in f.ranks().iter().enumerate() {
        if let Some(&u) = first_seen.get(rank) {
            report.violations.push(Violation::DuplicateRank { vertices: (u, v), rank: rank.clone() });
        } else {
            first_seen.insert(rank, v);
        }
    }
    report
}

/// The set `{f(u) + f(v) : uv an edge}`.
pub fn rank_sums(g: &Graph, f: &Labeling) -> Result<SumSignature, LabelingError> {
    let report = validate_labeling(g, f);
    if !report.is_ok() {
        return Err(LabelingError::Invalid(report));
    }
    let mut sums: Vec<BigInt> = g.edges().iter().map(|&(u, v)| f.rank(u) + f.rank(v)).collect();
    sums.sort_unstable();
    sums.dedup();
    Ok(SumSignature { sums })
}

/// Applies `rank -> a * rank + b`; requires `a != 0` so injectivity is preserved.
pub fn affine_map(f: &Labeling, a: &BigInt, b: &BigInt) -> Result<Labeling, LabelingError> {
    if a.is_zero() {
        return Err(LabelingError::ZeroScale);
    }
    Ok(Labeling::new(f.ranks().iter().map(|r| a * r + b).collect()))
}

/// Wire form: ranks and sums as decimal strings so arbitrary precision survives JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingJson {
    pub graph6: String,
    pub ranks: Vec<String>,
    pub sums: Vec<String>,
    pub sum_count: usize,
}

impl LabelingJson {
    pub fn build(g: &Graph, f: &Labeling) -> Result<Self, LabelingError> {
        let sig = rank_sums(g, f)?;
        Ok(LabelingJson {
            graph6: encode_graph6(g),
            ranks: f.ranks().iter().map(|r| r.to_string()).collect(),
            sums: sig.sums().iter().map(|s| s.to_string()).collect(),
            sum_count: sig.count(),
        })
    }

    /// Decodes the graph and labeling; does not re-check the recorded sums.
    pub fn decode(&self) -> Result<(Graph, Labeling), LabelingError> {
        let g = decode_graph6(&self.graph6).map_err(|e| LabelingError::Json(e.to_string()))?;
        let ranks: Result<Vec<BigInt>, _> = self.ranks.iter().map(|s| s.parse::<BigInt>()).collect();
        let ranks = ranks.map_err(|e| LabelingError::Json(format!("bad rank: {e}")))?;
        Ok((g, Labeling::new(ranks)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn k3_consecutive_ranks() {
        let k3 = FamilySpec::complete(3).unwrap().generate();
        let f = Labeling::from_i64(&[1, 2, 3]);
        let sig = rank_sums(&k3, &f).unwrap();
        assert_eq!(sig.sums(), &big(&[3, 4, 5])[..]);
        assert_eq!(sig.count(), 3);
    }

    #[test]
    fn bipartite_blocks() {
        // K_{2,3} with parts {0,1} = {1,2} and {2,3,4} = {3,4,5}
        let g = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let f = Labeling::from_i64(&[1, 2, 3, 4, 5]);
        let sig = rank_sums(&g, &f).unwrap();
        assert_eq!(sig.sums(), &big(&[4, 5, 6, 7])[..]);
        assert_eq!(sig.count(), 2 + 3 - 1);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let f = Labeling::from_i64(&[0, 7]);
        let sig = rank_sums(&g, &f).unwrap();
        assert_eq!(sig.sums(), &big(&[7])[..]);
        assert_eq!(sig.count(), 1);
    }

    #[test]
    fn validation_reports() {
        let k3 = FamilySpec::complete(3).unwrap().generate();
        let dup = Labeling::from_i64(&[1, 1, 2]);
        let report = validate_labeling(&k3, &dup);
        assert_eq!(
            report.violations,
            vec![Violation::DuplicateRank { vertices: (0, 1), rank: BigInt::from(1) }]
        );
        assert!(rank_sums(&k3, &dup).is_err());

        assert!(validate_labeling(&k3, &Labeling::from_i64(&[1, 2, 3])).is_ok());

        let wrong = Labeling::from_i64(&[1, 2]);
        assert_eq!(
            validate_labeling(&k3, &wrong).violations,
            vec![Violation::DomainMismatch { expected: 3, actual: 2 }]
        );
    }

    #[test]
    fn affine_map_negates() {
        let k3 = FamilySpec::complete(3).unwrap().generate();
        let f = Labeling::from_i64(&[1, 2, 3]);
        let id = affine_map(&f, &BigInt::from(1), &BigInt::from(0)).unwrap();
        assert_eq!(id, f);
        let neg = affine_map(&f, &BigInt::from(-1), &BigInt::from(0)).unwrap();
        let sig = rank_sums(&k3, &neg).unwrap();
        assert_eq!(sig.sums(), &big(&[-5, -4, -3])[..]);
        assert_eq!(sig.count(), 3);
        assert!(affine_map(&f, &BigInt::from(0), &BigInt::from(5)).is_err());
        let scaled = affine_map(&f, &BigInt::from(2), &BigInt::from(5)).unwrap();
        assert!(validate_labeling(&k3, &scaled).is_ok());
    }

    #[test]
    fn subgraph_sum_count_is_monotone() {
        let g = FamilySpec::complete(5).unwrap().generate();
        let f = Labeling::from_i64(&[3, 1, 4, 9, 27]);
        let full = rank_sums(&g, &f).unwrap().count();
        for take in 0..g.edge_count() {
            let h = Graph::new(5, g.edges()[..take].to_vec()).unwrap();
            assert!(rank_sums(&h, &f).unwrap().count() <= full);
        }
    }

    #[test]
    fn labeling_json_round_trip() {
        let g = FamilySpec::cycle(4).unwrap().generate();
        let f = Labeling::from_i64(&[0, 1, 3, 4]);
        let json = LabelingJson::build(&g, &f).unwrap();
        assert_eq!(json.sum_count, rank_sums(&g, &f).unwrap().count());
        let text = serde_json::to_string(&json).unwrap();
        let back: LabelingJson = serde_json::from_str(&text).unwrap();
        let (g2, f2) = back.decode().unwrap();
        assert_eq!(g2, g);
        assert_eq!(f2, f);
    }
}
