//! Sumset primitives over the integers and finite abelian groups, and the
//! group-valued sum index.
//!
//! Over the integers the sumset primitives back the additive-combinatorics
//! property suites (`|X+Y| >= |X|+|Y|-1`, `|X^+X| >= 2|X|-3`). Over a finite
//! abelian group `Z_{m1} x ... x Z_{mk}` the module searches for the minimum
//! number of distinct edge sums over injective labelings, with complete
//! graphs special-cased to subset search: a labeling of a complete graph is
//! determined by which elements it uses, so minimizing `|X ^+ X|` over
//! `m`-subsets removes an `m!` factor.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid moduli: {0}")]
    InvalidModuli(String),
    #[error("element {0:?} is not in the group")]
    ElementOutOfGroup(Vec<u64>),
    #[error("empty set where a nonempty one is required")]
    EmptySet,
    #[error("restricted sumset needs at least two elements, got {0}")]
    TooFewElements(usize),
    #[error("pair ({0:?}, {1:?}) is outside the given sets")]
    PairOutsideSets(Vec<u64>, Vec<u64>),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("search space {required} exceeds the budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("labeling is not injective or misses the vertex set")]
    BadLabeling,
}

/// `Z_{m1} x Z_{m2} x ... x Z_{mk}` with componentwise addition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

pub type GroupElem = Vec<u64>;

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::InvalidModuli("no moduli given".into()));
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(GroupError::InvalidModuli(format!("modulus {m} < 2")));
        }
        let mut order: u64 = 1;
        for &m in &moduli {
            order = order
                .checked_mul(m)
                .filter(|&o| o <= 1 << 24)
                .ok_or_else(|| GroupError::InvalidModuli("group order exceeds 2^24".into()))?;
        }
        Ok(AbelianGroup { moduli, order })
    }

    /// Parses comma-separated moduli, e.g. `"5,5"`.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let moduli: Result<Vec<u64>, _> = text.split(',').map(|p| p.trim().parse::<u64>()).collect();
        Self::new(moduli.map_err(|e| GroupError::InvalidModuli(e.to_string()))?)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn contains(&self, e: &[u64]) -> bool {
        e.len() == self.moduli.len() && e.iter().zip(&self.moduli).all(|(&a, &m)| a < m)
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.moduli.len()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Result<GroupElem, GroupError> {
        if !self.contains(a) {
            return Err(GroupError::ElementOutOfGroup(a.to_vec()));
        }
        if !self.contains(b) {
            return Err(GroupError::ElementOutOfGroup(b.to_vec()));
        }
        Ok(a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect())
    }

    /// Mixed-radix index of an element, most significant coordinate first.
    pub fn index_of(&self, e: &[u64]) -> Result<u64, GroupError> {
        if !self.contains(e) {
            return Err(GroupError::ElementOutOfGroup(e.to_vec()));
        }
        Ok(e.iter().zip(&self.moduli).fold(0u64, |acc, (&a, &m)| acc * m + a))
    }

    pub fn element(&self, mut idx: u64) -> GroupElem {
        let mut out = vec![0u64; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = idx % m;
            idx /= m;
        }
        out
    }

    fn add_idx(&self, i: u64, j: u64) -> u64 {
        let (a, b) = (self.element(i), self.element(j));
        self.index_of(&self.add(&a, &b).expect("elements are in range")).expect("sum is in range")
    }

    /// Full addition table indexed `i * order + j`.
    fn addition_table(&self) -> Vec<u32> {
        let n = self.order as usize;
        let mut table = vec![0u32; n * n];
        for i in 0..n as u64 {
            for j in 0..=i {
                let s = self.add_idx(i, j) as u32;
                table[(i * self.order + j) as usize] = s;
                table[(j * self.order + i) as usize] = s;
            }
        }
        table
    }
}

/// `X + Y` over a finite abelian group.
pub fn sumset(a: &AbelianGroup, xs: &BTreeSet<GroupElem>, ys: &BTreeSet<GroupElem>) -> Result<BTreeSet<GroupElem>, GroupError> {
    if xs.is_empty() || ys.is_empty() {
        return Err(GroupError::EmptySet);
    }
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            out.insert(a.add(x, y)?);
        }
    }
    Ok(out)
}

/// `X ^+ X = {x + y : x, y in X, x != y}` over a finite abelian group.
pub fn restricted_sumset(a: &AbelianGroup, xs: &BTreeSet<GroupElem>) -> Result<BTreeSet<GroupElem>, GroupError> {
    if xs.len() < 2 {
        return Err(GroupError::TooFewElements(xs.len()));
    }
    let elems: Vec<&GroupElem> = xs.iter().collect();
    let mut out = BTreeSet::new();
    for (i, x) in elems.iter().enumerate() {
        for y in elems.iter().skip(i + 1) {
            out.insert(a.add(x, y)?);
        }
    }
    Ok(out)
}

/// `X +_Gamma Y` over a finite abelian group; every pair must come from
/// `X x Y`.
pub fn partial_sumset(
    a: &AbelianGroup,
    xs: &BTreeSet<GroupElem>,
    ys: &BTreeSet<GroupElem>,
    gamma: &[(GroupElem, GroupElem)],
) -> Result<BTreeSet<GroupElem>, GroupError> {
    let mut out = BTreeSet::new();
    for (x, y) in gamma {
        if !xs.contains(x) || !ys.contains(y) {
            return Err(GroupError::PairOutsideSets(x.clone(), y.clone()));
        }
        out.insert(a.add(x, y)?);
    }
    Ok(out)
}

/// `X + Y` over the integers.
pub fn sumset_z(xs: &BTreeSet<BigInt>, ys: &BTreeSet<BigInt>) -> Result<BTreeSet<BigInt>, GroupError> {
    if xs.is_empty() || ys.is_empty() {
        return Err(GroupError::EmptySet);
    }
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            out.insert(x + y);
        }
    }
    Ok(out)
}

/// `X ^+ X` over the integers.
pub fn restricted_sumset_z(xs: &BTreeSet<BigInt>) -> Result<BTreeSet<BigInt>, GroupError> {
    if xs.len() < 2 {
        return Err(GroupError::TooFewElements(xs.len()));
    }
    let elems: Vec<&BigInt> = xs.iter().collect();
    let mut out = BTreeSet::new();
    for (i, x) in elems.iter().enumerate() {
        for y in elems.iter().skip(i + 1) {
            out.insert(*x + *y);
        }
    }
    Ok(out)
}

/// `X +_Gamma Y` over the integers.
pub fn partial_sumset_z(
    xs: &BTreeSet<BigInt>,
    ys: &BTreeSet<BigInt>,
    gamma: &[(BigInt, BigInt)],
) -> Result<BTreeSet<BigInt>, GroupError> {
    let mut out = BTreeSet::new();
    for (x, y) in gamma {
        if !xs.contains(x) || !ys.contains(y) {
            return Err(GroupError::PairOutsideSets(vec![], vec![]));
        }
        out.insert(x + y);
    }
    Ok(out)
}

/// An injective assignment of group elements to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLabeling {
    pub ranks: Vec<GroupElem>,
}

impl GroupLabeling {
    pub fn validate(&self, g: &Graph, a: &AbelianGroup) -> Result<(), GroupError> {
        if self.ranks.len() != g.n() {
            return Err(GroupError::BadLabeling);
        }
        let distinct: BTreeSet<&GroupElem> = self.ranks.iter().collect();
        if distinct.len() != self.ranks.len() || !self.ranks.iter().all(|e| a.contains(e)) {
            return Err(GroupError::BadLabeling);
        }
        Ok(())
    }

    /// Distinct edge sums under this labeling.
    pub fn sum_count(&self, g: &Graph, a: &AbelianGroup) -> Result<usize, GroupError> {
        self.validate(g, a)?;
        let mut sums = BTreeSet::new();
        for &(u, v) in g.edges() {
            sums.insert(a.add(&self.ranks[u], &self.ranks[v])?);
        }
        Ok(sums.len())
    }
}

/// Outcome of an exhaustive group search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum GroupSearchOutcome {
    Exact {
        value: usize,
        witness: GroupLabeling,
        /// Backtracking states visited; identical on every run.
        nodes: u64,
    },
    /// The search space exceeded the budget; the value lies in the bracket.
    Unknown { lower: usize, upper: usize },
}

impl GroupSearchOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            GroupSearchOutcome::Exact { value, .. } => Some(*value),
            GroupSearchOutcome::Unknown { .. } => None,
        }
    }
}

/// The sum index of `g` in the group `a`: the minimum number of distinct edge
/// sums over injective labelings `V -> A`.
///
/// One vertex is pinned to the identity (translating a labeling by `c` shifts
/// every sum by `2c` and preserves the count), complete graphs are routed to
/// [`min_restricted_sumset_complete`], and everything else is depth-first
/// search over injections with monotone distinct-sum pruning.
pub fn group_sum_index(g: &Graph, a: &AbelianGroup, budget: u128) -> Result<GroupSearchOutcome, GroupError> {
    let n = g.n();
    if (a.order() as usize) < n {
        return Err(GroupError::InvalidParams(format!(
            "group of order {} cannot label {n} vertices injectively",
            a.order()
        )));
    }
    if g.edge_count() == 0 {
        let witness = GroupLabeling { ranks: (0..n as u64).map(|i| a.element(i)).collect() };
        return Ok(GroupSearchOutcome::Exact { value: 0, witness, nodes: 0 });
    }
    // complete graph: only the element set matters
    if g.edge_count() == n * (n - 1) / 2 {
        return match min_restricted_sumset_complete(a, n, budget)? {
            SubsetScanOutcome::Exact { value, witness, nodes } => Ok(GroupSearchOutcome::Exact {
                value,
                witness: GroupLabeling { ranks: witness },
                nodes,
            }),
            SubsetScanOutcome::Unknown { lower, upper } => Ok(GroupSearchOutcome::Unknown { lower, upper }),
        };
    }

    let order = a.order();
    let mut required: u128 = 1;
    for i in 1..n as u128 {
        required = required.saturating_mul(order as u128 - i);
    }
    if required > budget {
        // cheap bracket: proper-coloring argument on one side, one greedy
        // labeling on the other
        let lower = crate::bounds::chromatic_index(g, 10_000).lower.max(1);
        let greedy = GroupLabeling { ranks: (0..n as u64).map(|i| a.element(i)).collect() };
        let upper = greedy.sum_count(g, a)?;
        return Ok(GroupSearchOutcome::Unknown { lower, upper });
    }

    let table = a.addition_table();
    let adj_earlier: Vec<Vec<usize>> = {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in g.edges() {
            adj[v.max(u)].push(v.min(u));
        }
        adj
    };

    struct Dfs<'t> {
        order: usize,
        table: &'t [u32],
        adj_earlier: &'t [Vec<usize>],
        assigned: Vec<u64>,
        used: Vec<bool>,
        best: Option<(usize, Vec<u64>)>,
        nodes: u64,
    }

    impl Dfs<'_> {
        fn run(&mut self, v: usize, sums: &BTreeSet<u32>) {
            self.nodes += 1;
            if let Some((best, _)) = &self.best {
                if sums.len() >= *best {
                    return; // distinct sums only accumulate
                }
            }
            if v == self.assigned.len() {
                self.best = Some((sums.len(), self.assigned.clone()));
                return;
            }
            // vertex 0 is pinned to the identity
            let limit = if v == 0 { 1 } else { self.order as u64 };
            for e in 0..limit {
                if self.used[e as usize] {
                    continue;
                }
                self.used[e as usize] = true;
                self.assigned[v] = e;
                let mut next = sums.clone();
                for &u in &self.adj_earlier[v] {
                    next.insert(self.table[self.assigned[u] as usize * self.order + e as usize]);
                }
                self.run(v + 1, &next);
                self.used[e as usize] = false;
            }
        }
    }

    let mut dfs = Dfs {
        order: order as usize,
        table: &table,
        adj_earlier: &adj_earlier,
        assigned: vec![0; n],
        used: vec![false; order as usize],
        best: None,
        nodes: 0,
    };
    dfs.run(0, &BTreeSet::new());
    let (value, idxs) = dfs.best.expect("pinned search visits at least one labeling");
    let witness = GroupLabeling { ranks: idxs.into_iter().map(|i| a.element(i)).collect() };
    debug_assert_eq!(witness.sum_count(g, a)?, value);
    Ok(GroupSearchOutcome::Exact { value, witness, nodes: dfs.nodes })
}

/// Outcome of the subset scan for complete graphs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SubsetScanOutcome {
    Exact {
        value: usize,
        /// Lexicographically first minimizing subset.
        witness: Vec<GroupElem>,
        nodes: u64,
    },
    Unknown { lower: usize, upper: usize },
}

impl SubsetScanOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            SubsetScanOutcome::Exact { value, .. } => Some(*value),
            SubsetScanOutcome::Unknown { .. } => None,
        }
    }
}

/// Minimum of `|X ^+ X|` over all `m`-element subsets `X` of the group: the
/// group sum index of the complete graph `K_m`. Lexicographic depth-first
/// streaming over element indices with a word-packed membership table per
/// candidate sum; a branch dies as soon as its distinct-sum count reaches the
/// best known. Runs single-threaded so the examined-node count and the
/// witness are identical on every run.
pub fn min_restricted_sumset_complete(a: &AbelianGroup, m: usize, budget: u128) -> Result<SubsetScanOutcome, GroupError> {
    let order = a.order() as usize;
    if m < 2 {
        return Err(GroupError::TooFewElements(m));
    }
    if m > order {
        return Err(GroupError::InvalidParams(format!(
            "no {m}-element subsets in a group of order {order}"
        )));
    }
    let mut subsets: u128 = 1;
    for i in 0..m as u128 {
        subsets = subsets.saturating_mul(order as u128 - i) / (i + 1);
    }
    if subsets > budget {
        return Err(GroupError::BudgetExceeded { required: subsets, budget });
    }

    let table = a.addition_table();
    let words = order.div_ceil(64);

    struct Scan<'t> {
        order: usize,
        m: usize,
        table: &'t [u32],
        words: usize,
        chosen: Vec<usize>,
        best: Option<(usize, Vec<usize>)>,
        nodes: u64,
    }

    impl Scan<'_> {
        fn run(&mut self, next_min: usize, sums: &[u64], count: usize) {
            self.nodes += 1;
            if let Some((best, _)) = &self.best {
                if count >= *best {
                    return;
                }
            }
            if self.chosen.len() == self.m {
                self.best = Some((count, self.chosen.clone()));
                return;
            }
            let remaining = self.m - self.chosen.len();
            for e in next_min..=(self.order - remaining) {
                let mut next = sums.to_vec();
                let mut next_count = count;
                for &c in &self.chosen {
                    let s = self.table[c * self.order + e] as usize;
                    let (w, b) = (s / 64, s % 64);
                    if next[w] & (1 << b) == 0 {
                        next[w] |= 1 << b;
                        next_count += 1;
                    }
                }
                self.chosen.push(e);
                self.run(e + 1, &next, next_count);
                self.chosen.pop();
            }
        }
    }

    let mut scan = Scan {
        order,
        m,
        table: &table,
        words,
        chosen: Vec::with_capacity(m),
        best: None,
        nodes: 0,
    };
    let empty = vec![0u64; scan.words];
    scan.run(0, &empty, 0);
    let (value, idxs) = scan.best.expect("at least one subset exists");
    Ok(SubsetScanOutcome::Exact {
        value,
        witness: idxs.into_iter().map(|i| a.element(i as u64)).collect(),
        nodes: scan.nodes,
    })
}

/// The explicit low-sum subset of `Z_p^2` for prime `p >= 5`:
/// `{(0,0)} u {(1,i)} u {((p+1)/2, j)}` on `2p + 1` elements. Returns the
/// subset, its restricted sumset size (always `4p`), and the sum set itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Zp2Construction {
    pub p: u64,
    pub subset: Vec<GroupElem>,
    pub achieved: usize,
    pub sum_set: Vec<GroupElem>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn zp2_construction(p: u64) -> Result<Zp2Construction, GroupError> {
    if p < 5 || !is_prime(p) {
        return Err(GroupError::InvalidParams(format!("{p} is not a prime >= 5")));
    }
    let a = AbelianGroup::new(vec![p, p])?;
    let mut subset: BTreeSet<GroupElem> = BTreeSet::new();
    subset.insert(vec![0, 0]);
    for i in 0..p {
        subset.insert(vec![1, i]);
        subset.insert(vec![p.div_ceil(2), i]);
    }
    debug_assert_eq!(subset.len(), (2 * p + 1) as usize);
    let sums = restricted_sumset(&a, &subset)?;
    Ok(Zp2Construction {
        p,
        subset: subset.into_iter().collect(),
        achieved: sums.len(),
        sum_set: sums.into_iter().collect(),
    })
}
