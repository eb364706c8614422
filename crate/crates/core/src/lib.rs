//! Workbench for the graph sum index.
//!
//! Assign distinct integers to the vertices of a simple graph and collect the
//! sums across all edges; the sum index is the smallest number of distinct
//! sums any such labeling can realize. This crate computes it exactly with
//! machine-checkable certificates, implements the known closed forms and the
//! explicit labeling constructions behind them, tabulates extremal edge
//! counts for a fixed sum index, and generalizes the search to finite abelian
//! groups.
//!
//! Module map:
//!
//! * [`graph`] / [`family`] / [`graph6`] — graphs, deterministic family
//!   generators, and the graph6 interchange format.
//! * [`labeling`] — rank assignments and their sum signatures.
//! * [`bounds`] — the bound chain and the closed-form catalog.
//! * [`solver`] — exact sum index with certificates, plus a brute-force
//!   oracle kept deliberately independent of the main search.
//! * [`constructions`] — explicit labelings that realize the closed forms.
//! * [`extremal`] — isomorphism-free enumeration and max-edge tables.
//! * [`group`] — sumsets and the sum index over finite abelian groups.

pub mod bounds;
pub mod constructions;
pub mod extremal;
pub mod family;
pub mod graph;
pub mod group;
pub mod graph6;
pub mod labeling;
pub mod linalg;
pub mod solver;

pub use family::FamilySpec;
pub use graph::{Graph, GraphError};
pub use graph6::{decode_graph6, encode_graph6};
pub use labeling::{affine_map, rank_sums, validate_labeling, Labeling, SumSignature};

/// Default seed for every randomized component (witness extraction, property
/// tests). Fixed so certificates reproduce byte for byte.
pub const DEFAULT_SEED: u64 = 42;
