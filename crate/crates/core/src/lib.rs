//! Radio labelings of strong prismatic networks `S_n ⊠ C_m`.
//!
//! * [`graphs`]: stars, cycles, strong products, hop distances, export.
//! * [`labeling`]: the radio condition, verification, greedy completion.
//! * [`construction`]: closed-form radio numbers and explicit labelings.
//! * [`solver`]: exact optima by enumeration and branch-and-bound, sweeps.

pub mod construction;
pub mod error;
pub mod graphs;
pub mod labeling;
pub mod solver;

pub use construction::{
    closed_form_rn, construct_best, heuristic_ordering, paper_literal_labeling, Candidate, ConstructionReport,
    FormulaResult, Parity, Variant, DEFAULT_SEEDS,
};
pub use error::{Error, Result};
pub use graphs::{
    all_pairs_distances, build_cycle, build_star, export_graph, star_cycle_product, strong_product, DistanceMatrix,
    ExportFormat, Graph, GraphKind, VertexKey,
};
pub use labeling::{greedy_from_ordering, required_gap, span, verify, Method, RadioLabeling, Violation};
pub use solver::{brute_force_rn, exact_rn, sweep, ExactResult, ExactStatus, SweepOptions, SweepRecord};
