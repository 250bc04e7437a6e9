//! Exact optima and parameter sweeps.

pub mod exact;
pub mod sweep;

pub use exact::{
    branch_and_bound, brute_force_rn, exact_rn, initial_incumbent, trivial_lower_bound, ExactDocument,
    ExactResult, ExactStatus, BRUTE_FORCE_CAP,
};
pub use sweep::{grid, parse_sweep_csv, sweep, sweep_csv, RowStatus, SweepOptions, SweepRecord, SWEEP_CSV_HEADER};
