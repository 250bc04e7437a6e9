//! Shared fixtures for the criterion benches.

use prismrn_core::{all_pairs_distances, star_cycle_product, DistanceMatrix, Graph};

pub fn product(n: usize, m: usize) -> (Graph, DistanceMatrix) {
    let g = star_cycle_product(n, m).expect("bench parameters are valid");
    let dm = all_pairs_distances(&g).expect("products of connected graphs are connected");
    (g, dm)
}
