//! Hilbert series: exact rational forms, closed formulas for k[V_2] and
//! k[V_3], and the rank-based oracle they are checked against.

mod closed;
mod oracle;
mod series;

pub use closed::{
    check_cutoff, default_cutoff, degree_cap, h_ig, h_invariants, h_kn, h_kn_assembled,
    h_kn_closed, half_index, hk, hk_v2, hk_v3, HkForm, RoutedSeries,
};
pub use oracle::{
    brute_ig_dim, brute_kernel_dim, brute_multiplicities, check_freetest, check_freetest_with,
    delta_matrix, span_rank, FreetestOutcome, GradedOracle, GradedPiece, MultiplicityTable,
};
pub use series::HilbertSeries;
