//! Exact computation with covariants of the cyclic group of order `p` acting
//! on k[V_2] and k[V_3] over F_p.
//!
//! The group acts on `x_1, ..., x_m` by `σ x_i = x_i + x_{i+1}` (with `x_m`
//! fixed). A covariant with values in the `n`-dimensional indecomposable
//! module `V_n` corresponds to a polynomial annihilated by `Δ^n`, `Δ = σ − 1`;
//! the crate constructs explicit free generators for these modules and
//! certifies them against exact rank computations.

pub mod action;
pub mod covariant;
pub mod error;
pub mod ff;
pub mod generators;
pub mod hilbert;
pub mod linalg;
pub mod poly;
pub mod verifier;

pub use action::ActionContext;
pub use covariant::{Covariant, CovariantContext};
pub use error::{Error, Result};
pub use ff::{binom_mod_p, fp_inv, Fp, Prime};
pub use generators::{
    ing_generators, sezer_shank_expansion, v2_generators, v3_free_basis, v3_generators, v3_hsop,
    Algebra, Generator, GeneratorSet,
};
pub use hilbert::{GradedOracle, HilbertSeries};
pub use poly::{graded_basis, Monomial, Polynomial};
pub use verifier::{
    verify_free_generation, verify_hilbert_consistency, verify_weight_lemmas, VerificationReport,
};
