//! Exact numerics of three-periodic elliptic helices.
//!
//! A helix on an elliptic curve is recorded in K-theory by the classes
//! `(degree, rank)` of three consecutive members. From such a seed this crate
//! computes the Δ-invariants, the whole helix in both directions, its growth
//! type, the Hilbert series of its endomorphism algebra and quadratic cover,
//! and sufficient certificates that the seed really generates a helix of
//! bundles. The Markov case gets its own constructors: seeds from Markov
//! triples, mutations and reduction to line bundles.
//!
//! All arithmetic is arbitrary precision.

pub mod error;
pub mod exact;
pub mod helix;
pub mod hilbert;
pub mod markov;
pub mod seeds;
pub mod surd;

pub use error::{HelixError, Result};
pub use exact::{cross3, euler_chi, solve_cross_equation, KClass, Mat3, SolutionSet, Vec3};
pub use helix::{
    certify_generation, classify_growth, deltas_from_seed, global_matrix, mutation_matrix, scan_window,
    DeltaTriple, Helix, Seed,
};
pub use hilbert::{hilbert_series, verify_hilbert, Algebra, HilbertTriple, IntSeries};
pub use markov::{descent_path, enumerate_markov, is_markov, markov_mutate, signed_mutation, MarkovTriple};
pub use seeds::{case2_infeasible, construct_markov_seed, family_equigen, family_noneq, mutate_seed, reduce_to_lines};
