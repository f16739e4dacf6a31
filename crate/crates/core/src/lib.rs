//! Exact numerical Boij-Söderberg theory.
//!
//! Betti diagrams are sparse maps `(i, j) -> beta_{i,j}` over exact
//! rationals. On top of that this crate provides the greedy decomposition
//! into pure diagrams, clean-filtration and splitting certificates with the
//! integrality obstructions they imply, the monotonicity of pure-diagram
//! strand ratios, sparse obstructed rays, and the semigroup of Betti
//! diagrams of modules with two nonzero graded pieces over three variables.

pub mod decompose;
pub mod degree;
pub mod diagram;
pub mod error;
pub mod filtration;
pub mod fixtures;
pub mod hilbert;
pub mod monotonicity;
pub mod pure;
pub mod rational;
pub mod semigroup;
pub mod sparse;

pub use decompose::{
    bs_decompose, bs_decompose_in, is_in_cone, ChainStep, DecompositionChain, Units,
};
pub use degree::{Degree, DegreeSequence};
pub use diagram::BettiDiagram;
pub use error::{Error, Result};
pub use filtration::{
    analyze, check_free_split, is_strictly_separated, minimal_integral_multiple,
    north_fork_degrees, predict_quotient_betti, splits_strongly, truncate, AnalysisOptions,
    FiltrationReport, PairFlags, Verdict,
};
pub use hilbert::{hilbert_numerator, is_finite_length_consistent, HilbertNumerator};
pub use monotonicity::{check_monotonicity, sweep_verify, SweepReport};
pub use pure::{pure_diagram, smallest_integral_point, top_strand};
pub use rational::Rational;
pub use semigroup::{is_in_bmod, MembershipResult, Triplet};
pub use sparse::{find_obstructed_ray, sparse_ray, SparseRayCertificate};
