//! Computable uniform convexity of L^p on finite atomic measure spaces.
//!
//! The crate evaluates the Young gap and the normalized gap
//! `f(u) = |u|^p - 1 + p(1 - Re u)`, numerically determines the comparison
//! constant `α(ε, p) = sup { |u-1|^p / f(u) : |u-1| >= ε }`, chains it into
//! explicit `δ(ε, p)` budgets for the probability-space lemma, the
//! general-measure lemma, and the uniform-convexity theorem, and verifies
//! those budgets by adversarial search over finite atomic measure spaces.
//!
//! Module map:
//! - [`scalar`]: exact-formula layer for complex scalars.
//! - [`measure`]: finite atomic measure spaces, norms, pairings, norming
//!   witnesses, phase reduction, and the induced probability measure.
//! - [`search`]: seeded instance generation, multi-start derivative-free
//!   maximization, grid scan with local refinement.
//! - [`alpha`]: the comparison constant and the `δ(ε, p)` budget chain.
//! - [`slice`]: unit-ball slices, instance verification, adversarial budget
//!   checks, slice diameter, and modulus of convexity.

pub mod alpha;
pub mod error;
pub mod measure;
pub mod scalar;
pub mod search;
pub mod slice;

pub use alpha::{
    compute_alpha, delta_for, delta_lemma1, delta_lemma2, delta_theorem, AlphaCertificate,
    AlphaOptions, ConvexityBudget, Statement,
};
pub use error::{Error, Result};
pub use measure::{
    disjoint_split_check, holder_gap, induce_probability, lp_norm, norming_witness,
    norming_witness_dual, pairing, phase_reduction, quotient_z, InducedMeasure, LpFunction,
    MeasureSpace,
};
pub use scalar::{
    comparison_ratio, conjugate_exponent, normalized_gap, young_equality_holds, young_gap,
    Exponents,
};
pub use search::{
    grid_refine, maximize, random_instance, Instance, InstanceKind, Rect, SearchOptions,
    SearchOutcome, SearchProblem,
};
pub use slice::{
    adversarial_verify, modulus_of_convexity, replay_instance, slice_contains, slice_diameter,
    split_trick, verify_lemma1_instance, verify_lemma2_instance, verify_theorem_instance,
    DiameterEstimate, InstanceOutcome, ModulusEstimate, SliceSpec, VerificationReport,
};
