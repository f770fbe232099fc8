//! Mutation classes of skew-symmetrizable exchange matrices, with a decision
//! procedure for coefficient vectors that keep the extended class finite.

pub mod admissible;
pub mod canonical;
pub mod catalog;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod surfaces;
pub mod unfolding;

pub use admissible::{
    annulus_violations, decide_admissible, fast_admissible, first_annulus_violation, rank2_admissible,
    rank2_growth_search, rank3_criterion_check, AnnulusViolation, Decider, FastVerdict, Relation, Verdict, VerdictKind,
    Violation,
};
pub use canonical::{are_isomorphic, canonical_form, CanonicalForm, Canonicalizer};
pub use classify::{classify, TypeLabel};
pub use enumerate::{
    enumerate_class, is_mutation_finite_mutable, walk_class, Finiteness, MutationClass, SearchConfig, Visit,
    WalkOutcome,
};
pub use error::{Error, Result};
pub use matrix::{Arrow, CoefficientVector, DiagramView, ExchangeMatrix, MutationSequence};
pub use surfaces::{
    annulus_triangulation, quiver_from_triangulation, s11_bridging_table, standard_admissible, standard_triangulation,
    StandardMeta, SurfaceSpec, Triangulation,
};
pub use unfolding::{composite_mutate, unfold_extended, validate_unfolding, UnfoldingSpec};
