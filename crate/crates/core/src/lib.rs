//! Acceptance-sampling plans for finite lots.
//!
//! This crate computes operating characteristics (OC) and designs
//! single-sampling plans `(n, c)` — draw `n` items without replacement,
//! accept the lot when at most `c` defectives are found — under a two-point
//! criterion that bounds the OC at a producer's quality level (AQL) and at a
//! consumer's limiting quality level (LQ). The default criterion is the one
//! used for statistical verification under the European Measuring
//! Instruments Directive (2014/32/EU, Annex II, modules F/F1): acceptance
//! probability below 95 % at 1 % defectives and below 5 % at 7 % defectives,
//! both strict.
//!
//! Four OC models are provided:
//!
//! * binomial (infinite lot / sampling with replacement),
//! * Poisson (classical approximation, cross-checks only),
//! * exact hypergeometric for a finite lot with an integer defective count,
//! * a gamma-extended hypergeometric that evaluates the finite-lot OC at
//!   *real-valued* defective counts `M = p·N`, which is what makes the
//!   two-point criterion meaningful for every lot size.
//!
//! On top of the models sit admissibility predicates ([`criteria`]), sample
//! size minimizers and lot-size interval searches ([`optimize`]), a shipped
//! simplified sampling scheme with reference plans ([`scheme`]), and
//! independent verification backends — exact big-rational evaluation and a
//! deterministic Monte-Carlo simulator ([`oracle`]).
//!
//! The `parallel` feature (on by default) runs Monte-Carlo shards and table
//! sweeps on rayon; disabling it yields a dependency-free sequential build
//! with identical results.

pub mod criteria;
pub mod dist;
mod error;
mod exec;
mod numeric;
pub mod optimize;
pub mod oracle;
mod plan;
pub mod scheme;

pub use error::{Error, Result};
pub use plan::{OcModel, SamplingPlan};

pub use criteria::{AdmissibilityVerdict, BindingPoint, QualityLevelGrid, TwoPointCriterion};
pub use optimize::{LotInterval, RiskSummary};
