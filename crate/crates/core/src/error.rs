use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by sampling-plan construction, evaluation and search.
///
/// Domain violations (invalid plans, out-of-range probabilities) are kept
/// distinct from *negative answers* that a well-posed query can produce
/// (`NoSolution`, `FullInspectionRequired`, `StructurallyInadmissible`,
/// `EmptyInterval`, `NoRoot`), so callers can branch on outcomes without
/// string matching.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A probability-like argument was outside `[0, 1]` or not finite.
    #[error("{name} = {value} is not a probability in [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    /// Acceptance number exceeds sample size, or the sample is empty.
    #[error("invalid sampling plan: n = {n}, c = {c} (need 1 <= n and c <= n)")]
    InvalidPlan { n: u64, c: u64 },

    /// Sample size exceeds the lot size.
    #[error("sample size n = {n} exceeds lot size N = {lot_size}")]
    SampleExceedsLot { n: u64, lot_size: u64 },

    /// Defective count exceeds the lot size (or is negative / not finite).
    #[error("defective count M = {defectives} is outside the lot [0, {lot_size}]")]
    DefectivesOutsideLot { defectives: f64, lot_size: u64 },

    /// A two-point criterion violated `0 < p_a < p_b < 1` or
    /// `0 < P_b < P_a < 1`.
    #[error("invalid two-point criterion: {detail}")]
    InvalidCriterion { detail: String },

    /// A lot size of zero was supplied.
    #[error("lot size must be at least 1")]
    EmptyLot,

    /// No admissible sample size exists at or below the search ceiling.
    #[error("no admissible sample size up to the ceiling n = {ceiling}")]
    NoSolution { ceiling: u64 },

    /// No sampling plan with `n < N` satisfies the criterion; the lot must
    /// be inspected in full.
    #[error("no sampling plan with n < N exists for lot size N = {lot_size}; 100 % inspection is required")]
    FullInspectionRequired { lot_size: u64 },

    /// The lot is too small for any plan with this acceptance number to be
    /// admissible: acceptance would be certain at the AQL.
    ///
    /// `min_lot_size` is the smallest lot size for which admissible plans
    /// can exist (for the default criterion, `100·c + 1`).
    #[error("lot size N = {lot_size} admits no plan with c = {c}: sampling cannot discriminate below N = {min_lot_size}")]
    StructurallyInadmissible {
        lot_size: u64,
        c: u64,
        min_lot_size: u64,
    },

    /// The OC curve does not attain the requested acceptance probability.
    #[error("the OC curve does not attain acceptance probability {target}")]
    NoRoot { target: f64 },

    /// No lot size makes the plan admissible.
    #[error("plan (n = {n}, c = {c}) is admissible for no lot size")]
    EmptyInterval { n: u64, c: u64 },

    /// Exact rational evaluation was requested for a lot too large to
    /// expand into big-integer binomial coefficients.
    #[error("lot size N = {lot_size} exceeds the exact-arithmetic limit N = {limit}")]
    LotTooLargeForExact { lot_size: u64, limit: u64 },

    /// A Monte-Carlo run was requested with zero trials.
    #[error("simulation needs at least one trial")]
    ZeroTrials,

    /// The bundled scheme data failed its startup validation.
    #[error("scheme data rejected: {detail}")]
    SchemeData { detail: String },

    /// The lot size falls below the range the bundled scheme covers.
    #[error("lot size N = {lot_size} is below the scheme range (N >= {min_lot_size})")]
    LotOutsideScheme { lot_size: u64, min_lot_size: u64 },

    /// An internal consistency certificate failed; the reported result
    /// would not be trustworthy. This indicates a numerical breakdown, not
    /// a property of the input.
    #[error("numerical verification failed: {detail}")]
    CertificateFailed { detail: String },
}

impl Error {
    /// Validates that `value` is a finite probability in `[0, 1]`.
    pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(())
        } else {
            Err(Error::ProbabilityOutOfRange { name, value })
        }
    }
}
