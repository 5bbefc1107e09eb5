use serde::{Deserialize, Serialize};

use crate::dist;
use crate::error::{Error, Result};

/// A single-sampling plan: draw `n` items from the lot without replacement
/// and accept the lot when at most `c` of them are defective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPlan", into = "RawPlan")]
pub struct SamplingPlan {
    n: u64,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct RawPlan {
    n: u64,
    c: u64,
}

impl TryFrom<RawPlan> for SamplingPlan {
    type Error = Error;

    fn try_from(raw: RawPlan) -> Result<Self> {
        SamplingPlan::new(raw.n, raw.c)
    }
}

impl From<SamplingPlan> for RawPlan {
    fn from(plan: SamplingPlan) -> Self {
        RawPlan {
            n: plan.n,
            c: plan.c,
        }
    }
}

impl SamplingPlan {
    /// Creates a plan, requiring `n >= 1` and `c <= n`.
    pub fn new(n: u64, c: u64) -> Result<Self> {
        if n == 0 || c > n {
            return Err(Error::InvalidPlan { n, c });
        }
        Ok(SamplingPlan { n, c })
    }

    /// Sample size.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Acceptance number: the largest defective count that still accepts.
    pub fn c(&self) -> u64 {
        self.c
    }
}

impl std::fmt::Display for SamplingPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n = {}, c = {})", self.n, self.c)
    }
}

/// The probability model used to evaluate an operating characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum OcModel {
    /// Infinite-lot model: defectives in the sample are binomial.
    Binomial,
    /// Poisson approximation to the binomial. Used for cross-checks; it
    /// never drives admissibility decisions.
    Poisson,
    /// Finite lot of `lot_size` items with an integer defective count.
    /// Defined on the quality grid `M / lot_size` only.
    HypergeometricExact { lot_size: u64 },
    /// Finite lot of `lot_size` items with the defective count extended to
    /// real values via the gamma function, so the OC is defined at every
    /// quality level `p` as `M = p·lot_size`.
    HypergeometricExtended { lot_size: u64 },
}

impl OcModel {
    /// The lot size for the finite-lot models, `None` for the others.
    pub fn lot_size(&self) -> Option<u64> {
        match self {
            OcModel::Binomial | OcModel::Poisson => None,
            OcModel::HypergeometricExact { lot_size }
            | OcModel::HypergeometricExtended { lot_size } => Some(*lot_size),
        }
    }

    /// Acceptance probability at quality level `p` (fraction defective),
    /// as a function continuous in `p`.
    ///
    /// For the finite-lot models this evaluates the gamma-extended OC at
    /// `M = p·lot_size`; for `HypergeometricExact` that continuation agrees
    /// with the exact OC at every grid point `M / lot_size`, and is the
    /// standard way to interpolate it in between (root finding and risk
    /// curves need a continuous argument). Grid-restricted evaluation is
    /// available directly as [`dist::hypergeom_oc_exact`].
    pub fn continuous_oc(&self, p: f64, plan: SamplingPlan) -> Result<f64> {
        Error::check_probability("p", p)?;
        match *self {
            OcModel::Binomial => dist::binomial_oc(p, plan),
            OcModel::Poisson => dist::poisson_oc(p, plan),
            OcModel::HypergeometricExact { lot_size }
            | OcModel::HypergeometricExtended { lot_size } => {
                dist::hypergeom_oc_extended(p * lot_size as f64, lot_size, plan)
            }
        }
    }
}

impl std::fmt::Display for OcModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OcModel::Binomial => write!(f, "binomial"),
            OcModel::Poisson => write!(f, "poisson"),
            OcModel::HypergeometricExact { lot_size } => {
                write!(f, "hypergeometric-exact(N = {lot_size})")
            }
            OcModel::HypergeometricExtended { lot_size } => {
                write!(f, "hypergeometric-extended(N = {lot_size})")
            }
        }
    }
}
