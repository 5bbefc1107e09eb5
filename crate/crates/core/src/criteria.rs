//! Two-point acceptance criteria and admissibility predicates.
//!
//! A plan is *admissible* when its OC passes strictly below two anchor
//! points: an acceptance-probability bound at the producer's quality level
//! (AQL) and one at the consumer's limiting quality (LQ). The default
//! criterion is the Measuring Instruments Directive requirement:
//! `OC(1 %) < 95 %` and `OC(7 %) < 5 %`.
//!
//! Three predicates share that definition and differ in the model:
//! binomial (infinite lot), gamma-extended hypergeometric (finite lot,
//! real-valued defective counts), and discrete (finite lot, quality levels
//! rounded up to the integer grid, decided in *exact rational arithmetic*
//! so strict inequalities never hinge on float rounding).

use serde::Serialize;

use crate::dist;
use crate::error::{Error, Result};
use crate::oracle;
use crate::plan::SamplingPlan;

/// Relative half-width within which a value is snapped to the nearest
/// integer before rounding directions are applied. `p · N` and `c / p`
/// land a few ulps off their mathematically integral values
/// (`0.01 * 100.0 == 1.0000000000000002`), and a raw `ceil`/`floor` would
/// then jump a whole grid step.
const GRID_SNAP_RELATIVE: f64 = 1e-9;

/// Snaps `x` to the nearest integer when it is within a few ulps-worth of
/// relative distance, otherwise returns `x` unchanged.
pub(crate) fn snap_to_integer(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= GRID_SNAP_RELATIVE * r.abs().max(1.0) {
        r
    } else {
        x
    }
}

/// A two-point OC criterion: strict upper bounds on the acceptance
/// probability at the AQL and at the LQ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPointCriterion {
    aql: f64,
    aql_bound: f64,
    lq: f64,
    lq_bound: f64,
}

impl Default for TwoPointCriterion {
    /// The Measuring Instruments Directive criterion:
    /// `OC(0.01) < 0.95` and `OC(0.07) < 0.05`.
    fn default() -> Self {
        TwoPointCriterion {
            aql: 0.01,
            aql_bound: 0.95,
            lq: 0.07,
            lq_bound: 0.05,
        }
    }
}

impl TwoPointCriterion {
    /// Builds a criterion `OC(aql) < aql_bound`, `OC(lq) < lq_bound`,
    /// requiring `0 < aql < lq < 1` and `0 < lq_bound < aql_bound < 1`.
    pub fn new(aql: f64, aql_bound: f64, lq: f64, lq_bound: f64) -> Result<Self> {
        for (name, v) in [
            ("aql", aql),
            ("aql_bound", aql_bound),
            ("lq", lq),
            ("lq_bound", lq_bound),
        ] {
            if !v.is_finite() || v <= 0.0 || v >= 1.0 {
                return Err(Error::InvalidCriterion {
                    detail: format!("{name} = {v} must lie strictly inside (0, 1)"),
                });
            }
        }
        if aql >= lq {
            return Err(Error::InvalidCriterion {
                detail: format!("quality levels must satisfy aql < lq (got {aql} >= {lq})"),
            });
        }
        if lq_bound >= aql_bound {
            return Err(Error::InvalidCriterion {
                detail: format!(
                    "acceptance bounds must satisfy lq_bound < aql_bound (got {lq_bound} >= {aql_bound})"
                ),
            });
        }
        Ok(TwoPointCriterion {
            aql,
            aql_bound,
            lq,
            lq_bound,
        })
    }

    /// Producer's quality level (fraction defective).
    pub fn aql(&self) -> f64 {
        self.aql
    }

    /// Strict upper bound on the OC at the AQL.
    pub fn aql_bound(&self) -> f64 {
        self.aql_bound
    }

    /// Consumer's limiting quality level (fraction defective).
    pub fn lq(&self) -> f64 {
        self.lq
    }

    /// Strict upper bound on the OC at the LQ.
    pub fn lq_bound(&self) -> f64 {
        self.lq_bound
    }
}

/// The quality levels a finite lot can actually exhibit: `M / lot_size`
/// for integer defective counts `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QualityLevelGrid {
    lot_size: u64,
}

impl QualityLevelGrid {
    pub fn new(lot_size: u64) -> Result<Self> {
        if lot_size == 0 {
            return Err(Error::EmptyLot);
        }
        Ok(QualityLevelGrid { lot_size })
    }

    pub fn lot_size(&self) -> u64 {
        self.lot_size
    }

    /// The smallest defective count whose quality level is at least `p` —
    /// the canonical discretization of an off-grid quality level.
    pub fn ceil_count(&self, p: f64) -> Result<u64> {
        Error::check_probability("p", p)?;
        Ok(snap_to_integer(p * self.lot_size as f64).ceil() as u64)
    }

    /// The quality level of `count` defectives.
    pub fn level(&self, count: u64) -> Result<f64> {
        if count > self.lot_size {
            return Err(Error::DefectivesOutsideLot {
                defectives: count as f64,
                lot_size: self.lot_size,
            });
        }
        Ok(count as f64 / self.lot_size as f64)
    }

    /// Whether `p` lies on the grid (up to snap tolerance).
    pub fn contains(&self, p: f64) -> bool {
        let x = p * self.lot_size as f64;
        snap_to_integer(x) == snap_to_integer(x).round() && (0.0..=1.0).contains(&p)
    }

    /// All grid levels, ascending.
    pub fn levels(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.lot_size).map(|m| m as f64 / self.lot_size as f64)
    }
}

/// Which criterion point settles (or sinks) the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BindingPoint {
    /// The AQL condition failed, or (if admissible) has the thinner margin.
    Aql,
    /// The LQ condition failed, or (if admissible) has the thinner margin.
    Lq,
    /// Both conditions failed, or the margins tie exactly.
    Both,
}

impl std::fmt::Display for BindingPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BindingPoint::Aql => write!(f, "AQL"),
            BindingPoint::Lq => write!(f, "LQ"),
            BindingPoint::Both => write!(f, "both"),
        }
    }
}

/// The outcome of an admissibility check, with the OC values that decided
/// it and the distance to each bound (`bound - oc`; negative = violated).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub oc_at_aql: f64,
    pub oc_at_lq: f64,
    pub aql_margin: f64,
    pub lq_margin: f64,
    pub binding: BindingPoint,
}

fn verdict_from(
    oc_at_aql: f64,
    oc_at_lq: f64,
    aql_ok: bool,
    lq_ok: bool,
    criterion: &TwoPointCriterion,
) -> AdmissibilityVerdict {
    let aql_margin = criterion.aql_bound() - oc_at_aql;
    let lq_margin = criterion.lq_bound() - oc_at_lq;
    let binding = match (aql_ok, lq_ok) {
        (false, false) => BindingPoint::Both,
        (false, true) => BindingPoint::Aql,
        (true, false) => BindingPoint::Lq,
        (true, true) => {
            if aql_margin < lq_margin {
                BindingPoint::Aql
            } else if lq_margin < aql_margin {
                BindingPoint::Lq
            } else {
                BindingPoint::Both
            }
        }
    };
    AdmissibilityVerdict {
        admissible: aql_ok && lq_ok,
        oc_at_aql,
        oc_at_lq,
        aql_margin,
        lq_margin,
        binding,
    }
}

/// Admissibility under the binomial (infinite-lot) model.
pub fn admissible_binomial(
    plan: SamplingPlan,
    criterion: &TwoPointCriterion,
) -> Result<AdmissibilityVerdict> {
    let oc_at_aql = dist::binomial_oc(criterion.aql(), plan)?;
    let oc_at_lq = dist::binomial_oc(criterion.lq(), plan)?;
    Ok(verdict_from(
        oc_at_aql,
        oc_at_lq,
        oc_at_aql < criterion.aql_bound(),
        oc_at_lq < criterion.lq_bound(),
        criterion,
    ))
}

/// Admissibility for a finite lot, with each quality level mapped to the
/// real-valued defective count `p · N` and evaluated on the gamma-extended
/// OC.
///
/// When a criterion point corresponds to at most `c` defectives in the
/// whole lot (`p · N <= c`, snapped), acceptance at that point is certain:
/// no sample of any size can find more defectives than the lot contains.
/// The OC is reported as exactly `1` there and the condition fails. (The
/// raw gamma continuation is meaningless that deep below the grid — it can
/// even oscillate to negative values — so certainty is decided structurally
/// rather than numerically.)
pub fn admissible_extended(
    lot_size: u64,
    plan: SamplingPlan,
    criterion: &TwoPointCriterion,
) -> Result<AdmissibilityVerdict> {
    let oc_at = |p: f64| -> Result<f64> {
        let defectives = snap_to_integer(p * lot_size as f64);
        if defectives <= plan.c() as f64 {
            Ok(1.0)
        } else {
            dist::hypergeom_oc_extended(defectives, lot_size, plan)
        }
    };
    let oc_at_aql = oc_at(criterion.aql())?;
    let oc_at_lq = oc_at(criterion.lq())?;
    Ok(verdict_from(
        oc_at_aql,
        oc_at_lq,
        oc_at_aql < criterion.aql_bound(),
        oc_at_lq < criterion.lq_bound(),
        criterion,
    ))
}

/// Admissibility for a finite lot restricted to its integer quality grid:
/// each criterion level is rounded *up* to the next attainable level, the
/// OC is evaluated there exactly (big-rational arithmetic), and the strict
/// comparisons are decided without any floating-point rounding.
///
/// Inherits the exact-arithmetic lot-size limit of
/// [`oracle::hypergeom_oc_rational`].
pub fn admissible_discrete(
    lot_size: u64,
    plan: SamplingPlan,
    criterion: &TwoPointCriterion,
) -> Result<AdmissibilityVerdict> {
    let grid = QualityLevelGrid::new(lot_size)?;
    let check = |p: f64, bound: f64| -> Result<(f64, bool)> {
        let count = grid.ceil_count(p)?;
        let oc = oracle::hypergeom_oc_rational(count, lot_size, plan)?;
        let below = oc
            .strictly_below(bound)
            .ok_or(Error::ProbabilityOutOfRange {
                name: "bound",
                value: bound,
            })?;
        Ok((oc.to_f64(), below))
    };
    let (oc_at_aql, aql_ok) = check(criterion.aql(), criterion.aql_bound())?;
    let (oc_at_lq, lq_ok) = check(criterion.lq(), criterion.lq_bound())?;
    Ok(verdict_from(oc_at_aql, oc_at_lq, aql_ok, lq_ok, criterion))
}

/// The smallest lot size for which plans with acceptance number `c` can be
/// admissible at all. Below it, `p_aql · N <= c`: the whole lot contains
/// no more than `c` defectives at the AQL, acceptance there is certain,
/// and the AQL condition cannot hold. For the default criterion this is
/// `100·c + 1`.
pub fn lot_size_lower_bound(c: u64, criterion: &TwoPointCriterion) -> u64 {
    let threshold = snap_to_integer(c as f64 / criterion.aql()).floor() as u64;
    threshold + 1
}
