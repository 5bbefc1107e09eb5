//! Plan search: minimal sample sizes, admissible lot-size intervals, risk
//! summaries, and the interval table that maps lot sizes to plans.
//!
//! Every search here exploits a monotone structure and then *certifies*
//! its answer against the raw predicate (the found point satisfies it, the
//! adjacent point does not). A certificate failure — which would mean the
//! predicate is not monotone where it was assumed to be — aborts with
//! [`Error::CertificateFailed`] instead of returning a plausible-looking
//! wrong answer.

use serde::Serialize;

use crate::criteria::{
    self, admissible_binomial, admissible_discrete, admissible_extended, lot_size_lower_bound,
    TwoPointCriterion,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::plan::{OcModel, SamplingPlan};

/// Default ceiling for infinite-lot sample-size searches.
pub const DEFAULT_SAMPLE_CEILING: u64 = 1_000_000;

/// Smallest lot size covered by generated plan tables (smaller lots are
/// inspected in full).
pub const TABLE_LOT_START: u64 = 15;

/// Search caps for lot-size edges. The doubling searches certify their
/// answers, so the caps only bound how far a pathological (non-default)
/// criterion is chased before giving up honestly.
const LOWER_EDGE_CAP: u64 = 1_000_000_000;
const UPPER_EDGE_CAP: u64 = 1_000_000_000_000;

/// Hard stop for the c = 0 table sweep.
const SWEEP_CAP: u64 = 1_000_000;
const SWEEP_CHUNK: u64 = 512;

/// Finds the smallest `x` in `[lo, hi]` satisfying a monotone predicate
/// (`false..false, true..true`), or `None` when even `hi` fails. The
/// result is certified against the predicate at `x` and `x - 1`.
pub(crate) fn smallest_satisfying(
    lo: u64,
    hi: u64,
    pred: &dyn Fn(u64) -> Result<bool>,
) -> Result<Option<u64>> {
    if lo > hi || !pred(hi)? {
        return Ok(None);
    }
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let mid = a + (b - a) / 2;
        if pred(mid)? {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    if !pred(a)? || (a > lo && pred(a - 1)?) {
        return Err(Error::CertificateFailed {
            detail: format!("predicate is not monotone around {a}"),
        });
    }
    Ok(Some(a))
}

/// Smallest admissible sample size under the binomial model, searching
/// `c <= n <= ceiling`.
pub fn min_sample_binomial(
    c: u64,
    criterion: &TwoPointCriterion,
    ceiling: u64,
) -> Result<SamplingPlan> {
    let pred = |n: u64| -> Result<bool> {
        Ok(admissible_binomial(SamplingPlan::new(n, c)?, criterion)?.admissible)
    };
    match smallest_satisfying(c.max(1), ceiling, &pred)? {
        Some(n) => SamplingPlan::new(n, c),
        None => Err(Error::NoSolution { ceiling }),
    }
}

/// Smallest admissible sample size under the Poisson model (cross-check
/// companion to [`min_sample_binomial`]; approximations never drive
/// finite-lot decisions).
pub fn min_sample_poisson(
    c: u64,
    criterion: &TwoPointCriterion,
    ceiling: u64,
) -> Result<SamplingPlan> {
    let pred = |n: u64| -> Result<bool> {
        let plan = SamplingPlan::new(n, c)?;
        let oc_at_aql = crate::dist::poisson_oc(criterion.aql(), plan)?;
        let oc_at_lq = crate::dist::poisson_oc(criterion.lq(), plan)?;
        Ok(oc_at_aql < criterion.aql_bound() && oc_at_lq < criterion.lq_bound())
    };
    match smallest_satisfying(c.max(1), ceiling, &pred)? {
        Some(n) => SamplingPlan::new(n, c),
        None => Err(Error::NoSolution { ceiling }),
    }
}

fn check_structurally_possible(
    lot_size: u64,
    c: u64,
    criterion: &TwoPointCriterion,
) -> Result<()> {
    if lot_size == 0 {
        return Err(Error::EmptyLot);
    }
    let min_lot_size = lot_size_lower_bound(c, criterion);
    if lot_size < min_lot_size {
        return Err(Error::StructurallyInadmissible {
            lot_size,
            c,
            min_lot_size,
        });
    }
    Ok(())
}

/// Smallest admissible sample size for a finite lot under the
/// gamma-extended criterion, searching true sampling plans `n < N` only.
///
/// Returns [`Error::StructurallyInadmissible`] when the lot is too small
/// for any plan with this `c` (certain acceptance at the AQL), and
/// [`Error::FullInspectionRequired`] when plans exist in principle but no
/// `n < N` passes.
pub fn min_sample_extended(
    lot_size: u64,
    c: u64,
    criterion: &TwoPointCriterion,
) -> Result<SamplingPlan> {
    check_structurally_possible(lot_size, c, criterion)?;
    let pred = |n: u64| -> Result<bool> {
        Ok(admissible_extended(lot_size, SamplingPlan::new(n, c)?, criterion)?.admissible)
    };
    match smallest_satisfying(c.max(1), lot_size.saturating_sub(1), &pred)? {
        Some(n) => SamplingPlan::new(n, c),
        None => Err(Error::FullInspectionRequired { lot_size }),
    }
}

/// Smallest admissible sample size for a finite lot under the discrete
/// (grid-rounded, exact-arithmetic) criterion. Same outcome signals as
/// [`min_sample_extended`].
pub fn min_sample_discrete(
    lot_size: u64,
    c: u64,
    criterion: &TwoPointCriterion,
) -> Result<SamplingPlan> {
    check_structurally_possible(lot_size, c, criterion)?;
    let pred = |n: u64| -> Result<bool> {
        Ok(admissible_discrete(lot_size, SamplingPlan::new(n, c)?, criterion)?.admissible)
    };
    match smallest_satisfying(c.max(1), lot_size.saturating_sub(1), &pred)? {
        Some(n) => SamplingPlan::new(n, c),
        None => Err(Error::FullInspectionRequired { lot_size }),
    }
}

/// Minimal extended sample size for every lot size in `[first, last]`,
/// computed in parallel (with the `parallel` feature). `None` marks lots
/// where no plan with `n < N` qualifies — full inspection territory.
pub fn min_sample_profile(
    first: u64,
    last: u64,
    c: u64,
    criterion: &TwoPointCriterion,
) -> Result<Vec<(u64, Option<u64>)>> {
    let lots: Vec<u64> = (first..=last).collect();
    let criterion = *criterion;
    exec::map_collect(lots, move |lot_size| {
        match min_sample_extended(lot_size, c, &criterion) {
            Ok(plan) => Ok((lot_size, Some(plan.n()))),
            Err(Error::FullInspectionRequired { .. })
            | Err(Error::StructurallyInadmissible { .. }) => Ok((lot_size, None)),
            Err(e) => Err(e),
        }
    })
    .into_iter()
    .collect()
}

/// The contiguous range of lot sizes for which a plan is admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LotInterval {
    pub plan: SamplingPlan,
    pub min_lot: u64,
    /// `None`: admissible for every lot size from `min_lot` up (the plan
    /// is admissible in the binomial limit).
    pub max_lot: Option<u64>,
}

/// Computes the admissible lot-size interval of a plan under the extended
/// criterion.
///
/// The search leans on the one-sided structure of the two conditions in
/// `N` — the AQL condition only improves as the lot grows, the LQ
/// condition only degrades — and certifies the computed endpoints against
/// the raw predicate, so a criterion without that structure fails loudly
/// rather than silently returning a wrong interval.
pub fn lot_interval(plan: SamplingPlan, criterion: &TwoPointCriterion) -> Result<LotInterval> {
    let (n, c) = (plan.n(), plan.c());
    let admissible_at =
        |lot: u64| -> Result<bool> { Ok(admissible_extended(lot, plan, criterion)?.admissible) };
    let aql_ok_at = |lot: u64| -> Result<bool> {
        Ok(admissible_extended(lot, plan, criterion)?.aql_margin > 0.0)
    };
    let binom = admissible_binomial(plan, criterion)?;

    let min_lot = if c == 0 {
        // With c = 0 both conditions are hardest in the binomial limit and
        // easiest at N = n, so the interval is non-empty iff the smallest
        // lot works.
        if !admissible_at(n)? {
            return Err(Error::EmptyInterval { n, c });
        }
        n
    } else {
        // For c >= 1 the AQL condition approaches its binomial value from
        // above; if even the limit fails, no lot size can pass.
        if binom.aql_margin <= 0.0 {
            return Err(Error::EmptyInterval { n, c });
        }
        let floor = n.max(lot_size_lower_bound(c, criterion));
        let mut probe = floor;
        while !aql_ok_at(probe)? {
            if probe >= LOWER_EDGE_CAP {
                return Err(Error::CertificateFailed {
                    detail: format!(
                        "AQL condition for plan {plan} not met below lot size {LOWER_EDGE_CAP}"
                    ),
                });
            }
            probe = (probe * 2).min(LOWER_EDGE_CAP);
        }
        let first_aql = smallest_satisfying(floor, probe, &aql_ok_at)?
            .expect("probe satisfies the predicate");
        // The LQ condition only tightens with N: if it already fails at
        // the first AQL-feasible lot, the interval is empty.
        if !admissible_at(first_aql)? {
            return Err(Error::EmptyInterval { n, c });
        }
        first_aql
    };

    let max_lot = if binom.admissible {
        None
    } else {
        let inadmissible_at = |lot: u64| -> Result<bool> { Ok(!admissible_at(lot)?) };
        let mut probe = min_lot;
        while admissible_at(probe)? {
            if probe >= UPPER_EDGE_CAP {
                return Err(Error::CertificateFailed {
                    detail: format!(
                        "plan {plan} still admissible at lot size {UPPER_EDGE_CAP} yet not in the binomial limit"
                    ),
                });
            }
            probe = (probe * 2).min(UPPER_EDGE_CAP);
        }
        let first_bad = smallest_satisfying(min_lot, probe, &inadmissible_at)?
            .expect("probe violates admissibility");
        Some(first_bad - 1)
    };

    // Endpoint certificates: inside admissible, outside not.
    let mut certified = admissible_at(min_lot)?;
    if certified && min_lot > n {
        certified = !admissible_at(min_lot - 1)?;
    }
    if let Some(max) = max_lot {
        certified = certified && admissible_at(max)? && !admissible_at(max + 1)?;
    }
    if !certified {
        return Err(Error::CertificateFailed {
            detail: format!("lot-interval endpoints for plan {plan} failed re-verification"),
        });
    }

    Ok(LotInterval {
        plan,
        min_lot,
        max_lot,
    })
}

/// Producer/consumer risk profile of a plan under one OC model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskSummary {
    pub plan: SamplingPlan,
    pub model: OcModel,
    /// `α`: probability of rejecting a lot at the AQL.
    pub producer_risk: f64,
    /// `β`: probability of accepting a lot at the LQ.
    pub consumer_risk: f64,
    /// Quality level accepted with exactly the AQL-bound probability
    /// (e.g. 95 %), when the OC reaches it.
    pub producer_quality: Option<f64>,
    /// Quality level accepted with exactly the LQ-bound probability
    /// (e.g. 5 %), when the OC reaches it.
    pub consumer_quality: Option<f64>,
    /// Whether the producer risk is operational for this model's lot:
    /// at the AQL the lot must contain at least one defective
    /// (`N >= 1/aql`); below that the "risk at 1 % quality" quantifies a
    /// lot that cannot exist. Always `true` for infinite-lot models.
    pub producer_risk_operational: bool,
}

/// Tolerance on `|OC(q) - target|` for [`quality_at_probability`].
pub const QUALITY_ROOT_TOLERANCE: f64 = 1e-10;

/// Inverts the OC curve: the quality level accepted with probability
/// `target`. Bisection on `[0, 1]`; the OC is continuous and
/// non-increasing in `p` for every model (the exact finite-lot model is
/// inverted through its gamma-extended continuation).
///
/// Fails with [`Error::NoRoot`] when `target` is outside the open range
/// `(OC(1), OC(0))` actually attained by the curve.
pub fn quality_at_probability(plan: SamplingPlan, target: f64, model: OcModel) -> Result<f64> {
    Error::check_probability("target", target)?;
    let f = |q: f64| model.continuous_oc(q, plan);
    // OC(0) = 1 for every model; the floor varies (e.g. Poisson keeps
    // positive mass at p = 1).
    if !(f(1.0)? < target && target < 1.0) {
        return Err(Error::NoRoot { target });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket exhausted at f64 resolution
        }
        let at_mid = f(mid)?;
        if (at_mid - target).abs() <= QUALITY_ROOT_TOLERANCE {
            return Ok(mid);
        }
        if at_mid > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The bracket closed without the residual dipping under tolerance:
    // the curve jumps past the target between adjacent floats. Report the
    // better endpoint if it qualifies after all, otherwise fail honestly.
    let (at_lo, at_hi) = (f(lo)?, f(hi)?);
    let (q, at_q) = if (at_lo - target).abs() <= (at_hi - target).abs() {
        (lo, at_lo)
    } else {
        (hi, at_hi)
    };
    if (at_q - target).abs() <= QUALITY_ROOT_TOLERANCE {
        Ok(q)
    } else {
        Err(Error::CertificateFailed {
            detail: format!(
                "OC inversion stalled at q = {q} with |OC - {target}| = {}",
                (at_q - target).abs()
            ),
        })
    }
}

/// Computes the full risk profile of a plan under a model.
pub fn risk_summary(
    plan: SamplingPlan,
    model: OcModel,
    criterion: &TwoPointCriterion,
) -> Result<RiskSummary> {
    let oc_at_aql = model.continuous_oc(criterion.aql(), plan)?;
    let oc_at_lq = model.continuous_oc(criterion.lq(), plan)?;
    let invert = |target: f64| -> Result<Option<f64>> {
        match quality_at_probability(plan, target, model) {
            Ok(q) => Ok(Some(q)),
            Err(Error::NoRoot { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let producer_risk_operational = match model.lot_size() {
        Some(lot) => criteria::snap_to_integer(lot as f64 * criterion.aql()) >= 1.0,
        None => true,
    };
    Ok(RiskSummary {
        plan,
        model,
        producer_risk: 1.0 - oc_at_aql,
        consumer_risk: oc_at_lq,
        producer_quality: invert(criterion.aql_bound())?,
        consumer_quality: invert(criterion.lq_bound())?,
        producer_risk_operational,
    })
}

/// One row of an interval table: a plan, the lot sizes it serves, and its
/// risks at both ends of that range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalTableRow {
    pub interval: LotInterval,
    /// Risks at the smallest lot of the range (extended model).
    pub risk_at_min_lot: RiskSummary,
    /// Risks at the largest lot, or in the binomial limit for unbounded
    /// ranges.
    pub risk_at_max_lot: RiskSummary,
}

/// Plan table for one acceptance number over all lot sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalTable {
    pub c: u64,
    pub rows: Vec<IntervalTableRow>,
}

fn table_row(interval: LotInterval, criterion: &TwoPointCriterion) -> Result<IntervalTableRow> {
    let at_min = risk_summary(
        interval.plan,
        OcModel::HypergeometricExtended {
            lot_size: interval.min_lot,
        },
        criterion,
    )?;
    let at_max = match interval.max_lot {
        Some(max) => risk_summary(
            interval.plan,
            OcModel::HypergeometricExtended { lot_size: max },
            criterion,
        )?,
        None => risk_summary(interval.plan, OcModel::Binomial, criterion)?,
    };
    Ok(IntervalTableRow {
        interval,
        risk_at_min_lot: at_min,
        risk_at_max_lot: at_max,
    })
}

/// Builds the lot-size → plan table for acceptance number `c`.
///
/// * For `c = 0` the table has the "minimal sample size per lot size"
///   shape: lots from [`TABLE_LOT_START`] are swept upward, lots sharing
///   the same minimal `n` are grouped into one row, and the sweep stops
///   when the minimal `n` saturates at its binomial value (final,
///   unbounded row). Lots too small for any true sampling plan are served
///   by full inspection, rendered as `n = N`. Each row's range says where
///   that `n` is *minimal*; admissibility extends to all larger lots.
/// * For `c >= 1` each row is the admissible lot interval of `(n, c)`,
///   for `n` from the smallest with a non-empty interval up to `n_max`
///   (default: twice the binomial minimum).
pub fn interval_table(
    c: u64,
    criterion: &TwoPointCriterion,
    n_max: Option<u64>,
) -> Result<IntervalTable> {
    let binomial_n = min_sample_binomial(c, criterion, DEFAULT_SAMPLE_CEILING)?.n();
    let rows = if c == 0 {
        c0_rows(criterion, binomial_n)?
    } else {
        let n_to = n_max.unwrap_or(2 * binomial_n);
        // Find the first n whose interval is non-empty, then emit one row
        // per n. Intervals only widen with n, so the scan stops at the
        // first hit.
        let mut n_from = None;
        for n in c.max(1)..=n_to {
            match lot_interval(SamplingPlan::new(n, c)?, criterion) {
                Ok(_) => {
                    n_from = Some(n);
                    break;
                }
                Err(Error::EmptyInterval { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        let Some(n_from) = n_from else {
            return Ok(IntervalTable { c, rows: vec![] });
        };
        let criterion = *criterion;
        let results = exec::map_collect((n_from..=n_to).collect(), move |n| {
            match lot_interval(SamplingPlan::new(n, c)?, &criterion) {
                Ok(interval) => Ok(Some(table_row(interval, &criterion)?)),
                Err(Error::EmptyInterval { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        });
        results
            .into_iter()
            .filter_map(Result::transpose)
            .collect::<Result<Vec<_>>>()?
    };
    Ok(IntervalTable { c, rows })
}

/// Sweeps minimal sample sizes for `c = 0` and groups lots by them.
fn c0_rows(criterion: &TwoPointCriterion, binomial_n: u64) -> Result<Vec<IntervalTableRow>> {
    struct Group {
        n: u64,
        from: u64,
        to: u64,
    }
    let mut groups: Vec<Group> = Vec::new();
    let mut saturated_at: Option<u64> = None;
    let mut lot = TABLE_LOT_START;
    'sweep: while lot <= SWEEP_CAP {
        let chunk_end = (lot + SWEEP_CHUNK - 1).min(SWEEP_CAP);
        for (lot_size, min_n) in min_sample_profile(lot, chunk_end, 0, criterion)? {
            let n_here = min_n.unwrap_or(lot_size); // full inspection: n = N
            if n_here == binomial_n {
                saturated_at = Some(lot_size);
                break 'sweep;
            }
            match groups.last_mut() {
                Some(g) if g.n == n_here => g.to = lot_size,
                _ => groups.push(Group {
                    n: n_here,
                    from: lot_size,
                    to: lot_size,
                }),
            }
        }
        lot = chunk_end + 1;
    }
    let Some(saturated_at) = saturated_at else {
        return Err(Error::CertificateFailed {
            detail: format!("c = 0 sweep did not reach its binomial sample size by N = {SWEEP_CAP}"),
        });
    };

    let criterion_copy = *criterion;
    let mut rows = exec::map_collect(groups, move |g| {
        table_row(
            LotInterval {
                plan: SamplingPlan::new(g.n, 0)?,
                min_lot: g.from,
                max_lot: Some(g.to),
            },
            &criterion_copy,
        )
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    rows.push(table_row(
        LotInterval {
            plan: SamplingPlan::new(binomial_n, 0)?,
            min_lot: saturated_at,
            max_lot: None,
        },
        criterion,
    )?);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crit() -> TwoPointCriterion {
        TwoPointCriterion::default()
    }

    fn plan(n: u64, c: u64) -> SamplingPlan {
        SamplingPlan::new(n, c).unwrap()
    }

    #[test]
    fn binomial_minima_for_default_criterion() {
        let expected = [42u64, 66, 88, 138, 199, 263];
        for (c, &n) in expected.iter().enumerate() {
            let found = min_sample_binomial(c as u64, &crit(), DEFAULT_SAMPLE_CEILING).unwrap();
            assert_eq!(found.n(), n, "c = {c}");
        }
    }

    #[test]
    fn poisson_minima_differ_from_binomial_in_the_known_pattern() {
        let expected = [43u64, 68, 90, 137, 198, 262];
        for (c, &n) in expected.iter().enumerate() {
            let found = min_sample_poisson(c as u64, &crit(), DEFAULT_SAMPLE_CEILING).unwrap();
            assert_eq!(found.n(), n, "c = {c}");
        }
    }

    #[test]
    fn binomial_minimum_with_relaxed_consumer_bound() {
        // OC(0.5) < 0.05 needs (1/2)^n < 1/20, true from n = 5; but the
        // producer condition OC(0.01) < 0.95 needs 0.99^n < 0.95, which
        // first holds at n = 6.
        let loose = TwoPointCriterion::new(0.01, 0.95, 0.5, 0.05).unwrap();
        let found = min_sample_binomial(0, &loose, DEFAULT_SAMPLE_CEILING).unwrap();
        assert_eq!(found.n(), 6);
    }

    #[test]
    fn no_solution_when_the_ceiling_is_too_low() {
        assert!(matches!(
            min_sample_binomial(0, &crit(), 41),
            Err(Error::NoSolution { ceiling: 41 })
        ));
        // Near-coincident anchors are still satisfiable eventually (both
        // conditions are one-sided and improve with n), just far beyond a
        // small ceiling: 0.989^n < 0.01 first holds at n = 417.
        let narrow = TwoPointCriterion::new(0.01, 0.95, 0.011, 0.01).unwrap();
        assert!(matches!(
            min_sample_binomial(0, &narrow, 400),
            Err(Error::NoSolution { ceiling: 400 })
        ));
        let found = min_sample_binomial(0, &narrow, 10_000).unwrap();
        assert_eq!(found.n(), 417);
    }

    #[test]
    fn extended_minima_at_published_breakpoints() {
        for (lot, expected) in [
            (16u64, 15u64),
            (17, 16),
            (24, 20),
            (56, 30),
            (62, 31),
            (100, 34),
            (3063, 41),
        ] {
            let found = min_sample_extended(lot, 0, &crit()).unwrap();
            assert_eq!(found.n(), expected, "N = {lot}");
        }
        // Saturation at the binomial value.
        assert_eq!(min_sample_extended(3064, 0, &crit()).unwrap().n(), 42);
        assert_eq!(min_sample_extended(1_000_000, 0, &crit()).unwrap().n(), 42);
    }

    #[test]
    fn extended_minima_for_higher_acceptance_numbers() {
        assert_eq!(min_sample_extended(1947, 1, &crit()).unwrap().n(), 65);
        assert_eq!(min_sample_extended(1948, 1, &crit()).unwrap().n(), 66);
        assert_eq!(min_sample_extended(3412, 2, &crit()).unwrap().n(), 87);
        assert_eq!(min_sample_extended(3413, 2, &crit()).unwrap().n(), 88);
        // Mid-range lots where the finite-lot effect is strong.
        assert_eq!(min_sample_extended(256, 2, &crit()).unwrap().n(), 124);
        assert_eq!(min_sample_extended(512, 2, &crit()).unwrap().n(), 95);
        assert_eq!(min_sample_extended(1024, 2, &crit()).unwrap().n(), 88);
    }

    #[test]
    fn small_lots_require_full_inspection() {
        assert!(matches!(
            min_sample_extended(15, 0, &crit()),
            Err(Error::FullInspectionRequired { lot_size: 15 })
        ));
        assert!(matches!(
            min_sample_discrete(14, 0, &crit()),
            Err(Error::FullInspectionRequired { lot_size: 14 })
        ));
    }

    #[test]
    fn tiny_lots_are_structurally_inadmissible_for_positive_c() {
        match min_sample_extended(200, 2, &crit()) {
            Err(Error::StructurallyInadmissible {
                lot_size: 200,
                c: 2,
                min_lot_size: 201,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(matches!(
            min_sample_discrete(100, 1, &crit()),
            Err(Error::StructurallyInadmissible { min_lot_size: 101, .. })
        ));
    }

    #[test]
    fn discrete_minima_show_the_sawtooth() {
        // The grid rounds 7 % up to 3/42 → 4/43: one more lot item makes
        // the discretized LQ easier, so the minimal sample *drops*.
        assert_eq!(min_sample_discrete(42, 0, &crit()).unwrap().n(), 26);
        assert_eq!(min_sample_discrete(43, 0, &crit()).unwrap().n(), 22);
    }

    #[test]
    fn profile_marks_full_inspection_lots() {
        let profile = min_sample_profile(14, 18, 0, &crit()).unwrap();
        assert_eq!(
            profile,
            vec![
                (14, None),
                (15, None),
                (16, Some(15)),
                (17, Some(16)),
                (18, Some(17)),
            ]
        );
    }

    #[test]
    fn lot_intervals_for_c1_plans() {
        let narrow = lot_interval(plan(55, 1), &crit()).unwrap();
        assert_eq!((narrow.min_lot, narrow.max_lot), (139, Some(142)));
        let wide = lot_interval(plan(65, 1), &crit()).unwrap();
        assert_eq!((wide.min_lot, wide.max_lot), (120, Some(1947)));
        let unbounded = lot_interval(plan(66, 1), &crit()).unwrap();
        assert_eq!((unbounded.min_lot, unbounded.max_lot), (119, None));
        assert!(matches!(
            lot_interval(plan(54, 1), &crit()),
            Err(Error::EmptyInterval { n: 54, c: 1 })
        ));
    }

    #[test]
    fn lot_intervals_for_c2_plans() {
        let narrow = lot_interval(plan(86, 2), &crit()).unwrap();
        assert_eq!((narrow.min_lot, narrow.max_lot), (1454, Some(1469)));
        let mid = lot_interval(plan(87, 2), &crit()).unwrap();
        assert_eq!((mid.min_lot, mid.max_lot), (1166, Some(3412)));
        let unbounded = lot_interval(plan(88, 2), &crit()).unwrap();
        assert_eq!((unbounded.min_lot, unbounded.max_lot), (981, None));
    }

    #[test]
    fn c0_interval_is_anchored_at_the_sample_size() {
        let iv = lot_interval(plan(42, 0), &crit()).unwrap();
        assert_eq!((iv.min_lot, iv.max_lot), (42, None));
        // Too small to control the consumer risk anywhere.
        assert!(matches!(
            lot_interval(plan(5, 0), &crit()),
            Err(Error::EmptyInterval { .. })
        ));
    }

    #[test]
    fn quality_inversion_brackets_the_target() {
        let q95 = quality_at_probability(plan(42, 0), 0.95, OcModel::Binomial).unwrap();
        // Known producer quality of the (42, 0) plan: ~0.122 %.
        assert!((q95 - 0.00122).abs() < 5e-5, "q95 = {q95}");
        let oc_left = OcModel::Binomial
            .continuous_oc(q95 - 1e-8, plan(42, 0))
            .unwrap();
        let oc_right = OcModel::Binomial
            .continuous_oc(q95 + 1e-8, plan(42, 0))
            .unwrap();
        assert!(oc_left > 0.95 - 1e-6 && oc_right < 0.95 + 1e-6);
        assert!(oc_left >= oc_right);

        let q05 = quality_at_probability(plan(42, 0), 0.05, OcModel::Binomial).unwrap();
        assert!((q05 - 0.0688).abs() < 5e-4, "q05 = {q05}");
    }

    #[test]
    fn quality_inversion_signals_unattainable_targets() {
        // A full-acceptance plan's OC is identically 1.
        assert!(matches!(
            quality_at_probability(plan(5, 5), 0.5, OcModel::Binomial),
            Err(Error::NoRoot { .. })
        ));
        // Poisson OC at p = 1 stays above astronomically small targets.
        assert!(matches!(
            quality_at_probability(plan(42, 0), 1e-300, OcModel::Poisson),
            Err(Error::NoRoot { .. })
        ));
        assert!(matches!(
            quality_at_probability(plan(42, 0), 1.0, OcModel::Binomial),
            Err(Error::NoRoot { .. })
        ));
    }

    #[test]
    fn risk_summary_for_the_infinite_lot_reference_plan() {
        // (50, 0) under the binomial model: α ≈ 39.50 %, β ≈ 2.66 %,
        // producer quality ≈ 0.103 %, consumer quality ≈ 5.82 %.
        let s = risk_summary(plan(50, 0), OcModel::Binomial, &crit()).unwrap();
        assert!((s.producer_risk - 0.3950).abs() < 5e-4, "{}", s.producer_risk);
        assert!((s.consumer_risk - 0.0266).abs() < 5e-4, "{}", s.consumer_risk);
        assert!((s.producer_quality.unwrap() - 0.00103).abs() < 5e-5);
        assert!((s.consumer_quality.unwrap() - 0.0582).abs() < 5e-4);
        assert!(s.producer_risk_operational);
    }

    #[test]
    fn risk_summary_flags_non_operational_producer_risk() {
        let small = risk_summary(
            plan(20, 0),
            OcModel::HypergeometricExtended { lot_size: 21 },
            &crit(),
        )
        .unwrap();
        assert!(!small.producer_risk_operational);
        let at_threshold = risk_summary(
            plan(20, 0),
            OcModel::HypergeometricExtended { lot_size: 100 },
            &crit(),
        )
        .unwrap();
        assert!(at_threshold.producer_risk_operational);
    }

    #[test]
    fn risk_summary_handles_degenerate_plans() {
        let s = risk_summary(plan(5, 5), OcModel::Binomial, &crit()).unwrap();
        assert_eq!(s.producer_risk, 0.0);
        assert_eq!(s.consumer_risk, 1.0);
        assert_eq!(s.producer_quality, None);
        assert_eq!(s.consumer_quality, None);
    }

    #[test]
    fn c0_table_matches_the_published_shape() {
        let table = interval_table(0, &crit(), None).unwrap();
        let first = &table.rows[0];
        assert_eq!(first.interval.plan.n(), 15);
        assert_eq!(first.interval.min_lot, 15);
        assert_eq!(first.interval.max_lot, Some(16));
        let last = table.rows.last().unwrap();
        assert_eq!(last.interval.plan.n(), 42);
        assert_eq!(last.interval.min_lot, 3064);
        assert_eq!(last.interval.max_lot, None);
        // n increases row over row and ranges tile without gaps.
        for w in table.rows.windows(2) {
            assert!(w[1].interval.plan.n() > w[0].interval.plan.n());
            assert_eq!(w[1].interval.min_lot, w[0].interval.max_lot.unwrap() + 1);
        }
        // Published risk pair at the first row: α(15) ≈ 40.37 %,
        // β(16) ≈ 4.15 %.
        assert!((first.risk_at_min_lot.producer_risk - 0.4037).abs() < 5e-4);
        assert!((first.risk_at_max_lot.consumer_risk - 0.0415).abs() < 5e-4);
    }

    #[test]
    fn c1_table_rows_are_the_lot_intervals() {
        let table = interval_table(1, &crit(), Some(70)).unwrap();
        let first = &table.rows[0];
        assert_eq!(first.interval.plan.n(), 55);
        assert_eq!(first.interval.min_lot, 139);
        assert_eq!(first.interval.max_lot, Some(142));
        let at66 = table
            .rows
            .iter()
            .find(|r| r.interval.plan.n() == 66)
            .unwrap();
        assert_eq!(at66.interval.max_lot, None);
        assert!(matches!(at66.risk_at_max_lot.model, OcModel::Binomial));
        // Default n_max doubles the binomial minimum.
        let default_table = interval_table(1, &crit(), None).unwrap();
        assert_eq!(
            default_table.rows.last().unwrap().interval.plan.n(),
            132
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig {
                cases: 64,
                failure_persistence: Some(Box::new(
                    proptest::test_runner::FileFailurePersistence::WithSource("proptest-regressions"),
                )),
                ..ProptestConfig::default()
            })]

            #[test]
            fn binomial_minimum_certificate(c in 0u64..5) {
                let found = min_sample_binomial(c, &crit(), DEFAULT_SAMPLE_CEILING).unwrap();
                let at = admissible_binomial(found, &crit()).unwrap();
                prop_assert!(at.admissible);
                if found.n() > c.max(1) {
                    let below = admissible_binomial(
                        SamplingPlan::new(found.n() - 1, c).unwrap(),
                        &crit(),
                    ).unwrap();
                    prop_assert!(!below.admissible);
                }
            }

            #[test]
            fn quality_inversion_respects_monotone_bracketing(
                n in 10u64..200,
                c in 0u64..4,
                target in 0.02f64..0.98,
            ) {
                let c = c.min(n);
                let p = plan(n, c);
                match quality_at_probability(p, target, OcModel::Binomial) {
                    Ok(q) => {
                        let left = OcModel::Binomial.continuous_oc((q - 1e-8).max(0.0), p).unwrap();
                        let right = OcModel::Binomial.continuous_oc((q + 1e-8).min(1.0), p).unwrap();
                        prop_assert!(left >= target - 1e-6);
                        prop_assert!(right <= target + 1e-6);
                    }
                    Err(Error::NoRoot { .. }) => {
                        // Only possible when the curve floor sits above the
                        // target, which cannot happen for c < n under the
                        // binomial model (OC(1) = 0).
                        prop_assert!(c == n);
                    }
                    Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                }
            }

            #[test]
            fn extended_minimum_certificate_for_random_lots(lot in 16u64..3000) {
                match min_sample_extended(lot, 0, &crit()) {
                    Ok(found) => {
                        let v = admissible_extended(lot, found, &crit()).unwrap();
                        prop_assert!(v.admissible);
                        if found.n() > 1 {
                            let below = admissible_extended(
                                lot,
                                SamplingPlan::new(found.n() - 1, 0).unwrap(),
                                &crit(),
                            ).unwrap();
                            prop_assert!(!below.admissible);
                        }
                    }
                    Err(Error::FullInspectionRequired { .. }) => {
                        prop_assert!(lot <= 15);
                    }
                    Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                }
            }
        }
    }
}
