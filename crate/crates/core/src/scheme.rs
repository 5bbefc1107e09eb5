//! A ready-to-use simplified sampling scheme, plus the ISO 2859-1 plans
//! commonly referenced for the same task, a comparison report, and a plan
//! recommender.
//!
//! The scheme bins lot sizes into nine ranges and offers one plan per
//! acceptance number `c = 0, 1, 2` where available; its sample sizes stop
//! growing above `N = 1000` while keeping the two-point protection intact
//! for arbitrarily large lots. The data ships as a human-auditable TOML
//! file embedded in the crate and is re-validated on first use: every
//! (range, plan) pair must pass the extended admissibility test at both
//! range endpoints (the unbounded row in the binomial limit), and the
//! quoted risk bounds must agree with recomputation to 0.1 percentage
//! points. Doctored or drifted data therefore fails loudly at load time.
//!
//! The ISO reference plans are carried verbatim for comparison only: they
//! are *not* admissibility-validated (several of them violate the
//! two-point criterion — that contrast is the point), and lot ranges are
//! stored only where the citing source states them.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::criteria::{
    admissible_binomial, admissible_extended, snap_to_integer, AdmissibilityVerdict,
    TwoPointCriterion,
};
use crate::error::{Error, Result};
use crate::optimize::{risk_summary, smallest_satisfying, RiskSummary};
use crate::plan::{OcModel, SamplingPlan};

const SCHEME_TOML: &str = include_str!("../data/scheme.toml");

/// Load-time tolerance between stored and recomputed risk bounds
/// (absolute, as probabilities: 0.001 = 0.1 percentage points).
const RISK_RECOMPUTE_TOLERANCE: f64 = 0.001;

/// One plan of a scheme row with its risk bounds over the row's lot range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchemeEntry {
    pub plan: SamplingPlan,
    /// Largest producer's risk (rejection probability at the AQL) over
    /// the row's lot range.
    pub max_producer_risk: f64,
    /// Smallest consumer's risk (acceptance probability at the LQ) over
    /// the row's lot range.
    pub min_consumer_risk: f64,
}

/// One lot-size range of the scheme and the plans offered for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeRow {
    pub lot_from: u64,
    /// Inclusive upper end; `None` for the final, unbounded row.
    pub lot_to: Option<u64>,
    /// `false` when the quoted producer's risk belongs to a lot that
    /// cannot contain a whole defective item at the AQL (`N·p_a < 1`):
    /// the number is then a property of the continuation, not of any
    /// realizable lot.
    pub alpha_operational: bool,
    /// Plans by ascending acceptance number. Ranges the source leaves
    /// without a `c = 1` or `c = 2` plan stay without one here.
    pub entries: Vec<SchemeEntry>,
}

impl SchemeRow {
    fn covers(&self, lot_size: u64) -> bool {
        lot_size >= self.lot_from && self.lot_to.is_none_or(|to| lot_size <= to)
    }
}

/// A plan cited from an external standard, for comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferencePlan {
    pub plan: SamplingPlan,
    /// Lot range, where the citing source states one (`None`: unknown).
    pub lot_from: Option<u64>,
    pub lot_to: Option<u64>,
    pub standard: String,
}

impl ReferencePlan {
    fn known_range_covers(&self, lot_size: u64) -> bool {
        matches!((self.lot_from, self.lot_to),
                 (Some(from), Some(to)) if (from..=to).contains(&lot_size))
    }
}

/// The complete scheme: provenance label, full-inspection band, and rows
/// tiling all larger lot sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeData {
    pub source: String,
    /// `true` for the bundled, load-validated table (default criterion);
    /// `false` for a scheme recomputed for a non-default criterion.
    pub canonical: bool,
    /// Smallest lot size the scheme covers (served by 100 % inspection).
    pub full_inspection_from: u64,
    /// Largest lot size served by 100 % inspection; rows start just above.
    pub full_inspection_to: u64,
    pub rows: Vec<SchemeRow>,
}

impl SchemeData {
    /// The row covering `lot_size`, if any.
    pub fn row_for(&self, lot_size: u64) -> Option<&SchemeRow> {
        self.rows.iter().find(|row| row.covers(lot_size))
    }
}

/// The scheme table for a two-point criterion.
///
/// For the default criterion this returns the bundled, validated table
/// verbatim (`canonical = true`). Any other criterion keeps the bundled
/// lot bins — the binning itself is a usability compromise that no
/// criterion determines uniquely — and recomputes, per bin and acceptance
/// number, the smallest plan admissible across the whole bin
/// (`canonical = false`).
pub fn simplified_scheme(criterion: &TwoPointCriterion) -> Result<SchemeData> {
    let bundled = bundled()?;
    if *criterion == TwoPointCriterion::default() {
        Ok(bundled.scheme.clone())
    } else {
        recompute_scheme(&bundled.scheme, criterion)
    }
}

/// The ISO 2859-1 single-sampling plans cited for this task, verbatim.
///
/// No `c = 4` plan exists: that standard's progression jumps from
/// `(200, 3)` to `(315, 5)`.
pub fn iso_reference_plans() -> Result<&'static [ReferencePlan]> {
    Ok(&bundled()?.references)
}

/// A plan together with its risks at one concrete lot size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanAssessment {
    pub plan: SamplingPlan,
    pub risks: RiskSummary,
}

/// An ISO reference plan together with its risks at one concrete lot size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceAssessment {
    pub reference: ReferencePlan,
    pub risks: RiskSummary,
}

/// Scheme plans and the covering ISO reference plan for one lot size,
/// all re-assessed under the extended finite-lot model at that size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeComparison {
    pub lot_size: u64,
    /// `true` when the scheme serves this lot by inspecting every item;
    /// the single "plan" is then `n = N, c = 0`.
    pub full_inspection: bool,
    pub scheme_plans: Vec<PlanAssessment>,
    /// The reference plan whose known lot range covers this size, if any.
    pub iso_reference: Option<ReferenceAssessment>,
}

/// Assesses the scheme's plans for a lot of `lot_size` items against the
/// covering ISO reference plan (when one is known), under the default
/// criterion and the extended finite-lot OC model at exactly this size.
pub fn compare(lot_size: u64) -> Result<SchemeComparison> {
    let bundled = bundled()?;
    let scheme = &bundled.scheme;
    if lot_size < scheme.full_inspection_from {
        return Err(Error::LotOutsideScheme {
            lot_size,
            min_lot_size: scheme.full_inspection_from,
        });
    }
    let criterion = TwoPointCriterion::default();
    let model = OcModel::HypergeometricExtended { lot_size };
    let assess = |plan: SamplingPlan| -> Result<PlanAssessment> {
        Ok(PlanAssessment {
            plan,
            risks: risk_summary(plan, model, &criterion)?,
        })
    };

    let full_inspection = lot_size <= scheme.full_inspection_to;
    let plans: Vec<SamplingPlan> = if full_inspection {
        vec![SamplingPlan::new(lot_size, 0)?]
    } else {
        let row = scheme
            .row_for(lot_size)
            .expect("validated rows tile every lot size above the full-inspection band");
        row.entries.iter().map(|e| e.plan).collect()
    };
    let scheme_plans = plans.into_iter().map(assess).collect::<Result<Vec<_>>>()?;

    let iso_reference = bundled
        .references
        .iter()
        .find(|r| r.known_range_covers(lot_size))
        .map(|r| -> Result<ReferenceAssessment> {
            Ok(ReferenceAssessment {
                reference: r.clone(),
                risks: risk_summary(r.plan, model, &criterion)?,
            })
        })
        .transpose()?;

    Ok(SchemeComparison {
        lot_size,
        full_inspection,
        scheme_plans,
        iso_reference,
    })
}

/// What to optimize for when picking one plan out of a scheme row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanPreference {
    /// Smallest sample size (lowest inspection effort, highest producer's
    /// risk): the `c = 0` plan where present.
    MinimalSample,
    /// Smallest producer's risk the row offers: the largest-`c` plan.
    MinimalProducerRisk,
}

/// A recommended plan for one lot, with its risks at that lot size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recommendation {
    pub lot_size: u64,
    pub preference: PlanPreference,
    pub plan: SamplingPlan,
    /// `true` when the recommendation is to inspect every item.
    pub full_inspection: bool,
    pub risks: RiskSummary,
    /// Reminder that this choice is guidance, not a requirement.
    pub note: &'static str,
}

const RECOMMENDATION_NOTE: &str = "non-normative guidance: the two-point criterion does not \
     single out an acceptance number; weigh inspection cost against producer's risk";
const FULL_INSPECTION_NOTE: &str =
    "lots this small admit no discriminating sampling plan; inspect every item";

/// Picks one plan from the scheme for this lot size. Lots at or below the
/// full-inspection band (including lots smaller than the scheme covers)
/// get the 100 %-inspection directive `n = N, c = 0`.
///
/// The choice between acceptance numbers is *not* mandated by the
/// criterion; the result carries a note saying so.
pub fn recommend_plan(lot_size: u64, preference: PlanPreference) -> Result<Recommendation> {
    if lot_size == 0 {
        return Err(Error::EmptyLot);
    }
    let scheme = &bundled()?.scheme;
    let criterion = TwoPointCriterion::default();
    let model = OcModel::HypergeometricExtended { lot_size };

    let (plan, full_inspection, note) = if lot_size <= scheme.full_inspection_to {
        (SamplingPlan::new(lot_size, 0)?, true, FULL_INSPECTION_NOTE)
    } else {
        let row = scheme
            .row_for(lot_size)
            .expect("validated rows tile every lot size above the full-inspection band");
        let entry = match preference {
            PlanPreference::MinimalSample => row.entries.iter().min_by_key(|e| e.plan.n()),
            PlanPreference::MinimalProducerRisk => row.entries.iter().max_by_key(|e| e.plan.c()),
        }
        .expect("validated rows have at least one entry");
        (entry.plan, false, RECOMMENDATION_NOTE)
    };

    Ok(Recommendation {
        lot_size,
        preference,
        plan,
        full_inspection,
        risks: risk_summary(plan, model, &criterion)?,
        note,
    })
}

// ---------------------------------------------------------------------
// Bundled data: embedded TOML, parsed and validated once.
// ---------------------------------------------------------------------

#[derive(Debug)]
struct Bundled {
    scheme: SchemeData,
    references: Vec<ReferencePlan>,
}

static BUNDLED: LazyLock<std::result::Result<Bundled, Error>> =
    LazyLock::new(|| load_from_str(SCHEME_TOML));

fn bundled() -> Result<&'static Bundled> {
    BUNDLED.as_ref().map_err(Error::clone)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScheme {
    source: String,
    full_inspection_from: u64,
    full_inspection_to: u64,
    rows: Vec<RawRow>,
    references: Vec<RawReference>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    lot_from: u64,
    lot_to: Option<u64>,
    alpha_operational: bool,
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    n: u64,
    c: u64,
    max_producer_risk_percent: f64,
    min_consumer_risk_percent: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    n: u64,
    c: u64,
    lot_from: Option<u64>,
    lot_to: Option<u64>,
    standard: String,
}

fn data_error(detail: String) -> Error {
    Error::SchemeData { detail }
}

/// Admissibility verdicts at both ends of a row's lot range; the
/// unbounded end is the binomial limit.
fn endpoint_verdicts(
    lot_from: u64,
    lot_to: Option<u64>,
    plan: SamplingPlan,
    criterion: &TwoPointCriterion,
) -> Result<(AdmissibilityVerdict, AdmissibilityVerdict)> {
    let left = admissible_extended(lot_from, plan, criterion)?;
    let right = match lot_to {
        Some(to) => admissible_extended(to, plan, criterion)?,
        None => admissible_binomial(plan, criterion)?,
    };
    Ok((left, right))
}

/// The producer's-risk bound is operational when even the smallest lot of
/// the row holds at least one whole defective item at the AQL.
fn row_alpha_operational(lot_from: u64, criterion: &TwoPointCriterion) -> bool {
    snap_to_integer(lot_from as f64 * criterion.aql()) >= 1.0
}

fn load_from_str(text: &str) -> std::result::Result<Bundled, Error> {
    let raw: RawScheme =
        toml::from_str(text).map_err(|e| data_error(format!("malformed TOML: {e}")))?;
    let criterion = TwoPointCriterion::default();

    if raw.full_inspection_from == 0 || raw.full_inspection_from > raw.full_inspection_to {
        return Err(data_error(format!(
            "full-inspection band {}..={} is not a valid range",
            raw.full_inspection_from, raw.full_inspection_to
        )));
    }

    let mut rows = Vec::with_capacity(raw.rows.len());
    let mut expected_from = raw.full_inspection_to + 1;
    let last_index = raw.rows.len().checked_sub(1).ok_or_else(|| {
        data_error("scheme has no rows".into())
    })?;
    for (index, row) in raw.rows.into_iter().enumerate() {
        let at = |detail: String| data_error(format!("row from lot {}: {detail}", row.lot_from));
        if row.lot_from != expected_from {
            return Err(data_error(format!(
                "row from lot {} breaks the tiling (expected {})",
                row.lot_from, expected_from
            )));
        }
        match (index == last_index, row.lot_to) {
            (false, Some(to)) if to >= row.lot_from => expected_from = to + 1,
            (false, _) => {
                return Err(at("every row but the last needs lot_to >= lot_from".into()))
            }
            (true, Some(_)) => return Err(at("the final row must be unbounded".into())),
            (true, None) => {}
        }
        if row.entries.is_empty() {
            return Err(at("row offers no plans".into()));
        }

        let mut entries = Vec::with_capacity(row.entries.len());
        let mut previous_c = None;
        for e in row.entries {
            let plan = SamplingPlan::new(e.n, e.c)
                .map_err(|err| at(format!("entry n = {}, c = {}: {err}", e.n, e.c)))?;
            if previous_c.is_some_and(|p| e.c <= p) {
                return Err(at(format!(
                    "entries out of order: c = {} after c = {:?}",
                    e.c, previous_c
                )));
            }
            previous_c = Some(e.c);
            if plan.n() >= row.lot_from {
                return Err(at(format!(
                    "plan {plan} is not a true sampling plan for the row's smallest lot"
                )));
            }

            let (left, right) = endpoint_verdicts(row.lot_from, row.lot_to, plan, &criterion)?;
            if !(left.admissible && right.admissible) {
                return Err(at(format!(
                    "plan {plan} is inadmissible at a range endpoint"
                )));
            }
            let recomputed_alpha = (1.0 - left.oc_at_aql).max(1.0 - right.oc_at_aql);
            let recomputed_beta = left.oc_at_lq.min(right.oc_at_lq);
            let stored_alpha = e.max_producer_risk_percent / 100.0;
            let stored_beta = e.min_consumer_risk_percent / 100.0;
            if (recomputed_alpha - stored_alpha).abs() > RISK_RECOMPUTE_TOLERANCE {
                return Err(at(format!(
                    "plan {plan}: stored producer risk {:.4} but recomputed {:.4}",
                    stored_alpha, recomputed_alpha
                )));
            }
            if (recomputed_beta - stored_beta).abs() > RISK_RECOMPUTE_TOLERANCE {
                return Err(at(format!(
                    "plan {plan}: stored consumer risk {:.4} but recomputed {:.4}",
                    stored_beta, recomputed_beta
                )));
            }
            entries.push(SchemeEntry {
                plan,
                max_producer_risk: stored_alpha,
                min_consumer_risk: stored_beta,
            });
        }

        if row.alpha_operational != row_alpha_operational(row.lot_from, &criterion) {
            return Err(at("alpha_operational flag contradicts the lot range".into()));
        }
        rows.push(SchemeRow {
            lot_from: row.lot_from,
            lot_to: row.lot_to,
            alpha_operational: row.alpha_operational,
            entries,
        });
    }

    let mut references = Vec::with_capacity(raw.references.len());
    for r in raw.references {
        let plan = SamplingPlan::new(r.n, r.c)
            .map_err(|err| data_error(format!("reference n = {}, c = {}: {err}", r.n, r.c)))?;
        match (r.lot_from, r.lot_to) {
            (None, None) => {}
            (Some(from), Some(to)) if from >= plan.n() && from <= to => {}
            _ => {
                return Err(data_error(format!(
                    "reference plan {plan}: lot range must be absent or a valid range holding the sample"
                )))
            }
        }
        references.push(ReferencePlan {
            plan,
            lot_from: r.lot_from,
            lot_to: r.lot_to,
            standard: r.standard,
        });
    }

    Ok(Bundled {
        scheme: SchemeData {
            source: raw.source,
            canonical: true,
            full_inspection_from: raw.full_inspection_from,
            full_inspection_to: raw.full_inspection_to,
            rows,
        },
        references,
    })
}

/// Rebuilds the scheme for a non-default criterion: same lot bins, and per
/// bin the smallest plan for each acceptance number that is admissible
/// across the whole bin. Bins no plan can serve keep an empty entry list.
fn recompute_scheme(template: &SchemeData, criterion: &TwoPointCriterion) -> Result<SchemeData> {
    const ACCEPTANCE_NUMBERS: std::ops::RangeInclusive<u64> = 0..=2;
    let mut rows = Vec::with_capacity(template.rows.len());
    for bin in &template.rows {
        let mut entries = Vec::new();
        for c in ACCEPTANCE_NUMBERS {
            let pred = |n: u64| -> Result<bool> {
                let plan = SamplingPlan::new(n, c)?;
                let (left, right) = endpoint_verdicts(bin.lot_from, bin.lot_to, plan, criterion)?;
                Ok(left.admissible && right.admissible)
            };
            // True sampling plans only: n below the smallest lot of the bin.
            let Some(n) = smallest_satisfying(c.max(1), bin.lot_from - 1, &pred)? else {
                continue;
            };
            let plan = SamplingPlan::new(n, c)?;
            let (left, right) = endpoint_verdicts(bin.lot_from, bin.lot_to, plan, criterion)?;
            entries.push(SchemeEntry {
                plan,
                max_producer_risk: (1.0 - left.oc_at_aql).max(1.0 - right.oc_at_aql),
                min_consumer_risk: left.oc_at_lq.min(right.oc_at_lq),
            });
        }
        rows.push(SchemeRow {
            lot_from: bin.lot_from,
            lot_to: bin.lot_to,
            alpha_operational: row_alpha_operational(bin.lot_from, criterion),
            entries,
        });
    }
    Ok(SchemeData {
        source: "scheme recomputed for a non-default two-point criterion \
                 (lot bins retained from the built-in scheme; non-canonical)"
            .into(),
        canonical: false,
        full_inspection_from: template.full_inspection_from,
        full_inspection_to: template.full_inspection_to,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical() -> SchemeData {
        simplified_scheme(&TwoPointCriterion::default()).unwrap()
    }

    #[test]
    fn bundled_scheme_loads_and_is_canonical() {
        let scheme = canonical();
        assert!(scheme.canonical);
        assert_eq!(scheme.full_inspection_from, 15);
        assert_eq!(scheme.full_inspection_to, 20);
        assert_eq!(scheme.rows.len(), 9);
        assert!(scheme.source.contains("two-point criterion"));
    }

    #[test]
    fn row_values_match_the_shipped_table() {
        let scheme = canonical();
        let row = |i: usize| &scheme.rows[i];

        assert_eq!((row(0).lot_from, row(0).lot_to), (21, Some(24)));
        assert_eq!(row(0).entries[0].plan, SamplingPlan::new(20, 0).unwrap());
        assert!((row(0).entries[0].max_producer_risk - 0.434).abs() < 1e-12);
        assert!((row(0).entries[0].min_consumer_risk - 0.0069).abs() < 1e-12);

        assert_eq!((row(6).lot_from, row(6).lot_to), (249, Some(500)));
        let c1 = &row(6).entries[1];
        assert_eq!(c1.plan, SamplingPlan::new(63, 1).unwrap());
        assert!((c1.max_producer_risk - 0.122).abs() < 1e-12);
        assert!((c1.min_consumer_risk - 0.0377).abs() < 1e-12);

        let last = row(8);
        assert_eq!((last.lot_from, last.lot_to), (1001, None));
        let plans: Vec<(u64, u64)> = last.entries.iter().map(|e| (e.plan.n(), e.plan.c())).collect();
        assert_eq!(plans, vec![(42, 0), (66, 1), (88, 2)]);
        assert!((last.entries[2].max_producer_risk - 0.0587).abs() < 1e-12);
    }

    #[test]
    fn alpha_operational_flags_follow_the_whole_defective_rule() {
        let scheme = canonical();
        let flags: Vec<bool> = scheme.rows.iter().map(|r| r.alpha_operational).collect();
        assert_eq!(
            flags,
            vec![false, false, false, false, false, true, true, true, true]
        );
    }

    #[test]
    fn sparse_rows_stay_sparse() {
        // Ranges without a published c = 1 / c = 2 plan keep the gap, even
        // where such plans exist mathematically.
        let scheme = canonical();
        for i in 0..=5 {
            assert_eq!(scheme.rows[i].entries.len(), 1, "row {i}");
            assert_eq!(scheme.rows[i].entries[0].plan.c(), 0);
        }
        assert_eq!(scheme.rows[6].entries.len(), 2);
        assert_eq!(scheme.rows[7].entries.len(), 2);
        assert_eq!(scheme.rows[8].entries.len(), 3);
    }

    #[test]
    fn risk_bounds_respect_the_criterion_everywhere() {
        // Producer's risk exceeds 5 % by design (the criterion demands it);
        // consumer's risk stays under 5 %.
        let scheme = canonical();
        for row in &scheme.rows {
            for e in &row.entries {
                assert!(e.max_producer_risk > 0.05, "{} in {:?}", e.plan, row.lot_from);
                assert!(e.min_consumer_risk < 0.05, "{} in {:?}", e.plan, row.lot_from);
            }
        }
    }

    #[test]
    fn row_lookup_honors_the_binning() {
        let scheme = canonical();
        assert_eq!(scheme.row_for(20), None);
        assert_eq!(scheme.row_for(21).unwrap().lot_from, 21);
        assert_eq!(scheme.row_for(24).unwrap().lot_from, 21);
        assert_eq!(scheme.row_for(25).unwrap().lot_from, 25);
        assert_eq!(scheme.row_for(1000).unwrap().lot_from, 501);
        assert_eq!(scheme.row_for(1001).unwrap().lot_from, 1001);
        assert_eq!(scheme.row_for(10_000_000).unwrap().lot_from, 1001);
    }

    #[test]
    fn reference_plans_match_the_cited_standard_rows() {
        let refs = iso_reference_plans().unwrap();
        let plans: Vec<(u64, u64)> = refs.iter().map(|r| (r.plan.n(), r.plan.c())).collect();
        assert_eq!(
            plans,
            vec![(50, 0), (80, 1), (125, 2), (200, 3), (315, 5), (800, 10)]
        );
        // The standard's progression skips c = 4 entirely.
        assert!(refs.iter().all(|r| r.plan.c() != 4));
        let small = &refs[0];
        assert_eq!((small.lot_from, small.lot_to), (Some(51), Some(500)));
        let large = &refs[5];
        assert_eq!((large.lot_from, large.lot_to), (Some(150_001), Some(500_000)));
        // Ranges the source does not state stay unknown.
        assert!(refs[1..5].iter().all(|r| r.lot_from.is_none() && r.lot_to.is_none()));
        assert!(refs.iter().all(|r| r.standard.contains("ISO 2859-1")));
    }

    #[test]
    fn comparison_at_400_pits_the_scheme_against_the_small_iso_plan() {
        let cmp = compare(400).unwrap();
        assert!(!cmp.full_inspection);
        let plans: Vec<(u64, u64)> = cmp
            .scheme_plans
            .iter()
            .map(|a| (a.plan.n(), a.plan.c()))
            .collect();
        assert_eq!(plans, vec![(40, 0), (63, 1)]);
        for a in &cmp.scheme_plans {
            assert_eq!(a.risks.model, OcModel::HypergeometricExtended { lot_size: 400 });
            assert!(a.risks.producer_risk > 0.05);
            assert!(a.risks.consumer_risk < 0.05);
        }
        let iso = cmp.iso_reference.unwrap();
        assert_eq!(iso.reference.plan, SamplingPlan::new(50, 0).unwrap());
        assert!(iso.risks.consumer_risk < 0.05);
    }

    #[test]
    fn comparison_at_200000_uses_the_unbounded_row_and_the_large_iso_plan() {
        let cmp = compare(200_000).unwrap();
        let plans: Vec<(u64, u64)> = cmp
            .scheme_plans
            .iter()
            .map(|a| (a.plan.n(), a.plan.c()))
            .collect();
        assert_eq!(plans, vec![(42, 0), (66, 1), (88, 2)]);
        let iso = cmp.iso_reference.unwrap();
        assert_eq!(iso.reference.plan, SamplingPlan::new(800, 10).unwrap());
    }

    #[test]
    fn comparison_in_the_full_inspection_band() {
        let cmp = compare(20).unwrap();
        assert!(cmp.full_inspection);
        assert_eq!(cmp.scheme_plans.len(), 1);
        assert_eq!(cmp.scheme_plans[0].plan, SamplingPlan::new(20, 0).unwrap());
        assert!(cmp.iso_reference.is_none());
    }

    #[test]
    fn comparison_below_the_scheme_is_an_error() {
        assert!(matches!(
            compare(14),
            Err(Error::LotOutsideScheme {
                lot_size: 14,
                min_lot_size: 15
            })
        ));
    }

    #[test]
    fn recommendations_pick_by_preference() {
        let lean = recommend_plan(5000, PlanPreference::MinimalSample).unwrap();
        assert_eq!(lean.plan, SamplingPlan::new(42, 0).unwrap());
        assert!(!lean.full_inspection);
        let safe = recommend_plan(5000, PlanPreference::MinimalProducerRisk).unwrap();
        assert_eq!(safe.plan, SamplingPlan::new(88, 2).unwrap());
        assert!(safe.risks.producer_risk < lean.risks.producer_risk);
        assert!(!lean.note.is_empty() && !safe.note.is_empty());
    }

    #[test]
    fn tiny_lots_get_the_full_inspection_directive() {
        let tiny = recommend_plan(12, PlanPreference::MinimalSample).unwrap();
        assert!(tiny.full_inspection);
        assert_eq!(tiny.plan, SamplingPlan::new(12, 0).unwrap());
        assert!(matches!(
            recommend_plan(0, PlanPreference::MinimalSample),
            Err(Error::EmptyLot)
        ));
    }

    #[test]
    fn minimal_sample_choice_undercuts_iso_where_ranges_are_known() {
        for lot in [51, 200, 400, 500, 150_001, 300_000, 500_000] {
            let iso_n = iso_reference_plans()
                .unwrap()
                .iter()
                .find(|r| r.known_range_covers(lot))
                .unwrap()
                .plan
                .n();
            let ours = recommend_plan(lot, PlanPreference::MinimalSample).unwrap();
            assert!(ours.plan.n() <= iso_n, "lot {lot}");
        }
    }

    #[test]
    fn validation_rejects_doctored_risk_values() {
        let doctored = SCHEME_TOML.replace(
            "max_producer_risk_percent = 43.4",
            "max_producer_risk_percent = 48.4",
        );
        assert_ne!(doctored, SCHEME_TOML);
        match load_from_str(&doctored) {
            Err(Error::SchemeData { detail }) => {
                assert!(detail.contains("21"), "detail: {detail}");
            }
            other => panic!("doctored data passed validation: {other:?}"),
        }
    }

    #[test]
    fn validation_rejects_broken_tiling() {
        let doctored = SCHEME_TOML.replace("lot_from = 25", "lot_from = 26");
        match load_from_str(&doctored) {
            Err(Error::SchemeData { detail }) => {
                assert!(detail.contains("26"), "detail: {detail}");
            }
            other => panic!("gapped tiling passed validation: {other:?}"),
        }
    }

    #[test]
    fn validation_rejects_inadmissible_plans() {
        // (19, 0) fails the consumer condition at lot 24.
        let doctored = SCHEME_TOML.replace("n = 20\nc = 0", "n = 19\nc = 0");
        assert!(matches!(
            load_from_str(&doctored),
            Err(Error::SchemeData { .. })
        ));
    }

    #[test]
    fn non_default_criterion_yields_a_recomputed_scheme() {
        let relaxed = TwoPointCriterion::new(0.01, 0.95, 0.10, 0.05).unwrap();
        let scheme = simplified_scheme(&relaxed).unwrap();
        assert!(!scheme.canonical);
        assert_eq!(scheme.rows.len(), 9);
        // Bins are retained from the template.
        assert_eq!((scheme.rows[0].lot_from, scheme.rows[0].lot_to), (21, Some(24)));
        assert_eq!(scheme.rows[8].lot_from, 1001);
        // With the limiting quality at 10 %, the unbounded row's c = 0 plan
        // is the binomial minimum for that criterion: (29, 0).
        let last_c0 = &scheme.rows[8].entries[0];
        assert_eq!(last_c0.plan, SamplingPlan::new(29, 0).unwrap());
        // Recomputed entries still respect the criterion's risk structure.
        for row in &scheme.rows {
            for e in &row.entries {
                assert!(e.max_producer_risk > 0.05);
                assert!(e.min_consumer_risk < 0.05);
            }
        }
    }
}
