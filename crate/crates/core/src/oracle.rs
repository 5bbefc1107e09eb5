//! Independent verification backends for the floating-point evaluators.
//!
//! Three routes that share no code with [`crate::dist`]:
//!
//! * [`hypergeom_oc_rational`] — the finite-lot OC as an exact fraction of
//!   big integers: the ground truth for every finite-lot probability and
//!   the arbiter of *strict* inequalities in discrete admissibility.
//! * [`monte_carlo_oc`] — a deterministic, shard-parallel simulation that
//!   physically draws samples without replacement.
//! * [`extended_boundary_audit`] — the gamma-extended OC re-evaluated in
//!   double-double (~31 digit) arithmetic, to confirm on which side of a
//!   published boundary an acceptance probability truly falls.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::criteria::TwoPointCriterion;
use crate::error::{Error, Result};
use crate::exec;
use crate::numeric::Dd;
use crate::plan::SamplingPlan;

/// Largest lot size expanded into exact binomial coefficients. Beyond this
/// the coefficients run to hundreds of thousands of digits; callers should
/// use the floating-point evaluators instead.
pub const EXACT_LOT_LIMIT: u64 = 100_000;

/// A probability represented exactly as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactProbability {
    ratio: BigRational,
}

impl ExactProbability {
    pub fn ratio(&self) -> &BigRational {
        &self.ratio
    }

    pub fn numerator(&self) -> &BigInt {
        self.ratio.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.ratio.denom()
    }

    /// Nearest `f64` to the exact value.
    pub fn to_f64(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact strict comparison against a floating-point bound (the bound
    /// converts to a rational without rounding). `None` if the bound is
    /// not finite.
    pub fn strictly_below(&self, bound: f64) -> Option<bool> {
        BigRational::from_float(bound).map(|b| self.ratio < b)
    }
}

impl std::fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.ratio.numer(), self.ratio.denom())
    }
}

/// `C(n, k)` as a big integer (multiplicative form; every intermediate
/// division is exact).
fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_exact_domain(defectives: u64, lot_size: u64, plan: SamplingPlan) -> Result<()> {
    if lot_size == 0 {
        return Err(Error::EmptyLot);
    }
    if lot_size > EXACT_LOT_LIMIT {
        return Err(Error::LotTooLargeForExact {
            lot_size,
            limit: EXACT_LOT_LIMIT,
        });
    }
    if plan.n() > lot_size {
        return Err(Error::SampleExceedsLot {
            n: plan.n(),
            lot_size,
        });
    }
    if defectives > lot_size {
        return Err(Error::DefectivesOutsideLot {
            defectives: defectives as f64,
            lot_size,
        });
    }
    Ok(())
}

/// Exact hypergeometric acceptance probability
/// `Σ_{k <= c} C(M, k) C(N-M, n-k) / C(N, n)` in integer arithmetic,
/// reduced to lowest terms.
pub fn hypergeom_oc_rational(
    defectives: u64,
    lot_size: u64,
    plan: SamplingPlan,
) -> Result<ExactProbability> {
    check_exact_domain(defectives, lot_size, plan)?;
    let (n, c) = (plan.n(), plan.c());
    let (m, big_n) = (defectives, lot_size);

    let denom = big_binomial(big_n, n);
    let k_hi = n.min(m);
    if c >= k_hi {
        return Ok(ExactProbability {
            ratio: BigRational::one(),
        });
    }
    let k_lo = (n + m).saturating_sub(big_n);
    if c < k_lo {
        return Ok(ExactProbability {
            ratio: BigRational::zero(),
        });
    }

    // Incrementally maintain a = C(M, k) and b = C(N-M, n-k); both update
    // steps are exact integer divisions by construction. The divisor is
    // grouped as `(N - M + k + 1) - n`, which stays non-negative for
    // `k >= k_lo` where the naive left-to-right order can wrap.
    let mut a = big_binomial(m, k_lo);
    let mut b = big_binomial(big_n - m, n - k_lo);
    let mut sum = &a * &b;
    for k in k_lo..c {
        a *= m - k;
        a /= k + 1;
        b *= n - k;
        b /= big_n - m + k + 1 - n;
        sum += &a * &b;
    }
    Ok(ExactProbability {
        ratio: BigRational::new(sum, denom),
    })
}

/// Identifier of the generator behind [`monte_carlo_oc`], recorded in
/// results so simulations stay reproducible across versions.
pub const MC_RNG_ID: &str = "chacha12/u64-seed/stream-per-shard";

/// Trials per independently seeded shard. Shards make the run order
/// irrelevant: acceptance counts are integers summed over shards, so the
/// result is identical however shards are scheduled.
const SHARD_TRIALS: u64 = 8192;

/// Outcome of a Monte-Carlo OC estimation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    pub trials: u64,
    pub acceptances: u64,
    /// Acceptance frequency.
    pub estimate: f64,
    /// Binomial standard error `sqrt(p̂(1-p̂)/trials)`.
    pub std_error: f64,
    pub seed: u64,
    pub rng_id: &'static str,
}

/// Estimates the acceptance probability by physically simulating the plan:
/// each trial draws `plan.n()` of `lot_size` items without replacement
/// (partial Fisher–Yates over a sparse virtual array) and counts a success
/// when at most `plan.c()` drawn items fall among the `defectives`.
///
/// Deterministic for a given `(seed, trials)`: work is split into
/// fixed-size shards, each running its own counter-mode stream of the
/// seeded generator, so parallel and sequential execution produce the same
/// count bit for bit.
pub fn monte_carlo_oc(
    defectives: u64,
    lot_size: u64,
    plan: SamplingPlan,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    if lot_size == 0 {
        return Err(Error::EmptyLot);
    }
    if plan.n() > lot_size {
        return Err(Error::SampleExceedsLot {
            n: plan.n(),
            lot_size,
        });
    }
    if defectives > lot_size {
        return Err(Error::DefectivesOutsideLot {
            defectives: defectives as f64,
            lot_size,
        });
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }

    let full_shards = trials / SHARD_TRIALS;
    let remainder = trials % SHARD_TRIALS;
    let mut shards: Vec<(u64, u64)> = (0..full_shards).map(|i| (i, SHARD_TRIALS)).collect();
    if remainder > 0 {
        shards.push((full_shards, remainder));
    }

    let (n, c) = (plan.n(), plan.c());
    let per_shard = exec::map_collect(shards, move |(shard, shard_trials)| {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        let mut overrides: HashMap<u64, u64> = HashMap::with_capacity(n as usize * 2);
        let mut accepted = 0u64;
        for _ in 0..shard_trials {
            overrides.clear();
            // Items are 0..N; the first `defectives` of them are bad.
            let mut bad = 0u64;
            let mut ok = true;
            for j in 0..n {
                let r = rng.random_range(j..lot_size);
                let drawn = *overrides.get(&r).unwrap_or(&r);
                let displaced = *overrides.get(&j).unwrap_or(&j);
                overrides.insert(r, displaced);
                if drawn < defectives {
                    bad += 1;
                    if bad > c {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                accepted += 1;
            }
        }
        accepted
    });

    let acceptances: u64 = per_shard.iter().sum();
    let estimate = acceptances as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(SimulationResult {
        trials,
        acceptances,
        estimate,
        std_error,
        seed,
        rng_id: MC_RNG_ID,
    })
}

/// Double-double verdicts for the two-point criterion at one lot size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryAudit {
    pub lot_size: u64,
    pub plan: SamplingPlan,
    /// Gamma-extended OC at the AQL, rounded from ~31-digit arithmetic.
    pub oc_at_aql: f64,
    pub oc_at_lq: f64,
    /// Whether the OC at the AQL lies strictly below its bound — decided
    /// before any rounding to `f64`.
    pub strictly_below_at_aql: bool,
    pub strictly_below_at_lq: bool,
}

/// Re-evaluates the raw gamma-extended OC at both criterion points in
/// double-double arithmetic and compares against the bounds exactly.
///
/// This is an audit of the *curve*, not of admissibility policy: no
/// clamping and no certain-acceptance handling is applied, and all
/// intermediates must stay inside the normal `f64` range, which holds
/// throughout the published boundary region this exists to check.
pub fn extended_boundary_audit(
    lot_size: u64,
    plan: SamplingPlan,
    criterion: &TwoPointCriterion,
) -> Result<BoundaryAudit> {
    if lot_size == 0 {
        return Err(Error::EmptyLot);
    }
    if plan.n() > lot_size {
        return Err(Error::SampleExceedsLot {
            n: plan.n(),
            lot_size,
        });
    }
    let oc_aql = dd_extended_oc(Dd::prod(criterion.aql(), lot_size as f64), lot_size, plan);
    let oc_lq = dd_extended_oc(Dd::prod(criterion.lq(), lot_size as f64), lot_size, plan);
    Ok(BoundaryAudit {
        lot_size,
        plan,
        oc_at_aql: oc_aql.to_f64(),
        oc_at_lq: oc_lq.to_f64(),
        strictly_below_at_aql: oc_aql.lt_f64(criterion.aql_bound()),
        strictly_below_at_lq: oc_lq.lt_f64(criterion.lq_bound()),
    })
}

/// The falling-factorial form of the extended OC, term by term in
/// double-double arithmetic.
fn dd_extended_oc(m: Dd, lot_size: u64, plan: SamplingPlan) -> Dd {
    let (n, c) = (plan.n(), plan.c());
    let nn = Dd::from_f64(lot_size as f64);
    let mut sum = Dd::from_f64(0.0);
    for k in 0..=c {
        let mut t = Dd::from_f64(1.0);
        for i in 0..k {
            t = t.mul(m.sub(Dd::from_f64(i as f64)));
            t = t.mul(Dd::from_f64((n - i) as f64));
            t = t.div(Dd::from_f64((i + 1) as f64));
        }
        for i in 0..(n - k) {
            t = t.mul(nn.sub(m).sub(Dd::from_f64(i as f64)));
        }
        for i in 0..n {
            t = t.div(nn.sub(Dd::from_f64(i as f64)));
        }
        sum = sum.add(t);
    }
    sum
}
