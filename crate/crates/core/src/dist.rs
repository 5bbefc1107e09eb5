//! Operating-characteristic (OC) evaluators.
//!
//! The OC of a single-sampling plan `(n, c)` is the probability of
//! accepting a lot as a function of its quality. Four models are provided:
//!
//! * [`binomial_oc`] — infinite lot (sampling with replacement),
//! * [`poisson_oc`] — the classical Poisson approximation,
//! * [`hypergeom_oc_exact`] — finite lot, integer defective count,
//! * [`hypergeom_oc_extended`] — finite lot with the defective count
//!   extended to real values through the gamma function.
//!
//! All evaluators are total over their validated domains: probabilities in
//! `[0, 1]`, samples no larger than the lot, defective counts inside the
//! lot. Results are clamped to `[0, 1]`; the extension can structurally
//! produce small negative excursions outside the integer grid (where the
//! true probability is zero), and those clamp to exactly `0`.

mod gamma;

pub use gamma::{ln_factorial, log_gamma_signed, SignedLogGamma};

use crate::error::{Error, Result};
use crate::numeric::Scaled;
use crate::plan::SamplingPlan;

/// Natural-log threshold below which a leading term underflows `f64` and
/// evaluation switches to log-space accumulation.
const LOG_UNDERFLOW_GUARD: f64 = -700.0;

/// Acceptance probability under the binomial model: the chance of at most
/// `c` defectives in `n` independent draws at fraction defective `p`.
pub fn binomial_oc(p: f64, plan: SamplingPlan) -> Result<f64> {
    Error::check_probability("p", p)?;
    let (n, c) = (plan.n(), plan.c());
    if c == n {
        return Ok(1.0);
    }
    if p == 0.0 {
        return Ok(1.0);
    }
    if p == 1.0 {
        return Ok(0.0);
    }
    let ln_t0 = n as f64 * (-p).ln_1p();
    if ln_t0 > LOG_UNDERFLOW_GUARD {
        // Term recursion: t_{k+1} = t_k · (n-k)/(k+1) · p/(1-p).
        let ratio = p / (1.0 - p);
        let mut term = ln_t0.exp();
        let mut sum = term;
        for k in 0..c {
            term *= (n - k) as f64 / (k + 1) as f64 * ratio;
            sum += term;
        }
        Ok(sum.clamp(0.0, 1.0))
    } else {
        // Deep tail: even the k = 0 term underflows, so accumulate in log
        // space with binomial coefficients from log-gamma.
        let ln_fact_n = ln_factorial(n);
        let (ln_p, ln_q) = (p.ln(), (-p).ln_1p());
        let ln_terms = (0..=c).map(|k| {
            ln_fact_n - ln_factorial(k) - ln_factorial(n - k)
                + k as f64 * ln_p
                + (n - k) as f64 * ln_q
        });
        Ok(log_sum_exp(ln_terms).exp().clamp(0.0, 1.0))
    }
}

/// Acceptance probability under the Poisson approximation with mean
/// `n · p`: the chance of at most `c` events.
pub fn poisson_oc(p: f64, plan: SamplingPlan) -> Result<f64> {
    Error::check_probability("p", p)?;
    let (n, c) = (plan.n(), plan.c());
    let lambda = p * n as f64;
    if lambda == 0.0 {
        return Ok(1.0);
    }
    if -lambda > LOG_UNDERFLOW_GUARD {
        let mut term = (-lambda).exp();
        let mut sum = term;
        for k in 0..c {
            term *= lambda / (k + 1) as f64;
            sum += term;
        }
        Ok(sum.clamp(0.0, 1.0))
    } else {
        let ln_lambda = lambda.ln();
        let ln_terms = (0..=c).map(|k| -lambda + k as f64 * ln_lambda - ln_factorial(k));
        Ok(log_sum_exp(ln_terms).exp().clamp(0.0, 1.0))
    }
}

/// Streaming log-sum-exp: `ln Σ exp(lt)` without materializing the terms.
fn log_sum_exp(ln_terms: impl Iterator<Item = f64>) -> f64 {
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0f64;
    for lt in ln_terms {
        if lt > max {
            sum = sum * (max - lt).exp() + 1.0;
            max = lt;
        } else {
            sum += (lt - max).exp();
        }
    }
    max + sum.ln()
}

fn check_lot(lot_size: u64, plan: SamplingPlan) -> Result<()> {
    if lot_size == 0 {
        return Err(Error::EmptyLot);
    }
    if plan.n() > lot_size {
        return Err(Error::SampleExceedsLot {
            n: plan.n(),
            lot_size,
        });
    }
    Ok(())
}

/// Acceptance probability when drawing `n` of `lot_size` items without
/// replacement, `defectives` of which are bad: `P(X <= c)` for
/// hypergeometric `X`.
pub fn hypergeom_oc_exact(defectives: u64, lot_size: u64, plan: SamplingPlan) -> Result<f64> {
    check_lot(lot_size, plan)?;
    if defectives > lot_size {
        return Err(Error::DefectivesOutsideLot {
            defectives: defectives as f64,
            lot_size,
        });
    }
    let (n, c) = (plan.n(), plan.c());
    let (m, big_n) = (defectives, lot_size);

    // The sample can contain at most min(n, M) defectives and, when the
    // sample is large, at least n + M - N of them.
    let k_hi = n.min(m);
    if c >= k_hi {
        return Ok(1.0);
    }
    let k_lo = (n + m).saturating_sub(big_n);
    if c < k_lo {
        return Ok(0.0);
    }

    // Leading term P(X = k_lo), built as a scaled product so lots in the
    // thousands (where it can round below 2^-1000) stay representable.
    let mut term = Scaled::one();
    if k_lo == 0 {
        for i in 0..n {
            term.mul((big_n - m - i) as f64 / (big_n - i) as f64);
        }
    } else {
        for i in 0..k_lo {
            term.mul((m - i) as f64);
            term.mul((n - i) as f64 / (i + 1) as f64);
        }
        for i in 0..(n - k_lo) {
            term.mul((big_n - m - i) as f64);
        }
        for i in 0..n {
            term.div((big_n - i) as f64);
        }
    }

    // March the term up the support and accumulate; being above k_lo and
    // below min(n, M) keeps every recursion factor positive and finite.
    // (`big_n - m + k + 1 >= n` holds because `k >= k_lo`; subtracting in
    // any other order can wrap the unsigned intermediate.)
    let mut sum = term.to_f64();
    for k in k_lo..c {
        term.mul((m - k) as f64 * (n - k) as f64);
        term.div((k + 1) as f64 * (big_n - m + k + 1 - n) as f64);
        sum += term.to_f64();
    }
    Ok(sum.clamp(0.0, 1.0))
}

/// Acceptance probability for a finite lot with a *real-valued* defective
/// count, obtained by writing each hypergeometric probability with gamma
/// functions and letting `defectives` leave the integer grid.
///
/// At integer `defectives` this agrees with [`hypergeom_oc_exact`] (the
/// factor `Γ`-ratios collapse to falling factorials, including the empty
/// support cases, where vanishing numerator factors make terms exactly
/// zero). Between integers the continuation is smooth; immediately outside
/// the support of near-degenerate plans it can dip slightly below zero or
/// above one, which is clamped.
pub fn hypergeom_oc_extended(defectives: f64, lot_size: u64, plan: SamplingPlan) -> Result<f64> {
    check_lot(lot_size, plan)?;
    if !defectives.is_finite() || defectives < 0.0 || defectives > lot_size as f64 {
        return Err(Error::DefectivesOutsideLot {
            defectives,
            lot_size,
        });
    }
    let (n, c) = (plan.n(), plan.c());
    let (m, big_n) = (defectives, lot_size as f64);

    // Each term is C(n, k) · Π_{i<k} (M - i) · Π_{i<n-k} (N - M - i)
    //                      / Π_{i<n} (N - i),
    // the falling-factorial form of the gamma-function ratios. Products of
    // explicit factors keep the relative error near n·ε, which log-gamma
    // differences (magnitudes ~ N ln N) could not achieve for large lots.
    let terms: Vec<Scaled> = (0..=c)
        .map(|k| {
            let mut t = Scaled::one();
            for i in 0..k {
                t.mul(m - i as f64);
                t.mul((n - i) as f64 / (i + 1) as f64);
            }
            for i in 0..(n - k) {
                t.mul(big_n - m - i as f64);
            }
            for i in 0..n {
                t.div(big_n - i as f64);
            }
            t
        })
        .collect();
    Ok(Scaled::sum(&terms).clamp(0.0, 1.0))
}
