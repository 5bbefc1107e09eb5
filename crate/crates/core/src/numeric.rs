//! Low-level numeric helpers: floating point with an explicit binary
//! exponent (for products whose magnitude leaves the `f64` range) and
//! double-double arithmetic (for ~31-digit boundary audits).

/// A real number `m · 2^e` with `m` a finite `f64` kept inside a moderate
/// magnitude band. Supports the product/quotient accumulation needed by
/// hypergeometric terms, whose intermediate values can fall to `2^-2500`
/// and below; each operation costs exactly one `f64` rounding.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    m: f64,
    e: i64,
}

const RENORM_LIMIT: i64 = 512;

impl Scaled {
    pub(crate) fn one() -> Self {
        Scaled { m: 1.0, e: 0 }
    }

    fn renorm(&mut self) {
        if self.m == 0.0 {
            self.e = 0;
            return;
        }
        let bits = self.m.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64 - 1023;
        if exp.abs() > RENORM_LIMIT {
            // 2^(-exp) is a power of two: the rescale is exact.
            self.m *= f64::powi(2.0, -exp as i32);
            self.e += exp;
        }
    }

    pub(crate) fn mul(&mut self, factor: f64) {
        self.m *= factor;
        self.renorm();
    }

    pub(crate) fn div(&mut self, divisor: f64) {
        self.m /= divisor;
        self.renorm();
    }

    /// Collapses to a plain `f64`, flushing magnitudes below the normal
    /// range to zero and saturating above it. The quantities represented
    /// here are probabilities or their building blocks, so anything below
    /// `2^-1022` is indistinguishable from zero for callers.
    pub(crate) fn to_f64(self) -> f64 {
        if self.m == 0.0 {
            return 0.0;
        }
        match self.e {
            0 => self.m,
            e if e < -1022 => 0.0,
            e if e > 1023 => f64::INFINITY.copysign(self.m),
            e => self.m * f64::powi(2.0, e as i32),
        }
    }

    /// Sums a slice of scaled values in one pass: every mantissa is shifted
    /// to the largest exponent present, so terms of wildly different
    /// magnitude (including mixed signs) combine without overflow.
    pub(crate) fn sum(terms: &[Scaled]) -> f64 {
        let Some(max_e) = terms
            .iter()
            .filter(|t| t.m != 0.0)
            .map(|t| t.e)
            .max()
        else {
            return 0.0;
        };
        let mut acc = 0.0;
        for t in terms {
            if t.m == 0.0 {
                continue;
            }
            let shift = t.e - max_e; // <= 0
            if shift >= -1022 {
                acc += t.m * f64::powi(2.0, shift as i32);
            }
        }
        Scaled { m: acc, e: max_e }.to_f64()
    }
}

/// An unevaluated sum `hi + lo` of two `f64` with `|lo| <= ulp(hi)/2`,
/// giving roughly 31 significant decimal digits. Used to audit strict
/// inequalities at published table boundaries, where plain `f64` could not
/// distinguish "just below" from "just above".
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    // Requires |a| >= |b|.
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    pub(crate) fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// The exact product of two `f64` values, held without rounding.
    pub(crate) fn prod(a: f64, b: f64) -> Self {
        two_prod(a, b)
    }

    pub(crate) fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        quick_two_sum(s.hi, s.lo + self.lo + other.lo)
    }

    pub(crate) fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    pub(crate) fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        quick_two_sum(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
    }

    pub(crate) fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = (r.hi + r.lo) / (other.hi + other.lo);
        quick_two_sum(q1, q2)
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Compares against a plain `f64` (which is exact as a real number).
    pub(crate) fn lt_f64(self, bound: f64) -> bool {
        if self.hi != bound {
            return self.hi < bound;
        }
        self.lo < 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_product_survives_deep_underflow() {
        // 0.5^2600 underflows f64 entirely; climbing back up must restore
        // the true magnitude.
        let mut s = Scaled::one();
        for _ in 0..2600 {
            s.mul(0.5);
        }
        for _ in 0..2600 {
            s.mul(2.0);
        }
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn scaled_flushes_tiny_results_to_zero() {
        let mut s = Scaled::one();
        for _ in 0..5000 {
            s.mul(0.5);
        }
        assert_eq!(s.to_f64(), 0.0);
    }

    #[test]
    fn scaled_sum_mixes_magnitudes_and_signs() {
        let mut big = Scaled::one();
        big.mul(3.0);
        let mut tiny = Scaled::one();
        for _ in 0..200 {
            tiny.mul(0.5);
        }
        let mut neg = Scaled::one();
        neg.mul(-2.0);
        let total = Scaled::sum(&[big, tiny, neg]);
        assert!((total - (1.0 + 0.5f64.powi(200))).abs() < 1e-18);
    }

    #[test]
    fn dd_tracks_products_beyond_f64_precision() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the last term is below f64
        // resolution of the sum but dd keeps it.
        let x = Dd::from_f64(1.0 + f64::powi(2.0, -30));
        let sq = x.mul(x);
        let err = sq
            .sub(Dd::from_f64(1.0 + f64::powi(2.0, -29)))
            .sub(Dd::from_f64(f64::powi(2.0, -60)));
        assert_eq!(err.to_f64(), 0.0);
    }

    #[test]
    fn dd_division_round_trips() {
        let a = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let back = a.mul(Dd::from_f64(3.0));
        assert!(back.sub(Dd::from_f64(1.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn dd_strict_comparison_sees_the_low_word() {
        let just_below = Dd {
            hi: 0.05,
            lo: -1e-25,
        };
        let just_above = Dd { hi: 0.05, lo: 1e-25 };
        assert!(just_below.lt_f64(0.05));
        assert!(!just_above.lt_f64(0.05));
    }
}
