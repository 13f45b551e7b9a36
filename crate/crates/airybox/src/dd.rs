//! Minimal double-double ("pair of f64") arithmetic for the Airy series.
//!
//! The Maclaurin series for Ai and Bi are alternating-in-effect combinations
//! of two everywhere-positive sums: near the series/asymptotic seam the sums
//! grow to ~1e5 while Ai itself has decayed to ~5e-8, so a plain f64
//! accumulation loses ~12 of its 16 digits to cancellation. Carrying the
//! sums as unevaluated (hi, lo) pairs — every operation still ordinary IEEE
//! binary64 — keeps ~32 significant digits through the cancellation and
//! returns the combined result good to ~1e-15 relative.
//!
//! Only the operations the series needs are provided. Algorithms are the
//! classical error-free transformations (Knuth's two-sum, FMA-based
//! two-product) used by every double-double library.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two f64: `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free sum assuming `|a| >= |b|` (one branch cheaper than `two_sum`).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product via FMA: `a * b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

impl Dd {
    /// A constant known to more than f64 precision, split as hi + lo.
    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    /// Exact widening of a single f64.
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two f64 values (no rounding at all).
    #[inline]
    pub fn prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (hi, lo) = quick_two_sum(s, e + self.lo + rhs.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(Dd {
            hi: -rhs.hi,
            lo: -rhs.lo,
        })
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let (hi, lo) = quick_two_sum(p, e + self.hi * rhs.lo + self.lo * rhs.hi);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    /// Division by a single f64 (one Newton-style correction of the
    /// quotient — standard double-double / f64 division).
    #[inline]
    pub fn div_f64(self, d: f64) -> Dd {
        let q = self.hi / d;
        let (p, e) = two_prod(q, d);
        let r = ((self.hi - p) - e + self.lo) / d;
        let (hi, lo) = quick_two_sum(q, r);
        Dd { hi, lo }
    }

    /// Collapse to the nearest f64.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_recovers_cancelled_low_part() {
        // (1e16 + 1) - 1e16 == 1 exactly in double-double, while plain f64
        // cannot represent 1e16 + 1.
        let big = Dd::from_f64(1e16);
        let s = big.add(Dd::from_f64(1.0)).sub(big);
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn prod_is_error_free() {
        // (2^27 + 1)^2 = 2^54 + 2^28 + 1; the +1 falls off the f64 hi part
        // and must land in lo.
        let a = 134217729.0; // 2^27 + 1
        let p = Dd::prod(a, a);
        assert_eq!(p.hi, 18014398777917440.0); // 2^54 + 2^28 rounds here
        assert_eq!(p.lo, 1.0);
    }

    #[test]
    fn div_then_mul_round_trips() {
        let x = Dd::new(0.3550280538878172, 2.05233632436212e-17);
        let y = x.div_f64(97.0).mul_f64(97.0);
        let diff = x.sub(y);
        assert!(diff.hi.abs() < 1e-31, "hi residue {:e}", diff.hi);
    }

    #[test]
    fn mul_matches_u128_reference() {
        // Exact cross-check of Dd::mul against 128-bit integer arithmetic:
        // interpret two 40-bit integers as f64 (exact), square the Dd
        // product of their sum against u128 math.
        let a = (1u64 << 40) + 987654321;
        let b = (1u64 << 39) + 123456789;
        let exact = (a as i128) * (b as i128);
        let dd = Dd::from_f64(a as f64).mul(Dd::from_f64(b as f64));
        // both parts carry exact integer values (lo may be negative)
        let recon = dd.hi as i128 + dd.lo as i128;
        assert_eq!(recon, exact);
    }
}
