//! Exact rational helpers for the high-precision summation path.
//!
//! Sequences whose α-cut endpoints are rational in (n, α) can be summed in
//! `BigRational` with no rounding at all; the only inexact step is the final
//! conversion to f64, optionally fused with an irrational scale factor such
//! as e⁻ˣ. The conversion goes through an explicit mantissa/exponent split so
//! that intermediate magnitudes far outside the f64 range (huge Borel partial
//! sums, tiny tails) never overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fuzzy::{FuzzyError, FuzzyNumber};

/// One fuzzy number as exact α-cut endpoint pairs on the grid.
pub type ExactCuts = Vec<(BigRational, BigRational)>;

/// The grid value α_j = j / M as an exact rational.
pub fn alpha_ratio(j: usize, levels: usize) -> BigRational {
    BigRational::new(BigInt::from(j), BigInt::from(levels))
}

/// Exact rational value of an f64 (every finite f64 is a dyadic rational).
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Splits `r` as `m · 2^e` with `m` an f64 of ~56 significant bits.
/// Returns `(0.0, 0)` for zero.
pub fn mantissa_exp(r: &BigRational) -> (f64, i64) {
    if r.is_zero() {
        return (0.0, 0);
    }
    let numer = r.numer().abs();
    let denom = r.denom().abs();
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    // Target a 57-bit quotient so the f64 conversion is the only rounding.
    let shift = 57 - (nb - db);
    let (num2, den2) = if shift >= 0 {
        (numer << shift as u64, denom)
    } else {
        (numer, denom << (-shift) as u64)
    };
    let mut q = &num2 / &den2;
    let rem = &num2 - &q * &den2;
    if &rem * 2u8 >= den2 {
        q += 1u8;
    }
    let m = q.to_f64().unwrap_or(f64::INFINITY);
    let m = if r.is_negative() { -m } else { m };
    (m, -shift)
}

/// `log2 |r|`, or `f64::NEG_INFINITY` for zero. Safe for magnitudes far
/// outside the f64 exponent range.
pub fn log2_abs(r: &BigRational) -> f64 {
    let (m, e) = mantissa_exp(r);
    if m == 0.0 {
        return f64::NEG_INFINITY;
    }
    m.abs().log2() + e as f64
}

/// `m · 2^e` in f64, split so that the scaling cannot overflow an
/// intermediate when the final value is representable.
fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    if (-1000..=1000).contains(&e) {
        return m * (e as f64).exp2();
    }
    let half = e / 2;
    m * (half as f64).exp2() * ((e - half) as f64).exp2()
}

// (mantissa in [1,2), exponent) of a normal f64.
fn frexp(x: f64) -> (f64, i64) {
    let bits = x.abs().to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64 - 1023;
    (x / (e as f64).exp2(), e)
}

/// Converts `r · scale` to f64. `scale` covers irrational factors (e.g.
/// e⁻ˣ) that cannot enter the exact accumulation; exponents are recombined
/// so no intermediate overflows when the final value is representable.
pub fn to_f64_scaled(r: &BigRational, scale: f64) -> f64 {
    let (m, e) = mantissa_exp(r);
    if m == 0.0 || scale == 0.0 {
        return 0.0;
    }
    if !scale.is_finite() || scale.is_subnormal() {
        return ldexp(m * scale, e);
    }
    let (sm, se) = frexp(scale);
    ldexp(m * sm, e + se)
}

/// `D(u, 0̄)` of an exact cut grid as log2 magnitude (overflow-safe).
/// Valid cuts have monotone endpoint grids, so the extremes sit at the
/// corners.
pub fn log2_norm(cuts: &ExactCuts) -> f64 {
    let first = &cuts[0];
    let last = &cuts[cuts.len() - 1];
    log2_abs(&first.0)
        .max(log2_abs(&first.1))
        .max(log2_abs(&last.0))
        .max(log2_abs(&last.1))
}

/// Nearest integer to the real number num/den (ties away from zero).
/// Monotone in the real value, which is what keeps rounded cut grids
/// nested.
fn div_round(num: BigInt, den: &BigInt) -> BigInt {
    use num_integer::Integer;
    let negative = num.is_negative() != den.is_negative();
    let (q, r) = num.div_rem(den);
    if &r.abs() * 2 >= den.abs() {
        if negative {
            q - 1u8
        } else {
            q + 1u8
        }
    } else {
        q
    }
}

/// Endpoint accumulator for exact weighted sums, in fixed point with `bits`
/// fractional bits. Each weighted term `w·cut` is rounded to the nearest
/// multiple of 2⁻ᵇⁱᵗˢ (error ≤ 2⁻ᵇⁱᵗˢ⁻¹ per term, absolute), which avoids
/// the gcd churn of growing `BigRational` sums while rounding monotonically,
/// so cut grids stay nested.
pub struct FixedCutAccumulator {
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    bits: u32,
}

impl FixedCutAccumulator {
    pub fn new(levels: usize, bits: u32) -> Self {
        FixedCutAccumulator {
            lo: vec![BigInt::zero(); levels + 1],
            hi: vec![BigInt::zero(); levels + 1],
            bits,
        }
    }

    /// Adds `(w_num/w_den)·cuts`. The weight denominator must be positive.
    pub fn add_scaled(&mut self, w_num: &BigInt, w_den: &BigInt, cuts: &ExactCuts) {
        for (j, (l, h)) in cuts.iter().enumerate() {
            self.lo[j] += div_round(
                (w_num * l.numer()) << self.bits,
                &(w_den * l.denom()),
            );
            self.hi[j] += div_round(
                (w_num * h.numer()) << self.bits,
                &(w_den * h.denom()),
            );
        }
    }

    /// Converts to a fuzzy number, applying `scale ≥ 0` to every endpoint.
    pub fn to_fuzzy(&self, scale: f64) -> Result<FuzzyNumber, FuzzyError> {
        let den = BigInt::one() << self.bits;
        let value = |n: &BigInt| {
            to_f64_scaled(&BigRational::new_raw(n.clone(), den.clone()), scale)
        };
        let lo = self.lo.iter().map(value).collect();
        let hi = self.hi.iter().map(value).collect();
        FuzzyNumber::from_alpha_cuts(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn roundtrips_ordinary_values() {
        for &x in &[0.0, 1.0, -1.0, 0.1, 1234.5678, -9.87e-300, 3.2e300] {
            let r = from_f64(x).unwrap();
            assert_eq!(to_f64_scaled(&r, 1.0), x, "roundtrip {x}");
        }
    }

    #[test]
    fn one_third_rounds_to_nearest() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(to_f64_scaled(&r, 1.0), 1.0 / 3.0);
        assert_eq!(to_f64_scaled(&r, 0.5), 1.0 / 6.0);
    }

    #[test]
    fn handles_magnitudes_outside_f64_range() {
        // 10^400 / 3 overflows f64 on its own; scaled by 1e-300·1e-50 it fits.
        let big = BigInt::from(10u8).pow(400);
        let r = BigRational::new(big.clone(), BigInt::from(3));
        assert!(to_f64_scaled(&r, 1.0).is_infinite());
        let scaled = to_f64_scaled(&r, 1e-300) * 1e-50;
        assert!((scaled / (1e50 / 3.0) - 1.0).abs() < 1e-12);
        // reciprocal: a value far below the subnormal range
        let rinv = BigRational::new(BigInt::from(3), big);
        assert_eq!(to_f64_scaled(&rinv, 1.0), 0.0);
        let scaled = to_f64_scaled(&rinv, 1e300) * 1e300;
        assert!((scaled / 3.0e200 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log2_of_extremes() {
        let big = BigInt::from(10u8).pow(400);
        let r = BigRational::new(big.clone(), BigInt::one());
        assert!((log2_abs(&r) - 400.0 * 10f64.log2()).abs() < 1e-9);
        let rinv = BigRational::new(BigInt::one(), big);
        assert!((log2_abs(&rinv) + 400.0 * 10f64.log2()).abs() < 1e-9);
        assert_eq!(log2_abs(&BigRational::zero()), f64::NEG_INFINITY);
    }
}
