//! Arbitrary-precision binary floating point built on `BigUint`.
//!
//! A value is `sign * mant * 2^exp` where `mant` carries at most `prec`
//! significant bits after rounding. Every arithmetic result is rounded to
//! nearest, ties to even, at the larger operand precision; addition and
//! multiplication are computed exactly before the single rounding, division
//! keeps an explicit sticky bit, so all four field operations are correctly
//! rounded. `exp` is the only transcendental needed by the crate.
//!
//! Each value carries its own precision (like MPFR floats), which keeps the
//! type self-contained for use in generic code such as LU elimination.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct BigFloat {
    sign: i8, // -1, 0, +1
    mant: BigUint,
    exp: i64,
    prec: u32,
}

/// Precision bookkeeping for modules that create many values of one width.
#[derive(Clone, Copy, Debug)]
pub struct PrecisionContext {
    pub bits: u32,
}

impl PrecisionContext {
    /// Working precision in bits; at least 53.
    pub fn new(bits: u32) -> Self {
        PrecisionContext { bits: bits.max(53) }
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn from_u64(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, self.bits)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::zero(self.bits)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_u64(1, self.bits)
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { sign: 0, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        if v == 0 {
            return Self::zero(prec);
        }
        BigFloat { sign: 1, mant: BigUint::from(v), exp: 0, prec }.rounded()
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let m = Self::from_u64(v.unsigned_abs(), prec);
        if v < 0 {
            m.neg()
        } else {
            m
        }
    }

    pub fn from_biguint(v: BigUint, prec: u32) -> Self {
        if v.is_zero() {
            return Self::zero(prec);
        }
        BigFloat { sign: 1, mant: v, exp: 0, prec }.rounded()
    }

    /// Exact conversion; every finite f64 is representable.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "BigFloat::from_f64 needs a finite value");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        BigFloat { sign, mant: BigUint::from(mant), exp, prec }.rounded()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn signum(&self) -> i8 {
        self.sign
    }

    /// Round-to-nearest-even at `self.prec` bits.
    fn rounded(mut self) -> Self {
        if self.mant.is_zero() {
            return Self::zero(self.prec);
        }
        let nb = self.mant.bits();
        let p = self.prec as u64;
        if nb <= p {
            return self;
        }
        let drop = nb - p;
        let guard = self.mant.bit(drop - 1);
        let sticky = if drop >= 2 {
            let mask = (BigUint::one() << (drop - 1)) - BigUint::one();
            !(&self.mant & mask).is_zero()
        } else {
            false
        };
        let mut kept = &self.mant >> drop;
        let mut exp = self.exp + drop as i64;
        if guard && (sticky || kept.bit(0)) {
            kept += 1u32;
            if kept.bits() > p {
                kept >>= 1u32;
                exp += 1;
            }
        }
        self.mant = kept;
        self.exp = exp;
        self
    }

    /// Re-round (or widen) to a different precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigFloat { sign: self.sign, mant: self.mant.clone(), exp: self.exp, prec }.rounded()
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.sign = r.sign.abs();
        r
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.sign == 0 {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    /// Position of the most significant bit: value magnitude is in
    /// [2^(mag2-1), 2^mag2). Zero input returns i64::MIN.
    pub fn mag2(&self) -> i64 {
        if self.sign == 0 {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    fn add_signed(&self, other: &Self, negate_other: bool) -> Self {
        let prec = self.prec.max(other.prec);
        let osign = if negate_other { -other.sign } else { other.sign };
        if self.sign == 0 {
            let mut r = other.clone();
            r.sign = osign;
            r.prec = prec;
            return r.rounded();
        }
        if osign == 0 {
            return self.with_prec(prec);
        }
        // If the magnitudes are too far apart, the small operand only matters
        // as a sticky bit on the large one.
        let (big, small, bsign, ssign) = if self.mag2() >= other.mag2() {
            (self, other, self.sign, osign)
        } else {
            (other, self, osign, self.sign)
        };
        let gap = big.mag2() - small.mag2();
        if gap > prec as i64 + 8 {
            let shifted = &big.mant << 3u32;
            let mant = if bsign == ssign {
                shifted + BigUint::one()
            } else {
                shifted - BigUint::one()
            };
            return BigFloat { sign: bsign, mant, exp: big.exp - 3, prec }.rounded();
        }
        // Exact alignment, exact add/sub, one rounding.
        let common = big.exp.min(small.exp);
        let mb = &big.mant << (big.exp - common) as u64;
        let ms = &small.mant << (small.exp - common) as u64;
        if bsign == ssign {
            BigFloat { sign: bsign, mant: mb + ms, exp: common, prec }.rounded()
        } else {
            match mb.cmp(&ms) {
                Ordering::Equal => Self::zero(prec),
                Ordering::Greater => BigFloat { sign: bsign, mant: mb - ms, exp: common, prec }.rounded(),
                Ordering::Less => BigFloat { sign: ssign, mant: ms - mb, exp: common, prec }.rounded(),
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.sign == 0 || other.sign == 0 {
            return Self::zero(prec);
        }
        BigFloat {
            sign: self.sign * other.sign,
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec,
        }
        .rounded()
    }

    pub fn div(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        assert!(other.sign != 0, "BigFloat division by zero");
        if self.sign == 0 {
            return Self::zero(prec);
        }
        // Scale the numerator so the quotient has at least prec+2 bits, then
        // fold the remainder into a sticky bit.
        let nb = self.mant.bits() as i64;
        let db = other.mant.bits() as i64;
        let s = (prec as i64 + 2 + db - nb).max(0) as u64;
        let num = &self.mant << s;
        let q = &num / &other.mant;
        let r = num - &q * &other.mant;
        let sticky = if r.is_zero() { 0u32 } else { 1u32 };
        let mant = (q << 1u32) + sticky;
        BigFloat {
            sign: self.sign * other.sign,
            mant,
            exp: self.exp - other.exp - s as i64 - 1,
            prec,
        }
        .rounded()
    }

    pub fn powi(&self, n: u32) -> Self {
        let work = self.prec + 32;
        let mut result = BigFloat::from_u64(1, work);
        let mut base = self.with_prec(work);
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result.with_prec(self.prec)
    }

    /// exp(self), correctly rounded to ~1 ulp: argument halving to |y| <= 1/2,
    /// Maclaurin series, then repeated squaring with guard bits covering the
    /// 2^k error amplification of the squarings.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.sign == 0 {
            return BigFloat::from_u64(1, prec);
        }
        let k = (self.mag2() + 1).max(0) as u32;
        let work = prec + 40 + 2 * k;
        let y = self.with_prec(work).mul_pow2(-(k as i64));
        let mut term = BigFloat::from_u64(1, work);
        let mut sum = BigFloat::from_u64(1, work);
        let mut j = 1u64;
        loop {
            term = term.mul(&y).div(&BigFloat::from_u64(j, work));
            if term.is_zero() || term.mag2() < sum.mag2() - (work as i64 + 8) {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        let mut r = sum;
        for _ in 0..k {
            r = r.mul(&r);
        }
        r.with_prec(prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let nb = self.mant.bits();
        // Keep 54 bits plus sticky, let the final f64 arithmetic round.
        let (top, exp) = if nb > 54 {
            let drop = nb - 54;
            let mask = (BigUint::one() << drop) - BigUint::one();
            let sticky = !(&self.mant & mask).is_zero();
            let mut t = u64::try_from(&self.mant >> drop).unwrap();
            if sticky {
                t = t << 1 | 1;
                (t, self.exp + drop as i64 - 1)
            } else {
                (t, self.exp + drop as i64)
            }
        } else {
            (u64::try_from(&self.mant).unwrap(), self.exp)
        };
        let m = top as f64; // rounds to nearest here (<= 56 bits, one rounding)
        let signed = if self.sign < 0 { -m } else { m };
        // Exact power-of-two scaling with clamped exponent.
        let e = exp.clamp(-2200, 2200) as i32;
        signed * pow2(e)
    }

    /// Natural log as f64; requires a positive value. Accurate to ~1e-15
    /// relative, which serves log-determinant accumulation.
    pub fn ln_f64(&self) -> f64 {
        assert!(self.sign > 0, "ln of non-positive BigFloat");
        let nb = self.mant.bits();
        let take = nb.min(64);
        let top = u64::try_from(&self.mant >> (nb - take)).unwrap();
        let rest = (self.exp + (nb - take) as i64) as f64;
        (top as f64).ln() + rest * std::f64::consts::LN_2
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            o => return o,
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let mag = match self.mag2().cmp(&other.mag2()) {
            Ordering::Equal => {
                // Align and compare mantissas exactly.
                let sa = self.mant.bits();
                let sb = other.mant.bits();
                let w = sa.max(sb);
                let ma = &self.mant << (w - sa);
                let mb = &other.mant << (w - sb);
                ma.cmp(&mb)
            }
            o => o,
        };
        if self.sign > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

/// 2^e as f64, exact until overflow/underflow.
fn pow2(e: i32) -> f64 {
    let mut r = 1.0f64;
    let mut base = if e >= 0 { 2.0f64 } else { 0.5f64 };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            r *= base;
        }
        k >>= 1;
        if k > 0 {
            base *= base;
        }
    }
    r
}
