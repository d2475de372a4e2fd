//! Scalar backends for long sums and products over primes.
//!
//! Each [`Precision`](super::Precision) mode maps to one backend: plain `f64`,
//! double-double ([`Dd`]) or a double-double midpoint with a rigorous error
//! radius ([`DdBall`]). The prime-sum code is written once against [`Real`].

use std::ops::{Add, Div, Mul, Sub};

use super::dd::Dd;
use super::interval::Interval;

pub trait Real: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    /// `num / den` for integers below 2^53.
    fn ratio(num: u64, den: u64) -> Self;
    /// Natural logarithm of a positive integer.
    fn ln_int(n: u64) -> Self;
    fn enclosure(self) -> Interval;
}

impl Real for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
    #[inline]
    fn ln_int(n: u64) -> Self {
        (n as f64).ln()
    }
    fn enclosure(self) -> Interval {
        Interval::point(self)
    }
}

impl Real for Dd {
    #[inline]
    fn zero() -> Self {
        Dd::ZERO
    }
    #[inline]
    fn one() -> Self {
        Dd::ONE
    }
    #[inline]
    fn ratio(num: u64, den: u64) -> Self {
        Dd::ratio(num, den)
    }
    #[inline]
    fn ln_int(n: u64) -> Self {
        Dd::from_f64((n as f64).ln())
    }
    fn enclosure(self) -> Interval {
        Interval::point(self.to_f64())
    }
}

/// Relative error charged to every double-double operation: 2^-100, i.e.
/// 64 u^2 for u = 2^-53, comfortably above the published bounds for the
/// addition, multiplication and division algorithms in [`Dd`].
const DD_OP_ERR: f64 = 7.888609052210118e-31;

/// Relative error charged to a libm logarithm (assumed faithful).
const LIBM_ERR: f64 = f64::EPSILON;

#[inline]
fn up(v: f64) -> f64 {
    v.next_up()
}

/// A double-double midpoint together with an absolute error radius.
///
/// The true value is guaranteed to lie in `[mid - rad, mid + rad]` provided
/// every input was constructed through [`Real`]; radii are accumulated with
/// upward rounding.
#[derive(Clone, Copy, Debug)]
pub struct DdBall {
    pub mid: Dd,
    pub rad: f64,
}

impl DdBall {
    fn exact(v: Dd) -> Self {
        DdBall { mid: v, rad: 0.0 }
    }

    #[inline]
    fn rounded(mid: Dd, propagated: f64) -> Self {
        let rad = up(propagated + up(mid.magnitude() * DD_OP_ERR));
        DdBall { mid, rad }
    }
}

impl Add for DdBall {
    type Output = DdBall;
    #[inline]
    fn add(self, o: DdBall) -> DdBall {
        DdBall::rounded(self.mid + o.mid, up(self.rad + o.rad))
    }
}

impl Sub for DdBall {
    type Output = DdBall;
    #[inline]
    fn sub(self, o: DdBall) -> DdBall {
        DdBall::rounded(self.mid - o.mid, up(self.rad + o.rad))
    }
}

impl Mul for DdBall {
    type Output = DdBall;
    #[inline]
    fn mul(self, o: DdBall) -> DdBall {
        let a = self.mid.magnitude();
        let b = o.mid.magnitude();
        let prop = up(up(up(a * o.rad) + up(b * self.rad)) + up(self.rad * o.rad));
        DdBall::rounded(self.mid * o.mid, prop)
    }
}

impl Div for DdBall {
    type Output = DdBall;
    #[inline]
    fn div(self, o: DdBall) -> DdBall {
        let denom_floor = (o.mid.abs().hi - o.mid.lo.abs()).next_down() - o.rad;
        assert!(denom_floor > 0.0, "division by a ball containing zero");
        let q = self.mid / o.mid;
        // exact quotient magnitude is within one part in 2^99 of |q|
        let qmag = up(q.magnitude() * (1.0 + 1e-29));
        let num = up(self.rad + up(qmag * o.rad));
        let prop = up(num / denom_floor.next_down());
        DdBall::rounded(q, prop)
    }
}

impl Real for DdBall {
    #[inline]
    fn zero() -> Self {
        DdBall::exact(Dd::ZERO)
    }
    #[inline]
    fn one() -> Self {
        DdBall::exact(Dd::ONE)
    }
    #[inline]
    fn ratio(num: u64, den: u64) -> Self {
        let q = Dd::ratio(num, den);
        DdBall::rounded(q, 0.0)
    }
    #[inline]
    fn ln_int(n: u64) -> Self {
        let v = (n as f64).ln();
        DdBall {
            mid: Dd::from_f64(v),
            rad: up(v.abs() * LIBM_ERR),
        }
    }
    fn enclosure(self) -> Interval {
        let s = self.mid.hi + self.mid.lo;
        let lo = (s.next_down() - self.rad).next_down();
        let hi = (s.next_up() + self.rad).next_up();
        Interval::new(lo, hi)
    }
}

/// Neumaier-compensated running sum of plain doubles.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_encloses_harmonic_sum() {
        // H_1000 to 30 digits: 7.48547086055034491265651820433
        let mut h = DdBall::zero();
        for k in 1..=1000u64 {
            h = h + DdBall::ratio(1, k);
        }
        let iv = h.enclosure();
        assert!(iv.contains(7.485_470_860_550_345));
        assert!(iv.width() < 1e-14);
    }

    #[test]
    fn ball_division_and_product() {
        let mut prod = DdBall::one();
        for p in [2u64, 3, 5, 7] {
            prod = prod * (DdBall::one() - DdBall::ratio(1, p));
        }
        // (1/2)(2/3)(4/5)(6/7) = 8/35
        assert!(prod.enclosure().contains(8.0 / 35.0));
        let inv = DdBall::one() / prod;
        assert!(inv.enclosure().contains(35.0 / 8.0));
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut naive = 0.0;
        let mut comp = CompensatedSum::new();
        for _ in 0..1_000_000 {
            naive += 0.1;
            comp.add(0.1);
        }
        assert!((comp.value() - 100_000.0).abs() < (naive - 100_000.0f64).abs());
        assert!((comp.value() - 100_000.0).abs() < 1e-9);
    }
}
