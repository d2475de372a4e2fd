//! Outward-rounded interval arithmetic on `f64`.
//!
//! Rust exposes no control over the FPU rounding mode, so every endpoint is
//! pushed one ulp outward after each correctly rounded operation. `sqrt` is
//! correctly rounded by IEEE 754; `ln`/`exp`/`sin` come from the platform libm
//! and are assumed faithful (error below one ulp), so their results are
//! widened by two ulps.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn down(v: f64) -> f64 {
    v.next_down()
}

#[inline]
fn up(v: f64) -> f64 {
    v.next_up()
}

#[inline]
fn down2(v: f64) -> f64 {
    v.next_down().next_down()
}

#[inline]
fn up2(v: f64) -> f64 {
    v.next_up().next_up()
}

impl Interval {
    /// Panics if `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub const fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// Enclosure of a real constant given by its nearest double.
    pub fn around(v: f64) -> Self {
        Interval {
            lo: down(v),
            hi: up(v),
        }
    }

    /// Enclosure of `num / den` for integers of any size.
    pub fn ratio(num: u64, den: u64) -> Self {
        Interval::integer(num) / Interval::integer(den)
    }

    pub fn integer(n: u64) -> Self {
        if n < (1 << 53) {
            Interval::point(n as f64)
        } else {
            Interval::around(n as f64)
        }
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    pub fn max(self, o: Self) -> Self {
        Interval {
            lo: self.lo.max(o.lo),
            hi: self.hi.max(o.hi),
        }
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of interval reaching below zero");
        let r = self.lo.sqrt();
        if self.is_point() && r.mul_add(r, -self.lo) == 0.0 {
            return Interval::point(r);
        }
        Interval {
            lo: down(self.lo.sqrt()).max(0.0),
            hi: up(self.hi.sqrt()),
        }
    }

    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of interval reaching zero");
        if self.is_point() && self.lo == 1.0 {
            return Interval::point(0.0);
        }
        Interval {
            lo: down2(self.lo.ln()),
            hi: up2(self.hi.ln()),
        }
    }

    pub fn exp(self) -> Self {
        Interval {
            lo: down2(self.lo.exp()).max(0.0),
            hi: up2(self.hi.exp()),
        }
    }

    /// `self^n` for a nonnegative base.
    pub fn powi(self, n: u32) -> Self {
        assert!(self.lo >= 0.0, "powi expects a nonnegative base");
        let mut acc = Interval::point(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// `self^e = exp(e ln self)` for a positive base.
    pub fn powf(self, e: Interval) -> Self {
        (e * self.ln()).exp()
    }

    pub fn recip(self) -> Self {
        Interval::point(1.0) / self
    }

    /// Widen symmetrically by an absolute error radius.
    pub fn inflate(self, radius: f64) -> Self {
        Interval {
            lo: down(self.lo - radius),
            hi: up(self.hi + radius),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{:.17e}", self.lo)
        } else {
            write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
        }
    }
}

impl From<f64> for Interval {
    fn from(v: f64) -> Self {
        Interval::point(v)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        let lo = self.lo + o.lo;
        let hi = self.hi + o.hi;
        if self.is_point() && o.is_point() && two_sum_exact(self.lo, o.lo) {
            return Interval::point(lo);
        }
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if self.is_point() && o.is_point() && self.lo.mul_add(o.lo, -lo) == 0.0 {
            return Interval::point(lo);
        }
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(
            o.lo > 0.0 || o.hi < 0.0,
            "division by an interval containing zero"
        );
        let c = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if self.is_point() && o.is_point() && (-lo).mul_add(o.lo, self.lo) == 0.0 {
            return Interval::point(lo);
        }
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

#[inline]
fn two_sum_exact(a: f64, b: f64) -> bool {
    super::dd::two_sum(a, b).1 == 0.0
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, o: f64) -> Interval {
        self + Interval::point(o)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    fn sub(self, o: f64) -> Interval {
        self - Interval::point(o)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, o: f64) -> Interval {
        self * Interval::point(o)
    }
}

impl Div<f64> for Interval {
    type Output = Interval;
    fn div(self, o: f64) -> Interval {
        self / Interval::point(o)
    }
}
