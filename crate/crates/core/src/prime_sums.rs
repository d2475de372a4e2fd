//! Finite sums and products over primes and prime powers.
//!
//! Every function accepts a real `x`, sums over the integer range `n <= x`
//! (see [`cutoff`](crate::primes::cutoff)) and evaluates with the backend
//! chosen by the [`PrecisionPolicy`]. Results are returned as an
//! [`Interval`], which is a single point outside interval mode.

use crate::error::{Error, Result};
use crate::numeric::{Interval, PrecisionPolicy, Real};
use crate::primes::PrimeTable;

/// Runs `$body` with the type alias `$R` bound to the backend for `$policy`.
#[macro_export]
#[doc(hidden)]
macro_rules! with_backend {
    ($policy:expr, $R:ident => $body:expr) => {
        match $policy.mode {
            $crate::numeric::Precision::Fast => {
                type $R = f64;
                $body
            }
            $crate::numeric::Precision::Extended => {
                type $R = $crate::numeric::Dd;
                $body
            }
            $crate::numeric::Precision::Interval => {
                type $R = $crate::numeric::DdBall;
                $body
            }
        }
    };
}

/// Σ_{p^k <= x} ln p.
pub fn psi(table: &PrimeTable, x: f64, policy: &PrecisionPolicy) -> Result<Interval> {
    let n = positive(table, x, "psi")?;
    Ok(with_backend!(policy, R => psi_with::<R>(table, n).enclosure()))
}

pub fn psi_with<R: Real>(table: &PrimeTable, n: u64) -> R {
    let mut acc = R::zero();
    for q in table.prime_powers_up_to(n) {
        acc = acc + R::ln_int(q.p);
    }
    acc
}

/// Σ_{n <= x} Λ(n)/(n ln n) = Σ_{p^k <= x} 1/(k p^k).
pub fn big_psi(table: &PrimeTable, x: f64, policy: &PrecisionPolicy) -> Result<Interval> {
    let n = positive(table, x, "big_psi")?;
    Ok(with_backend!(policy, R => big_psi_with::<R>(table, n).enclosure()))
}

pub fn big_psi_with<R: Real>(table: &PrimeTable, n: u64) -> R {
    let mut acc = R::zero();
    for q in table.prime_powers_up_to(n) {
        acc = acc + R::ratio(1, q.k as u64 * q.n);
    }
    acc
}

/// Π_{p <= x} (1 − 1/p).
pub fn mertens_product(table: &PrimeTable, x: f64, policy: &PrecisionPolicy) -> Result<Interval> {
    let n = positive(table, x, "mertens_product")?;
    Ok(with_backend!(policy, R => mertens_product_with::<R>(table, n).enclosure()))
}

pub fn mertens_product_with<R: Real>(table: &PrimeTable, n: u64) -> R {
    let mut acc = R::one();
    for p in table.primes_up_to(n) {
        acc = acc * R::ratio(p - 1, p);
    }
    acc
}

/// The factor 1 − p^{−s}.
#[inline]
pub fn euler_factor<R: Real>(p: u64, s: u32) -> R {
    let inv = R::ratio(1, p);
    let mut pw = inv;
    for _ in 1..s {
        pw = pw * inv;
    }
    R::one() - pw
}

/// Π_{p <= x} (1 − p^{−s})^{−1}.
pub fn zeta_truncated_product(
    table: &PrimeTable,
    x: f64,
    s: u32,
    policy: &PrecisionPolicy,
) -> Result<Interval> {
    if s < 2 {
        return Err(Error::domain("zeta_truncated_product", s as f64, "n >= 2"));
    }
    let n = positive(table, x, "zeta_truncated_product")?;
    Ok(with_backend!(policy, R => zeta_truncated_product_with::<R>(table, n, s).enclosure()))
}

pub fn zeta_truncated_product_with<R: Real>(table: &PrimeTable, n: u64, s: u32) -> R {
    let mut acc = R::one();
    for p in table.primes_up_to(n) {
        acc = acc * euler_factor::<R>(p, s);
    }
    R::one() / acc
}

/// The three sums Σ ln p, Σ ln p/p and Σ ln p/(p(p−1)) over p <= x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimeLogSums {
    pub s1: Interval,
    pub s2: Interval,
    pub s3: Interval,
}

pub fn prime_log_sums(table: &PrimeTable, x: f64, policy: &PrecisionPolicy) -> Result<PrimeLogSums> {
    let n = positive(table, x, "prime_log_sums")?;
    Ok(with_backend!(policy, R => {
        let (a, b, c) = prime_log_sums_with::<R>(table, n);
        PrimeLogSums { s1: a.enclosure(), s2: b.enclosure(), s3: c.enclosure() }
    }))
}

pub fn prime_log_sums_with<R: Real>(table: &PrimeTable, n: u64) -> (R, R, R) {
    let (mut s1, mut s2, mut s3) = (R::zero(), R::zero(), R::zero());
    for p in table.primes_up_to(n) {
        let l = R::ln_int(p);
        s1 = s1 + l;
        s2 = s2 + l * R::ratio(1, p);
        s3 = s3 + l * R::ratio(1, p * (p - 1));
    }
    (s1, s2, s3)
}

/// π(x).
pub fn pi_count(table: &PrimeTable, x: f64) -> Result<u64> {
    if x.is_nan() {
        return Err(Error::domain("pi_count", x, "x >= 0"));
    }
    let n = table.check(x.max(0.0))?;
    Ok(table.count_up_to(n))
}

/// x/ln x + x/(2 ln²x) and x/ln x + 3x/(2 ln²x), which enclose π(x) for
/// x >= 59.
pub fn pi_envelope(x: f64) -> Result<(Interval, Interval)> {
    if x.is_nan() || x < 59.0 {
        return Err(Error::domain("pi_envelope", x, "x >= 59"));
    }
    let l = Interval::point(x).ln();
    let main = Interval::point(x) / l;
    let r = Interval::point(x) / (Interval::point(2.0) * l * l);
    Ok((main + r, main + Interval::point(3.0) * r))
}

fn positive(table: &PrimeTable, x: f64, function: &'static str) -> Result<u64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(function, x, "x > 0"));
    }
    table.check(x)
}
