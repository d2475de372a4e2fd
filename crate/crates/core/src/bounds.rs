//! Closed-form bound functions and their inversion for the minimal
//! admissible constant.
//!
//! Everything is evaluated in outward-rounded [`Interval`] arithmetic from
//! point arguments, so `.mid()` is an accurate double and `.lo()`/`.hi()` are
//! rigorous enclosures (modulo the faithful-libm assumption documented in
//! [`Interval`]).

use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::constants::{e_iv, gamma_iv, stated as k, pi_iv, zeta_3_2_iv, ZETA_INT};
use crate::error::{Error, Result};
use crate::numeric::Interval;

#[inline]
fn pt(v: f64) -> Interval {
    Interval::point(v)
}

fn ln2() -> Interval {
    pt(2.0).ln()
}

/// |Δ| represented by an enclosure of its logarithm, which is all the
/// bounds need. Discriminants of any size are accepted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbsDisc {
    ln: Interval,
}

impl AbsDisc {
    pub fn from_bigint(disc: &BigInt) -> Result<Self> {
        let a = disc.abs();
        if a < BigInt::from(2) {
            return Err(Error::domain("AbsDisc", a.to_f64().unwrap_or(0.0), "|disc| >= 2"));
        }
        let bits = a.bits();
        if bits <= 64 {
            return Ok(AbsDisc::from_u64(a.to_u64().expect("fits")));
        }
        // |Δ| lies in [m, m + 1]·2^s with m the top 64 bits
        let s = bits - 64;
        let m = (&a >> s).to_u64().expect("64 bits");
        let lo = Interval::integer(m).ln().lo();
        let hi = Interval::integer(m + 1).ln().hi();
        let ln = Interval::new(lo, hi) + ln2() * Interval::integer(s);
        Ok(AbsDisc { ln })
    }

    /// Panics when `n < 2`.
    pub fn from_u64(n: u64) -> Self {
        assert!(n >= 2, "|disc| must be at least 2");
        AbsDisc {
            ln: Interval::integer(n).ln(),
        }
    }

    /// From a real |Δ| (used for grids and interpolation between integers).
    pub fn from_f64(v: f64) -> Self {
        assert!(v > 1.0, "|disc| must exceed 1");
        AbsDisc { ln: pt(v).ln() }
    }

    /// From ln|Δ| directly.
    pub fn from_ln(ln: f64) -> Self {
        assert!(ln > 0.0, "ln|disc| must be positive");
        AbsDisc { ln: pt(ln) }
    }

    pub fn ln(&self) -> Interval {
        self.ln
    }

    /// ln ln |Δ|.
    pub fn lnln(&self) -> Interval {
        self.ln.ln()
    }

    /// |Δ| as a double (may overflow to infinity for huge discriminants).
    pub fn approx(&self) -> f64 {
        self.ln.mid().exp()
    }
}

fn require(ok: bool, function: &'static str, value: f64, domain: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::domain(function, value, domain))
    }
}

/// 3(ln x + 2)/(8π√x).
pub fn psi_error_bound(x: f64) -> Result<Interval> {
    require(x >= E, "psi_error_bound", x, "x >= e")?;
    let l = pt(x).ln();
    Ok(pt(3.0) * (l + 2.0) / (pt(8.0) * pi_iv() * pt(x).sqrt()))
}

/// (n−1)(ln ln x + γ + 3(ln x + 2)/(8π√x)).
pub fn sigma_upper_bound(x: f64, n: u32) -> Result<Interval> {
    let e = psi_error_bound(x)?;
    require(n >= 1, "sigma_upper_bound", n as f64, "n >= 1")?;
    let d = pt((n - 1) as f64);
    Ok(d * (pt(x).ln().ln() + gamma_iv() + e))
}

/// ln(ζ(n)/(e^γ ln x)·(1 − 3 ln x/(8π√x))) − ((n−1)/ln x)(1 + ln²x/(8π√x) + 1.3 ln x/x).
pub fn sigma_lower_bound(x: f64, n: u32) -> Result<Interval> {
    require(x >= k::ZETA_PRODUCT_MIN_X, "sigma_lower_bound", x, "x >= 59")?;
    require(n >= 2, "sigma_lower_bound", n as f64, "n >= 2")?;
    let l = pt(x).ln();
    let s = pt(x).sqrt();
    let eight_pi_s = pt(8.0) * pi_iv() * s;
    let factor = pt(1.0) - pt(3.0) * l / eight_pi_s;
    assert!(factor.lo() > 0.0, "1 - 3 ln x/(8 pi sqrt x) must be positive for x >= 59");
    let main = (zeta_value(n)? / (gamma_iv().exp() * l) * factor).ln();
    let tail = pt(1.0) + l * l / eight_pi_s + pt(k::SIGMA_LOWER_TAIL) * l / x;
    Ok(main - pt((n - 1) as f64) / l * tail)
}

/// G(x, h) = h/(x ln x) + 3(ln x + h/x + 2)/(4π√x).
pub fn g_bound(x: f64, h: f64) -> Result<Interval> {
    require(x > 1.0, "G", x, "x > 1")?;
    require(h > 0.0 && h < x, "G", h, "0 < h < x")?;
    let l = pt(x).ln();
    let hx = pt(h) / x;
    Ok(hx / l + pt(3.0) * (l + hx + 2.0) / (pt(4.0) * pi_iv() * pt(x).sqrt()))
}

/// ln(π^{3/2} ζ(3/2)/(6√2)).
pub fn ln_c2() -> Interval {
    pt(1.5) * pi_iv().ln() + zeta_3_2_iv().ln() - pt(6.0).ln() - pt(0.5) * ln2()
}

/// H(t) = 3[ln(π^{3/2}ζ(3/2)/(6√2)) + ln(3/2 + √(9 + t²))/2].
pub fn h_bound(t: f64) -> Result<Interval> {
    require(t >= 0.0, "H", t, "t >= 0")?;
    Ok(h_iv(pt(t)))
}

fn h_iv(t: Interval) -> Interval {
    let r = (pt(9.0) + t * t).sqrt();
    pt(3.0) * (ln_c2() + (pt(1.5) + r).ln() / 2.0)
}

/// (1 + x^{−μ})^{1/2 + 1/ln x}.
fn tail_power(x: f64, mu: f64) -> Interval {
    let l = pt(x).ln();
    let xmu = (pt(-mu) * l).exp();
    (pt(1.0) + xmu).powf(pt(0.5) + pt(1.0) / l)
}

/// J(x, μ) = μ + 2/(ln x − 2) + 2(1 + x^{−μ})^{1/2 + 1/ln x}/ln x.
pub fn j_bound(x: f64, mu: f64) -> Result<Interval> {
    require(x > E * E, "J", x, "x > e^2")?;
    require(mu > 0.0 && mu < 1.0, "J", mu, "0 < mu < 1")?;
    let l = pt(x).ln();
    Ok(pt(mu) + pt(2.0) / (l - 2.0) + pt(2.0) * tail_power(x, mu) / l)
}

fn check_f_domain(name: &'static str, x: f64, mu: f64) -> Result<()> {
    require(x > E * E, name, x, "x > e^2")?;
    require(mu > 0.0 && mu < 0.5, name, mu, "0 < mu < 1/2")?;
    let l = x.ln();
    // x^mu <= sqrt(x)/ln^2 x, compared in logarithms with a relative allowance
    let lhs = mu * l;
    let rhs = 0.5 * l - 2.0 * l.ln();
    require(lhs <= rhs + 1e-12 * rhs.abs().max(1.0), name, mu, "x^mu <= sqrt(x)/(ln x)^2")
}

/// F₁(x, μ) = 1 + 3x^{μ−1/2}(ln x + x^{−μ} + 2) ln x/(4π).
pub fn f1(x: f64, mu: f64) -> Result<Interval> {
    check_f_domain("F1", x, mu)?;
    let l = pt(x).ln();
    let xm = (pt(mu) * l).exp();
    let pw = (pt(mu - 0.5) * l).exp();
    Ok(pt(1.0) + pt(3.0) * pw * (l + xm.recip() + 2.0) * l / (pt(4.0) * pi_iv()))
}

/// F₂(x, μ).
pub fn f2(x: f64, mu: f64) -> Result<Interval> {
    check_f_domain("F2", x, mu)?;
    let l = pt(x).ln();
    let x2m = (pt(2.0 * mu) * l).exp();
    let first = pt(3.0) * e_iv() / (pi_iv() * l) * (ln_c2() + (pt(1.5) + (pt(9.0) + x2m).sqrt()).ln() / 2.0);
    let second = pt(0.5) + pt(2.0) / (l - 2.0) + pt(2.0) * tail_power(x, mu) / l;
    let third = pt(1.0) + pt(1.0) / (pt(mu) * l);
    Ok(first * second * third)
}

/// F₃(x, μ) = (3e/4π)(1 + 4/(ln x − 2) + 4(1 + x^{−μ})^{1/2 + 1/ln x}/ln x).
pub fn f3(x: f64, mu: f64) -> Result<Interval> {
    check_f_domain("F3", x, mu)?;
    let l = pt(x).ln();
    Ok(pt(3.0) * e_iv() / (pt(4.0) * pi_iv()) * (pt(1.0) + pt(4.0) / (l - 2.0) + pt(4.0) * tail_power(x, mu) / l))
}

/// μ = 1/2 − 2 ln ln x/ln x, the choice making x^μ = √x/(ln x)².
pub fn mu_star(x: f64) -> Result<Interval> {
    require(x > E.powf(E), "mu_star", x, "x > e^e")?;
    let l = pt(x).ln();
    let mu = pt(0.5) - pt(2.0) * l.ln() / l;
    require(mu.lo() > 0.0 && mu.hi() < 0.5, "mu_star", x, "mu in (0, 1/2)")?;
    Ok(mu)
}

fn check_short_sum(x: f64, n: u32) -> Result<()> {
    require(x >= k::SHORT_SUM_MIN_X, "short_sum_bound", x, "x >= 5e5")?;
    require(n >= 1, "short_sum_bound", n as f64, "n >= 1")
}

/// (3e/8π + 1.45/ln x)(ln x)³/√x·(n−1) + (3e/4π + 6.01/ln x)(ln x)²/√x·ln|Δ|.
pub fn short_sum_bound(x: f64, n: u32, ln_abs_disc: Interval) -> Result<Interval> {
    check_short_sum(x, n)?;
    let l = pt(x).ln();
    let s = pt(x).sqrt();
    let d = pt((n - 1) as f64);
    let a = pt(3.0) * e_iv() / (pt(8.0) * pi_iv()) + pt(k::SHORT_SUM_DEG) / l;
    let b = pt(3.0) * e_iv() / (pt(4.0) * pi_iv()) + pt(k::SHORT_SUM_DISC) / l;
    Ok(a * l * l * l / s * d + b * l * l / s * ln_abs_disc)
}

/// The sharper form reached at the end of the contour argument, with 1.35
/// and the lower-order terms kept.
pub fn short_sum_step_v(x: f64, n: u32, ln_abs_disc: Interval) -> Result<Interval> {
    check_short_sum(x, n)?;
    let l = pt(x).ln();
    let s = pt(x).sqrt();
    let d = pt((n - 1) as f64);
    let a = pt(3.0) * e_iv() / (pt(8.0) * pi_iv())
        + pt(k::STEP_V_DEG) / l
        + (pt(1.0) + pt(3.0) / (pt(4.0) * pi_iv())) / (l * l)
        + pt(k::STEP_V_F1) / (l * l * l);
    let b = pt(3.0) * e_iv() / (pt(4.0) * pi_iv()) + pt(k::SHORT_SUM_DISC) / l;
    Ok(a * l * l * l / s * d + b * l * l / s * ln_abs_disc)
}

/// (F₁/(x^μ ln x) + F₂(ln x)³/√x)(n−1) + F₃(ln x)²/√x·ln|Δ| at μ = μ*(x).
pub fn short_sum_f_form(x: f64, n: u32, ln_abs_disc: Interval) -> Result<Interval> {
    check_short_sum(x, n)?;
    let mu = mu_star(x)?.mid();
    let l = pt(x).ln();
    let s = pt(x).sqrt();
    let xm = (pt(mu) * l).exp();
    let d = pt((n - 1) as f64);
    Ok((f1(x, mu)? / (xm * l) + f2(x, mu)? * l * l * l / s) * d + f3(x, mu)? * l * l / s * ln_abs_disc)
}

/// Parameters of the short-sum estimate before the constants are rounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub x: f64,
    pub n: u32,
    pub abs_disc: AbsDisc,
    pub mu: f64,
    pub h: f64,
}

impl BoundParams {
    /// Validates x ≥ 5·10^5, √x(ln x)² ≤ h < x and 0 < μ < 1/2.
    pub fn new(x: f64, n: u32, abs_disc: AbsDisc, mu: f64, h: f64) -> Result<Self> {
        require(x >= k::SHORT_SUM_MIN_X, "BoundParams", x, "x >= 5e5")?;
        require(n >= 2, "BoundParams", n as f64, "n >= 2")?;
        require(mu > 0.0 && mu < 0.5, "BoundParams", mu, "0 < mu < 1/2")?;
        let l = x.ln();
        let floor = x.sqrt() * l * l;
        require(h >= floor * (1.0 - 1e-12) && h < x, "BoundParams", h, "sqrt(x) (ln x)^2 <= h < x")?;
        Ok(BoundParams { x, n, abs_disc, mu, h })
    }

    /// The choice μ = μ*(x), h = x^{1−μ}.
    pub fn standard(x: f64, n: u32, abs_disc: AbsDisc) -> Result<Self> {
        let mu = mu_star(x)?.mid();
        let h = x.powf(1.0 - mu);
        Self::new(x, n, abs_disc, mu, h)
    }

    /// c = 1/ln x.
    pub fn c(&self) -> f64 {
        1.0 / self.x.ln()
    }

    /// d = n − 1.
    pub fn d(&self) -> u32 {
        self.n - 1
    }

    /// d·G(x, h) + J(x, μ)·e(ln x)²/(π√x)·(H(x^μ)(1 + 1/(μ ln x))d + (3/2) ln|Δ|).
    pub fn composite_bound(&self) -> Result<Interval> {
        let x = self.x;
        let l = pt(x).ln();
        let d = pt(self.d() as f64);
        let xm = (pt(self.mu) * l).exp();
        let inner = h_iv(xm) * (pt(1.0) + pt(1.0) / (pt(self.mu) * l)) * d + pt(1.5) * self.abs_disc.ln();
        Ok(d * g_bound(x, self.h)? + j_bound(x, self.mu)? * e_iv() * l * l / (pi_iv() * pt(x).sqrt()) * inner)
    }
}

/// M(t) = 1 + 4 ln ln ln t/ln ln t.
pub fn m_fn(t: f64) -> Result<Interval> {
    require(t > E.powf(E), "M", t, "t > e^e")?;
    Ok(m_of_ln(pt(t).ln()))
}

/// M as a function of ln t (for arguments beyond the range of a double).
pub fn m_of_ln(ln_t: Interval) -> Interval {
    let l2 = ln_t.ln();
    pt(1.0) + pt(4.0) * l2.ln() / l2
}

/// x(Δ) = (ln|Δ|)²(ln ln|Δ|)⁸.
pub fn x_of_disc(d: &AbsDisc) -> Result<Interval> {
    let l = d.ln();
    require(l.lo() > E, "x_of_disc", d.approx(), "|disc| > e^e")?;
    Ok(l * l * l.ln().powi(8))
}

fn theorem_domain(n: u32, d: &AbsDisc, function: &'static str) -> Result<()> {
    require(n >= 2, function, n as f64, "n >= 2")?;
    let ln14 = pt(k::THEOREM_MIN_DISC).ln();
    require(d.ln().hi() >= ln14.lo(), function, d.approx(), "|disc| >= 14")
}

/// (2e^γ (ln ln|Δ|)^{1 + c/ln ln|Δ|})^{n−1}.
pub fn theorem_upper(n: u32, d: &AbsDisc, c: f64) -> Result<Interval> {
    theorem_domain(n, d, "theorem_upper")?;
    Ok(theorem_upper_unchecked(n, d, c))
}

/// [`theorem_upper`] without the |Δ| ≥ 14 restriction; needs |Δ| > e.
pub fn theorem_upper_unchecked(n: u32, d: &AbsDisc, c: f64) -> Interval {
    let l = d.lnln();
    let base = pt(2.0) * gamma_iv().exp() * ((pt(1.0) + pt(c) / l) * l.ln()).exp();
    base.powi(n - 1)
}

/// ζ(n)/(2e^γ (ln ln|Δ|)^{1 + c(n−1)/ln ln|Δ|}).
pub fn theorem_lower(n: u32, d: &AbsDisc, c: f64) -> Result<Interval> {
    theorem_domain(n, d, "theorem_lower")?;
    Ok(theorem_lower_unchecked(n, d, c))
}

/// [`theorem_lower`] without the |Δ| ≥ 14 restriction; needs |Δ| > e.
pub fn theorem_lower_unchecked(n: u32, d: &AbsDisc, c: f64) -> Interval {
    let l = d.lnln();
    let z = zeta_value(n.max(2)).expect("n >= 2");
    let pw = ((pt(1.0) + pt(c) * ((n - 1) as f64) / l) * l.ln()).exp();
    z / (pt(2.0) * gamma_iv().exp() * pw)
}

/// The unconditional range (0.36232/√|Δ|, (e ln|Δ|/(2(n−1)))^{n−1}).
pub fn uncond_bounds(n: u32, d: &AbsDisc) -> Result<(Interval, Interval)> {
    require(n >= 2, "uncond_bounds", n as f64, "n >= 2")?;
    require(d.ln().hi() >= pt(3.0).ln().lo(), "uncond_bounds", d.approx(), "|disc| >= 3")?;
    let lower = pt(k::UNCOND_LOWER) * (pt(-0.5) * d.ln()).exp();
    let upper = (e_iv() * d.ln() / pt(2.0 * (n - 1) as f64)).powi(n - 1);
    Ok((lower, upper))
}

/// Earlier bounds reported alongside ours.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Comparators {
    /// (2e^γ ln ln|Δ|)^{n−1}; main term of an asymptotic bound only.
    pub cho_kim_upper: f64,
    /// ζ(n)/(2e^γ ln ln|Δ|).
    pub cho_kim_lower: f64,
    /// (2e^{γ + 2.475/ln ln|Δ|} ln ln|Δ|)^{n−1}, only for |Δ| ≥ 5.4·10^6.
    pub pal_simonic_upper: Option<f64>,
    pub uncond_lower: f64,
    pub uncond_upper: f64,
}

impl Comparators {
    /// `key=value;…` with absent values omitted.
    pub fn to_field(&self) -> String {
        let mut parts = vec![
            format!("cho_kim_upper={:.16e}", self.cho_kim_upper),
            format!("cho_kim_lower={:.16e}", self.cho_kim_lower),
        ];
        if let Some(v) = self.pal_simonic_upper {
            parts.push(format!("pal_simonic_upper={v:.16e}"));
        }
        parts.push(format!("uncond_lower={:.16e}", self.uncond_lower));
        parts.push(format!("uncond_upper={:.16e}", self.uncond_upper));
        parts.join(";")
    }

    pub fn from_field(s: &str) -> std::result::Result<Self, String> {
        let mut c = Comparators::default();
        let (mut a, mut b, mut lo, mut hi) = (false, false, false, false);
        for part in s.split(';').filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| format!("bad comparator `{part}`"))?;
            let v: f64 = val.parse().map_err(|_| format!("bad comparator value `{val}`"))?;
            match key {
                "cho_kim_upper" => (c.cho_kim_upper, a) = (v, true),
                "cho_kim_lower" => (c.cho_kim_lower, b) = (v, true),
                "pal_simonic_upper" => c.pal_simonic_upper = Some(v),
                "uncond_lower" => (c.uncond_lower, lo) = (v, true),
                "uncond_upper" => (c.uncond_upper, hi) = (v, true),
                _ => return Err(format!("unknown comparator `{key}`")),
            }
        }
        if a && b && lo && hi {
            Ok(c)
        } else {
            Err(format!("incomplete comparator field `{s}`"))
        }
    }
}

/// Comparator values for a field of degree `n`; needs |Δ| ≥ 3.
pub fn comparison_bounds(n: u32, d: &AbsDisc) -> Result<Comparators> {
    let (lo, hi) = uncond_bounds(n, d)?;
    let l = d.lnln();
    let eg2 = pt(2.0) * gamma_iv().exp();
    let pal = if d.ln().lo() >= pt(k::PAL_SIMONIC_MIN_DISC).ln().hi() {
        let base = pt(2.0) * (gamma_iv() + pt(k::PAL_SIMONIC_SHIFT) / l).exp() * l;
        Some(base.powi(n - 1).mid())
    } else {
        None
    };
    Ok(Comparators {
        cho_kim_upper: (eg2 * l).powi(n - 1).mid(),
        cho_kim_lower: (zeta_value(n)? / (eg2 * l)).mid(),
        pal_simonic_upper: pal,
        uncond_lower: lo.mid(),
        uncond_upper: hi.mid(),
    })
}

/// ζ(n) for integer n ≥ 2: tabulated literals up to 12, beyond that the
/// partial sum to 1000 plus the integral tail bound 1000^{1−n}/(n−1).
pub fn zeta_value(n: u32) -> Result<Interval> {
    require(n >= 2, "zeta_value", n as f64, "n >= 2")?;
    if (n as usize) < ZETA_INT.len() + 2 {
        return Ok(Interval::around(ZETA_INT[n as usize - 2]));
    }
    Ok(zeta_series(n, 1000))
}

/// Σ_{k ≤ K} k^{−n} enclosed together with the tail (0, K^{1−n}/(n−1)].
pub fn zeta_series(n: u32, terms: u64) -> Interval {
    assert!(n >= 2 && terms >= 1);
    // sum the smallest terms first
    let mut acc = Interval::point(0.0);
    for k in (1..=terms).rev() {
        acc = acc + Interval::integer(k).recip().powi(n);
    }
    let tail = Interval::integer(terms).powi(n - 1).recip() / pt((n - 1) as f64);
    Interval::new(acc.lo(), (acc + tail).hi())
}

fn min_constant_logs(d: &AbsDisc, function: &'static str) -> Result<(Interval, Interval)> {
    let l = d.lnln();
    require(l.lo() > 0.0, function, d.approx(), "|disc| > e")?;
    let ll = l.ln();
    if ll.lo() <= 0.0 && ll.hi() >= 0.0 {
        return Err(Error::Pole {
            function,
            value: d.approx(),
        });
    }
    Ok((l, ll))
}

/// The c with κ = (2e^γ L^{1 + c/L})^{n−1}, L = ln ln|Δ|.
pub fn min_constant_upper(kappa: Interval, n: u32, d: &AbsDisc) -> Result<Interval> {
    require(n >= 2, "min_constant_upper", n as f64, "n >= 2")?;
    require(kappa.lo() > 0.0, "min_constant_upper", kappa.mid(), "kappa > 0")?;
    let (l, ll) = min_constant_logs(d, "min_constant_upper")?;
    let t = kappa.ln() / pt((n - 1) as f64) - ln2() - gamma_iv() - ll;
    Ok(l * t / ll)
}

/// The c with κ = ζ(n)/(2e^γ L^{1 + c(n−1)/L}), L = ln ln|Δ|.
pub fn min_constant_lower(kappa: Interval, n: u32, d: &AbsDisc) -> Result<Interval> {
    require(n >= 2, "min_constant_lower", n as f64, "n >= 2")?;
    require(kappa.lo() > 0.0, "min_constant_lower", kappa.mid(), "kappa > 0")?;
    let (l, ll) = min_constant_logs(d, "min_constant_lower")?;
    let t = zeta_value(n)?.ln() - ln2() - gamma_iv() - kappa.ln() - ll;
    Ok(l * t / (pt((n - 1) as f64) * ll))
}

/// Quantities from the constant chase for large discriminants, each paired
/// with the cap it must respect.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantChase {
    /// 0.44(2M)⁴/ln|Δ| against 18.38.
    pub m4: Interval,
    /// 1.11(2M)³/ln ln|Δ| against 50.4.
    pub m3: Interval,
    /// 3(2M)²/(4π ln|Δ|(ln ln|Δ|)²) against 0.06.
    pub m2: Interval,
    /// 4 lnlnln/lnln + 0.44(2M)³/(ln·lnln) + 1.11(2M)²/lnln², against
    /// `upper_exponent_cap`.
    pub upper_exponent: Interval,
    /// 18.3 lnlnln/lnln.
    pub upper_exponent_cap: Interval,
    /// 4 + 69.84/(2M lnlnln) against 18.5.
    pub lower_exponent: Interval,
}

impl ConstantChase {
    /// Each check with its margin (cap minus value, guaranteed lower end).
    pub fn margins(&self) -> [(&'static str, f64); 5] {
        [
            ("m4", (pt(k::CAP_M4) - self.m4).lo()),
            ("m3", (pt(k::CAP_M3) - self.m3).lo()),
            ("m2", (pt(k::CAP_M2) - self.m2).lo()),
            ("upper_exponent", (self.upper_exponent_cap - self.upper_exponent).lo()),
            ("lower_exponent", (pt(k::LOWER_EXPONENT) - self.lower_exponent).lo()),
        ]
    }

    pub fn holds(&self) -> bool {
        self.margins().iter().all(|(_, m)| *m >= 0.0)
    }
}

/// Evaluates the constant chase at |Δ| (meaningful for |Δ| ≥ 1.6·10^6).
pub fn constant_chase(d: &AbsDisc) -> Result<ConstantChase> {
    let l1 = d.ln();
    require(l1.lo() > E, "constant_chase", d.approx(), "|disc| > e^e")?;
    let l2 = l1.ln();
    let l3 = l2.ln();
    let two_m = pt(2.0) * m_of_ln(l1);
    let m4 = pt(k::UPPER_M4) * two_m.powi(4) / l1;
    let m3 = pt(k::M3) * two_m.powi(3) / l2;
    let m2 = pt(3.0) * two_m.powi(2) / (pt(4.0) * pi_iv() * l1 * l2 * l2);
    let upper_exponent =
        pt(4.0) * l3 / l2 + pt(k::UPPER_M4) * two_m.powi(3) / (l1 * l2) + pt(k::M3) * two_m.powi(2) / (l2 * l2);
    let upper_exponent_cap = pt(k::UPPER_EXPONENT) * l3 / l2;
    let lower_exponent = pt(4.0) + pt(k::LOWER_SUM) / (two_m * l3);
    Ok(ConstantChase {
        m4,
        m3,
        m2,
        upper_exponent,
        upper_exponent_cap,
        lower_exponent,
    })
}

/// The coefficients of the short-sum statement, at x, folded into the
/// rounded 0.44 and 1.11 used afterwards: returns
/// (3e/8π + 1.45/ln x, 3e/4π + 6.01/ln x).
pub fn rounded_coefficients(x: f64) -> Result<(Interval, Interval)> {
    require(x >= k::SHORT_SUM_MIN_X, "rounded_coefficients", x, "x >= 5e5")?;
    let l = pt(x).ln();
    Ok((
        pt(3.0) * e_iv() / (pt(8.0) * pi_iv()) + pt(k::SHORT_SUM_DEG) / l,
        pt(3.0) * e_iv() / (pt(4.0) * pi_iv()) + pt(k::SHORT_SUM_DISC) / l,
    ))
}

/// Limits of F₁, F₂, F₃ as x → ∞ along μ = μ*(x).
pub fn f_limits() -> (f64, f64, f64) {
    (1.0 + 3.0 / (4.0 * PI), 3.0 * E / (8.0 * PI), 3.0 * E / (4.0 * PI))
}
