//! Mathematical constants and the numeric constants appearing in the
//! explicit bounds.
//!
//! Decimal literals carry 50 significant digits; the compiler rounds them to
//! the nearest double. Values were taken from OEIS (A001620 for γ, A078434
//! for ζ(3/2), A013661 onwards for ζ(n)) and re-checked with mpmath at 60
//! digits.

use crate::numeric::Interval;

/// Euler–Mascheroni constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.57721566490153286060651209008240243104215933593992;

/// ζ(3/2).
#[allow(clippy::excessive_precision)]
pub const ZETA_3_2: f64 = 2.61237534868548834334856756792407163057080065240006;

/// ζ(n) for n = 2..=12, indexed by `n - 2`.
#[allow(clippy::excessive_precision)]
pub const ZETA_INT: [f64; 11] = [
    1.64493406684822643647241516664602518921894990120680,
    1.20205690315959428539973816151144999076498629234050,
    1.08232323371113819151600369654116790277475095191873,
    1.03692775514336992633136548645703416805708091950191,
    1.01734306198444913971451792979092052790181749003285,
    1.00834927738192282683979754984979675959986356056524,
    1.00407735619794433937868523850865246525896079064985,
    1.00200839282608221441785276923241206048560585139489,
    1.00099457512781808533714595890031901700601953156448,
    1.00049418860411946455870228252646993646860643575821,
    1.00024608655330804829863799804773967096041608845800,
];

/// Rigorous enclosures of the literal constants (nearest double widened by
/// one ulp either side).
pub fn gamma_iv() -> Interval {
    Interval::around(EULER_GAMMA)
}

pub fn pi_iv() -> Interval {
    Interval::around(std::f64::consts::PI)
}

pub fn e_iv() -> Interval {
    Interval::around(std::f64::consts::E)
}

pub fn zeta_3_2_iv() -> Interval {
    Interval::around(ZETA_3_2)
}

/// Constants of the main theorems and their proofs, in one place.
pub mod stated {
    /// Coefficient of (ln x)^3/√x (n−1) in the short-sum theorem statement.
    pub const SHORT_SUM_DEG: f64 = 1.45;
    /// Coefficient of (ln x)^2/√x ln|Δ| in the short-sum theorem statement.
    pub const SHORT_SUM_DISC: f64 = 6.01;
    /// Sharper degree coefficient reached at the end of the contour argument.
    pub const STEP_V_DEG: f64 = 1.35;
    /// Residual coefficient for F1.
    pub const STEP_V_F1: f64 = 0.54;
    /// Coefficient of the (2M)^4/ln|Δ| term in the upper-bound exponent.
    pub const UPPER_M4: f64 = 0.44;
    /// Same-shaped coefficient as it first appears in the lower-bound chase.
    pub const LOWER_M4_FIRST: f64 = 0.435;
    /// Coefficient of the (2M)^3/lnln|Δ| term.
    pub const M3: f64 = 1.11;
    /// Exponent reached by the upper-bound chase.
    pub const UPPER_EXPONENT: f64 = 18.3;
    /// Exponent reached by the lower-bound chase.
    pub const LOWER_EXPONENT: f64 = 18.5;
    /// The published constant.
    pub const THEOREM_CONSTANT: f64 = 19.0;
    /// 1 + 18.38 + 50.4 + 0.06.
    pub const LOWER_SUM: f64 = 69.84;
    pub const CAP_M4: f64 = 18.38;
    pub const CAP_M3: f64 = 50.4;
    pub const CAP_M2: f64 = 0.06;
    /// Upper bound for Σ_p ln p/(p(p−1)).
    pub const PRIME_LOG_TAIL: f64 = 0.8;
    /// Coefficient of ln x/x in the lower bound for Σ(x).
    pub const SIGMA_LOWER_TAIL: f64 = 1.3;
    /// Unconditional lower bound numerator for κ.
    pub const UNCOND_LOWER: f64 = 0.36232;
    /// Pal–Simonič exponent shift.
    pub const PAL_SIMONIC_SHIFT: f64 = 2.475;
    /// Pal–Simonič discriminant threshold.
    pub const PAL_SIMONIC_MIN_DISC: f64 = 5.4e6;
    /// Smallest |Δ| for which the main theorem is stated.
    pub const THEOREM_MIN_DISC: f64 = 14.0;
    /// Smallest truncation point for the short-sum theorem.
    pub const SHORT_SUM_MIN_X: f64 = 5e5;
    /// Discriminant from which x(Δ) ≥ 5·10^5.
    pub const LARGE_DISC: f64 = 1.6e6;
    /// Lower endpoint of the Mertens-product lemma.
    pub const MERTENS_MIN_X: f64 = 23.8;
    /// Lower endpoint of the truncated Euler-product lemma.
    pub const ZETA_PRODUCT_MIN_X: f64 = 59.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms_match_literals() {
        assert!((ZETA_INT[0] - PI * PI / 6.0).abs() < 4e-16);
        assert!((ZETA_INT[2] - PI.powi(4) / 90.0).abs() < 4e-16);
        assert!((ZETA_INT[4] - PI.powi(6) / 945.0).abs() < 4e-16);
    }

    #[test]
    fn enclosures_contain_literals() {
        assert!(gamma_iv().contains(EULER_GAMMA));
        assert!(pi_iv().contains(PI));
        assert!(pi_iv().width() > 0.0);
    }

    #[test]
    fn lower_sum_adds_up() {
        use stated::*;
        assert!((1.0 + CAP_M4 + CAP_M3 + CAP_M2 - LOWER_SUM).abs() < 1e-12);
    }
}
