use num_bigint::BigInt;
use proptest::prelude::*;
use residue_core::bounds::{
    constant_chase, m_fn, min_constant_lower, min_constant_upper, psi_error_bound, short_sum_bound,
    short_sum_f_form, short_sum_step_v, theorem_lower, theorem_upper, uncond_bounds, x_of_disc, zeta_series,
    zeta_value, AbsDisc, BoundParams,
};
use residue_core::Interval;
use std::f64::consts::E;

#[test]
fn abs_disc_of_huge_integer() {
    let d: BigInt = BigInt::from(10).pow(400);
    let a = AbsDisc::from_bigint(&-d).unwrap();
    let want = 400.0 * 10f64.ln();
    assert!((a.ln().mid() - want).abs() < 1e-12 * want);
    assert!(AbsDisc::from_bigint(&BigInt::from(0)).is_err());
}

#[test]
fn zeta_table_matches_series() {
    for n in 2..=12 {
        let t = zeta_value(n).unwrap();
        let s = zeta_series(n, 1000);
        assert!(t.lo() <= s.hi() && s.lo() <= t.hi(), "n = {n}: {t} vs {s}");
    }
    let z20 = zeta_value(20).unwrap();
    let partial: f64 = (1..=10).map(|k: i32| (k as f64).powi(-20)).sum();
    assert!((z20.mid() - partial).abs() < 1e-15);
}

#[test]
fn m_peaks_at_exp_e_to_the_e() {
    let t0 = E.powf(E).exp();
    let peak = m_fn(t0).unwrap().mid();
    assert!((peak - (1.0 + 4.0 / E)).abs() < 1e-12);
    assert!(m_fn(t0 * 0.5).unwrap().mid() < peak && m_fn(t0 * 2.0).unwrap().mid() < peak);
    assert!(m_fn(15.0).is_err());
}

#[test]
fn constant_chase_needs_large_discriminants() {
    assert!(constant_chase(&AbsDisc::from_u64(1_600_000)).unwrap().holds());
    assert!(!constant_chase(&AbsDisc::from_u64(100_000)).unwrap().holds());
}

#[test]
fn theorem_domain() {
    assert!(theorem_upper(2, &AbsDisc::from_u64(13), 19.0).is_err());
    assert!(theorem_upper(2, &AbsDisc::from_u64(14), 19.0).is_ok());
    assert!(theorem_lower(1, &AbsDisc::from_u64(100), 19.0).is_err());
    assert!(x_of_disc(&AbsDisc::from_u64(15)).is_err());
    assert!(x_of_disc(&AbsDisc::from_u64(16)).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn psi_error_bound_decreases(a in E..1e12, b in E..1e12) {
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        prop_assume!(y > x * (1.0 + 1e-9));
        prop_assert!(psi_error_bound(x).unwrap().mid() > psi_error_bound(y).unwrap().mid());
    }

    #[test]
    fn theorem_bounds_monotone_in_constant(n in 2u32..9, ln_d in 2.8f64..200.0, c in 0.0f64..40.0, dc in 0.01f64..5.0) {
        // ln ln|Δ| > 1 here, so raising the constant loosens both bounds
        let d = AbsDisc::from_ln(ln_d);
        prop_assert!(theorem_upper(n, &d, c + dc).unwrap().mid() > theorem_upper(n, &d, c).unwrap().mid());
        prop_assert!(theorem_lower(n, &d, c + dc).unwrap().mid() < theorem_lower(n, &d, c).unwrap().mid());
        prop_assert!(theorem_lower(n, &d, c).unwrap().mid() < theorem_upper(n, &d, c).unwrap().mid());
    }

    #[test]
    fn min_constant_inverts_theorem(n in 2u32..9, ln_d in 2.65f64..700.0, c in -5.0f64..60.0) {
        let d = AbsDisc::from_ln(ln_d);
        prop_assume!(d.lnln().ln().mid().abs() > 1e-3);
        let up = min_constant_upper(theorem_upper(n, &d, c).unwrap(), n, &d).unwrap().mid();
        let lo = min_constant_lower(theorem_lower(n, &d, c).unwrap(), n, &d).unwrap().mid();
        prop_assert!((up - c).abs() < 1e-8, "{} vs {}", up, c);
        prop_assert!((lo - c).abs() < 1e-8, "{} vs {}", lo, c);
    }

    #[test]
    fn short_sum_forms_nest(x in 5e5f64..1e12, n in 2u32..9, ln_d in 1.1f64..300.0) {
        let l = Interval::point(ln_d);
        let composite = BoundParams::standard(x, n, AbsDisc::from_ln(ln_d)).unwrap().composite_bound().unwrap().mid();
        let f_form = short_sum_f_form(x, n, l).unwrap().mid();
        let step_v = short_sum_step_v(x, n, l).unwrap().mid();
        let stated = short_sum_bound(x, n, l).unwrap().mid();
        let tol = 1e-12 * stated;
        prop_assert!(composite <= f_form + tol, "{} > {}", composite, f_form);
        prop_assert!(f_form <= step_v + tol, "{} > {}", f_form, step_v);
        prop_assert!(step_v <= stated + tol, "{} > {}", step_v, stated);
    }

    #[test]
    fn unconditional_range_is_ordered(n in 2u32..9, extra in 0.0f64..500.0) {
        // stays above the Minkowski lower bound for |Δ| in degree n
        let ln_d = 1.1 + 1.5 * (n - 2) as f64 + extra;
        let (lo, hi) = uncond_bounds(n, &AbsDisc::from_ln(ln_d)).unwrap();
        prop_assert!(lo.hi() < hi.lo());
    }
}
