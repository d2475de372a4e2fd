use proptest::prelude::*;
use residue_core::numeric::PrecisionPolicy;
use residue_core::bounds::zeta_value;
use residue_core::prime_sums::{
    big_psi, mertens_product, pi_count, pi_envelope, prime_log_sums, psi, zeta_truncated_product,
};
use residue_core::primes::{is_prime_u64, PrimeTable};
use residue_core::Error;
use std::sync::OnceLock;

fn table() -> &'static PrimeTable {
    static T: OnceLock<PrimeTable> = OnceLock::new();
    T.get_or_init(|| PrimeTable::sieve(1_000_000).unwrap())
}

fn trial_division(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn small_values_by_hand() {
    let t = table();
    let p = PrecisionPolicy::interval();
    // ψ(10) = ln lcm(1..10) = ln 2520
    assert!(psi(t, 10.0, &p).unwrap().contains(2520f64.ln()) || (psi(t, 10.0, &p).unwrap().mid() - 2520f64.ln()).abs() < 1e-15);
    let m = mertens_product(t, 10.0, &p).unwrap();
    assert!(m.lo() <= 8.0 / 35.0 && 8.0 / 35.0 <= m.hi());
    // 1/2 + 1/3 + 1/5 + 1/7 + 1/8 + 1/24 + 1/18 = 1.39920634920634...
    let want = 0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0 + 1.0 / 8.0 + 1.0 / 24.0 + 1.0 / 18.0;
    assert!((big_psi(t, 10.0, &p).unwrap().mid() - want).abs() < 1e-15);
    assert_eq!(pi_count(t, 1e6).unwrap(), 78_498);
    assert_eq!(pi_count(t, 1.0).unwrap(), 0);
    assert_eq!(pi_count(t, 100.0).unwrap(), 25);
    // Σ_{p<=10} ln p = ln 210
    assert!((prime_log_sums(t, 10.0, &p).unwrap().s1.mid() - 210f64.ln()).abs() < 1e-14);
}

#[test]
fn beyond_limit_is_an_error() {
    let t = PrimeTable::sieve(1000).unwrap();
    let err = big_psi(&t, 1000.5, &PrecisionPolicy::default()).unwrap();
    assert!(err.mid() > 0.0);
    assert!(matches!(big_psi(&t, 1001.0, &PrecisionPolicy::default()), Err(Error::BeyondLimit { .. })));
}

#[test]
fn modes_agree_and_interval_encloses() {
    let t = table();
    for x in [100.0, 12_345.0, 1e6] {
        let iv = big_psi(t, x, &PrecisionPolicy::interval()).unwrap();
        let ext = big_psi(t, x, &PrecisionPolicy::extended()).unwrap().mid();
        let fast = big_psi(t, x, &PrecisionPolicy::fast()).unwrap().mid();
        assert!(iv.lo() <= ext && ext <= iv.hi(), "{x}: {ext} outside {iv}");
        assert!(iv.width() < 1e-13);
        assert!((fast - ext).abs() < 1e-12);
        let iz = zeta_truncated_product(t, x, 2, &PrecisionPolicy::interval()).unwrap();
        let ez = zeta_truncated_product(t, x, 2, &PrecisionPolicy::extended()).unwrap().mid();
        assert!(iz.lo() <= ez && ez <= iz.hi());
    }
}

#[test]
fn zeta_product_approaches_zeta_from_below() {
    let t = table();
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    let v = zeta_truncated_product(t, 1e6, 2, &PrecisionPolicy::default()).unwrap().mid();
    assert!(v < z2 && z2 - v < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sieve_matches_trial_division(n in 0u64..1_000_000) {
        prop_assert_eq!(table().is_prime(n), trial_division(n));
        prop_assert_eq!(is_prime_u64(n), trial_division(n));
    }

    #[test]
    fn sums_are_monotone(a in 2.0f64..1e5, b in 2.0f64..1e5) {
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let p = PrecisionPolicy::default();
        let t = table();
        prop_assert!(big_psi(t, x, &p).unwrap().mid() <= big_psi(t, y, &p).unwrap().mid());
        prop_assert!(psi(t, x, &p).unwrap().mid() <= psi(t, y, &p).unwrap().mid());
        prop_assert!(mertens_product(t, x, &p).unwrap().mid() >= mertens_product(t, y, &p).unwrap().mid());
        prop_assert!(zeta_truncated_product(t, x, 3, &p).unwrap().mid() <= zeta_truncated_product(t, y, 3, &p).unwrap().mid());
        prop_assert!(pi_count(t, x).unwrap() <= pi_count(t, y).unwrap());
    }

    #[test]
    fn zeta_product_decreases_in_exponent(x in 2.0f64..1e5, s in 2u32..12) {
        let p = PrecisionPolicy::default();
        let t = table();
        let a = zeta_truncated_product(t, x, s, &p).unwrap().mid();
        let b = zeta_truncated_product(t, x, s + 1, &p).unwrap().mid();
        prop_assert!(a > b && b > 1.0);
    }

    #[test]
    fn chebyshev_bounds(x in 100.0f64..1e6) {
        // Rosser–Schoenfeld: 0.84x < ψ(x) < 1.04x for x >= 100
        let v = psi(table(), x, &PrecisionPolicy::default()).unwrap().mid();
        prop_assert!(0.84 * x < v && v < 1.04 * x);
    }

    #[test]
    fn pi_inside_chebyshev_envelope(x in 59.0f64..1e6) {
        let (lo, hi) = pi_envelope(x).unwrap();
        let n = pi_count(table(), x).unwrap() as f64;
        prop_assert!(lo.hi() <= n && n <= hi.lo(), "{} not in [{}, {}]", n, lo, hi);
    }

    #[test]
    fn coarse_envelopes(x in 2.0f64..1e6, s in 2u32..9) {
        let p = PrecisionPolicy::default();
        let t = table();
        prop_assert!(big_psi(t, x, &p).unwrap().mid() <= psi(t, x, &p).unwrap().mid() / 2f64.ln());
        prop_assert!(zeta_truncated_product(t, x, s, &p).unwrap().mid() <= zeta_value(s).unwrap().hi());
    }
}
