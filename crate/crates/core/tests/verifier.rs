use std::f64::consts::E;

use residue_core::bounds::{min_constant_upper, theorem_lower, theorem_upper, AbsDisc};
use residue_core::bundled::bundled_fields;
use residue_core::field::residue;
use residue_core::numeric::PrecisionPolicy;
use residue_core::primes::PrimeTable;
use residue_core::quadratic::{label, quadratic_field, quadratic_fields};
use residue_core::report::write_reports;
use residue_core::field::DataFormat;
use residue_core::verify::{
    geometric_grid, run_corpus, short_sum_check, verify_field, verify_mertens_lemma, verify_psi_theorem,
    verify_short_sum, verify_zeta_product_lemma, CorpusSummary,
};
use residue_core::Interval;

#[test]
fn psi_theorem_both_sides_of_a_jump() {
    let t = PrimeTable::sieve(10_000).unwrap();
    let q = 1024.0f64;
    let grid = [q.next_down(), q, q.next_up()];
    let r = verify_psi_theorem(&t, &grid, &PrecisionPolicy::interval()).unwrap();
    assert!(r.passed() && r.rigorous);
    assert!(verify_psi_theorem(&t, &[2.0], &PrecisionPolicy::default()).is_err());
    assert!(verify_psi_theorem(&t, &[E, 20_000.0], &PrecisionPolicy::default()).is_err());
}

#[test]
fn lemma_sweeps_to_a_million() {
    let t = PrimeTable::sieve(1_000_000).unwrap();
    let p = PrecisionPolicy::interval();
    let psi = verify_psi_theorem(&t, &geometric_grid(E, 1e6, 10_000), &p).unwrap();
    assert!(psi.passed() && psi.min_margin > 0.0, "{psi:?}");
    let m = verify_mertens_lemma(&t, &geometric_grid(23.8, 1e6, 1000), &p).unwrap();
    assert!(m.passed() && m.min_ratio.unwrap() > 1.0);
    let z = verify_zeta_product_lemma(&t, &[59.0], &[2], &p).unwrap();
    assert!(z[0].passed() && z[0].checks >= 1);
    assert!(verify_zeta_product_lemma(&t, &[58.0], &[2], &p).is_err());
    assert!(verify_mertens_lemma(&t, &[20.0], &p).is_err());
}

#[test]
fn sweeps_are_reproducible() {
    let t = PrimeTable::sieve(200_000).unwrap();
    let grid = geometric_grid(59.0, 2e5, 500);
    for p in [PrecisionPolicy::fast(), PrecisionPolicy::extended(), PrecisionPolicy::interval()] {
        let a = verify_zeta_product_lemma(&t, &grid, &[2, 5], &p).unwrap();
        let b = verify_zeta_product_lemma(&t, &grid, &[2, 5], &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].min_margin.to_bits(), b[0].min_margin.to_bits());
    }
}

#[test]
fn field_examples() {
    let p = PrecisionPolicy::default();
    let o = verify_field(&quadratic_field(-163).record, &p);
    assert_eq!((o.report.pass_upper, o.report.pass_lower), (Some(true), Some(true)));
    assert!(o.is_const0_exception());
    assert!(o.report.c_min_lower.unwrap() > 0.0);

    let o = verify_field(&quadratic_field(5).record, &p);
    assert_eq!((o.report.pass_upper, o.report.pass_lower), (None, None));
    assert!(o.report.notes.contains("domain"));
    assert!(o.report.c_min_upper.is_some() && o.report.c_min_lower.is_some());
    assert!(o.is_const0_exception());

    let o = verify_field(&quadratic_field(17).record, &p);
    assert_eq!((o.report.pass_upper, o.report.pass_lower), (Some(true), Some(true)));
    assert!(!o.is_const0_exception());
    assert!(o.report.x_used.unwrap() > 0.0);
}

#[test]
fn verdicts_are_monotone_around_c_min() {
    // with ln ln|Δ| > 1, the upper bound passes exactly for c >= c_min
    for d in [-99_991i64, 40, -84, 1_001] {
        let rec = quadratic_field(d).record;
        let ad = rec.abs_disc();
        let kappa = residue(&rec);
        let c = min_constant_upper(kappa, 2, &ad).unwrap().mid();
        for delta in [1e-6, 1e-3, 1.0] {
            assert!(theorem_upper(2, &ad, c + delta).unwrap().lo() > kappa.hi(), "{d}");
            assert!(theorem_upper(2, &ad, c - delta).unwrap().hi() < kappa.lo(), "{d}");
        }
        let o = verify_field(&rec, &PrecisionPolicy::default());
        let cl = o.report.c_min_lower.unwrap();
        assert!(theorem_lower(2, &ad, cl + 1e-6).unwrap().hi() < kappa.lo());
        assert!(theorem_lower(2, &ad, cl - 1e-6).unwrap().lo() > kappa.hi());
    }
}

#[test]
fn short_sum_examples() {
    let t = PrimeTable::sieve(500_000).unwrap();
    let p = PrecisionPolicy::interval();
    for d in [5i64, -163] {
        let rec = quadratic_field(d).record;
        let r = verify_short_sum(&rec, &t, 5e5, &p).unwrap();
        assert!(r.passed && r.margin > 0.5 * r.bound, "{r:?}");
        let b = Interval::point(2.0 * r.bound);
        let forced = short_sum_check(&rec, residue(&rec) * b.exp(), &t, 5e5, &p).unwrap();
        assert!(!forced.passed);
    }
    let mut no_poly = bundled_fields()[0].clone();
    no_poly.poly = None;
    assert!(verify_short_sum(&no_poly, &t, 5e5, &p).is_err());
    let mut no_bad = bundled_fields()[3].clone();
    no_bad.bad_primes.clear();
    assert!(matches!(
        verify_short_sum(&no_bad, &t, 5e5, &p),
        Err(residue_core::Error::BadPrime(v)) if v == vec![23]
    ));
    assert!(verify_short_sum(&bundled_fields()[0], &t, 4e5, &p).is_err());
}

#[test]
fn quadratic_corpus_to_ten_thousand() {
    let records: Vec<_> = quadratic_fields(10_000).into_iter().map(|q| q.record).collect();
    let s = run_corpus(&records, &PrecisionPolicy::default());
    assert!(s.all_pass());
    let allowed: Vec<String> = [-163i64, -4, -3, 5, 8].iter().map(|&d| label(d)).collect();
    assert!(s.exceptions_0.iter().all(|l| allowed.contains(l)), "{:?}", s.exceptions_0);
    assert_eq!(s.exceptions_0.len(), 5);
}

#[test]
fn corpus_is_independent_of_threads() {
    let mut records: Vec<_> = quadratic_fields(3000).into_iter().map(|q| q.record).collect();
    records.reverse();
    let policy = PrecisionPolicy::default();
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run_corpus(&records, &policy));
    let parallel = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run_corpus(&records, &policy));
    assert_eq!(serial, parallel);
    let bytes = |s: &CorpusSummary| {
        let mut v = Vec::new();
        write_reports(&s.reports(), &mut v, DataFormat::Csv).unwrap();
        v
    };
    assert_eq!(bytes(&serial), bytes(&parallel));
    assert_eq!(run_corpus(&[], &policy), CorpusSummary::default());
}

#[test]
fn reversed_monotonicity_below_e_to_the_e() {
    // |Δ| = 15: ln ln 15 < 1, so raising the constant tightens the upper bound
    let d = AbsDisc::from_u64(15);
    assert!(theorem_upper(2, &d, 20.0).unwrap().mid() < theorem_upper(2, &d, 19.0).unwrap().mid());
    let o = verify_field(&quadratic_field(-15).record, &PrecisionPolicy::default());
    assert!(o.report.notes.contains("ln ln|disc| < 1"));
    assert!(o.report.x_used.is_none());
}
