//! Sweeps of the prime-sum lemmas and per-field checks of the main theorem.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    comparison_bounds, min_constant_lower, min_constant_upper, psi_error_bound, short_sum_bound,
    theorem_lower, theorem_lower_unchecked, theorem_upper, theorem_upper_unchecked, x_of_disc, zeta_value,
};
use crate::constants::{gamma_iv, stated as k, pi_iv};
use crate::error::{Error, Result};
use crate::field::{into_io, residue, FieldRecord};
use crate::numeric::{Interval, PrecisionPolicy, Real};
use crate::prime_sums::euler_factor;
use crate::primes::PrimeTable;
use crate::report::{fmt_real, BoundReport};
use crate::splitting::{local_degrees, sigma_with};
use crate::with_backend;

/// `points` values spaced geometrically from `lo` to `hi`, both included.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo, "grid needs 0 < lo <= hi");
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let r = (hi / lo).ln();
            let mut g: Vec<f64> = (0..points)
                .map(|i| lo * (r * i as f64 / (points - 1) as f64).exp())
                .collect();
            g[0] = lo;
            g[points - 1] = hi;
            g
        }
    }
}

/// Summary of one inequality swept over a range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    /// Number of inequality evaluations (steps plus grid points).
    pub checks: usize,
    pub violations: usize,
    /// Smallest bound-minus-value margin seen, and where.
    pub min_margin: f64,
    pub argmin: f64,
    /// Smallest value/bound ratio for lower-bound lemmas.
    pub min_ratio: Option<f64>,
    /// True when the verdicts are interval proofs.
    pub rigorous: bool,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

struct Tracker<'a> {
    policy: &'a PrecisionPolicy,
    checks: usize,
    violations: usize,
    min_margin: f64,
    argmin: f64,
    min_ratio: Option<f64>,
}

impl<'a> Tracker<'a> {
    fn new(policy: &'a PrecisionPolicy) -> Self {
        Tracker {
            policy,
            checks: 0,
            violations: 0,
            min_margin: f64::INFINITY,
            argmin: f64::NAN,
            min_ratio: None,
        }
    }

    fn record(&mut self, x: f64, margin: Interval, scale: f64) {
        self.checks += 1;
        if !self.policy.accepts(margin, scale) {
            self.violations += 1;
        }
        let m = self.policy.margin_value(margin);
        if m < self.min_margin {
            self.min_margin = m;
            self.argmin = x;
        }
    }

    fn ratio(&mut self, r: f64) {
        self.min_ratio = Some(self.min_ratio.map_or(r, |m| m.min(r)));
    }

    /// Folds checks in their given order, so the report does not depend on
    /// how they were computed.
    fn absorb(&mut self, checks: Vec<Check>) {
        for c in checks {
            self.record(c.x, c.margin, c.scale);
            if let Some(r) = c.ratio {
                self.ratio(r);
            }
        }
    }

    fn finish(self, name: String, lo: f64, hi: f64) -> SweepReport {
        SweepReport {
            name,
            lo,
            hi,
            checks: self.checks,
            violations: self.violations,
            min_margin: self.min_margin,
            argmin: self.argmin,
            min_ratio: self.min_ratio,
            rigorous: self.policy.is_rigorous(),
        }
    }
}

/// One evaluated inequality: `margin` is bound side minus value side.
struct Check {
    x: f64,
    margin: Interval,
    scale: f64,
    ratio: Option<f64>,
}

/// A right-continuous step function given by its value at `lo` and the
/// value after each jump in `(lo, hi]`.
struct Steps {
    /// (jump location, value from there on); the first entry is at `lo`.
    points: Vec<(f64, Interval)>,
}

impl Steps {
    /// Builds the cumulative sum/product over `items`, given as (location,
    /// payload) in ascending location order; `update` folds one payload into
    /// the running value.
    fn build<R: Real, T, I, F, V>(lo: f64, hi: f64, items: I, init: R, mut update: F, view: V) -> Steps
    where
        I: Iterator<Item = (u64, T)>,
        F: FnMut(R, T) -> R,
        V: Fn(R) -> Interval,
    {
        let mut acc = init;
        let mut points = Vec::new();
        let mut started = false;
        for (n, payload) in items {
            let nf = n as f64;
            if nf > lo && !started {
                points.push((lo, view(acc)));
                started = true;
            }
            acc = update(acc, payload);
            if nf >= lo && nf <= hi {
                if nf == lo {
                    started = true;
                }
                points.push((nf, view(acc)));
            }
        }
        if !started {
            points.push((lo, view(acc)));
        }
        Steps { points }
    }

    /// Value at an arbitrary x in [lo, hi].
    fn at(&self, x: f64) -> Interval {
        let i = self.points.partition_point(|(t, _)| *t <= x);
        self.points[i.max(1) - 1].1
    }

    /// Each step as (start, end, value), the last one closed at `hi`.
    fn intervals(&self, hi: f64) -> Vec<(f64, f64, Interval)> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, &(a, v))| {
                let b = self.points.get(i + 1).map_or(hi, |p| p.0);
                (a, b, v)
            })
            .collect()
    }
}

fn sweep_range(table: &PrimeTable, grid: &[f64], min: f64, what: &'static str) -> Result<(f64, f64)> {
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if grid.is_empty() || lo.is_nan() || lo < min {
        return Err(Error::domain(what, lo, "grid must be non-empty and inside the lemma's range"));
    }
    table.check(hi)?;
    Ok((lo, hi))
}

fn lnln(x: f64) -> Interval {
    Interval::point(x).ln().ln()
}

/// |Ψ(x) − ln ln x − γ| ≤ 3(ln x + 2)/(8π√x) over [min grid, max grid].
///
/// Between consecutive prime powers Ψ is constant, ln ln x increases and the
/// bound decreases, so for a step [a, b) it suffices that
/// max(D(a), −D(b⁻)) ≤ E(b), with D = Ψ − ln ln − γ and E the bound. This is
/// checked for every step (which covers the value at each prime power and
/// the left limit at the next), and the grid is checked pointwise as well.
pub fn verify_psi_theorem(table: &PrimeTable, grid: &[f64], policy: &PrecisionPolicy) -> Result<SweepReport> {
    let (lo, hi) = sweep_range(table, grid, std::f64::consts::E, "verify_psi_theorem")?;
    let n = table.check(hi)?;
    let steps = with_backend!(policy, R => Steps::build::<R, _, _, _, _>(
        lo,
        hi,
        table.prime_powers_up_to(n).map(|q| (q.n, q.k as u64 * q.n)),
        R::zero(),
        |acc, kn| acc + R::ratio(1, kn),
        R::enclosure,
    ));
    let gamma = gamma_iv();
    let steps_checks = steps
        .intervals(hi)
        .par_iter()
        .map(|&(a, b, v)| {
            let e = psi_error_bound(b)?;
            let up = e - (v - lnln(a) - gamma);
            let down = e + (v - lnln(b) - gamma);
            let (x, margin) = if policy.margin_value(up) <= policy.margin_value(down) {
                (a, up)
            } else {
                (b, down)
            };
            Ok(Check { x, margin, scale: e.mid(), ratio: None })
        })
        .collect::<Result<Vec<_>>>()?;
    let grid_checks = grid
        .par_iter()
        .map(|&x| {
            let e = psi_error_bound(x)?;
            let d = steps.at(x) - lnln(x) - gamma;
            Ok(Check { x, margin: e - d.abs(), scale: e.mid(), ratio: None })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tracker::new(policy);
    t.absorb(steps_checks);
    t.absorb(grid_checks);
    Ok(t.finish("psi_theorem".into(), lo, hi))
}

/// e^{−γ}/ln x·(1 − 3 ln x/(8π√x)).
pub fn mertens_lower_bound(x: f64) -> Interval {
    let l = Interval::point(x).ln();
    let s = Interval::point(x).sqrt();
    (-gamma_iv()).exp() / l * (Interval::point(1.0) - Interval::point(3.0) * l / (Interval::point(8.0) * pi_iv() * s))
}

/// Π_{p≤x}(1 − 1/p) ≥ e^{−γ}/ln x·(1 − 3 ln x/(8π√x)) over the grid range.
///
/// The bound decreases on x ≥ 23.8 (its derivative has the sign of
/// 3L²/(16π√x) − 1 divided by xL², L = ln x, negative there), so on each step
/// the start is the binding point: checking at every prime and at `lo`
/// covers the continuum.
pub fn verify_mertens_lemma(table: &PrimeTable, grid: &[f64], policy: &PrecisionPolicy) -> Result<SweepReport> {
    let (lo, hi) = sweep_range(table, grid, k::MERTENS_MIN_X, "verify_mertens_lemma")?;
    let n = table.check(hi)?;
    let steps = with_backend!(policy, R => Steps::build::<R, _, _, _, _>(
        lo,
        hi,
        table.primes_up_to(n).map(|p| (p, p)),
        R::one(),
        |acc, p| acc * R::ratio(p - 1, p),
        R::enclosure,
    ));
    let check = |x: f64, v: Interval| {
        let b = mertens_lower_bound(x);
        Check { x, margin: v - b, scale: b.mid(), ratio: Some(v.mid() / b.mid()) }
    };
    let mut t = Tracker::new(policy);
    t.absorb(steps.points.par_iter().map(|&(a, v)| check(a, v)).collect());
    t.absorb(grid.par_iter().map(|&x| check(x, steps.at(x))).collect());
    Ok(t.finish("mertens_lemma".into(), lo, hi))
}

/// ζ(n)·exp(−(1/(x ln x))(1 + 1/(2 ln x))).
pub fn zeta_product_lower_bound(x: f64, n: u32) -> Result<Interval> {
    let l = Interval::point(x).ln();
    let w = (Interval::point(1.0) + Interval::point(0.5) / l) / (l * x);
    Ok(zeta_value(n)? * (-w).exp())
}

/// Π_{p≤x}(1 − p^{−n})^{−1} ≥ ζ(n)·exp(−(1/(x ln x))(1 + 1/(2 ln x))) for each
/// n in `ns`, one report per n.
///
/// The bound increases in x, so each step is checked at its right end (the
/// left limit at the next prime, or `hi`).
pub fn verify_zeta_product_lemma(
    table: &PrimeTable,
    grid: &[f64],
    ns: &[u32],
    policy: &PrecisionPolicy,
) -> Result<Vec<SweepReport>> {
    let (lo, hi) = sweep_range(table, grid, k::ZETA_PRODUCT_MIN_X, "verify_zeta_product_lemma")?;
    let n_max = table.check(hi)?;
    ns.iter()
        .map(|&s| {
            if !(2..=12).contains(&s) {
                return Err(Error::domain("verify_zeta_product_lemma", s as f64, "2 <= n <= 12"));
            }
            let steps = with_backend!(policy, R => Steps::build::<R, _, _, _, _>(
                lo,
                hi,
                table.primes_up_to(n_max).map(|p| (p, p)),
                R::one(),
                |acc, p| acc * euler_factor::<R>(p, s),
                |acc| (R::one() / acc).enclosure(),
            ));
            let check = |x: f64, v: Interval| -> Result<Check> {
                let b = zeta_product_lower_bound(x, s)?;
                Ok(Check { x, margin: v - b, scale: b.mid(), ratio: Some(v.mid() / b.mid()) })
            };
            let mut t = Tracker::new(policy);
            t.absorb(steps.intervals(hi).par_iter().map(|&(_, b, v)| check(b, v)).collect::<Result<_>>()?);
            t.absorb(grid.par_iter().map(|&x| check(x, steps.at(x))).collect::<Result<_>>()?);
            Ok(t.finish(format!("zeta_product_lemma_n{s}"), lo, hi))
        })
        .collect()
}

pub const SWEEP_COLUMNS: [&str; 9] = [
    "name",
    "lo",
    "hi",
    "checks",
    "violations",
    "min_margin",
    "argmin",
    "min_ratio",
    "rigorous",
];

pub fn write_sweeps<W: Write>(reports: &[SweepReport], sink: W, format: crate::field::DataFormat) -> Result<()> {
    use crate::field::DataFormat;
    match format {
        DataFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(SWEEP_COLUMNS).map_err(into_io)?;
            for r in reports {
                w.write_record([
                    r.name.clone(),
                    fmt_real(r.lo),
                    fmt_real(r.hi),
                    r.checks.to_string(),
                    r.violations.to_string(),
                    fmt_real(r.min_margin),
                    fmt_real(r.argmin),
                    r.min_ratio.map(fmt_real).unwrap_or_default(),
                    r.rigorous.to_string(),
                ])
                .map_err(into_io)?;
            }
            w.flush()?;
        }
        DataFormat::Jsonl => {
            let mut sink = sink;
            for r in reports {
                serde_json::to_writer(&mut sink, r).map_err(std::io::Error::from)?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
        }
    }
    Ok(())
}

/// A [`BoundReport`] together with the verdicts at constant 0, which decide
/// membership in the exception list.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldOutcome {
    pub report: BoundReport,
    pub pass_upper_0: Option<bool>,
    pub pass_lower_0: Option<bool>,
}

impl FieldOutcome {
    /// Fails the main theorem at constant 0 on either side.
    pub fn is_const0_exception(&self) -> bool {
        self.pass_upper_0 == Some(false) || self.pass_lower_0 == Some(false)
    }
}

/// Checks the main theorem for one field. Never fails on a validated record;
/// anything outside the theorem's domain is recorded in `notes`.
pub fn verify_field(rec: &FieldRecord, policy: &PrecisionPolicy) -> FieldOutcome {
    let kappa = residue(rec);
    let n = rec.degree;
    let ad = rec.abs_disc();
    let abs = rec.disc.abs();
    let in_domain = abs >= BigInt::from(14);
    let mut notes = Vec::new();

    if rec.kappa.is_some() {
        notes.push("kappa supplied by the record".to_string());
    } else if rec.r1 + rec.r2 > 1 {
        notes.push(format!(
            "regulator given to {} significant digits",
            rec.regulator.significant_digits()
        ));
    }

    let x_used = match x_of_disc(&ad) {
        Ok(x) => Some(x.mid()),
        Err(_) => {
            notes.push("x(disc) undefined for |disc| <= e^e".into());
            None
        }
    };

    let upper = |c: f64| {
        if in_domain {
            theorem_upper(n, &ad, c).expect("domain checked")
        } else {
            theorem_upper_unchecked(n, &ad, c)
        }
    };
    let lower = |c: f64| {
        if in_domain {
            theorem_lower(n, &ad, c).expect("domain checked")
        } else {
            theorem_lower_unchecked(n, &ad, c)
        }
    };
    let judge_upper = |b: Interval| policy.accepts(b - kappa, b.mid());
    let judge_lower = |b: Interval| policy.accepts(kappa - b, b.mid());

    let (u19, l19) = (upper(k::THEOREM_CONSTANT), lower(k::THEOREM_CONSTANT));
    let (u0, l0) = (upper(0.0), lower(0.0));
    let (pass_upper, pass_lower) = if in_domain {
        (Some(judge_upper(u19)), Some(judge_lower(l19)))
    } else {
        notes.push("below the theorem's domain |disc| >= 14; bounds reported for information".into());
        (None, None)
    };
    if ad.lnln().hi() < 1.0 {
        notes.push("ln ln|disc| < 1: the bounds weaken as the constant decreases".into());
    }

    let c_min = |r: Result<Interval>, side: &str, notes: &mut Vec<String>| match r {
        Ok(c) => Some(c.mid()),
        Err(e) => {
            notes.push(format!("c_min_{side} undefined: {e}"));
            None
        }
    };
    let c_min_upper = c_min(min_constant_upper(kappa, n, &ad), "upper", &mut notes);
    let c_min_lower = c_min(min_constant_lower(kappa, n, &ad), "lower", &mut notes);
    let comparators = comparison_bounds(n, &ad).ok();

    FieldOutcome {
        report: BoundReport {
            label: rec.label.clone(),
            kappa: kappa.mid(),
            x_used,
            upper_19: Some(u19.mid()),
            lower_19: Some(l19.mid()),
            pass_upper,
            pass_lower,
            c_min_upper,
            c_min_lower,
            comparators,
            notes: notes.join("; "),
        },
        pass_upper_0: Some(judge_upper(u0)),
        pass_lower_0: Some(judge_lower(l0)),
    }
}

/// Outcome of |ln κ − Σ(x)| ≤ short_sum_bound(x, n, ln|Δ|) for one field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortSumReport {
    pub label: String,
    pub x: f64,
    pub ln_kappa: f64,
    pub sigma: f64,
    /// |ln κ − Σ(x)|.
    pub deviation: f64,
    pub bound: f64,
    /// bound − deviation (guaranteed lower end in interval mode).
    pub margin: f64,
    pub passed: bool,
}

/// Checks the short-sum estimate with κ from the record.
pub fn verify_short_sum(
    rec: &FieldRecord,
    table: &PrimeTable,
    x: f64,
    policy: &PrecisionPolicy,
) -> Result<ShortSumReport> {
    short_sum_check(rec, residue(rec), table, x, policy)
}

/// Checks the short-sum estimate with a caller-supplied κ enclosure.
pub fn short_sum_check(
    rec: &FieldRecord,
    kappa: Interval,
    table: &PrimeTable,
    x: f64,
    policy: &PrecisionPolicy,
) -> Result<ShortSumReport> {
    let poly = rec
        .poly
        .as_ref()
        .ok_or_else(|| Error::Polynomial(format!("{} has no defining polynomial", rec.label)))?;
    let bound = short_sum_bound(x, rec.degree, rec.abs_disc().ln())?;
    let n = table.check(x)?;
    let locals = local_degrees(poly, &rec.bad_primes, table, n)?;
    let sigma = with_backend!(policy, R => sigma_with::<R>(table, &locals, n).enclosure());
    let ln_kappa = kappa.ln();
    let deviation = (ln_kappa - sigma).abs();
    let margin = bound - deviation;
    Ok(ShortSumReport {
        label: rec.label.clone(),
        x,
        ln_kappa: ln_kappa.mid(),
        sigma: sigma.mid(),
        deviation: deviation.mid(),
        bound: bound.mid(),
        margin: policy.margin_value(margin),
        passed: policy.accepts(margin, bound.mid()),
    })
}

/// Orders labels segment by segment, numerically where both segments are
/// integers.
pub fn label_order(a: &str, b: &str) -> Ordering {
    let mut xa = a.split('.');
    let mut xb = b.split('.');
    loop {
        match (xa.next(), xb.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(s), Some(t)) => {
                let o = match (s.parse::<u128>(), t.parse::<u128>()) {
                    (Ok(u), Ok(v)) => u.cmp(&v).then_with(|| s.cmp(t)),
                    _ => s.cmp(t),
                };
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

/// Per-field outcomes and aggregate counts for a corpus.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusSummary {
    /// Sorted by [`label_order`].
    pub outcomes: Vec<FieldOutcome>,
    pub total: usize,
    /// Fields with |Δ| ≥ 14.
    pub in_domain: usize,
    /// In-domain fields passing both bounds at constant 19.
    pub pass_19: usize,
    /// In-domain fields failing at constant 19.
    pub failures_19: Vec<String>,
    /// Fields passing both bounds at constant 0.
    pub pass_0: usize,
    /// Fields failing at constant 0.
    pub exceptions_0: Vec<String>,
}

impl CorpusSummary {
    pub fn reports(&self) -> Vec<BoundReport> {
        self.outcomes.iter().map(|o| o.report.clone()).collect()
    }

    /// True when every in-domain field passes at constant 19.
    pub fn all_pass(&self) -> bool {
        self.failures_19.is_empty()
    }
}

/// Verifies every record (in parallel) and aggregates the results.
pub fn run_corpus(records: &[FieldRecord], policy: &PrecisionPolicy) -> CorpusSummary {
    let mut outcomes: Vec<FieldOutcome> = records.par_iter().map(|r| verify_field(r, policy)).collect();
    outcomes.sort_by(|a, b| label_order(&a.report.label, &b.report.label));
    let mut s = CorpusSummary {
        total: outcomes.len(),
        ..Default::default()
    };
    for o in &outcomes {
        let r = &o.report;
        if let (Some(u), Some(l)) = (r.pass_upper, r.pass_lower) {
            s.in_domain += 1;
            if u && l {
                s.pass_19 += 1;
            } else {
                s.failures_19.push(r.label.clone());
            }
        }
        if o.is_const0_exception() {
            s.exceptions_0.push(r.label.clone());
        } else if o.pass_upper_0.is_some() {
            s.pass_0 += 1;
        }
    }
    s.outcomes = outcomes;
    s
}

/// Human-readable digest of a corpus run; identical input gives identical
/// text.
pub fn digest(summary: &CorpusSummary, policy: &PrecisionPolicy) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# corpus digest (precision {}, slack {:e})", policy.mode, policy.slack);
    let _ = writeln!(out, "fields: {}", summary.total);
    let _ = writeln!(out, "fields with |disc| >= 14: {}", summary.in_domain);
    let _ = writeln!(out, "pass at constant 19: {}", summary.pass_19);
    let _ = writeln!(out, "fail at constant 19: {}", summary.failures_19.len());
    for l in &summary.failures_19 {
        let _ = writeln!(out, "  {l}");
    }
    let _ = writeln!(out, "pass at constant 0: {}", summary.pass_0);
    let _ = writeln!(out, "exceptions at constant 0: {}", summary.exceptions_0.len());
    for l in &summary.exceptions_0 {
        let _ = writeln!(out, "  {l}");
    }
    let extreme = |f: fn(&BoundReport) -> Option<f64>| {
        summary
            .outcomes
            .iter()
            .filter_map(|o| f(&o.report).map(|v| (v, o.report.label.as_str())))
            .fold(None, |best: Option<(f64, &str)>, cur| match best {
                Some(b) if b.0 >= cur.0 => Some(b),
                _ => Some(cur),
            })
    };
    if let Some((v, l)) = extreme(|r| r.c_min_upper) {
        let _ = writeln!(out, "largest c_min_upper: {} ({l})", fmt_real(v));
    }
    if let Some((v, l)) = extreme(|r| r.c_min_lower) {
        let _ = writeln!(out, "largest c_min_lower: {} ({l})", fmt_real(v));
    }
    out
}
