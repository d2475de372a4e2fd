//! `residue`: command-line front end for residue-core.
//!
//! Exit status: 0 when every checked inequality holds, 1 when any is
//! violated, 2 on usage or I/O errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use residue_core::bounds::{
    comparison_bounds, min_constant_lower, min_constant_upper, psi_error_bound, short_sum_bound, theorem_lower,
    theorem_upper, x_of_disc, zeta_value, AbsDisc,
};
use residue_core::bundled::bundled_fields;
use residue_core::constants::gamma_iv;
use residue_core::field::{parse_records, residue, DataFormat, FieldRecord};
use residue_core::prime_sums::{big_psi, mertens_product, psi, zeta_truncated_product};
use residue_core::primes::cutoff;
use residue_core::quadratic::quadratic_fields;
use residue_core::report::{fmt_real, read_reports, write_reports};
use residue_core::verify::{
    digest, geometric_grid, mertens_lower_bound, run_corpus, verify_mertens_lemma, verify_psi_theorem,
    verify_short_sum, verify_zeta_product_lemma, write_sweeps, zeta_product_lower_bound,
};
use residue_core::{Interval, Precision, PrecisionPolicy, PrimeTable};

#[derive(Parser)]
#[command(name = "residue", version, about = "Explicit bounds for residues of Dedekind zeta functions")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Options shared by all subcommands. Each can also be set through the
/// environment; a flag on the command line wins.
#[derive(Args)]
struct Opts {
    /// Sieve bound (defaults to what the subcommand needs).
    #[arg(long, global = true, env = "RESIDUE_LIMIT")]
    limit: Option<u64>,
    #[arg(long, global = true, env = "RESIDUE_PRECISION", default_value = "extended")]
    precision: Precision,
    /// Relative slack for non-interval verdicts.
    #[arg(long, global = true, env = "RESIDUE_SLACK", default_value_t = 1e-12)]
    slack: f64,
    /// Geometric grid size for sweeps.
    #[arg(long, global = true, env = "RESIDUE_GRID_POINTS", default_value_t = 10_000)]
    grid_points: usize,
    /// Output encoding; input files ending in .jsonl are read as JSON lines
    /// regardless.
    #[arg(long, global = true, env = "RESIDUE_FORMAT", default_value = "csv")]
    format: DataFormat,
    /// Write data here instead of standard output.
    #[arg(long, global = true, env = "RESIDUE_OUTPUT")]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "RESIDUE_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ψ(x) against ln ln x + γ and the conditional error bound.
    Psi {
        #[arg(long)]
        x: f64,
    },
    /// Π_{p≤x}(1 − 1/p) against its conditional lower bound.
    Mertens {
        #[arg(long)]
        x: f64,
    },
    /// Π_{p≤x}(1 − p^{−n})^{−1} against its lower bound.
    ZetaProduct {
        #[arg(long)]
        x: f64,
        /// Exponents (repeatable); defaults to 2..=8.
        #[arg(long = "n")]
        n: Vec<u32>,
    },
    /// Short-sum check |ln κ − Σ(x)| ≤ bound for fields with polynomials.
    Sigma {
        #[arg(long, default_value_t = 5e5)]
        x: f64,
        #[command(flatten)]
        source: Source,
    },
    /// Theorem and comparison bounds for a degree and discriminant.
    Bounds {
        #[arg(long)]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        disc: BigInt,
        #[arg(long, default_value_t = 19.0)]
        c: f64,
        /// Also evaluate the short-sum bound at this x.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Smallest constants making the theorem hold with equality.
    MinConst {
        #[arg(long, requires_all = ["disc", "kappa"], conflicts_with = "input")]
        degree: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<BigInt>,
        #[arg(long)]
        kappa: Option<f64>,
        /// Field records to process instead of a single triple.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Sweeps of the psi theorem and both product lemmas.
    VerifyLemmas {
        /// Exponents for the zeta-product lemma (repeatable); defaults to 2..=8.
        #[arg(long = "n")]
        n: Vec<u32>,
    },
    /// Checks the main theorem on a corpus of fields.
    VerifyFields {
        #[command(flatten)]
        source: Source,
        /// Also write the text digest here (it always goes to standard error).
        #[arg(long)]
        digest: Option<PathBuf>,
    },
    /// Summarises (and optionally converts) an existing report file.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Where field records come from; with no option the bundled sample is used.
#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with_all = ["quadratic_up_to", "bundled"])]
    input: Option<PathBuf>,
    /// Generate every quadratic field with |disc| up to this bound.
    #[arg(long, conflicts_with = "bundled")]
    quadratic_up_to: Option<u64>,
    /// Use the bundled sample fields.
    #[arg(long)]
    bundled: bool,
}

impl Source {
    fn records(&self, opts: &Opts) -> anyhow::Result<Vec<FieldRecord>> {
        if let Some(path) = &self.input {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            Ok(parse_records(BufReader::new(file), input_format(path, opts.format))
                .with_context(|| format!("reading {}", path.display()))?)
        } else if let Some(max) = self.quadratic_up_to {
            Ok(quadratic_fields(max).into_iter().map(|q| q.record).collect())
        } else {
            Ok(bundled_fields())
        }
    }
}

fn input_format(path: &Path, fallback: DataFormat) -> DataFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("jsonl") | Some("json") => DataFormat::Jsonl,
        Some("csv") => DataFormat::Csv,
        _ => fallback,
    }
}

/// One output cell.
enum Cell {
    Real(f64),
    Int(i128),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<Option<bool>> for Cell {
    fn from(v: Option<bool>) -> Self {
        v.map_or(Cell::Empty, Cell::Bool)
    }
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write(&self, sink: impl Write, format: DataFormat) -> anyhow::Result<()> {
        match format {
            DataFormat::Csv => {
                let mut w = csv::Writer::from_writer(sink);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|c| match c {
                        Cell::Real(v) => fmt_real(*v),
                        Cell::Int(v) => v.to_string(),
                        Cell::Bool(v) => v.to_string(),
                        Cell::Text(s) => s.clone(),
                        Cell::Empty => String::new(),
                    }))?;
                }
                w.flush()?;
            }
            DataFormat::Jsonl => {
                let mut sink = sink;
                for row in &self.rows {
                    let mut obj = serde_json::Map::new();
                    for (name, c) in self.columns.iter().zip(row) {
                        let v = match c {
                            Cell::Real(v) => serde_json::json!(v),
                            Cell::Int(v) => serde_json::json!(v),
                            Cell::Bool(v) => serde_json::json!(v),
                            Cell::Text(s) => serde_json::json!(s),
                            Cell::Empty => serde_json::Value::Null,
                        };
                        obj.insert(name.to_string(), v);
                    }
                    serde_json::to_writer(&mut sink, &obj)?;
                    sink.write_all(b"\n")?;
                }
                sink.flush()?;
            }
        }
        Ok(())
    }
}

fn sink(opts: &Opts) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &opts.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn table_for(opts: &Opts, needed: f64) -> anyhow::Result<PrimeTable> {
    let limit = opts.limit.unwrap_or_else(|| cutoff(needed).max(2));
    Ok(PrimeTable::sieve(limit)?)
}

fn exponents(n: &[u32]) -> Vec<u32> {
    if n.is_empty() {
        (2..=8).collect()
    } else {
        n.to_vec()
    }
}

/// Verdict for a margin whose scale is the bound itself.
fn judge(policy: &PrecisionPolicy, margin: Interval, bound: Interval) -> (f64, bool) {
    (policy.margin_value(margin), policy.accepts(margin, bound.mid()))
}

/// Runs one subcommand; `Ok(false)` means some inequality failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let opts = &cli.opts;
    if !(opts.slack.is_finite() && opts.slack > 0.0) {
        bail!("--slack must be a positive number");
    }
    let policy = PrecisionPolicy::new(opts.precision, opts.slack);
    if let Some(n) = opts.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let mut all_pass = true;
    match &cli.cmd {
        Cmd::Psi { x } => {
            let table = table_for(opts, *x)?;
            let v = big_psi(&table, *x, &policy)?;
            let cheb = psi(&table, *x, &policy)?;
            let main = Interval::point(*x).ln().ln() + gamma_iv();
            let bound = psi_error_bound(*x)?;
            let (margin, pass) = judge(&policy, bound - (v - main).abs(), bound);
            all_pass = pass;
            let mut t = Table::new(&["x", "big_psi", "lnlnx_plus_gamma", "bound", "margin", "pass", "chebyshev_psi"]);
            t.push(vec![
                (*x).into(),
                v.mid().into(),
                main.mid().into(),
                bound.mid().into(),
                margin.into(),
                Cell::Bool(pass),
                cheb.mid().into(),
            ]);
            t.write(sink(opts)?, opts.format)?;
        }
        Cmd::Mertens { x } => {
            let table = table_for(opts, *x)?;
            let v = mertens_product(&table, *x, &policy)?;
            let asym = (-gamma_iv()).exp() / Interval::point(*x).ln();
            let mut t = Table::new(&["x", "product", "asymptotic", "lower_bound", "margin", "pass"]);
            let (b, m, p) = if *x >= 23.8 {
                let b = mertens_lower_bound(*x);
                let (m, p) = judge(&policy, v - b, b);
                all_pass = p;
                (Some(b.mid()), Some(m), Some(p))
            } else {
                (None, None, None)
            };
            t.push(vec![(*x).into(), v.mid().into(), asym.mid().into(), b.into(), m.into(), p.into()]);
            t.write(sink(opts)?, opts.format)?;
        }
        Cmd::ZetaProduct { x, n } => {
            let table = table_for(opts, *x)?;
            let mut t = Table::new(&["x", "n", "product", "zeta", "lower_bound", "margin", "pass"]);
            for s in exponents(n) {
                let v = zeta_truncated_product(&table, *x, s, &policy)?;
                let z = zeta_value(s)?;
                let (b, m, p) = if *x >= 59.0 {
                    let b = zeta_product_lower_bound(*x, s)?;
                    let (m, p) = judge(&policy, v - b, b);
                    all_pass &= p;
                    (Some(b.mid()), Some(m), Some(p))
                } else {
                    (None, None, None)
                };
                t.push(vec![
                    (*x).into(),
                    Cell::Int(s.into()),
                    v.mid().into(),
                    z.mid().into(),
                    b.into(),
                    m.into(),
                    p.into(),
                ]);
            }
            t.write(sink(opts)?, opts.format)?;
        }
        Cmd::Sigma { x, source } => {
            let records = source.records(opts)?;
            let table = table_for(opts, *x)?;
            let mut t = Table::new(&["label", "x", "ln_kappa", "sigma", "deviation", "bound", "margin", "passed"]);
            for rec in &records {
                if rec.poly.is_none() {
                    eprintln!("skipping {}: no defining polynomial", rec.label);
                    continue;
                }
                let r = verify_short_sum(rec, &table, *x, &policy).with_context(|| rec.label.clone())?;
                all_pass &= r.passed;
                t.push(vec![
                    Cell::Text(r.label),
                    r.x.into(),
                    r.ln_kappa.into(),
                    r.sigma.into(),
                    r.deviation.into(),
                    r.bound.into(),
                    r.margin.into(),
                    Cell::Bool(r.passed),
                ]);
            }
            t.write(sink(opts)?, opts.format)?;
        }
        Cmd::Bounds { degree, disc, c, x } => {
            let d = AbsDisc::from_bigint(disc)?;
            let cmp = comparison_bounds(*degree, &d)?;
            let x_used = x_of_disc(&d).ok().map(|v| v.mid());
            let mut cols = vec![
                "degree",
                "disc",
                "c",
                "ln_abs_disc",
                "upper",
                "lower",
                "x_used",
                "cho_kim_upper",
                "cho_kim_lower",
                "pal_simonic_upper",
                "uncond_lower",
                "uncond_upper",
            ];
            let mut row = vec![
                Cell::Int((*degree).into()),
                Cell::Text(disc.to_string()),
                (*c).into(),
                d.ln().mid().into(),
                theorem_upper(*degree, &d, *c)?.mid().into(),
                theorem_lower(*degree, &d, *c)?.mid().into(),
                x_used.into(),
                cmp.cho_kim_upper.into(),
                cmp.cho_kim_lower.into(),
                cmp.pal_simonic_upper.into(),
                cmp.uncond_lower.into(),
                cmp.uncond_upper.into(),
            ];
            if let Some(x) = x {
                cols.extend(["x", "short_sum_bound"]);
                row.extend([(*x).into(), short_sum_bound(*x, *degree, d.ln())?.mid().into()]);
            }
            let mut t = Table::new(&cols);
            t.push(row);
            t.write(sink(opts)?, opts.format)?;
        }
        Cmd::MinConst { degree, disc, kappa, input } => {
            let mut t = Table::new(&["label", "degree", "kappa", "c_min_upper", "c_min_lower"]);
            let mut push = |label: String, n: u32, k: Interval, d: &AbsDisc| -> anyhow::Result<()> {
                t.push(vec![
                    Cell::Text(label),
                    Cell::Int(n.into()),
                    k.mid().into(),
                    min_constant_upper(k, n, d)?.mid().into(),
                    min_constant_lower(k, n, d)?.mid().into(),
                ]);
                Ok(())
            };
            if let Some(path) = input {
                let src = Source {
                    input: Some(path.clone()),
                    quadratic_up_to: None,
                    bundled: false,
                };
                for rec in src.records(opts)? {
                    push(rec.label.clone(), rec.degree, residue(&rec), &rec.abs_disc())
                        .with_context(|| rec.label.clone())?;
                }
            } else {
                let (Some(n), Some(disc), Some(k)) = (degree, disc, kappa) else {
                    bail!("min-const needs --degree, --disc and --kappa, or --input");
                };
                if k.is_nan() || *k <= 0.0 {
                    bail!("--kappa must be positive");
                }
                push(String::new(), *n, Interval::point(*k), &AbsDisc::from_bigint(disc)?)?;
            }
            t.write(sink(opts)?, opts.format)?;
        }
        Cmd::VerifyLemmas { n } => {
            let limit = opts.limit.unwrap_or(10_000_000);
            let table = PrimeTable::sieve(limit)?;
            let hi = limit as f64;
            let mut reports = vec![
                verify_psi_theorem(&table, &geometric_grid(std::f64::consts::E, hi, opts.grid_points), &policy)?,
                verify_mertens_lemma(&table, &geometric_grid(23.8, hi, opts.grid_points), &policy)?,
            ];
            reports.extend(verify_zeta_product_lemma(
                &table,
                &geometric_grid(59.0, hi, opts.grid_points),
                &exponents(n),
                &policy,
            )?);
            all_pass = reports.iter().all(|r| r.passed());
            write_sweeps(&reports, sink(opts)?, opts.format)?;
        }
        Cmd::VerifyFields { source, digest: digest_path } => {
            let records = source.records(opts)?;
            let summary = run_corpus(&records, &policy);
            all_pass = summary.all_pass();
            write_reports(&summary.reports(), sink(opts)?, opts.format)?;
            let text = digest(&summary, &policy);
            eprint!("{text}");
            if let Some(p) = digest_path {
                std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Cmd::Report { input } => {
            let file = File::open(input).with_context(|| format!("opening {}", input.display()))?;
            let reports = read_reports(BufReader::new(file), input_format(input, opts.format))
                .with_context(|| format!("reading {}", input.display()))?;
            let in_domain = reports.iter().filter(|r| r.pass_upper.is_some()).count();
            let failing: Vec<&str> = reports
                .iter()
                .filter(|r| r.pass_upper == Some(false) || r.pass_lower == Some(false))
                .map(|r| r.label.as_str())
                .collect();
            all_pass = failing.is_empty();
            eprintln!("reports: {}", reports.len());
            eprintln!("with |disc| >= 14: {in_domain}");
            eprintln!("failing at constant 19: {}", failing.len());
            for l in &failing {
                eprintln!("  {l}");
            }
            if opts.output.is_some() {
                write_reports(&reports, sink(opts)?, opts.format)?;
            }
        }
    }
    Ok(all_pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
