//! Number-field records: parsing, validation and the residue κ from the
//! class number formula.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Read, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::bounds::AbsDisc;
use crate::constants::pi_iv;
use crate::error::{Error, Result};
use crate::numeric::Interval;
use crate::splitting::{format_bad_primes, parse_bad_primes, BadPrimeDecomposition, DefiningPolynomial};

/// On-disk encodings shared by field records and reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DataFormat {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for DataFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(DataFormat::Csv),
            "jsonl" | "json-lines" => Ok(DataFormat::Jsonl),
            other => Err(format!("unknown format `{other}` (expected csv or jsonl)")),
        }
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DataFormat::Csv => "csv",
            DataFormat::Jsonl => "jsonl",
        })
    }
}

/// A regulator as given in the input, kept verbatim with its parsed value.
#[derive(Clone, Debug, PartialEq)]
pub struct Regulator {
    text: String,
    value: f64,
}

impl Regulator {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let t = text.trim();
        let value: f64 = t.parse().map_err(|_| format!("bad regulator `{t}`"))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(format!("regulator must be positive, got `{t}`"));
        }
        Ok(Regulator {
            text: t.to_string(),
            value,
        })
    }

    pub fn from_f64(v: f64) -> Self {
        Regulator::parse(&format!("{v:?}")).expect("positive finite regulator")
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Enclosure of the decimal string (not of the true regulator, which the
    /// string only approximates to [`Regulator::significant_digits`]).
    pub fn enclosure(&self) -> Interval {
        Interval::around(self.value)
    }

    /// Significant digits in the decimal mantissa.
    pub fn significant_digits(&self) -> usize {
        let mantissa = self.text.split(['e', 'E']).next().unwrap_or("");
        let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        let trimmed = digits.trim_start_matches('0');
        if trimmed.is_empty() {
            0
        } else {
            trimmed.len()
        }
    }
}

/// One number field's invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldRecord {
    pub label: String,
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub disc: BigInt,
    pub class_number: u64,
    pub regulator: Regulator,
    pub torsion: u32,
    /// Residue supplied directly; overrides the class number formula.
    pub kappa: Option<f64>,
    pub poly: Option<DefiningPolynomial>,
    pub bad_primes: Vec<BadPrimeDecomposition>,
}

impl FieldRecord {
    /// Checks the signature, discriminant sign and size, and consistency of
    /// the optional polynomial data. `line` is used in the error.
    pub fn validate(&self, line: usize) -> Result<()> {
        let fail = |message: String| Err(Error::Validation { line, message });
        if self.degree < 2 {
            return fail(format!("degree {} is below 2", self.degree));
        }
        if self.r1 + 2 * self.r2 != self.degree {
            return fail(format!(
                "r1 + 2 r2 = {} differs from the degree {}",
                self.r1 + 2 * self.r2,
                self.degree
            ));
        }
        if self.disc.abs() < BigInt::from(3) {
            return fail(format!("|disc| = {} is below 3", self.disc.abs()));
        }
        let negative = self.disc.is_negative();
        if negative != (self.r2 % 2 == 1) {
            return fail(format!(
                "disc {} has the wrong sign for r2 = {} (expected (-1)^r2)",
                self.disc, self.r2
            ));
        }
        if self.class_number == 0 {
            return fail("class number must be positive".into());
        }
        if self.torsion == 0 {
            return fail("torsion order must be positive".into());
        }
        if let Some(k) = self.kappa {
            if !(k > 0.0 && k.is_finite()) {
                return fail(format!("kappa must be positive, got {k}"));
            }
        }
        if let Some(p) = &self.poly {
            if p.degree() != self.degree as usize {
                return fail(format!(
                    "polynomial degree {} differs from the field degree {}",
                    p.degree(),
                    self.degree
                ));
            }
        }
        for b in &self.bad_primes {
            if let Err(e) = b.check_degree(self.degree as usize) {
                return fail(e.to_string());
            }
        }
        Ok(())
    }

    pub fn abs_disc(&self) -> AbsDisc {
        AbsDisc::from_bigint(&self.disc).expect("validated discriminant")
    }

    /// Absolute discriminant as a double (lossy above 2^53).
    pub fn abs_disc_f64(&self) -> f64 {
        self.disc.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// κ = 2^{r1}(2π)^{r2} h R/(w√|Δ|), or the supplied value.
pub fn residue(rec: &FieldRecord) -> Interval {
    match rec.kappa {
        Some(k) => Interval::around(k),
        None => class_number_formula(rec),
    }
}

/// The class number formula, ignoring any supplied κ.
pub fn class_number_formula(rec: &FieldRecord) -> Interval {
    let two = Interval::point(2.0);
    let num = two.powi(rec.r1)
        * (two * pi_iv()).powi(rec.r2)
        * Interval::integer(rec.class_number)
        * rec.regulator.enclosure();
    let sqrt_disc = match rec.disc.abs().to_u64() {
        Some(a) => Interval::integer(a).sqrt(),
        None => (rec.abs_disc().ln() * 0.5).exp(),
    };
    num / (Interval::integer(rec.torsion as u64) * sqrt_disc)
}

const REQUIRED: [&str; 8] = [
    "label",
    "degree",
    "r1",
    "r2",
    "disc",
    "class_number",
    "regulator",
    "torsion",
];

/// Reads and validates records. Errors carry the 1-based input line.
pub fn parse_records<R: Read>(source: R, format: DataFormat) -> Result<Vec<FieldRecord>> {
    match format {
        DataFormat::Csv => parse_csv(source),
        DataFormat::Jsonl => parse_jsonl(std::io::BufReader::new(source)),
    }
}

fn parse_csv<R: Read>(source: R) -> Result<Vec<FieldRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(source);
    let headers = rdr.headers().map_err(|e| csv_error(e, 1))?.clone();
    let index: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for name in REQUIRED {
        if !index.contains_key(name) {
            return Err(Error::Parse {
                line: 1,
                message: format!("missing column `{name}`"),
            });
        }
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_error(e, 0))?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let get = |name: &str| -> Option<&str> {
            index.get(name).and_then(|&i| row.get(i)).filter(|s| !s.is_empty())
        };
        let rec = build_record(line, &get)?;
        rec.validate(line)?;
        out.push(rec);
    }
    Ok(out)
}

fn csv_error(e: csv::Error, fallback: usize) -> Error {
    let line = e.position().map_or(fallback, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn parse_jsonl<R: BufRead>(source: R) -> Result<Vec<FieldRecord>> {
    let mut out = Vec::new();
    for (i, text) in source.lines().enumerate() {
        let line = i + 1;
        let text = text?;
        if text.trim().is_empty() {
            continue;
        }
        let obj: Map<String, Value> = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let owned: HashMap<&str, String> = obj
            .iter()
            .filter_map(|(k, v)| json_text(v).map(|s| (k.as_str(), s)))
            .collect();
        let get = |name: &str| owned.get(name).map(String::as_str).filter(|s| !s.is_empty());
        let rec = build_record(line, &get)?;
        rec.validate(line)?;
        out.push(rec);
    }
    Ok(out)
}

/// Text form of a JSON scalar or coefficient array; `null` counts as absent.
fn json_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Array(items) => Some(items.iter().filter_map(json_text).collect::<Vec<_>>().join(" ")),
        Value::Object(_) => Some(v.to_string()),
    }
}

fn build_record<'a>(line: usize, get: &dyn Fn(&str) -> Option<&'a str>) -> Result<FieldRecord> {
    let perr = |message: String| Error::Parse { line, message };
    let req = |name: &str| get(name).ok_or_else(|| perr(format!("missing value for `{name}`")));
    fn num<T: FromStr>(name: &str, s: &str, line: usize) -> Result<T> {
        s.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad integer `{s}` in `{name}`"),
        })
    }
    let disc_text = req("disc")?;
    let disc: BigInt = disc_text
        .parse()
        .map_err(|_| perr(format!("bad discriminant `{disc_text}`")))?;
    if disc.is_zero() {
        return Err(perr("discriminant is zero".into()));
    }
    let kappa = match get("kappa") {
        Some(s) => Some(s.parse::<f64>().map_err(|_| perr(format!("bad kappa `{s}`")))?),
        None => None,
    };
    let poly = match get("poly") {
        Some(s) => Some(s.parse::<DefiningPolynomial>().map_err(|e| perr(e.to_string()))?),
        None => None,
    };
    let bad_primes = match get("bad_primes") {
        Some(s) => parse_bad_primes(s).map_err(|e| perr(e.to_string()))?,
        None => Vec::new(),
    };
    Ok(FieldRecord {
        label: req("label")?.to_string(),
        degree: num("degree", req("degree")?, line)?,
        r1: num("r1", req("r1")?, line)?,
        r2: num("r2", req("r2")?, line)?,
        disc,
        class_number: num("class_number", req("class_number")?, line)?,
        regulator: Regulator::parse(req("regulator")?).map_err(perr)?,
        torsion: num("torsion", req("torsion")?, line)?,
        kappa,
        poly,
        bad_primes,
    })
}

/// Writes records in the same layout [`parse_records`] reads.
pub fn write_records<W: Write>(records: &[FieldRecord], sink: W, format: DataFormat) -> Result<()> {
    match format {
        DataFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            let mut header: Vec<&str> = REQUIRED.to_vec();
            header.extend(["kappa", "poly", "bad_primes"]);
            w.write_record(&header).map_err(into_io)?;
            for r in records {
                w.write_record(record_fields(r)).map_err(into_io)?;
            }
            w.flush()?;
        }
        DataFormat::Jsonl => {
            let mut sink = sink;
            for r in records {
                let mut obj = Map::new();
                for (k, v) in REQUIRED.iter().zip(record_fields(r)) {
                    obj.insert((*k).to_string(), Value::String(v));
                }
                if let Some(k) = r.kappa {
                    obj.insert("kappa".into(), Value::String(format!("{k:?}")));
                }
                if let Some(p) = &r.poly {
                    obj.insert("poly".into(), Value::String(p.to_string()));
                }
                if !r.bad_primes.is_empty() {
                    obj.insert("bad_primes".into(), Value::String(format_bad_primes(&r.bad_primes)));
                }
                serde_json::to_writer(&mut sink, &obj).map_err(std::io::Error::from)?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
        }
    }
    Ok(())
}

fn record_fields(r: &FieldRecord) -> Vec<String> {
    vec![
        r.label.clone(),
        r.degree.to_string(),
        r.r1.to_string(),
        r.r2.to_string(),
        r.disc.to_string(),
        r.class_number.to_string(),
        r.regulator.text().to_string(),
        r.torsion.to_string(),
        r.kappa.map(|k| format!("{k:?}")).unwrap_or_default(),
        r.poly.as_ref().map(ToString::to_string).unwrap_or_default(),
        format_bad_primes(&r.bad_primes),
    ]
}

pub(crate) fn into_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const HEADER: &str = "label,degree,r1,r2,disc,class_number,regulator,torsion,kappa,poly,bad_primes\n";

    fn parse(body: &str) -> Result<Vec<FieldRecord>> {
        parse_records(format!("{HEADER}{body}").as_bytes(), DataFormat::Csv)
    }

    #[test]
    fn sqrt5_accepted() {
        let recs = parse("2.2.5.1,2,2,0,5,1,0.48121182505960344749775891342436842313518433438566,2,,-1 -1 1,5:1\n").unwrap();
        let k = residue(&recs[0]);
        let want = 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln() / 5f64.sqrt();
        assert!((k.mid() - want).abs() < 1e-15);
        assert!((k.mid() - 0.430_409).abs() < 1e-6);
        assert_eq!(recs[0].regulator.significant_digits(), 50);
    }

    #[test]
    fn invariant_violations_rejected_with_line() {
        let e = parse("ok,2,2,0,5,1,0.48,2,,,\nbad,2,1,1,5,1,1,2,,,\n").unwrap_err();
        assert!(matches!(e, Error::Validation { line: 3, .. }), "{e}");
        let e = parse("neg,2,2,0,-5,1,1,2,,,\n").unwrap_err();
        assert!(matches!(e, Error::Validation { line: 2, .. }), "{e}");
        let e = parse("x,2,2,0,5,one,1,2,,,\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn imaginary_quadratic_residues() {
        let recs = parse("2.0.163.1,2,0,1,-163,1,1,2,,,\n2.0.4.1,2,0,1,-4,1,1,4,,,\n").unwrap();
        assert!((residue(&recs[0]).mid() - PI / 163f64.sqrt()).abs() < 1e-16);
        assert!((residue(&recs[1]).mid() - PI / 4.0).abs() < 1e-16);
        assert!(residue(&recs[1]).contains(PI / 4.0));
    }

    #[test]
    fn kappa_column_overrides() {
        let recs = parse("q,2,2,0,13,1,1.1947632172871093,2,0.5,,\n").unwrap();
        assert_eq!(residue(&recs[0]).mid(), 0.5);
    }

    #[test]
    fn jsonl_same_fields() {
        let src = r#"{"label":"2.0.163.1","degree":2,"r1":0,"r2":1,"disc":-163,"class_number":1,"regulator":1,"torsion":2,"poly":[41,-1,1]}
{"label":"big","degree":2,"r1":2,"r2":0,"disc":"100000000000000000000000000000000000001","class_number":1,"regulator":"1.5","torsion":2}
"#;
        let recs = parse_records(src.as_bytes(), DataFormat::Jsonl).unwrap();
        assert_eq!(recs[0].poly.as_ref().unwrap().to_string(), "41 -1 1");
        assert!(recs[1].disc > BigInt::from(u64::MAX));
        assert!(residue(&recs[1]).mid() > 0.0);
    }

    #[test]
    fn csv_and_jsonl_round_trip() {
        let recs = parse("2.2.5.1,2,2,0,5,1,0.481211825059603,2,,-1 -1 1,5:1\n3.1.23.1,3,1,1,-23,1,0.281199574322,2,,-1 -1 0 1,23:1+1\n").unwrap();
        for fmt in [DataFormat::Csv, DataFormat::Jsonl] {
            let mut buf = Vec::new();
            write_records(&recs, &mut buf, fmt).unwrap();
            assert_eq!(parse_records(buf.as_slice(), fmt).unwrap(), recs);
        }
    }
}
