//! Splitting of rational primes in a number field given by a defining
//! polynomial, the resulting Artin coefficients and the truncated sum Σ(x).

mod ddf;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Interval, PrecisionPolicy, Real};
use crate::primes::{is_prime_u64, PrimeTable};
use crate::with_backend;
use poly::Zp;

/// A monic irreducible integer polynomial of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DefiningPolynomial {
    /// Constant term first.
    coeffs: Vec<BigInt>,
    /// The same coefficients when they all fit in an `i64`.
    small: Option<Vec<i64>>,
}

impl DefiningPolynomial {
    /// Validates monicity, degree and absence of rational roots.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::Polynomial("degree must be at least 2".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::Polynomial("leading coefficient must be 1".into()));
        }
        if let Some(r) = rational_root(&coeffs) {
            return Err(Error::Polynomial(format!("has the rational root {r}, so it is reducible")));
        }
        let small = coeffs.iter().map(ToPrimitive::to_i64).collect();
        Ok(DefiningPolynomial { coeffs, small })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn reduce(&self, zp: Zp) -> Vec<u64> {
        match &self.small {
            Some(s) => s.iter().map(|&c| zp.reduce_i64(c)).collect(),
            None => {
                let m = BigInt::from(zp.modulus());
                self.coeffs
                    .iter()
                    .map(|c| {
                        let r = ((c % &m) + &m) % &m;
                        r.to_u64().expect("residue fits")
                    })
                    .collect()
            }
        }
    }
}

/// An integer root of the monic polynomial, searched among divisors of the
/// constant term. Constant terms above 10^12 are only tested at ±1.
fn rational_root(coeffs: &[BigInt]) -> Option<BigInt> {
    let c0 = &coeffs[0];
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let candidates: Vec<u64> = match c0.abs().to_u64() {
        Some(a) if a <= 1_000_000_000_000 => divisors(a),
        _ => vec![1],
    };
    for d in candidates {
        for r in [BigInt::from(d), -BigInt::from(d)] {
            let v = coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &r + c);
            if v.is_zero() {
                return Some(r);
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

impl fmt::Display for DefiningPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for DefiningPolynomial {
    type Err = Error;

    /// Space-separated integer coefficients, constant term first.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Polynomial(format!("bad coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        DefiningPolynomial::new(coeffs)
    }
}

impl TryFrom<String> for DefiningPolynomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DefiningPolynomial> for String {
    fn from(p: DefiningPolynomial) -> String {
        p.to_string()
    }
}

/// Residue degrees of the primes above `p`, as read off the factorization
/// of the defining polynomial modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingProfile {
    pub p: u64,
    /// Ascending; empty when untrusted.
    pub degrees: Vec<u32>,
    /// False when the polynomial is not squarefree modulo `p`, in which case
    /// `p` may divide the index and the factorization says nothing reliable.
    pub trusted: bool,
}

/// Residue degrees supplied from outside for a prime dividing the
/// discriminant (or the index of the polynomial order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BadPrimeDecomposition {
    pub p: u64,
    /// Ascending.
    pub degrees: Vec<u32>,
}

impl BadPrimeDecomposition {
    pub fn new(p: u64, mut degrees: Vec<u32>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::Polynomial(format!("decomposition of {p} needs positive residue degrees")));
        }
        degrees.sort_unstable();
        Ok(BadPrimeDecomposition { p, degrees })
    }

    /// Checks `Σ degrees <= n`.
    pub fn check_degree(&self, n: usize) -> Result<()> {
        let total: u32 = self.degrees.iter().sum();
        if total as usize > n {
            return Err(Error::Polynomial(format!(
                "residue degrees above {} sum to {total}, more than the field degree {n}",
                self.p
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BadPrimeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.p)?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for BadPrimeDecomposition {
    type Err = Error;

    /// `p:f1+f2+…`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Polynomial(format!("bad prime decomposition `{s}` (expected p:f1+f2+...)"));
        let (p, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let degrees = rest
            .split('+')
            .map(|d| d.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        BadPrimeDecomposition::new(p, degrees)
    }
}

/// Formats a list of decompositions as `p:f+f;p:f`.
pub fn format_bad_primes(list: &[BadPrimeDecomposition]) -> String {
    list.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

/// Parses `p:f+f;p:f`; an empty string gives an empty list.
pub fn parse_bad_primes(s: &str) -> Result<Vec<BadPrimeDecomposition>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Local data from which Artin coefficients are read.
pub trait LocalDegrees {
    fn prime(&self) -> u64;
    /// `None` when the data cannot be trusted.
    fn residue_degrees(&self) -> Option<&[u32]>;
}

impl LocalDegrees for SplittingProfile {
    fn prime(&self) -> u64 {
        self.p
    }
    fn residue_degrees(&self) -> Option<&[u32]> {
        self.trusted.then_some(self.degrees.as_slice())
    }
}

impl LocalDegrees for BadPrimeDecomposition {
    fn prime(&self) -> u64 {
        self.p
    }
    fn residue_degrees(&self) -> Option<&[u32]> {
        Some(&self.degrees)
    }
}

/// Factor degrees of `f` modulo the prime `p`.
pub fn degree_profile(f: &DefiningPolynomial, p: u64) -> Result<SplittingProfile> {
    if p >= 1 << 63 || !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(profile_unchecked(f, p))
}

fn profile_unchecked(f: &DefiningPolynomial, p: u64) -> SplittingProfile {
    let zp = Zp::new(p);
    match ddf::factor_degrees(zp, &f.reduce(zp)) {
        Some(degrees) => SplittingProfile {
            p,
            degrees,
            trusted: true,
        },
        None => SplittingProfile {
            p,
            degrees: Vec::new(),
            trusted: false,
        },
    }
}

/// a_ρ(p^m) = Σ_{f | m} f − 1, the sum running over residue degrees.
pub fn a_rho(local: &impl LocalDegrees, m: u32) -> Result<i64> {
    let degs = local
        .residue_degrees()
        .ok_or_else(|| Error::BadPrime(vec![local.prime()]))?;
    Ok(a_rho_of(degs, m))
}

#[inline]
fn a_rho_of(degrees: &[u32], m: u32) -> i64 {
    degrees.iter().filter(|&&f| m % f == 0).map(|&f| f as i64).sum::<i64>() - 1
}

/// Residue degrees for every prime `p <= n`, ascending by `p`, taking
/// supplied decompositions in preference to computed profiles.
///
/// Fails with [`Error::BadPrime`] listing every prime whose profile is
/// untrusted and that has no supplied decomposition.
pub fn local_degrees(
    f: &DefiningPolynomial,
    bad: &[BadPrimeDecomposition],
    table: &PrimeTable,
    n: u64,
) -> Result<Vec<(u64, Vec<u32>)>> {
    let supplied: BTreeMap<u64, &BadPrimeDecomposition> = bad.iter().map(|b| (b.p, b)).collect();
    for b in bad {
        b.check_degree(f.degree())?;
    }
    let primes: Vec<u64> = table.primes_up_to(n).collect();
    let profiles: Vec<SplittingProfile> = primes.par_iter().map(|&p| profile_unchecked(f, p)).collect();

    let mut out = Vec::with_capacity(profiles.len());
    let mut missing = Vec::new();
    for prof in profiles {
        match (supplied.get(&prof.p), prof.trusted) {
            (Some(b), true) if b.degrees != prof.degrees => {
                return Err(Error::Polynomial(format!(
                    "supplied decomposition {b} disagrees with the factorization mod {} ({:?})",
                    prof.p, prof.degrees
                )));
            }
            (Some(b), _) => out.push((prof.p, b.degrees.clone())),
            (None, true) => out.push((prof.p, prof.degrees)),
            (None, false) => missing.push(prof.p),
        }
    }
    if !missing.is_empty() {
        return Err(Error::BadPrime(missing));
    }
    Ok(out)
}

/// Σ(x) = Σ_{p^m <= x} a_ρ(p^m)/(m p^m).
pub fn sigma(
    f: &DefiningPolynomial,
    bad: &[BadPrimeDecomposition],
    table: &PrimeTable,
    x: f64,
    policy: &PrecisionPolicy,
) -> Result<Interval> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("sigma", x, "x > 0"));
    }
    let n = table.check(x)?;
    let locals = local_degrees(f, bad, table, n)?;
    Ok(with_backend!(policy, R => sigma_with::<R>(table, &locals, n).enclosure()))
}

/// Σ over prime powers up to `n` in ascending order, given the output of
/// [`local_degrees`] for the same `n`.
pub fn sigma_with<R: Real>(table: &PrimeTable, locals: &[(u64, Vec<u32>)], n: u64) -> R {
    let mut acc = R::zero();
    let mut next_prime = 0usize;
    for q in table.prime_powers_up_to(n) {
        let degs = if q.k == 1 {
            let d = &locals[next_prime].1;
            debug_assert_eq!(locals[next_prime].0, q.p);
            next_prime += 1;
            d
        } else {
            let i = locals.binary_search_by_key(&q.p, |e| e.0).expect("prime present");
            &locals[i].1
        };
        let a = a_rho_of(degs, q.k);
        let den = q.k as u64 * q.n;
        match a.signum() {
            1 => acc = acc + R::ratio(a as u64, den),
            -1 => acc = acc - R::ratio(a.unsigned_abs(), den),
            _ => {}
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2m5() -> DefiningPolynomial {
        DefiningPolynomial::from_i64(&[-5, 0, 1]).unwrap()
    }

    #[test]
    fn quadratic_profiles() {
        let f = x2m5();
        assert_eq!(degree_profile(&f, 11).unwrap().degrees, vec![1, 1]);
        assert_eq!(degree_profile(&f, 3).unwrap().degrees, vec![2]);
        let r = degree_profile(&f, 5).unwrap();
        assert!(!r.trusted && r.degrees.is_empty());
        assert!(matches!(degree_profile(&f, 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn coefficients() {
        let split = BadPrimeDecomposition::new(2, vec![1, 1]).unwrap();
        assert_eq!(a_rho(&split, 1).unwrap(), 1);
        let inert = BadPrimeDecomposition::new(2, vec![2]).unwrap();
        assert_eq!(a_rho(&inert, 1).unwrap(), -1);
        assert_eq!(a_rho(&inert, 2).unwrap(), 1);
        let partial = BadPrimeDecomposition::new(2, vec![1, 2]).unwrap();
        assert_eq!(a_rho(&partial, 2).unwrap(), 2);
        let untrusted = degree_profile(&x2m5(), 5).unwrap();
        assert!(matches!(a_rho(&untrusted, 1), Err(Error::BadPrime(p)) if p == vec![5]));
    }

    #[test]
    fn polynomial_validation() {
        assert!(DefiningPolynomial::from_i64(&[1, 1]).is_err());
        assert!(DefiningPolynomial::from_i64(&[1, 0, 2]).is_err());
        assert!(DefiningPolynomial::from_i64(&[-4, 0, 1]).is_err()); // root 2
        assert!(DefiningPolynomial::from_i64(&[0, 1, 1]).is_err());
        assert!(DefiningPolynomial::from_i64(&[6, -5, 1]).is_err()); // roots 2, 3
        let f: DefiningPolynomial = "-1 -1 0 1".parse().unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.to_string(), "-1 -1 0 1");
    }

    #[test]
    fn decomposition_text_round_trip() {
        let list = parse_bad_primes("23:1+1; 5:2").unwrap();
        assert_eq!(format_bad_primes(&list), "23:1+1;5:2");
        assert!(parse_bad_primes("4:1").is_err());
        assert!(parse_bad_primes("7:").is_err());
        assert!(parse_bad_primes("").unwrap().is_empty());
    }

    #[test]
    fn sigma_at_two() {
        let t = PrimeTable::sieve(100).unwrap();
        let bad = [BadPrimeDecomposition::new(5, vec![1]).unwrap()];
        let f = DefiningPolynomial::from_i64(&[-1, -1, 1]).unwrap();
        let v = sigma(&f, &bad, &t, 2.0, &PrecisionPolicy::default()).unwrap();
        assert_eq!(v.mid(), -0.5);
        // x^2 - 5 is not squarefree mod 2 either, so 2 needs data
        let err = sigma(&x2m5(), &bad, &t, 10.0, &PrecisionPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::BadPrime(p) if p == vec![2]));
    }

    #[test]
    fn conflicting_supplied_data_rejected() {
        let t = PrimeTable::sieve(100).unwrap();
        let f = DefiningPolynomial::from_i64(&[-1, -1, 1]).unwrap();
        let bad = [
            BadPrimeDecomposition::new(5, vec![1]).unwrap(),
            BadPrimeDecomposition::new(11, vec![2]).unwrap(),
        ];
        assert!(sigma(&f, &bad, &t, 20.0, &PrecisionPolicy::default()).is_err());
    }
}
