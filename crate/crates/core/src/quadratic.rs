//! Self-contained corpus of quadratic fields.
//!
//! For each fundamental discriminant D the residue is computed twice: once
//! from the class number formula applied to an independently computed class
//! number and regulator (the record), and once from the finite Dirichlet
//! formulas for L(1, χ_D) (the oracle). The two must agree.

use std::f64::consts::PI;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::field::{FieldRecord, Regulator};
use crate::numeric::CompensatedSum;
use crate::splitting::{BadPrimeDecomposition, DefiningPolynomial};

/// A generated quadratic field and the residue from the Dirichlet formula.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticField {
    pub record: FieldRecord,
    pub kappa_oracle: f64,
}

fn squarefree(mut m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Discriminant of a quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// All fundamental discriminants with |D| <= `max_abs`, ascending.
pub fn fundamental_discriminants(max_abs: u64) -> Vec<i64> {
    let m = max_abs as i64;
    (-m..=m).filter(|&d| is_fundamental(d)).collect()
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (D/n) for n >= 1.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n >= 1);
    let mut n = n;
    let mut r = 1i8;
    while n % 2 == 0 {
        n /= 2;
        r *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    if n == 1 {
        r
    } else {
        r * jacobi(d, n)
    }
}

/// Smallest prime factor of every n <= limit (0 and 1 map to themselves).
fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf: Vec<u32> = (0..=limit as u32).collect();
    let mut i = 2usize;
    while i * i <= limit {
        if spf[i] == i as u32 {
            let mut j = i * i;
            while j <= limit {
                if spf[j] == j as u32 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

/// χ_D(a) for 1 <= a < len, built multiplicatively from χ at primes.
fn character_table(d: i64, len: usize, spf: &[u32]) -> Vec<i8> {
    let mut chi = vec![0i8; len.max(2)];
    chi[1] = 1;
    for a in 2..len {
        let p = spf[a] as usize;
        chi[a] = if p == a {
            kronecker(d, a as u64)
        } else {
            chi[p] * chi[a / p]
        };
    }
    chi
}

/// L(1, χ_D) from the finite Dirichlet formulas.
fn l_one(d: i64, spf: &[u32]) -> f64 {
    if d < 0 {
        let m = d.unsigned_abs() as usize;
        let chi = character_table(d, m, spf);
        // −(π/|D|^{3/2}) Σ χ(a) a, an exact integer sum
        let s: i64 = (1..m).map(|a| chi[a] as i64 * a as i64).sum();
        -PI * s as f64 / (m as f64).powf(1.5)
    } else {
        let m = d as usize;
        let half = m.div_ceil(2);
        let chi = character_table(d, half, spf);
        // −(1/√D) Σ χ(a) ln sin(πa/D), folded with χ(D − a) = χ(a)
        let mut acc = CompensatedSum::new();
        for (a, &c) in chi.iter().enumerate().take(half).skip(1) {
            if c != 0 {
                acc.add(c as f64 * (PI * a as f64 / m as f64).sin().ln());
            }
        }
        -2.0 * acc.value() / (m as f64).sqrt()
    }
}

/// Class number of an imaginary quadratic field by counting reduced forms.
pub fn class_number_imaginary(d: i64) -> u64 {
    assert!(d < 0);
    let n = d.unsigned_abs() as i64;
    let mut h = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Regulator of a real quadratic field from the period of the continued
/// fraction of (b + √D)/2, b the largest integer below √D with b ≡ D (mod 2).
pub fn regulator_real(d: i64) -> f64 {
    assert!(d > 0);
    let sqrt_d = (d as f64).sqrt();
    let mut b = (d as u64).isqrt() as i64;
    if (b - d).rem_euclid(2) != 0 {
        b -= 1;
    }
    let root = (d as u64).isqrt() as i64;
    let (p0, q0) = (b, 2i64);
    let (mut p, mut q) = (p0, q0);
    let mut acc = CompensatedSum::new();
    loop {
        let xi = (p as f64 + sqrt_d) / q as f64;
        acc.add(xi.ln());
        // q > 0 and √D is irrational, so the floor can use ⌊√D⌋
        let a = (p + root) / q;
        let p_next = a * q - p;
        let q_next = (d - p_next * p_next) / q;
        p = p_next;
        q = q_next;
        if (p, q) == (p0, q0) {
            break;
        }
    }
    acc.value()
}

fn torsion(d: i64) -> u32 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// x² − x + (1 − D)/4 or x² − D/4; both have discriminant exactly D.
pub fn defining_polynomial(d: i64) -> DefiningPolynomial {
    let coeffs = if d.rem_euclid(4) == 1 {
        [(1 - d) / 4, -1, 1]
    } else {
        [-d / 4, 0, 1]
    };
    DefiningPolynomial::from_i64(&coeffs).expect("irreducible for a fundamental discriminant")
}

/// `2.2.D.1` for real fields, `2.0.|D|.1` for imaginary ones.
pub fn label(d: i64) -> String {
    if d > 0 {
        format!("2.2.{d}.1")
    } else {
        format!("2.0.{}.1", d.unsigned_abs())
    }
}

fn build(d: i64, spf: &[u32]) -> QuadraticField {
    let l1 = l_one(d, spf);
    let w = torsion(d);
    let (r1, r2, h, reg) = if d < 0 {
        let h = class_number_imaginary(d);
        (0, 1, h, Regulator::parse("1").expect("valid"))
    } else {
        let r = regulator_real(d);
        let h_real = l1 * (d as f64).sqrt() / (2.0 * r);
        let h = h_real.round();
        assert!(
            (h_real - h).abs() < 1e-6 && h >= 1.0,
            "class number for D = {d} is not near an integer: {h_real}"
        );
        (2, 0, h as u64, Regulator::from_f64(r))
    };
    let bad_primes = prime_divisors(d.unsigned_abs())
        .into_iter()
        .map(|p| BadPrimeDecomposition::new(p, vec![1]).expect("prime"))
        .collect();
    QuadraticField {
        record: FieldRecord {
            label: label(d),
            degree: 2,
            r1,
            r2,
            disc: BigInt::from(d),
            class_number: h,
            regulator: reg,
            torsion: w,
            kappa: None,
            poly: Some(defining_polynomial(d)),
            bad_primes,
        },
        // κ = L(1, χ_D) for a quadratic field
        kappa_oracle: l1,
    }
}

/// One quadratic field. Panics unless `d` is fundamental.
pub fn quadratic_field(d: i64) -> QuadraticField {
    assert!(is_fundamental(d), "{d} is not a fundamental discriminant");
    let spf = spf_table(d.unsigned_abs() as usize);
    build(d, &spf)
}

/// All quadratic fields with |D| <= `max_abs`, ascending by D.
pub fn quadratic_fields(max_abs: u64) -> Vec<QuadraticField> {
    let spf = spf_table(max_abs as usize);
    fundamental_discriminants(max_abs)
        .into_par_iter()
        .map(|d| build(d, &spf))
        .collect()
}
