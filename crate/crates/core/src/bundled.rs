//! A few small fields with defining polynomials and complete data at the
//! ramified primes, for the short-sum check.
//!
//! Regulators were computed at 40 digits with mpmath: ln of the golden ratio,
//! ln of the real root of x³ − x − 1, and for the two abelian fields by
//! dividing the product of the L(1, χ) values (digamma formula) by the
//! remaining class-number-formula factors.

use num_bigint::BigInt;

use crate::field::{FieldRecord, Regulator};
use crate::splitting::{parse_bad_primes, DefiningPolynomial};

struct Spec {
    label: &'static str,
    r1: u32,
    r2: u32,
    disc: i64,
    regulator: &'static str,
    torsion: u32,
    poly: &'static str,
    bad: &'static str,
}

const FIELDS: [Spec; 6] = [
    Spec {
        label: "2.2.5.1",
        r1: 2,
        r2: 0,
        disc: 5,
        regulator: "0.48121182505960344749775891342436842313",
        torsion: 2,
        poly: "-1 -1 1",
        bad: "5:1",
    },
    Spec {
        label: "2.0.163.1",
        r1: 0,
        r2: 1,
        disc: -163,
        regulator: "1",
        torsion: 2,
        poly: "41 -1 1",
        bad: "163:1",
    },
    Spec {
        label: "2.0.4.1",
        r1: 0,
        r2: 1,
        disc: -4,
        regulator: "1",
        torsion: 4,
        poly: "1 0 1",
        bad: "2:1",
    },
    // 23 = P1^2 P2, both of residue degree 1
    Spec {
        label: "3.1.23.1",
        r1: 1,
        r2: 1,
        disc: -23,
        regulator: "0.28119957432296184651205076406787829979",
        torsion: 2,
        poly: "-1 -1 0 1",
        bad: "23:1+1",
    },
    // the real subfield of Q(ζ7); 7 is totally ramified
    Spec {
        label: "3.3.49.1",
        r1: 3,
        r2: 0,
        disc: 49,
        regulator: "0.52545468212257238833882604544832450954",
        torsion: 2,
        poly: "-1 -2 1 1",
        bad: "7:1",
    },
    // Q(ζ5); 5 is totally ramified
    Spec {
        label: "4.0.125.1",
        r1: 0,
        r2: 2,
        disc: 125,
        regulator: "0.96242365011920689499551782684873684627",
        torsion: 10,
        poly: "1 1 1 1 1",
        bad: "5:1",
    },
];

/// The bundled fields, each with a polynomial and bad-prime data.
pub fn bundled_fields() -> Vec<FieldRecord> {
    FIELDS
        .iter()
        .map(|s| {
            let rec = FieldRecord {
                label: s.label.to_string(),
                degree: s.r1 + 2 * s.r2,
                r1: s.r1,
                r2: s.r2,
                disc: BigInt::from(s.disc),
                class_number: 1,
                regulator: Regulator::parse(s.regulator).expect("valid regulator"),
                torsion: s.torsion,
                kappa: None,
                poly: Some(s.poly.parse::<DefiningPolynomial>().expect("valid polynomial")),
                bad_primes: parse_bad_primes(s.bad).expect("valid decomposition"),
            };
            rec.validate(0).expect("bundled record is consistent");
            rec
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::residue;

    #[test]
    fn residues_match_l_function_products() {
        // κ = Π L(1, χ) over the nontrivial characters, digamma formula, 40 digits
        let recs = bundled_fields();
        let by_label = |l: &str| recs.iter().find(|r| r.label == l).unwrap();
        let k49 = residue(by_label("3.3.49.1")).mid();
        assert!((k49 - 0.300_259_818_355_755_65).abs() < 1e-15);
        let k125 = residue(by_label("4.0.125.1")).mid();
        assert!((k125 - 0.339_837_278_240_523_54).abs() < 1e-15);
    }

    #[test]
    fn ramified_data_matches_factorization() {
        use crate::splitting::degree_profile;
        for r in bundled_fields() {
            let f = r.poly.as_ref().unwrap();
            for b in &r.bad_primes {
                assert!(!degree_profile(f, b.p).unwrap().trusted, "{} at {}", r.label, b.p);
            }
        }
    }
}
