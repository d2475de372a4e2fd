//! Factor degrees of a squarefree polynomial over a prime field.

use super::poly::{self, Zp};

/// Degrees of the irreducible factors of monic `f` over Z/pZ, ascending, or
/// `None` when `f` is not squarefree modulo p.
pub(crate) fn factor_degrees(zp: Zp, f: &[u64]) -> Option<Vec<u32>> {
    let d = poly::degree(f).expect("zero polynomial");
    debug_assert_eq!(f[d], 1, "polynomial must be monic");
    let df = poly::derivative(zp, f);
    if df.is_empty() || poly::gcd(zp, f, &df).len() != 1 {
        return None;
    }
    let frob = FrobeniusMatrix::new(zp, f);

    let mut degrees = Vec::new();
    let mut rest = f[..=d].to_vec();
    let mut g = poly::rem(zp, vec![0, 1], f); // x^(p^i) mod f
    let mut i = 1usize;
    while let Some(dr) = poly::degree(&rest) {
        if dr < 2 * i {
            if dr > 0 {
                degrees.push(dr as u32);
            }
            break;
        }
        g = frob.apply(zp, &g);
        let mut h = g.clone();
        h.resize(h.len().max(2), 0);
        h[1] = zp.sub(h[1], 1);
        poly::trim(&mut h);
        let common = poly::gcd(zp, &rest, &h);
        let dc = common.len() - 1;
        if dc > 0 {
            degrees.extend(std::iter::repeat_n(i as u32, dc / i));
            rest = poly::div_exact(zp, &rest, &common);
        }
        i += 1;
    }
    Some(degrees)
}

/// Rows `x^(jp) mod f` for `j < deg f`; applying it to `h` gives `h^p mod f`.
struct FrobeniusMatrix {
    rows: Vec<Vec<u64>>,
    f: Vec<u64>,
}

impl FrobeniusMatrix {
    fn new(zp: Zp, f: &[u64]) -> Self {
        let d = f.len() - 1;
        let xp = poly::x_pow_mod(zp, zp.modulus(), f);
        let mut rows = Vec::with_capacity(d);
        let mut cur = poly::rem(zp, vec![1], f);
        for _ in 0..d {
            rows.push(cur.clone());
            cur = poly::mul_mod(zp, &cur, &xp, f);
        }
        FrobeniusMatrix { rows, f: f.to_vec() }
    }

    fn apply(&self, zp: Zp, h: &[u64]) -> Vec<u64> {
        let d = self.f.len() - 1;
        let mut out = vec![0u64; d];
        for (j, &hj) in h.iter().enumerate() {
            if hj == 0 {
                continue;
            }
            for (k, &rk) in self.rows[j].iter().enumerate() {
                out[k] = zp.add(out[k], zp.mul(hj, rk));
            }
        }
        poly::trim(&mut out);
        out
    }
}
