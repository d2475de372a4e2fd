//! Dense univariate polynomials over Z/pZ, coefficients constant-first.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!((2..(1 << 63)).contains(&p));
        Zp { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.p < (1 << 32) {
            a * b % self.p
        } else {
            (a as u128 * b as u128 % self.p as u128) as u64
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue (p prime).
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_i64(self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `b` (`b` nonzero).
pub(crate) fn rem(zp: Zp, mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let db = degree(b).expect("division by the zero polynomial");
    let inv_lead = zp.inv(b[db]);
    trim(&mut a);
    while a.len() > db {
        let top = a.len() - 1;
        let q = zp.mul(a[top], inv_lead);
        let shift = top - db;
        for (i, &bc) in b[..=db].iter().enumerate() {
            a[shift + i] = zp.sub(a[shift + i], zp.mul(q, bc));
        }
        trim(&mut a);
    }
    a
}

/// Quotient of an exact division `a / b`.
pub(crate) fn div_exact(zp: Zp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return Vec::new();
    }
    let inv_lead = zp.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = zp.mul(r[top], inv_lead);
        let shift = top - db;
        q[shift] = c;
        for (i, &bc) in b[..=db].iter().enumerate() {
            r[shift + i] = zp.sub(r[shift + i], zp.mul(c, bc));
        }
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    q
}

/// `a * b mod f` for `a`, `b` already reduced modulo monic `f`.
pub(crate) fn mul_mod(zp: Zp, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        if ac == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            prod[i + j] = zp.add(prod[i + j], zp.mul(ac, bc));
        }
    }
    rem(zp, prod, f)
}

/// Monic greatest common divisor.
pub(crate) fn gcd(zp: Zp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(zp, a, &b);
        a = b;
        b = r;
    }
    make_monic(zp, &mut a);
    a
}

pub(crate) fn make_monic(zp: Zp, a: &mut [u64]) {
    if let Some(d) = degree(a) {
        let inv = zp.inv(a[d]);
        for c in a.iter_mut() {
            *c = zp.mul(*c, inv);
        }
    }
}

pub(crate) fn derivative(zp: Zp, a: &[u64]) -> Vec<u64> {
    let mut d: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| zp.mul(c, (i as u64) % zp.p))
        .collect();
    trim(&mut d);
    d
}

/// `x^e mod f`.
pub(crate) fn x_pow_mod(zp: Zp, mut e: u64, f: &[u64]) -> Vec<u64> {
    let mut result = rem(zp, vec![1], f);
    let mut base = rem(zp, vec![0, 1], f);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(zp, &result, &base, f);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(zp, &base, &base, f);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_factor() {
        let zp = Zp::new(7);
        // (x+1)(x+2) and (x+1)(x+3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(zp, &a, &b), vec![1, 1]);
    }

    #[test]
    fn exact_division() {
        let zp = Zp::new(5);
        // (x^2+1)(x+3) = x^3 + 3x^2 + x + 3
        let a = vec![3, 1, 3, 1];
        assert_eq!(div_exact(zp, &a, &[1, 0, 1]), vec![3, 1]);
    }

    #[test]
    fn fermat_in_prime_field() {
        let zp = Zp::new(13);
        // x^13 = x modulo x^2 - 2 only if 2 is a square; 2 is a non-residue mod 13
        let f = vec![11, 0, 1];
        let xp = x_pow_mod(zp, 13, &f);
        assert_ne!(xp, vec![0, 1]);
        let xp2 = x_pow_mod(zp, 169, &f);
        assert_eq!(xp2, vec![0, 1]);
    }

    #[test]
    fn large_modulus_arithmetic() {
        let p = 4_294_967_311u64; // first prime above 2^32
        let zp = Zp::new(p);
        let a = p - 1;
        assert_eq!(zp.mul(a, a), 1);
        assert_eq!(zp.mul(zp.inv(12345), 12345), 1);
    }
}
