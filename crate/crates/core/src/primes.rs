//! Segmented sieve of Eratosthenes over odd numbers.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`PrimeTable::sieve`].
pub const DEFAULT_CAP: u64 = 1_000_000_000;

/// Bits per segment (each bit is one odd number).
const SEGMENT_BITS: u64 = 1 << 20;
const SEGMENT_WORDS: usize = (SEGMENT_BITS / 64) as usize;

/// Primes up to a fixed limit, stored as one bit per odd number.
///
/// Bit `i` of the concatenated segments stands for `2i + 1`.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    segments: Vec<Box<[u64]>>,
    /// `counts[s]` is the number of odd primes in segments `0..s`.
    counts: Vec<u64>,
}

/// A prime power `n = p^k` with `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub n: u64,
    pub p: u64,
    pub k: u32,
}

/// Largest integer `n` with `n <= x`, treating an `x` one ulp short of an
/// integer as that integer.
pub fn cutoff(x: f64) -> u64 {
    if x.is_nan() || x < 0.0 {
        return 0;
    }
    let f = x.floor();
    let next = f + 1.0;
    if x.next_up() >= next {
        next as u64
    } else {
        f as u64
    }
}

impl PrimeTable {
    /// Sieve with the default cap of 10^9.
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with_cap(limit, DEFAULT_CAP)
    }

    pub fn sieve_with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit < 2 || limit > cap {
            return Err(Error::LimitOutOfRange { limit, cap });
        }
        let nbits = limit.div_ceil(2);
        let nseg = nbits.div_ceil(SEGMENT_BITS) as usize;
        let base = small_odd_primes(limit.isqrt());

        let segments: Vec<Box<[u64]>> = (0..nseg)
            .into_par_iter()
            .map(|s| sieve_segment(s as u64, nbits, &base))
            .collect();

        let mut counts = Vec::with_capacity(nseg + 1);
        let mut acc = 0u64;
        counts.push(0);
        for seg in &segments {
            acc += seg.iter().map(|w| w.count_ones() as u64).sum::<u64>();
            counts.push(acc);
        }
        Ok(PrimeTable {
            limit,
            segments,
            counts,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn bit(&self, i: u64) -> bool {
        let s = (i / SEGMENT_BITS) as usize;
        let j = i % SEGMENT_BITS;
        (self.segments[s][(j / 64) as usize] >> (j % 64)) & 1 == 1
    }

    /// Panics if `n` exceeds the limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} is beyond the sieve limit {}", self.limit);
        match n {
            0 | 1 => false,
            2 => true,
            _ if n % 2 == 0 => false,
            _ => self.bit(n / 2),
        }
    }

    /// Checks that `x` lies within the table and returns its integer cutoff.
    pub fn check(&self, x: f64) -> Result<u64> {
        let n = cutoff(x);
        if n > self.limit || !x.is_finite() {
            return Err(Error::BeyondLimit { x, limit: self.limit });
        }
        Ok(n)
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> Primes<'_> {
        Primes {
            table: self,
            emitted_two: false,
            word: 0,
            bits: self.segments.first().map_or(0, |s| s[0]) & !1,
            end: self.limit,
        }
    }

    /// Primes `p <= n`, ascending. `n` is clamped to the limit.
    pub fn primes_up_to(&self, n: u64) -> Primes<'_> {
        let mut it = self.primes();
        it.end = n.min(self.limit);
        it
    }

    /// All prime powers `p^k <= n`, ascending. `n` is clamped to the limit.
    pub fn prime_powers_up_to(&self, n: u64) -> PrimePowers<'_> {
        let n = n.min(self.limit);
        let mut higher = Vec::new();
        for p in self.primes_up_to(n.isqrt()) {
            let mut q = p * p;
            let mut k = 2;
            loop {
                higher.push(PrimePower { n: q, p, k });
                match q.checked_mul(p) {
                    Some(next) if next <= n => {
                        q = next;
                        k += 1;
                    }
                    _ => break,
                }
            }
        }
        higher.sort_unstable();
        PrimePowers {
            primes: self.primes_up_to(n).peekable(),
            higher: higher.into_iter().peekable(),
        }
    }

    /// Number of primes `p <= n`. Panics if `n` exceeds the limit.
    pub fn count_up_to(&self, n: u64) -> u64 {
        assert!(n <= self.limit, "{n} is beyond the sieve limit {}", self.limit);
        if n < 2 {
            return 0;
        }
        // odd candidates 3..=n are bits 1..=last
        let last = (n - 1) / 2;
        let s = (last / SEGMENT_BITS) as usize;
        let j = last % SEGMENT_BITS;
        let seg = &self.segments[s];
        let full = (j / 64) as usize;
        let mut c = self.counts[s];
        c += seg[..full].iter().map(|w| w.count_ones() as u64).sum::<u64>();
        let rem = j % 64;
        let mask = if rem == 63 { u64::MAX } else { (1u64 << (rem + 1)) - 1 };
        c += (seg[full] & mask).count_ones() as u64;
        // drop the bit for 1 (never set) and add 2
        c + 1
    }
}

/// Deterministic primality test for any `u64` (Miller–Rabin with the first
/// twelve prime bases, which is exact below 3.3·10^24).
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn small_odd_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            if i > 2 {
                out.push(i as u64);
            }
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn sieve_segment(s: u64, nbits: u64, base: &[u64]) -> Box<[u64]> {
    let lo = s * SEGMENT_BITS;
    let hi = (lo + SEGMENT_BITS).min(nbits);
    let len = hi - lo;
    let mut words = vec![u64::MAX; SEGMENT_WORDS].into_boxed_slice();
    // clear padding past the last valid bit
    for b in len..SEGMENT_BITS {
        words[(b / 64) as usize] &= !(1u64 << (b % 64));
    }
    if lo == 0 {
        words[0] &= !1; // the number 1
    }
    let lo_num = 2 * lo + 1;
    let hi_num = 2 * (hi - 1) + 1;
    for &q in base {
        let qq = q * q;
        if qq > hi_num {
            break;
        }
        let start = if qq >= lo_num {
            qq
        } else {
            let m = lo_num.div_ceil(q) * q;
            if m % 2 == 0 {
                m + q
            } else {
                m
            }
        };
        let mut b = (start - 1) / 2 - lo;
        while b < len {
            words[(b / 64) as usize] &= !(1u64 << (b % 64));
            b += q;
        }
    }
    words
}

/// Iterator over primes in ascending order.
pub struct Primes<'a> {
    table: &'a PrimeTable,
    emitted_two: bool,
    /// Global word index of `bits`.
    word: u64,
    bits: u64,
    end: u64,
}

impl Iterator for Primes<'_> {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            if self.end >= 2 {
                return Some(2);
            }
            return None;
        }
        let words_per_seg = SEGMENT_WORDS as u64;
        let total_words = self.table.segments.len() as u64 * words_per_seg;
        loop {
            if self.bits != 0 {
                let t = self.bits.trailing_zeros() as u64;
                self.bits &= self.bits - 1;
                let n = 2 * (self.word * 64 + t) + 1;
                if n > self.end {
                    self.bits = 0;
                    self.word = total_words;
                    return None;
                }
                return Some(n);
            }
            self.word += 1;
            if self.word >= total_words || 2 * (self.word * 64) + 1 > self.end {
                self.word = total_words;
                return None;
            }
            let s = (self.word / words_per_seg) as usize;
            let w = (self.word % words_per_seg) as usize;
            self.bits = self.table.segments[s][w];
        }
    }
}

/// Iterator over prime powers in ascending order.
pub struct PrimePowers<'a> {
    primes: std::iter::Peekable<Primes<'a>>,
    higher: std::iter::Peekable<std::vec::IntoIter<PrimePower>>,
}

impl Iterator for PrimePowers<'_> {
    type Item = PrimePower;

    #[inline]
    fn next(&mut self) -> Option<PrimePower> {
        match (self.primes.peek(), self.higher.peek()) {
            (Some(&p), Some(h)) if h.n < p => self.higher.next(),
            (Some(_), _) => self.primes.next().map(|p| PrimePower { n: p, p, k: 1 }),
            (None, _) => self.higher.next(),
        }
    }
}
