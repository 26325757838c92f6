//! Number-theoretic primitives: p-adic valuations, binomial coefficients mod p
//! and the regular-prime test.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime the regularity test will certify by default.
pub const DEFAULT_REGULARITY_BOUND: u64 = 1000;

/// An odd prime `p`, with `q = 2p - 2` available alongside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 3 && is_prime(p) {
            Ok(OddPrime(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p` as a signed integer, for degree arithmetic.
    #[inline]
    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    /// The degree `q = 2p - 2` of the first Steenrod power.
    #[inline]
    pub fn q(self) -> i64 {
        2 * self.as_i64() - 2
    }

    /// Degree of `beta_2`, the first p-torsion class not covered by the
    /// stem table: `(2p + 1)q - 2`.
    #[inline]
    pub fn beta2_degree(self) -> i64 {
        (2 * self.as_i64() + 1) * self.q() - 2
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        OddPrime::new(p)
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The exponent of the largest power of `p` dividing `n`.
pub fn vp(p: OddPrime, n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p.0) {
        n /= p.0;
        e += 1;
    }
    Ok(e)
}

/// `v_p(n!)` by Legendre's formula.
pub fn vp_factorial(p: OddPrime, n: u64) -> u32 {
    let mut total = 0;
    let mut n = n;
    while n > 0 {
        n /= p.0;
        total += n;
    }
    total as u32
}

pub(crate) fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    let mut base = base % m;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result
}

/// Inverse of a nonzero residue mod `p`.
pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p - 2, p)
}

/// `C(n, r) mod p` for `0 <= n < p`.
fn small_binom(n: u64, r: u64, p: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut num = 1;
    let mut den = 1;
    for j in 0..r {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

/// Generalized binomial coefficient `C(k, i)` reduced mod `p`.
///
/// Nonnegative `k` goes through Lucas's theorem. Negative `k` is first
/// reflected with `C(k, i) = (-1)^i C(i - k - 1, i)`.
pub fn binom_mod_p(p: OddPrime, k: i64, i: u64) -> u64 {
    let p = p.0;
    if k < 0 {
        let top = i as i64 - k - 1;
        let v = lucas(top as u64, i, p);
        return if i.is_multiple_of(2) { v } else { (p - v) % p };
    }
    lucas(k as u64, i, p)
}

fn lucas(mut n: u64, mut r: u64, p: u64) -> u64 {
    let mut result = 1;
    while r > 0 {
        let (nd, rd) = (n % p, r % p);
        if rd > nd {
            return 0;
        }
        result = result * small_binom(nd, rd, p) % p;
        n /= p;
        r /= p;
    }
    result
}

/// Whether `p` is a regular prime, certified for `p <= DEFAULT_REGULARITY_BOUND`.
pub fn is_regular(p: OddPrime) -> Result<bool> {
    is_regular_with_bound(p, DEFAULT_REGULARITY_BOUND)
}

/// Whether `p` divides none of the numerators of `B_2, B_4, ..., B_{p-3}`.
///
/// The Bernoulli numbers are generated mod `p` from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`. For `m <= p - 3` every `B_j` involved
/// is p-integral and `m + 1` is a unit, so the recurrence is exact mod `p`.
pub fn is_regular_with_bound(p: OddPrime, bound: u64) -> Result<bool> {
    let pv = p.0;
    if pv > bound {
        return Err(Error::Unverified { p: pv, bound });
    }
    if pv < 5 {
        return Ok(true);
    }
    let top = (pv - 3) as usize;
    // Pascal row C(m + 1, .) mod p, starting from C(1, .).
    let mut row: Vec<u64> = vec![1, 1];
    let mut bernoulli: Vec<u64> = vec![1];
    for m in 1..=top {
        let mut next = vec![1u64; row.len() + 1];
        for j in 1..row.len() {
            next[j] = (row[j - 1] + row[j]) % pv;
        }
        row = next;
        let acc = bernoulli
            .iter()
            .enumerate()
            .fold(0, |acc, (j, b)| (acc + row[j] * b) % pv);
        let b_m = (pv - acc) % pv * inv_mod(m as u64 + 1, pv) % pv;
        bernoulli.push(b_m);
        if m % 2 == 0 && b_m == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
