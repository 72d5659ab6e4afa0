//! Primes, factorization, and the two error-term characters.
//!
//! `chi` is the non-principal character mod 4, built prime by prime from the
//! affine error terms `a_p = (-1)^((p-1)/2)`. `chi_hat` is its twist by the
//! Liouville function: every prime factor contributes an extra sign.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = 1u64;
        let (mut base, mut e) = (a % n, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mul(x, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n` by trial division, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes up to `limit`, by a segmented sieve of Eratosthenes over odd
/// numbers. Segments are sieved independently (optionally in parallel) and
/// concatenated in ascending order.
pub fn primes_up_to(limit: u64, workers: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut small = vec![true; root as usize + 1];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if small[i] {
            base.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                small[j] = false;
                j += i;
            }
        }
    }

    const SEGMENT: u64 = 1 << 18;
    let segments: Vec<(u64, u64)> = (0..=limit / SEGMENT)
        .map(|s| (s * SEGMENT, ((s + 1) * SEGMENT).min(limit + 1)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let sieved = par::map_ordered(&segments, workers, |&(lo, hi)| {
        let mut mark = vec![true; (hi - lo) as usize];
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m < hi {
                mark[(m - lo) as usize] = false;
                m += p;
            }
        }
        (lo..hi)
            .filter(|&n| n >= 2 && mark[(n - lo) as usize])
            .collect::<Vec<u64>>()
    });
    sieved.into_iter().flatten().collect()
}

/// Smallest-prime-factor table for `2..=limit`.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeSieve {
    /// Linear sieve. `limit` must fit in `u32`.
    pub fn new(limit: u64) -> Result<Self> {
        if limit > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("sieve limit {limit} exceeds u32")));
        }
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        let mut primes = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                let m = p as usize * i;
                if p > si || m >= len {
                    break;
                }
                spf[m] = p as u32;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit {
            None
        } else {
            Some(self.spf[n as usize] as u64)
        }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.smallest_prime_factor(n) == Some(n)
    }

    /// Liouville signs `lambda(n) = (-1)^Omega(n)` for `0..=limit`
    /// (entry 0 is unused and set to +1).
    pub fn liouville_table(&self) -> Vec<i8> {
        let mut table = vec![1i8; self.spf.len()];
        for n in 2..self.spf.len() {
            let p = self.spf[n] as usize;
            table[n] = -table[n / p];
        }
        table
    }
}

/// `n = prod p_i^r_i` with `p_1 < p_2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Total number of prime factors with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, r)| r).sum()
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, r)| p.pow(r)).product()
    }
}

/// Factors `n` with the sieve, falling back to trial division by the sieved
/// primes above the sieve limit.
pub fn factorize(n: u64, sieve: &PrimeSieve) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64| match factors.last_mut() {
        Some((q, r)) if *q == p => *r += 1,
        _ => factors.push((p, 1)),
    };
    let mut m = n;
    if m > sieve.limit() {
        for &p in sieve.primes() {
            if p * p > m {
                break;
            }
            while m % p == 0 {
                push(p);
                m /= p;
            }
        }
        if m > sieve.limit() {
            // What remains has no prime factor <= limit; if limit^2 >= m it is
            // prime, otherwise finish by plain trial division.
            let mut d = sieve.limit() + 1;
            while d.saturating_mul(d) <= m {
                while m % d == 0 {
                    push(d);
                    m /= d;
                }
                d += 1;
            }
            if m > 1 {
                push(m);
            }
            return Ok(Factorization { n, factors });
        }
    }
    while m > 1 {
        let p = sieve.smallest_prime_factor(m).expect("within sieve");
        push(p);
        m /= p;
    }
    Ok(Factorization { n, factors })
}

/// A value of one of the characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CharacterValue(i8);

impl CharacterValue {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);
    pub const MINUS_ONE: Self = Self(-1);

    pub fn from_sign(negative: bool) -> Self {
        if negative {
            Self::MINUS_ONE
        } else {
            Self::ONE
        }
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    pub fn pow(self, k: u32) -> Self {
        match self.0 {
            0 if k == 0 => Self::ONE,
            0 => Self::ZERO,
            1 => Self::ONE,
            _ => Self::from_sign(k % 2 == 1),
        }
    }
}

impl std::ops::Mul for CharacterValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl std::ops::Neg for CharacterValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UndefinedCharacter(2));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(())
}

/// `a_p = (-1)^((p-1)/2)`.
pub fn a_p(p: u64) -> Result<CharacterValue> {
    require_odd_prime(p)?;
    Ok(CharacterValue::from_sign(p % 4 == 3))
}

/// `a_{p^k} = (a_p)^k`.
pub fn a_prime_power(p: u64, k: u32) -> Result<CharacterValue> {
    Ok(a_p(p)?.pow(k))
}

/// `alpha_{p^k} = (-1)^k a_{p^k} = (-a_p)^k`.
pub fn alpha_prime_power(p: u64, k: u32) -> Result<CharacterValue> {
    Ok((-a_p(p)?).pow(k))
}

/// `(-1)^((n-1)/2)` for odd `n`, 0 for even `n`.
pub fn chi(n: u64) -> CharacterValue {
    if n % 2 == 0 {
        CharacterValue::ZERO
    } else {
        CharacterValue::from_sign(n % 4 == 3)
    }
}

/// `chi` as the product of `a_{p^r}` over a factorization.
pub fn chi_from_factorization(f: &Factorization) -> CharacterValue {
    if f.n % 2 == 0 {
        return CharacterValue::ZERO;
    }
    f.factors
        .iter()
        .map(|&(p, r)| a_prime_power(p, r).expect("odd prime factor"))
        .fold(CharacterValue::ONE, |acc, v| acc * v)
}

/// `chi_hat(n) = prod alpha_{p_i^r_i}`, 0 for even `n`.
pub fn chi_hat_from_factorization(f: &Factorization) -> CharacterValue {
    if f.n % 2 == 0 {
        return CharacterValue::ZERO;
    }
    f.factors
        .iter()
        .map(|&(p, r)| alpha_prime_power(p, r).expect("odd prime factor"))
        .fold(CharacterValue::ONE, |acc, v| acc * v)
}

pub fn chi_hat(n: u64, sieve: &PrimeSieve) -> Result<CharacterValue> {
    Ok(chi_hat_from_factorization(&factorize(n, sieve)?))
}

/// `lambda(n) * chi(n)`, the Liouville route to `chi_hat`.
pub fn chi_hat_liouville(n: u64, sieve: &PrimeSieve) -> Result<CharacterValue> {
    let f = factorize(n, sieve)?;
    Ok(CharacterValue::from_sign(f.big_omega() % 2 == 1) * chi(n))
}
