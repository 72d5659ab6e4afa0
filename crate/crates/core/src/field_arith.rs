//! Exact arithmetic in F_{p^n}.
//!
//! Elements are dense coefficient vectors over F_p reduced modulo a monic
//! irreducible polynomial of degree n. The modulus is chosen by a
//! deterministic scan so that every run builds the same field.

use serde::Serialize;

use crate::arith::{is_prime, prime_divisors};
use crate::config::ENUMERATION_BOUND;
use crate::error::{Error, Result};

/// Largest characteristic accepted by the polynomial routines; products of
/// two residues must fit in a `u64`.
const MAX_CHARACTERISTIC: u64 = u32::MAX as u64;

/// A prime power `q = p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub n: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("exponent must be at least 1".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let q = p
            .checked_pow(n)
            .ok_or_else(|| Error::InvalidInput(format!("{p}^{n} overflows u64")))?;
        Ok(Self { p, n, q })
    }

    /// Decomposes `q` as `p^n`.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        if is_prime(q) {
            return Ok(Self { p: q, n: 1, q });
        }
        for n in 2..=63u32 {
            let r = integer_root(q, n);
            if r < 2 {
                break;
            }
            if r.checked_pow(n) == Some(q) && is_prime(r) {
                return Ok(Self { p: r, n, q });
            }
        }
        Err(Error::NotPrimePower(q))
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// Checks the order against an enumeration bound.
    pub fn ensure_enumerable(&self, bound: u64) -> Result<()> {
        if self.q > bound {
            Err(Error::Capacity { q: self.q, bound })
        } else {
            Ok(())
        }
    }
}

/// Floor of the `n`-th root of `x`.
fn integer_root(x: u64, n: u32) -> u64 {
    let mut r = (x as f64).powf(1.0 / n as f64).round() as u64;
    while r > 0 && r.checked_pow(n).map_or(true, |v| v > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(n).is_some_and(|v| v <= x) {
        r += 1;
    }
    r
}

/// Polynomial over F_p, lowest degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u64>,
}

impl Polynomial {
    /// Builds a polynomial, reducing every coefficient mod `p`.
    pub fn new(coeffs: impl Into<Vec<u64>>, p: u64) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = Self { coeffs };
        poly.trim();
        poly
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect::<Vec<_>>();
        let mut out = Self { coeffs };
        out.trim();
        out
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect::<Vec<_>>();
        let mut out = Self { coeffs };
        out.trim();
        out
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b % p) % p;
            }
        }
        let mut out = Self { coeffs };
        out.trim();
        out
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, divisor: &Self, p: u64) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = *r.last().unwrap();
            if top != 0 {
                let factor = top * lead_inv % p;
                let shift = r.len() - 1 - dd;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    let idx = shift + i;
                    r[idx] = (r[idx] + p - factor * d % p) % p;
                }
            }
            r.pop();
        }
        let mut out = Self { coeffs: r };
        out.trim();
        out
    }

    pub fn gcd(&self, other: &Self, p: u64) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = inv_mod(a.leading(), p);
        Polynomial::new(a.coeffs.iter().map(|c| c * inv % p).collect::<Vec<_>>(), p)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self, p: u64) -> Self {
        let mut base = self.rem(modulus, p);
        let mut acc = Self::one().rem(modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p).rem(modulus, p);
            }
        }
        acc
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn pow_mod_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue mod prime `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_u64(a, p - 2, p)
}

fn check_characteristic(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p > MAX_CHARACTERISTIC {
        return Err(Error::InvalidInput(format!(
            "characteristic {p} exceeds {MAX_CHARACTERISTIC}"
        )));
    }
    Ok(())
}

/// Rabin's test: `f` (monic, degree n) is irreducible over F_p iff
/// `x^(p^n) = x mod f` and `gcd(x^(p^(n/r)) - x, f) = 1` for every prime `r | n`.
pub fn is_irreducible(f: &Polynomial, p: u64) -> Result<bool> {
    check_characteristic(p)?;
    let n = match f.degree() {
        None | Some(0) => {
            return Err(Error::InvalidInput(
                "irreducibility needs a polynomial of degree >= 1".into(),
            ))
        }
        Some(d) => d,
    };
    if !f.is_monic() {
        return Err(Error::InvalidInput(format!("{f} is not monic")));
    }
    if n == 1 {
        return Ok(true);
    }

    // frob[k] = x^(p^k) mod f
    let x = Polynomial::x();
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.rem(f, p));
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(p, f, p);
        frob.push(next);
    }
    if frob[n] != x.rem(f, p) {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let k = n / r as usize;
        let g = frob[k].sub(&x, p).gcd(f, p);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest monic irreducible of degree `n`, scanning the lower
/// coefficients as a base-p counter with the constant term as lowest digit.
pub fn find_irreducible(p: u64, n: u32) -> Result<Polynomial> {
    check_characteristic(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let n = n as usize;
    let count = p
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{n} overflows u64")))?;
    for m in 0..count {
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = m;
        for c in coeffs.iter_mut().take(n) {
            *c = rest % p;
            rest /= p;
        }
        coeffs[n] = 1;
        let f = Polynomial::new(coeffs, p);
        if is_irreducible(&f, p)? {
            return Ok(f);
        }
    }
    unreachable!("every degree has a monic irreducible polynomial over F_p")
}

/// An element of a [`FiniteField`]: exactly `n` coefficients, lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// F_q as F_p[x]/(modulus). Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteField {
    order: PrimePower,
    modulus: Polynomial,
    /// `x^n = -sum(modulus[i] x^i)`, stored as the negated low coefficients.
    reduction: Vec<u64>,
}

impl FiniteField {
    /// Builds F_q with the default enumeration bound.
    pub fn new(order: PrimePower) -> Result<Self> {
        Self::with_bound(order, ENUMERATION_BOUND)
    }

    pub fn with_bound(order: PrimePower, bound: u64) -> Result<Self> {
        order.ensure_enumerable(bound)?;
        let modulus = find_irreducible(order.p, order.n)?;
        Self::with_modulus(order, modulus)
    }

    /// Builds F_q over an explicit modulus.
    pub fn with_modulus(order: PrimePower, modulus: Polynomial) -> Result<Self> {
        if modulus.degree() != Some(order.n as usize) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus} does not have degree {}",
                order.n
            )));
        }
        if !is_irreducible(&modulus, order.p)? {
            return Err(Error::InvalidInput(format!(
                "{modulus} is reducible over F_{}",
                order.p
            )));
        }
        let p = order.p;
        let reduction = modulus.coeffs()[..order.n as usize]
            .iter()
            .map(|&c| (p - c) % p)
            .collect();
        Ok(Self {
            order,
            modulus,
            reduction,
        })
    }

    pub fn order(&self) -> PrimePower {
        self.order
    }

    pub fn q(&self) -> u64 {
        self.order.q
    }

    pub fn characteristic(&self) -> u64 {
        self.order.p
    }

    pub fn degree(&self) -> usize {
        self.order.n as usize
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        let p = self.order.p as i64;
        let mut e = self.zero();
        e.coeffs[0] = c.rem_euclid(p) as u64;
        e
    }

    /// Element from an explicit coefficient list (reduced mod the modulus).
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.order.p;
        let poly = Polynomial::new(coeffs.to_vec(), p).rem(&self.modulus, p);
        let mut e = self.zero();
        e.coeffs[..poly.coeffs().len()].copy_from_slice(poly.coeffs());
        e
    }

    /// Element whose coefficients are the base-p digits of `index`.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = self.order.p;
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % p;
            index /= p;
        }
        e
    }

    /// Inverse of [`from_index`](Self::from_index).
    pub fn index_of(&self, e: &FieldElement) -> u64 {
        let p = self.order.p;
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// All q elements in index order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.order.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.order.p;
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| (p - x) % p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.order.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + p - y) % p)
                .collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.order.p;
        let n = self.degree();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
        // Fold degrees >= n back down using x^n = reduction.
        for k in (n..prod.len()).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            for (i, &r) in self.reduction.iter().enumerate() {
                let idx = k - n + i;
                prod[idx] = (prod[idx] + top * r % p) % p;
            }
        }
        prod.truncate(n);
        FieldElement { coeffs: prod }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() - 2))
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn field_27() -> FiniteField {
        FiniteField::new(PrimePower::new(3, 3).unwrap()).unwrap()
    }

    proptest! {
        #[test]
        fn ring_axioms_in_f27(a in 0u64..27, b in 0u64..27, c in 0u64..27) {
            let f = field_27();
            let (a, b, c) = (f.from_index(a), f.from_index(b), f.from_index(c));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        }

        #[test]
        fn addition_closed_in_f1024(a in 0u64..1024, b in 0u64..1024) {
            let f = FiniteField::new(PrimePower::new(2, 10).unwrap()).unwrap();
            let s = f.add(&f.from_index(a), &f.from_index(b));
            prop_assert!(f.index_of(&s) < 1024);
            prop_assert_eq!(f.add(&s, &f.from_index(b)), f.from_index(a));
        }
    }
}
