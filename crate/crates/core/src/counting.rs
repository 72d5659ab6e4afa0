//! Points on `x^2 + y^2 = 1` and at infinity over F_q.
//!
//! Two routes are kept side by side: enumeration over an explicit field, and
//! the closed formulas. For odd q the affine error term is `(-1)^((q-1)/2)`
//! and the error at infinity is its negative, so the total is always `q + 1`.

use serde::Serialize;

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::field_arith::{FiniteField, PrimePower};
use crate::par;

/// Counts for one q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub q: PrimePower,
    pub affine: u64,
    pub infinity: u64,
    pub total: u64,
    pub affine_error: i8,
    pub infinity_error: i8,
}

impl PointCount {
    /// `q,p,n,affine,infinity,total,affine_error`
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.q.q, self.q.p, self.q.n, self.affine, self.infinity, self.total, self.affine_error
        )
    }
}

pub const CSV_HEADER: &str = "q,p,n,affine,infinity,total,affine_error";

/// `(-1)^((q-1)/2)` for odd q.
fn odd_sign(q: u64) -> i8 {
    if q % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Affine count by enumeration: tabulate how often each element occurs as a
/// square, then look up `1 - x^2` for every x.
pub fn count_affine_bruteforce(field: &FiniteField) -> u64 {
    if field.degree() == 1 {
        return count_affine_prime_field(field.q());
    }
    let q = field.q() as usize;
    let mut roots = vec![0u8; q];
    let squares: Vec<u64> = field
        .enumerate()
        .map(|y| field.index_of(&field.square(&y)))
        .collect();
    for &s in &squares {
        roots[s as usize] += 1;
    }
    let one = field.one();
    // squares[i] is x^2 for the element x with index i
    squares
        .iter()
        .map(|&sq| {
            let rhs = field.sub(&one, &field.from_index(sq));
            roots[field.index_of(&rhs) as usize] as u64
        })
        .sum()
}

/// Prime-field specialisation of [`count_affine_bruteforce`]; squares are
/// stepped incrementally, `(x+1)^2 = x^2 + 2x + 1`, so no division is needed.
pub fn count_affine_prime_field(p: u64) -> u64 {
    let n = p as usize;
    let mut roots = vec![0u8; n];
    let mut sq = 0u64;
    let mut step = 1u64; // 2x + 1
    for _ in 0..p {
        roots[sq as usize] += 1;
        sq += step;
        if sq >= p {
            sq -= p;
        }
        step += 2;
        if step >= p {
            step -= p;
        }
    }
    // walk x again; rhs = 1 - x^2
    let mut total = 0u64;
    let mut sq = 0u64;
    let mut step = 1u64;
    for _ in 0..p {
        let rhs = if sq <= 1 % p { 1 % p - sq } else { 1 + p - sq };
        total += roots[rhs as usize] as u64;
        sq += step;
        if sq >= p {
            sq -= p;
        }
        step += 2;
        if step >= p {
            step -= p;
        }
    }
    total
}

/// Affine count by enumerating all q^2 pairs. Only for small fields.
pub fn count_affine_pairs(field: &FiniteField) -> u64 {
    let one = field.one();
    let squares: Vec<_> = field.enumerate().map(|e| field.square(&e)).collect();
    let mut count = 0;
    for x2 in &squares {
        for y2 in &squares {
            if field.add(x2, y2) == one {
                count += 1;
            }
        }
    }
    count
}

/// Points at infinity by enumeration: y with `y^2 = -1`.
pub fn count_infinity_bruteforce(field: &FiniteField) -> u64 {
    let minus_one = field.from_int(-1);
    field
        .enumerate()
        .filter(|y| field.square(y) == minus_one)
        .count() as u64
}

pub fn count_affine_formula(q: PrimePower) -> u64 {
    if q.p == 2 {
        q.q
    } else if odd_sign(q.q) == 1 {
        q.q - 1
    } else {
        q.q + 1
    }
}

pub fn count_infinity(q: PrimePower) -> u64 {
    if q.p == 2 {
        1
    } else {
        (1 + odd_sign(q.q)) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossCheck {
    Never,
    /// Enumerate when `q` is within the bound, skip otherwise.
    IfEnumerable(u64),
    /// Enumerate, failing with a capacity error above the bound.
    Always(u64),
}

/// Formula counts, optionally confirmed by enumeration.
pub fn count_total(q: PrimePower, check: CrossCheck) -> Result<PointCount> {
    let affine = count_affine_formula(q);
    let infinity = count_infinity(q);
    let (affine_error, infinity_error) = if q.p == 2 {
        (0, 0)
    } else {
        let s = odd_sign(q.q);
        (s, -s)
    };
    let bound = match check {
        CrossCheck::Never => None,
        CrossCheck::IfEnumerable(b) => (q.q <= b).then_some(b),
        CrossCheck::Always(b) => {
            q.ensure_enumerable(b)?;
            Some(b)
        }
    };
    if let Some(b) = bound {
        let field = FiniteField::with_bound(q, b)?;
        let enumerated = count_affine_bruteforce(&field);
        if enumerated != affine {
            return Err(Error::CrossCheck {
                q: q.q,
                enumerated,
                formula: affine,
            });
        }
    }
    Ok(PointCount {
        q,
        affine,
        infinity,
        total: affine + infinity,
        affine_error,
        infinity_error,
    })
}

/// `sum_{x in F_p} x^k mod p`, by direct summation.
pub fn power_sum_mod_p(p: u64, k: u64) -> u64 {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    // 0^0 = 1 so that k = 0 sums p ones.
    (0..p).fold(0u64, |acc, x| (acc + pow(x, k)) % p)
}

/// `p - 1` when `k > 0` and `(p-1) | k`, otherwise 0.
pub fn power_sum_mod_p_closed(p: u64, k: u64) -> u64 {
    if k > 0 && k % (p - 1) == 0 {
        p - 1
    } else {
        0
    }
}

/// One scanned prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub count: PointCount,
    /// Enumerated affine count, when p was within the cross-check bound.
    pub enumerated: Option<u64>,
}

impl ScanEntry {
    pub fn agrees(&self) -> bool {
        self.enumerated.map_or(true, |e| e == self.count.affine)
    }
}

/// Counts for every odd prime `p <= limit`, ascending, enumerating F_p for
/// `p <= crosscheck_bound`.
pub fn scan_primes(limit: u64, workers: usize, crosscheck_bound: u64) -> Vec<ScanEntry> {
    let primes: Vec<u64> = primes_up_to(limit, workers)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    par::map_ordered(&primes, workers, |&p| {
        let q = PrimePower { p, n: 1, q: p };
        let count = count_total(q, CrossCheck::Never).expect("formula route is infallible");
        let enumerated = (p <= crosscheck_bound).then(|| count_affine_prime_field(p));
        ScanEntry { count, enumerated }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FiniteField {
        FiniteField::new(PrimePower::from_q(q).unwrap()).unwrap()
    }

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(count_affine_bruteforce(&field(5)), 4);
        assert_eq!(count_affine_bruteforce(&field(3)), 4);
        assert_eq!(count_affine_bruteforce(&field(8)), 8);
        assert_eq!(count_affine_bruteforce(&field(9)), 8);
        assert_eq!(count_affine_pairs(&field(5)), 4);
        assert_eq!(count_affine_pairs(&field(9)), 8);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(count_affine_formula(pp(5)), 4);
        assert_eq!(count_affine_formula(pp(3)), 4);
        assert_eq!(count_affine_formula(pp(64)), 64);
        assert_eq!(count_affine_formula(pp(27)), 28);
        assert_eq!(count_affine_bruteforce(&field(27)), 28);
    }

    #[test]
    fn the_plus_one_exponent_is_wrong() {
        // q - (-1)^((q+1)/2) would give 6 points over F_5.
        let plus_one_form = 5 - (-1i64).pow((5 + 1) / 2);
        assert_eq!(plus_one_form, 6);
        assert_ne!(count_affine_bruteforce(&field(5)) as i64, plus_one_form);
    }

    #[test]
    fn infinity_examples() {
        assert_eq!(count_infinity(pp(5)), 2);
        assert_eq!(count_infinity(pp(3)), 0);
        assert_eq!(count_infinity(pp(16)), 1);
        for q in [3, 5, 9, 16, 25, 27, 49] {
            assert_eq!(count_infinity_bruteforce(&field(q)), count_infinity(pp(q)), "{q}");
        }
    }

    #[test]
    fn total_examples() {
        let c = count_total(pp(7), CrossCheck::IfEnumerable(1 << 20)).unwrap();
        assert_eq!(c.total, 8);
        let c = count_total(pp(9), CrossCheck::Always(1 << 20)).unwrap();
        assert_eq!((c.total, c.affine, c.infinity), (10, 8, 2));
        assert_eq!(c.csv_row(), "9,3,2,8,2,10,1");
        let c = count_total(pp(2), CrossCheck::Always(1 << 20)).unwrap();
        assert_eq!((c.total, c.affine, c.infinity, c.affine_error, c.infinity_error), (3, 2, 1, 0, 0));
    }

    #[test]
    fn cross_check_above_bound() {
        let big = PrimePower::new(2, 21).unwrap();
        assert!(matches!(count_total(big, CrossCheck::Always(1 << 20)), Err(Error::Capacity { .. })));
        assert!(count_total(big, CrossCheck::IfEnumerable(1 << 20)).is_ok());
        let huge = PrimePower::new(1_000_000_007, 2).unwrap();
        assert_eq!(count_total(huge, CrossCheck::Never).unwrap().total, huge.q + 1);
    }

    #[test]
    fn point_count_invariants() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 81, 128, 243] {
            let c = count_total(pp(q), CrossCheck::Always(1 << 20)).unwrap();
            assert_eq!(c.total, c.affine + c.infinity);
            assert_eq!(c.affine as i64, q as i64 - c.affine_error as i64);
            assert_eq!(c.infinity as i64, 1 - c.infinity_error as i64);
            assert_eq!(c.total, q + 1);
            if q % 2 == 1 {
                assert_eq!(c.affine_error, -c.infinity_error);
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_mod_p(5, 4), 4);
        assert_eq!(power_sum_mod_p(5, 3), 0);
        assert_eq!(power_sum_mod_p(7, 0), 0);
    }

    #[test]
    fn power_sum_closed_form() {
        for p in primes_up_to(300, 1).into_iter().filter(|&p| p > 2) {
            for k in 0..=4 * (p - 1) {
                assert_eq!(power_sum_mod_p(p, k), power_sum_mod_p_closed(p, k), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn scan_examples() {
        let s = scan_primes(10, 1, 1 << 20);
        let ps: Vec<u64> = s.iter().map(|e| e.count.q.p).collect();
        assert_eq!(ps, vec![3, 5, 7]);
        let errs: Vec<i8> = s.iter().map(|e| e.count.affine_error).collect();
        assert_eq!(errs, vec![-1, 1, -1]);
        assert!(s.iter().all(|e| e.agrees()));
        assert!(scan_primes(2, 1, 1 << 20).is_empty());
    }

    #[test]
    fn scan_independent_of_workers() {
        assert_eq!(scan_primes(20_000, 1, 20_000), scan_primes(20_000, 4, 20_000));
    }

    #[test]
    #[ignore = "enumerates every F_p below 10^6; slow on one core"]
    fn scan_to_a_million() {
        let s = scan_primes(1_000_000, 8, 1 << 20);
        assert_eq!(s.len(), 78_497);
        assert!(s.iter().all(|e| e.count.total == e.count.q.p + 1 && e.agrees()));
    }
}
