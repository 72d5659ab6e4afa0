use conic_period::arith::is_prime;
use conic_period::counting::{
    count_affine_bruteforce, count_affine_formula, count_affine_pairs, count_infinity,
    count_infinity_bruteforce, count_total, scan_primes, CrossCheck,
};
use conic_period::field_arith::{find_irreducible, FiniteField, PrimePower};
use conic_period::Error;

#[test]
fn pair_enumeration_matches_square_table() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81, 121, 125] {
        let field = FiniteField::new(PrimePower::from_q(q).unwrap()).unwrap();
        assert_eq!(count_affine_pairs(&field), count_affine_bruteforce(&field), "q = {q}");
        assert_eq!(count_infinity_bruteforce(&field), count_infinity(field.order()), "q = {q}");
    }
}

#[test]
fn counts_do_not_depend_on_modulus() {
    // F_9 via x^2 + 1 and via the scan's choice.
    let pp = PrimePower::new(3, 2).unwrap();
    let chosen = FiniteField::new(pp).unwrap();
    let other = FiniteField::with_modulus(pp, conic_period::field_arith::Polynomial::new(vec![1, 0, 1], 3)).unwrap();
    assert_eq!(count_affine_bruteforce(&chosen), count_affine_bruteforce(&other));
    assert_eq!(find_irreducible(2, 3).unwrap().to_string(), "x^3 + x + 1");
}

#[test]
fn documented_rows() {
    let rows = [(3, 4, 0, 4), (5, 4, 2, 6), (8, 8, 1, 9), (9, 8, 2, 10), (27, 28, 0, 28)];
    for (q, affine, inf, total) in rows {
        let c = count_total(PrimePower::from_q(q).unwrap(), CrossCheck::Always(1 << 20)).unwrap();
        assert_eq!((c.affine, c.infinity, c.total), (affine, inf, total), "q = {q}");
        assert_eq!(c.affine, count_affine_formula(c.q));
    }
}

#[test]
fn capacity_is_enforced() {
    let p = (1u64 << 20..).find(|&n| is_prime(n)).unwrap();
    let big = PrimePower::new(p, 1).unwrap();
    assert!(matches!(count_total(big, CrossCheck::Always(1 << 20)), Err(Error::Capacity { .. })));
    assert_eq!(count_total(big, CrossCheck::IfEnumerable(1 << 20)).unwrap().total, p + 1);
}

#[test]
fn scan_is_worker_independent() {
    let one: Vec<_> = scan_primes(20_000, 1, 4096).into_iter().map(|e| e.count).collect();
    let four: Vec<_> = scan_primes(20_000, 4, 4096).into_iter().map(|e| e.count).collect();
    assert_eq!(one, four);
    assert_eq!(one.len(), 2261);
}
