use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use whcalc_core::arith::*;
use whcalc_core::OddPrime;

fn odd_primes_below(n: u64) -> Vec<u64> {
    (3..n).step_by(2).filter(|&k| OddPrime::new(k).is_ok()).collect()
}

/// Exact `B_0, ..., B_n` from `sum_{j<=m} C(m+1, j) B_j = 0`.
fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n + 1 {
        let prev = &rows[m - 1];
        let mut row = vec![BigInt::one(); m + 1];
        for j in 1..m {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(rows[m + 1][j].clone()) * bj;
        }
        b.push(-s / BigRational::from_integer(rows[m + 1][m].clone()));
    }
    b
}

#[test]
fn regularity_matches_exact_bernoulli_numbers() {
    let primes = odd_primes_below(200);
    let b = bernoulli(200);
    for &p in &primes {
        let divides = (1..)
            .map(|k| 2 * k)
            .take_while(|&k| k <= p as usize - 3)
            .any(|k| (b[k].numer() % BigInt::from(p)).is_zero());
        assert_eq!(is_regular(OddPrime::new(p).unwrap()).unwrap(), !divides, "p={p}");
    }
    let irregular: Vec<u64> = primes
        .into_iter()
        .filter(|&p| !is_regular(OddPrime::new(p).unwrap()).unwrap())
        .collect();
    assert_eq!(irregular, vec![37, 59, 67, 101, 103, 131, 149, 157]);
}

#[test]
fn binomials_match_big_integers() {
    for p in [3u64, 5, 7, 11] {
        let pr = OddPrime::new(p).unwrap();
        let mut row = vec![BigUint::one()];
        for k in 0..=500u64 {
            for (i, c) in row.iter().enumerate() {
                let expect = (c % BigUint::from(p)).to_u64_digits().first().copied().unwrap_or(0);
                assert_eq!(binom_mod_p(pr, k as i64, i as u64), expect, "p={p} C({k},{i})");
            }
            let mut next = vec![BigUint::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
    }
}

fn prime() -> impl Strategy<Value = OddPrime> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13)].prop_map(|p| OddPrime::new(p).unwrap())
}

proptest! {
    #[test]
    fn valuation_is_additive(p in prime(), a in 1u64..1_000_000, b in 1u64..1_000_000) {
        prop_assert_eq!(vp(p, a * b).unwrap(), vp(p, a).unwrap() + vp(p, b).unwrap());
    }

    #[test]
    fn legendre_recursion(p in prime(), n in 1u64..100_000) {
        prop_assert_eq!(vp_factorial(p, n), vp_factorial(p, n - 1) + vp(p, n).unwrap());
    }

    #[test]
    fn vandermonde(p in prime(), m in -30i64..60, n in 0i64..60, r in 0u64..60) {
        // C(m+n, r) = sum_i C(m, i) C(n, r-i)
        let pp = p.get();
        let lhs = binom_mod_p(p, m + n, r);
        let rhs = (0..=r).fold(0, |acc, i| (acc + binom_mod_p(p, m, i) * binom_mod_p(p, n, r - i)) % pp);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pascal_rule(p in prime(), k in -200i64..200, i in 1u64..200) {
        let pp = p.get();
        prop_assert_eq!(
            binom_mod_p(p, k, i),
            (binom_mod_p(p, k - 1, i) + binom_mod_p(p, k - 1, i - 1)) % pp
        );
    }
}
