//! Independent oracles. Nothing here calls into the library's Bernoulli
//! recurrence or closed forms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Akiyama-Tanigawa table. The algorithm yields `B_1 = +1/2`, flipped here
/// to match the library's `B_1 = -1/2`.
pub fn akiyama_tanigawa(n: usize) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            row[j - 1] = (&row[j - 1] - &row[j]) * rat(j as i64);
        }
        out.push(row[0].clone());
    }
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `B_n(x)` by direct rational expansion over oracle coefficients.
pub fn brute_polynomial(n: usize, x: &BigRational, coeffs: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    let mut power = BigRational::one();
    // accumulate from the constant term upward: term k has x^(n-k)
    for k in (0..=n).rev() {
        total += BigRational::from_integer(binomial(n as u64, k as u64)) * &coeffs[k] * &power;
        power *= x;
    }
    total
}

pub fn power_sum(n: u32, upper_exclusive: u64) -> BigInt {
    (1..upper_exclusive)
        .map(|k| num_traits::pow(BigInt::from(k), n as usize))
        .sum()
}

pub fn trial_division(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| trial_division(k)).collect()
}

pub fn odd_primes_upto(n: u64) -> Vec<u64> {
    (3..=n).filter(|&k| trial_division(k)).collect()
}
