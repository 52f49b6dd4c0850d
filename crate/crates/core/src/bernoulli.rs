//! Bernoulli numbers (with `B_1 = -1/2`), Bernoulli polynomials at rational
//! arguments, and Faulhaber power sums.

use std::sync::RwLock;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::exact::{Integer, Rational};
use crate::primes::is_prime_u64;

/// Memo of `B_0, B_1, ...`, grown on demand.
///
/// Extension happens under a write lock, so a cache can be shared across
/// threads; every reader sees a prefix of the same sequence.
#[derive(Debug)]
pub struct BernoulliCache {
    values: RwLock<Vec<Rational>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Integer {
    values
        .into_iter()
        .fold(Integer::one(), |acc, v| acc.lcm(v.denom()))
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self {
            values: RwLock::new(vec![Rational::one()]),
        }
    }

    /// Highest index currently memoized.
    pub fn computed_up_to(&self) -> usize {
        self.values.read().expect("bernoulli cache poisoned").len() - 1
    }

    pub fn number(&self, n: usize) -> Rational {
        self.ensure(n);
        self.values.read().expect("bernoulli cache poisoned")[n].clone()
    }

    /// Snapshot of `B_0..=B_n`.
    pub fn prefix(&self, n: usize) -> Vec<Rational> {
        self.ensure(n);
        self.values.read().expect("bernoulli cache poisoned")[..=n].to_vec()
    }

    fn ensure(&self, n: usize) {
        if self.computed_up_to() >= n {
            return;
        }
        let mut values = self.values.write().expect("bernoulli cache poisoned");
        while values.len() <= n {
            let m = values.len();
            let next = if m >= 3 && m % 2 == 1 {
                Rational::zero()
            } else {
                next_from_recurrence(&values)
            };
            values.push(next);
        }
    }
}

/// `B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k` where `m = known.len()`.
/// The sum is accumulated over the common denominator of the known terms.
fn next_from_recurrence(known: &[Rational]) -> Rational {
    let m = known.len() as u64;
    let common = lcm_of_denominators(known);
    let mut total = Integer::zero();
    let mut coeff = Integer::one(); // C(m+1, k)
    for (k, b) in known.iter().enumerate() {
        if !b.is_zero() {
            total += &coeff * b.numer() * (&common / b.denom());
        }
        coeff = coeff * (m + 1 - k as u64) / (k as u64 + 1);
    }
    Rational::new(-total, common * (m + 1))
}

pub fn bernoulli_number(n: usize, cache: &BernoulliCache) -> Rational {
    cache.number(n)
}

/// `B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^(n-k)`.
pub fn bernoulli_polynomial(n: usize, x: &Rational, cache: &BernoulliCache) -> Rational {
    let coeffs = cache.prefix(n);
    // With x = a/b and L the lcm of the B_k denominators, scale the whole sum
    // by L * b^n so every term is an integer.
    let (a, b) = (x.numer(), x.denom());
    let common = lcm_of_denominators(&coeffs);
    let mut a_pows = Vec::with_capacity(n + 1);
    a_pows.push(Integer::one());
    for i in 0..n {
        let next = &a_pows[i] * a;
        a_pows.push(next);
    }
    let mut total = Integer::zero();
    let mut b_pow = Integer::one();
    let mut coeff = Integer::one(); // C(n, k)
    for (k, bk) in coeffs.iter().enumerate() {
        if !bk.is_zero() {
            total += &coeff * bk.numer() * (&common / bk.denom()) * &a_pows[n - k] * &b_pow;
        }
        b_pow *= b;
        coeff = coeff * (n - k) / (k + 1);
    }
    Rational::new(total, common * b.pow(n as u32))
}

/// A Bernoulli polynomial evaluated at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliPolynomialValue {
    pub degree: usize,
    pub argument: Rational,
    pub value: Rational,
}

impl BernoulliPolynomialValue {
    pub fn evaluate(degree: usize, argument: Rational, cache: &BernoulliCache) -> Self {
        let value = bernoulli_polynomial(degree, &argument, cache);
        Self {
            degree,
            argument,
            value,
        }
    }
}

/// `sum_{k=1}^{r-1} k^n`, computed as `(B_{n+1}(r) - B_{n+1}(0)) / (n+1)`.
pub fn faulhaber_sum(exponent: usize, upper: &Integer, cache: &BernoulliCache) -> Result<Rational> {
    if exponent == 0 {
        return Err(invalid("faulhaber exponent must be >= 1"));
    }
    if !upper.is_positive() {
        return Err(invalid(format!(
            "faulhaber upper bound must be >= 1, got {upper}"
        )));
    }
    let degree = exponent + 1;
    let at_r = bernoulli_polynomial(degree, &Rational::from_integer(upper.clone()), cache);
    Ok((at_r - cache.number(degree)) / Rational::from_integer(Integer::from(degree)))
}

/// Checks `B_n(-x) = B_n(x + 1)` for even `n`.
pub fn reflection_check(n: usize, x: &Rational, cache: &BernoulliCache) -> Result<bool> {
    if n % 2 == 1 {
        return Err(invalid(format!("reflection needs an even degree, got {n}")));
    }
    let shifted = x + Rational::one();
    Ok(bernoulli_polynomial(n, &-x, cache) == bernoulli_polynomial(n, &shifted, cache))
}

/// Checks that `B_n + sum_{(q-1) | n} 1/q` is an integer.
pub fn von_staudt_clausen_check(n: usize, cache: &BernoulliCache) -> Result<bool> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!(
            "von Staudt-Clausen needs an even n >= 2, got {n}"
        )));
    }
    let correction: Rational = (1..=n as u64)
        .filter(|&d| (n as u64).is_multiple_of(d) && is_prime_u64(d + 1))
        .map(|d| Rational::new(Integer::one(), Integer::from(d + 1)))
        .sum();
    Ok((cache.number(n) + correction).is_integer())
}
