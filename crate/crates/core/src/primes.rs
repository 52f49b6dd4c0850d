//! Primality, prime ranges for sweeps, and factorials modulo prime powers.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::exact::{Integer, ResidueClass};

// Miller-Rabin with these bases is exact for every n < 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact below 2^64. Larger inputs get a strong probable-prime test to the
/// same witness set.
pub fn is_prime(n: &Integer) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if *n < BigInt::zero() {
        return false;
    }
    for &w in &WITNESSES {
        if (n % w).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Closed interval `[lower, upper]` of candidate primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeRange {
    lower: u64,
    upper: u64,
}

impl PrimeRange {
    pub fn new(lower: u64, upper: u64) -> Result<Self> {
        if lower < 2 {
            return Err(invalid(format!(
                "range lower bound must be >= 2, got {lower}"
            )));
        }
        if upper < lower {
            return Err(invalid(format!("empty range [{lower}, {upper}]")));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> u64 {
        self.upper
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        (self.lower..=self.upper).filter(|&n| is_prime_u64(n))
    }
}

pub fn primes_in(range: &PrimeRange) -> Vec<u64> {
    range.iter().collect()
}

/// `n!` modulo `modulus`, reducing after every factor.
pub fn factorial_mod(n: u64, modulus: &Integer) -> Result<ResidueClass> {
    let mut acc = Integer::one().mod_floor(modulus);
    for k in 2..=n {
        acc = (acc * k).mod_floor(modulus);
    }
    ResidueClass::new(&acc, modulus)
}
