//! Exact integer and rational arithmetic: p-adic valuation, congruences
//! between rationals modulo an integer, floor roots and binomials.
//!
//! A congruence `a ≡ b (mod m)` between rationals is defined only when both
//! denominators are coprime to `m`; it holds iff `m` divides the numerator
//! of `a - b` in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::primes;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Canonical representative of a residue class, `0 <= value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    value: Integer,
    modulus: Integer,
}

impl ResidueClass {
    pub fn new(value: &Integer, modulus: &Integer) -> Result<Self> {
        if *modulus < Integer::from(2) {
            return Err(invalid(format!("modulus must be >= 2, got {modulus}")));
        }
        Ok(Self {
            value: value.mod_floor(modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn into_value(self) -> Integer {
        self.value
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// p-adic valuation of a rational; zero maps to `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

fn multiplicity(n: &Integer, p: &Integer) -> i64 {
    let mut n = n.abs();
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        n = q;
        count += 1;
    }
}

pub fn padic_valuation(x: &Rational, p: &Integer) -> Result<Valuation> {
    if !primes::is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(
        multiplicity(x.numer(), p) - multiplicity(x.denom(), p),
    ))
}

/// Inverse of `a` modulo `m` in `[0, m)`, if it exists.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let ext = a.mod_floor(m).extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

/// Reduces a rational modulo `m`: the unique `r` in `[0, m)` with
/// `denominator * r ≡ numerator (mod m)`.
pub fn rational_mod(x: &Rational, m: &Integer) -> Result<ResidueClass> {
    if *m < Integer::from(2) {
        return Err(invalid(format!("modulus must be >= 2, got {m}")));
    }
    let inv = mod_inverse(x.denom(), m).ok_or_else(|| Error::NonInvertibleDenominator {
        denominator: x.denom().clone(),
        modulus: m.clone(),
    })?;
    ResidueClass::new(&(x.numer() * inv), m)
}

pub fn congruent(a: &Rational, b: &Rational, m: &Integer) -> Result<bool> {
    Ok(rational_mod(a, m)? == rational_mod(b, m)?)
}

/// Floor of the k-th root: the `r` with `r^k <= n < (r+1)^k`.
pub fn integer_kth_root(n: &Integer, k: u32) -> Result<Integer> {
    if n.is_negative() {
        return Err(invalid(format!("cannot take a root of negative {n}")));
    }
    if k == 0 {
        return Err(invalid("root degree must be >= 1"));
    }
    if k == 1 || n.is_zero() {
        return Ok(n.clone());
    }
    // Start above the root; Newton steps then decrease monotonically to the floor.
    let bits = n.bits();
    let mut x = Integer::one() << bits.div_ceil(u64::from(k));
    let k_big = Integer::from(k);
    let k_minus_1 = Integer::from(k - 1);
    loop {
        let y = (&k_minus_1 * &x + n / Pow::pow(&x, k - 1)) / &k_big;
        if y >= x {
            return Ok(x);
        }
        x = y;
    }
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        // Each prefix product is itself a binomial coefficient, so the division is exact.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn pow_integer(base: &Integer, exp: u32) -> Integer {
    Pow::pow(base, exp)
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    s.trim()
        .parse::<Integer>()
        .map_err(|_| invalid(format!("not an integer: {s:?}")))
}

/// Parses `"a/b"` or `"a"` and normalizes to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (parse_integer(n)?, parse_integer(d)?),
        None => (parse_integer(s)?, Integer::one()),
    };
    if denom.is_zero() {
        return Err(invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Shorthand for building rationals from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(Integer::from(numer), Integer::from(denom))
}

pub fn int(n: impl Into<Integer>) -> Integer {
    n.into()
}
