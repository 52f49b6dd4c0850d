//! Floor-sum families over a prime `p`, each with a brute-force evaluator
//! and, where one is known, an exact closed form.
//!
//! Brute evaluators use exact big-integer powers and no modular shortcuts:
//! they are the reference the closed forms are checked against.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_polynomial, BernoulliCache};
use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, integer_kth_root, pow_integer, Integer, Rational};
use crate::primes::is_prime_u64;

fn rat(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime_u64(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn exponent(p: u64) -> Result<u32> {
    u32::try_from(p).map_err(|_| invalid(format!("exponent {p} too large")))
}

/// `sum_{i,j=1}^{p-1} floor(i*j / p)`.
pub fn grid_sum(p: u64) -> Integer {
    let p = u128::from(p);
    let mut total: u128 = 0;
    for i in 1..p {
        for j in 1..p {
            total += i * j / p;
        }
    }
    Integer::from(total)
}

/// `(p-2)(p-1)^2 / 4`.
pub fn grid_sum_closed(p: &Integer) -> Rational {
    let pm1 = p - 1;
    Rational::new((p - 2) * &pm1 * &pm1, Integer::from(4))
}

/// `sum_{k=1}^{(p-1)(p-2)} floor((k*p)^(1/3))`, with exact integer cube roots.
pub fn cube_root_sum(p: u64) -> Integer {
    if p < 3 {
        return Integer::zero();
    }
    let upper = (p - 1) * (p - 2);
    let p = Integer::from(p);
    (1..=upper)
        .map(|k| integer_kth_root(&(&p * k), 3).expect("argument is positive"))
        .sum()
}

/// `(3p-5)(p-2)(p-1) / 4`.
pub fn cube_root_sum_closed(p: &Integer) -> Rational {
    Rational::new((p * 3 - 5) * (p - 2) * (p - 1), Integer::from(4))
}

/// `sum_{k=1}^{p-r} floor(k^p / p)` for an odd prime `p` and `1 <= r <= p-1`.
pub fn partial_fermat_sum(p: u64, r: u64) -> Result<Integer> {
    require_odd_prime(p)?;
    if r < 1 || r > p - 1 {
        return Err(invalid(format!("r must lie in [1, {}], got {r}", p - 1)));
    }
    let e = exponent(p)?;
    let p_big = Integer::from(p);
    Ok((1..=p - r)
        .map(|k| pow_integer(&Integer::from(k), e).div_floor(&p_big))
        .sum())
}

/// The sum `T(p) = sum_{k=1}^{p-1} floor(k^p / p)`.
pub fn t_sum(p: u64) -> Result<Integer> {
    partial_fermat_sum(p, 1)
}

/// Checks `floor(n^p / p) = (n^p - n) / p` for every `1 <= n <= p-1`.
pub fn fermat_floor_identity_check(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    let e = exponent(p)?;
    let p_big = Integer::from(p);
    Ok((1..p).all(|n| {
        let n = Integer::from(n);
        let power = pow_integer(&n, e);
        let floor = power.div_floor(&p_big);
        let diff = power - &n;
        diff.is_multiple_of(&p_big) && diff / &p_big == floor
    }))
}

/// `S_q(p) = sum_{k=1}^{p-1} floor(k^(2q+1) / p)`.
pub fn s_q_sum(p: u64, q: u32) -> Result<Integer> {
    if p < 2 {
        return Err(invalid(format!("p must be >= 2, got {p}")));
    }
    let e = 2 * q + 1;
    let p_big = Integer::from(p);
    Ok((1..p)
        .map(|k| pow_integer(&Integer::from(k), e).div_floor(&p_big))
        .sum())
}

fn require_q_at_least_one(q: u32) -> Result<()> {
    if q == 0 {
        return Err(invalid("closed forms are only stated for q >= 1"));
    }
    Ok(())
}

/// The double binomial sum
/// `(p-1)(p^(2q)-1)/2 + 1/2 sum_{r=1}^{2q} (-1)^r/(r+1) C(2q+1, r) sum_{l=0}^{r} C(r+1, l) B_l p^(2q+1-l)`,
/// evaluated term by term with the inner bounds exactly as written.
pub fn s_q_closed_binomial(p: &Integer, q: u32, cache: &BernoulliCache) -> Result<Rational> {
    require_q_at_least_one(q)?;
    let top = 2 * q + 1;
    let leading = Rational::new((p - 1) * (pow_integer(p, 2 * q) - 1), Integer::from(2));
    let mut outer = Rational::zero();
    for r in 1..=2 * q {
        let inner: Rational = (0..=r)
            .map(|l| {
                rat(binomial(u64::from(r) + 1, i64::from(l)))
                    * cache.number(l as usize)
                    * rat(pow_integer(p, top - l))
            })
            .sum();
        let sign = if r % 2 == 0 { 1 } else { -1 };
        outer += Rational::new(Integer::from(sign), Integer::from(r + 1))
            * rat(binomial(u64::from(top), i64::from(r)))
            * inner;
    }
    Ok(leading + outer / rat(2))
}

/// `[(B_n(p+1) - B_n(1)) + (B_n(p) - B_n(0))] / (2p n) - (p^(2q) + p - 1)/2`
/// with `n = 2q + 2`.
pub fn s_q_closed_polynomial(p: &Integer, q: u32, cache: &BernoulliCache) -> Result<Rational> {
    require_q_at_least_one(q)?;
    if !p.is_positive() {
        return Err(invalid(format!("p must be >= 1, got {p}")));
    }
    let n = 2 * q as usize + 2;
    let x = rat(p.clone());
    let upper = bernoulli_polynomial(n, &(&x + Rational::one()), cache)
        - bernoulli_polynomial(n, &Rational::one(), cache);
    let lower =
        bernoulli_polynomial(n, &x, cache) - bernoulli_polynomial(n, &Rational::zero(), cache);
    let scale = rat(p * 2 * n);
    let tail = Rational::new(pow_integer(p, 2 * q) + p - 1, Integer::from(2));
    Ok((upper + lower) / scale - tail)
}

/// The factored polynomials for `S_1`, `S_2` and `S_3`.
pub fn s1_s2_s3_closed(p: &Integer, q: u32) -> Result<Rational> {
    let base = (p - 2) * (p - 1) * (p + 1);
    let (factor, denom) = match q {
        1 => (Integer::one(), 4),
        2 => (p * p * 2 - p * 2 + 3, 12),
        3 => {
            let p2 = p * p;
            let p3 = &p2 * p;
            let p4 = &p3 * p;
            (p4 * 3 - p3 * 6 + p2 * 5 - p * 2 + 6, 24)
        }
        _ => {
            return Err(invalid(format!(
                "factored closed forms exist for q in 1..=3, got {q}"
            )))
        }
    };
    Ok(Rational::new(base * factor, Integer::from(denom)))
}

/// `(B_{p+1}(p+1) + B_{p+1}(p) - 2 B_{p+1}) / (p (p+1))`.
pub fn bernoulli_endpoint_quotient(p: &Integer, cache: &BernoulliCache) -> Result<Rational> {
    if !p.is_positive() {
        return Err(invalid(format!("p must be >= 1, got {p}")));
    }
    let n = usize::try_from(p + 1).map_err(|_| invalid(format!("degree {p}+1 too large")))?;
    let x = rat(p.clone());
    let sum = bernoulli_polynomial(n, &(&x + Rational::one()), cache)
        + bernoulli_polynomial(n, &x, cache)
        - cache.number(n) * rat(2);
    Ok(sum / rat(p * (p + 1)))
}

/// Closed form of `T(p)`:
/// `(B_{p+1}(p+1) + B_{p+1}(p) - 2 B_{p+1}) / (2p(p+1)) - (p^(p-1) + p - 1)/2`.
pub fn t_closed(p: &Integer, cache: &BernoulliCache) -> Result<Rational> {
    let quotient = bernoulli_endpoint_quotient(p, cache)?;
    let e = u32::try_from(p - 1).map_err(|_| invalid(format!("exponent {p}-1 too large")))?;
    let tail = Rational::new(pow_integer(p, e) + p - 1, Integer::from(2));
    Ok(quotient / rat(2) - tail)
}

/// Checks `p^2 | j^p + (p-j)^p` for every `1 <= j <= (p-1)/2`.
pub fn pairing_congruence_check(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    let e = exponent(p)?;
    let p_sq = Integer::from(p) * p;
    Ok((1..=(p - 1) / 2).all(|j| {
        let pair = pow_integer(&Integer::from(j), e) + pow_integer(&Integer::from(p - j), e);
        pair.is_multiple_of(&p_sq)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FloorSumKind {
    Grid,
    CubeRoot,
    PartialFermat,
    #[serde(rename = "S_q")]
    Sq,
    #[serde(rename = "T")]
    T,
}

impl FloorSumKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Grid => "grid",
            Self::CubeRoot => "cube_root",
            Self::PartialFermat => "partial_fermat",
            Self::Sq => "S_q",
            Self::T => "T",
        }
    }
}

impl fmt::Display for FloorSumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FloorSumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Self::Grid),
            "cube_root" | "cube-root" => Ok(Self::CubeRoot),
            "partial" | "partial_fermat" | "partial-fermat" => Ok(Self::PartialFermat),
            "S" | "s" | "S_q" | "sq" => Ok(Self::Sq),
            "T" | "t" => Ok(Self::T),
            other => Err(invalid(format!("unknown sum kind {other:?}"))),
        }
    }
}

/// One evaluated sum: its brute value and, when defined, its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumEvaluation {
    pub kind: FloorSumKind,
    pub p: u64,
    pub q: Option<u32>,
    pub r: Option<u64>,
    pub brute_value: Integer,
    pub closed_value: Option<Rational>,
}

impl SumEvaluation {
    /// True when there is no closed form or it equals the brute value.
    pub fn agrees(&self) -> bool {
        self.closed_value
            .as_ref()
            .is_none_or(|c| c.is_integer() && c.numer() == &self.brute_value)
    }
}

/// Evaluates a sum family at the given parameters. `p` must be prime.
pub fn evaluate(
    kind: FloorSumKind,
    p: u64,
    q: Option<u32>,
    r: Option<u64>,
    cache: &BernoulliCache,
) -> Result<SumEvaluation> {
    if !is_prime_u64(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let p_big = Integer::from(p);
    let (brute_value, closed_value, q, r) = match kind {
        FloorSumKind::Grid => (grid_sum(p), Some(grid_sum_closed(&p_big)), None, None),
        FloorSumKind::CubeRoot => {
            if p < 3 {
                return Err(invalid("the cube-root sum needs p >= 3"));
            }
            (
                cube_root_sum(p),
                Some(cube_root_sum_closed(&p_big)),
                None,
                None,
            )
        }
        FloorSumKind::PartialFermat => {
            let r = r.ok_or_else(|| invalid("the partial sum needs r"))?;
            (partial_fermat_sum(p, r)?, None, None, Some(r))
        }
        FloorSumKind::Sq => {
            let q = q.ok_or_else(|| invalid("S_q needs q"))?;
            let closed = if q == 0 {
                None
            } else {
                Some(s_q_closed_polynomial(&p_big, q, cache)?)
            };
            (s_q_sum(p, q)?, closed, Some(q), None)
        }
        FloorSumKind::T => (t_sum(p)?, Some(t_closed(&p_big, cache)?), None, None),
    };
    Ok(SumEvaluation {
        kind,
        p,
        q,
        r,
        brute_value,
        closed_value,
    })
}
