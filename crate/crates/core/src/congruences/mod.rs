//! Verdict engine: evaluates both sides of each congruence or identity,
//! reduces them to canonical residues and records pass/fail.
//!
//! A congruence whose side has a denominator sharing a factor with the
//! modulus is undefined. It yields a failing [`Verdict`] with no residue for
//! that side and an explanatory note, never a silent pass.

mod report;
mod sweep;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_polynomial, BernoulliCache};
use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, pow_integer, rational_mod, Integer, Rational};
use crate::primes::{factorial_mod, is_prime_u64};
use crate::primesums::{
    bernoulli_endpoint_quotient, cube_root_sum, cube_root_sum_closed, grid_sum, grid_sum_closed,
    partial_fermat_sum,
};

pub use report::{from_csv, to_csv, to_json, to_text, ReportError};
pub use sweep::{applicable, sweep, RPolicy, SweepMetadata, SweepOptions, SweepReport};

/// Every congruence or identity the engine knows, in canonical report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Theorem1,
    Theorem2,
    EqUn,
    EqThreeMinusP,
    GlaisherP2,
    SunP3,
    WolstenholmeP3,
    GridIdentity,
    CubeRootIdentity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        Self::Theorem1,
        Self::Theorem2,
        Self::EqUn,
        Self::EqThreeMinusP,
        Self::GlaisherP2,
        Self::SunP3,
        Self::WolstenholmeP3,
        Self::GridIdentity,
        Self::CubeRootIdentity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::EqUn => "eq_un",
            Self::EqThreeMinusP => "eq_three_minus_p",
            Self::GlaisherP2 => "glaisher_p2",
            Self::SunP3 => "sun_p3",
            Self::WolstenholmeP3 => "wolstenholme_p3",
            Self::GridIdentity => "grid_identity",
            Self::CubeRootIdentity => "cube_root_identity",
        }
    }

    pub fn takes_r(self) -> bool {
        self == Self::Theorem1
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts the tag, its kebab-case spelling, or a short name such as `wolstenholme`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        if let Some(id) = Self::ALL.iter().find(|id| id.tag() == key) {
            return Ok(*id);
        }
        match key.as_str() {
            "t1" => Ok(Self::Theorem1),
            "t2" => Ok(Self::Theorem2),
            "three_minus_p" => Ok(Self::EqThreeMinusP),
            "glaisher" => Ok(Self::GlaisherP2),
            "sun" => Ok(Self::SunP3),
            "wolstenholme" => Ok(Self::WolstenholmeP3),
            "grid" => Ok(Self::GridIdentity),
            "cube_root" => Ok(Self::CubeRootIdentity),
            _ => Err(invalid(format!("unknown theorem {s:?}"))),
        }
    }
}

/// Outcome of one check. `modulus == 0` marks an exact identity, in which
/// case the "residues" are the two exact values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub p: u64,
    pub r: Option<u64>,
    pub modulus: u64,
    pub lhs_residue: Option<u64>,
    pub rhs_residue: Option<u64>,
    pub pass: bool,
    pub note: Option<String>,
}

fn to_u64(n: &Integer) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| invalid(format!("{n} does not fit in a report field")))
}

fn rat(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

impl Verdict {
    /// Reduces both sides modulo `modulus` and compares.
    pub fn congruence(
        theorem: TheoremId,
        p: u64,
        r: Option<u64>,
        modulus: &Integer,
        lhs: &Rational,
        rhs: &Rational,
    ) -> Result<Self> {
        let mut notes = Vec::new();
        let mut reduce = |side: &str, x: &Rational| -> Result<Option<u64>> {
            match rational_mod(x, modulus) {
                Ok(res) => Ok(Some(to_u64(res.value())?)),
                Err(err @ Error::NonInvertibleDenominator { .. }) => {
                    notes.push(format!("undefined {side}: {err}"));
                    Ok(None)
                }
                Err(err) => Err(err),
            }
        };
        let lhs_residue = reduce("lhs", lhs)?;
        let rhs_residue = reduce("rhs", rhs)?;
        Ok(Self {
            theorem,
            p,
            r,
            modulus: to_u64(modulus)?,
            pass: lhs_residue.is_some() && lhs_residue == rhs_residue,
            lhs_residue,
            rhs_residue,
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        })
    }

    /// Exact equality between a brute value and a closed form.
    pub fn identity(
        theorem: TheoremId,
        p: u64,
        brute: &Integer,
        closed: &Rational,
    ) -> Result<Self> {
        let (rhs_residue, note) = if closed.is_integer() {
            (Some(to_u64(closed.numer())?), None)
        } else {
            (
                None,
                Some(format!("closed form {closed} is not an integer")),
            )
        };
        let lhs_residue = Some(to_u64(brute)?);
        Ok(Self {
            theorem,
            p,
            r: None,
            modulus: 0,
            pass: lhs_residue == rhs_residue,
            lhs_residue,
            rhs_residue,
            note,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.modulus == 0
    }

    fn add_note(&mut self, note: impl Into<String>) {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(existing) => format!("{existing}; {note}"),
            None => note,
        });
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} p={}", self.theorem, self.p)?;
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        let side = |v: Option<u64>| v.map_or_else(|| "undefined".to_string(), |v| v.to_string());
        let (lhs, rhs) = (side(self.lhs_residue), side(self.rhs_residue));
        let status = if self.pass { "pass" } else { "fail" };
        if self.is_identity() {
            let rel = if self.pass { "=" } else { "≠" };
            write!(f, ": {status} ({lhs} {rel} {rhs})")?;
        } else {
            let rel = if self.pass { "≡" } else { "≢" };
            write!(f, ": {status} ({lhs} {rel} {rhs} mod {})", self.modulus)?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

fn require_prime(p: u64, min: u64) -> Result<()> {
    if !is_prime_u64(p) || p < min {
        return Err(invalid(format!("p must be a prime >= {min}, got {p}")));
    }
    Ok(())
}

/// Left and right sides of the partial-sum congruence for `(p, r)`:
/// `sum_{k=1}^{p-r} floor(k^p/p)` and
/// `(B_{p+1}(r) - B_{p+1}(0)) / (p(p+1)) + (r-1-p)(p-r)/(2p)`.
pub fn theorem1_sides(p: u64, r: u64, cache: &BernoulliCache) -> Result<(Rational, Rational)> {
    require_prime(p, 3)?;
    let lhs = partial_fermat_sum(p, r)?;
    let n = p as usize + 1;
    let (p_big, r_big) = (Integer::from(p), Integer::from(r));
    let bernoulli_part = (bernoulli_polynomial(n, &rat(r_big.clone()), cache) - cache.number(n))
        / rat(&p_big * (&p_big + 1));
    let correction = Rational::new((&r_big - 1 - &p_big) * (&p_big - &r_big), &p_big * 2);
    Ok((rat(lhs), bernoulli_part + correction))
}

pub fn verify_theorem1(p: u64, r: u64, cache: &BernoulliCache) -> Result<Verdict> {
    let (lhs, rhs) = theorem1_sides(p, r, cache)?;
    Verdict::congruence(
        TheoremId::Theorem1,
        p,
        Some(r),
        &Integer::from(p),
        &lhs,
        &rhs,
    )
}

/// Residues of both theorem1 sides modulo `p^2`, for exploration only.
pub fn theorem1_mod_p2_note(p: u64, r: u64, cache: &BernoulliCache) -> Result<String> {
    let (lhs, rhs) = theorem1_sides(p, r, cache)?;
    let m = Integer::from(p) * p;
    let show = |x: &Rational| match rational_mod(x, &m) {
        Ok(res) => res.value().to_string(),
        Err(_) => "undefined".to_string(),
    };
    Ok(format!("mod p^2: lhs {} rhs {}", show(&lhs), show(&rhs)))
}

/// `T(p) ≡ (p+1)/2 (mod p)`.
pub fn verify_eq_un(p: u64) -> Result<Verdict> {
    require_prime(p, 3)?;
    let lhs = rat(partial_fermat_sum(p, 1)?);
    let rhs = Rational::new(Integer::from(p + 1), Integer::from(2));
    Verdict::congruence(TheoremId::EqUn, p, None, &Integer::from(p), &lhs, &rhs)
}

/// `sum_{k=1}^{p-2} floor(k^p/p) ≡ (3-p)/2 (mod p)`.
pub fn verify_eq_three_minus_p(p: u64) -> Result<Verdict> {
    require_prime(p, 3)?;
    let lhs = rat(partial_fermat_sum(p, 2)?);
    let rhs = Rational::new(Integer::from(3) - p, Integer::from(2));
    Verdict::congruence(
        TheoremId::EqThreeMinusP,
        p,
        None,
        &Integer::from(p),
        &lhs,
        &rhs,
    )
}

/// `(B_{p+1}(p+1) + B_{p+1}(p) - 2B_{p+1}) / (p(p+1)) ≡ p^(p-1) (mod p)`.
pub fn verify_theorem2(p: u64, cache: &BernoulliCache) -> Result<Verdict> {
    require_prime(p, 3)?;
    let p_big = Integer::from(p);
    let lhs = bernoulli_endpoint_quotient(&p_big, cache)?;
    let rhs = rat(pow_integer(&p_big, (p - 1) as u32));
    Verdict::congruence(TheoremId::Theorem2, p, None, &p_big, &lhs, &rhs)
}

/// `(p-1)! ≡ p B_{p-1} - p (mod p^2)`.
pub fn verify_glaisher(p: u64, cache: &BernoulliCache) -> Result<Verdict> {
    require_prime(p, 3)?;
    let p_big = Integer::from(p);
    let modulus = &p_big * &p_big;
    let lhs = rat(factorial_mod(p - 1, &modulus)?.into_value());
    let p_rat = rat(p_big);
    let rhs = &p_rat * cache.number(p as usize - 1) - &p_rat;
    Verdict::congruence(TheoremId::GlaisherP2, p, None, &modulus, &lhs, &rhs)
}

/// `(p-1)! ≡ -pB_{p-1}/(p-1) + pB_{2p-2}/(2(p-1)) - (pB_{p-1}/(p-1))^2 / 2 (mod p^3)`.
pub fn verify_sun_p3(p: u64, cache: &BernoulliCache) -> Result<Verdict> {
    require_prime(p, 5)?;
    let p_big = Integer::from(p);
    let modulus = pow_integer(&p_big, 3);
    let lhs = rat(factorial_mod(p - 1, &modulus)?.into_value());
    let p_rat = rat(p_big);
    let pm1 = rat(p - 1);
    let a = &p_rat * cache.number(p as usize - 1) / &pm1;
    let b = &p_rat * cache.number(2 * p as usize - 2) / (rat(2) * &pm1);
    let rhs = -&a + b - &a * &a / rat(2);
    Verdict::congruence(TheoremId::SunP3, p, None, &modulus, &lhs, &rhs)
}

/// `C(2p-1, p-1) ≡ 1 (mod p^3)`. Primes below 5 are evaluated anyway and
/// carry a note, since the congruence is only claimed for `p >= 5`.
pub fn verify_wolstenholme(p: u64) -> Result<Verdict> {
    require_prime(p, 2)?;
    let modulus = pow_integer(&Integer::from(p), 3);
    let lhs = rat(binomial(2 * p - 1, (p - 1) as i64));
    let mut verdict = Verdict::congruence(
        TheoremId::WolstenholmeP3,
        p,
        None,
        &modulus,
        &lhs,
        &Rational::one(),
    )?;
    if p < 5 {
        verdict.add_note("hypothesis p >= 5 not met");
    }
    Ok(verdict)
}

/// Brute value against closed form for the grid or cube-root sum.
pub fn verify_identity(kind: TheoremId, p: u64) -> Result<Verdict> {
    require_prime(p, 3)?;
    let p_big = Integer::from(p);
    match kind {
        TheoremId::GridIdentity => {
            Verdict::identity(kind, p, &grid_sum(p), &grid_sum_closed(&p_big))
        }
        TheoremId::CubeRootIdentity => {
            Verdict::identity(kind, p, &cube_root_sum(p), &cube_root_sum_closed(&p_big))
        }
        other => Err(invalid(format!("{other} is not an exact identity"))),
    }
}

/// Runs one check. `r` is required for `theorem1` and rejected otherwise.
pub fn verify(
    theorem: TheoremId,
    p: u64,
    r: Option<u64>,
    cache: &BernoulliCache,
) -> Result<Verdict> {
    match (theorem.takes_r(), r) {
        (true, None) => return Err(invalid(format!("{theorem} needs r"))),
        (false, Some(_)) => return Err(invalid(format!("{theorem} takes no r"))),
        _ => {}
    }
    match theorem {
        TheoremId::Theorem1 => verify_theorem1(p, r.expect("checked above"), cache),
        TheoremId::Theorem2 => verify_theorem2(p, cache),
        TheoremId::EqUn => verify_eq_un(p),
        TheoremId::EqThreeMinusP => verify_eq_three_minus_p(p),
        TheoremId::GlaisherP2 => verify_glaisher(p, cache),
        TheoremId::SunP3 => verify_sun_p3(p, cache),
        TheoremId::WolstenholmeP3 => verify_wolstenholme(p),
        TheoremId::GridIdentity | TheoremId::CubeRootIdentity => verify_identity(theorem, p),
    }
}
