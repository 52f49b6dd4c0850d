use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{theorem1_mod_p2_note, verify, TheoremId, Verdict};
use crate::bernoulli::BernoulliCache;
use crate::error::{invalid, Error, Result};
use crate::primes::PrimeRange;

/// Which `r` values a theorem1 sweep covers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RPolicy {
    #[default]
    #[serde(rename = "all")]
    AllValid,
    #[serde(rename = "r1")]
    FirstOnly,
}

impl fmt::Display for RPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AllValid => "all",
            Self::FirstOnly => "r1",
        })
    }
}

impl FromStr for RPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "all-valid" | "all_valid_r" => Ok(Self::AllValid),
            "r1" | "r=1" | "first" => Ok(Self::FirstOnly),
            other => Err(invalid(format!("unknown r policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    pub r_policy: RPolicy,
    /// Attach theorem1 residues modulo `p^2` as a note. Not asserted.
    pub explore_p2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub tool_version: String,
    pub pmin: u64,
    pub pmax: u64,
    pub theorems: Vec<TheoremId>,
    pub r_policy: RPolicy,
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub metadata: SweepMetadata,
    pub verdicts: Vec<Verdict>,
}

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.pass).count()
    }
}

/// Whether `p` satisfies the theorem's hypotheses. Sweeps skip primes that don't.
pub fn applicable(theorem: TheoremId, p: u64) -> bool {
    match theorem {
        TheoremId::SunP3 | TheoremId::WolstenholmeP3 => p >= 5,
        _ => p >= 3,
    }
}

fn cells(
    theorems: &[TheoremId],
    range: &PrimeRange,
    policy: RPolicy,
) -> Vec<(TheoremId, u64, Option<u64>)> {
    let primes: Vec<u64> = range.iter().collect();
    let mut out = Vec::new();
    for &theorem in theorems {
        for &p in primes.iter().filter(|&&p| applicable(theorem, p)) {
            if theorem.takes_r() {
                let last = match policy {
                    RPolicy::AllValid => p - 1,
                    RPolicy::FirstOnly => 1,
                };
                out.extend((1..=last).map(|r| (theorem, p, Some(r))));
            } else {
                out.push((theorem, p, None));
            }
        }
    }
    out
}

/// Verifies every applicable `(theorem, p, r)` cell in parallel. Verdicts come
/// back ordered by theorem declaration order, then `p`, then `r`.
pub fn sweep(
    theorems: &[TheoremId],
    range: &PrimeRange,
    options: &SweepOptions,
    cache: &BernoulliCache,
) -> Result<SweepReport> {
    if theorems.is_empty() {
        return Err(invalid("no theorems selected"));
    }
    let mut selected = theorems.to_vec();
    selected.sort();
    selected.dedup();

    let verdicts = cells(&selected, range, options.r_policy)
        .into_par_iter()
        .map(|(theorem, p, r)| {
            let mut verdict = verify(theorem, p, r, cache)?;
            if options.explore_p2 {
                if let Some(r) = r {
                    verdict.add_note(theorem1_mod_p2_note(p, r, cache)?);
                }
            }
            Ok(verdict)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepReport {
        metadata: SweepMetadata {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            pmin: range.lower(),
            pmax: range.upper(),
            theorems: selected,
            r_policy: options.r_policy,
            timestamp: None,
        },
        verdicts,
    })
}
