//! Exact computation of prime floor sums and Bernoulli-polynomial closed
//! forms, with a verdict engine that checks the associated congruences
//! against brute-force evaluation over sweeps of primes.
//!
//! All arithmetic is exact: integers are [`num_bigint::BigInt`] and rationals
//! are [`num_rational::BigRational`], always kept in lowest terms.
//!
//! ```
//! use primecong::bernoulli::BernoulliCache;
//! use primecong::congruences::verify_eq_un;
//!
//! let verdict = verify_eq_un(7).unwrap();
//! assert!(verdict.pass);
//! assert_eq!(verdict.lhs_residue, Some(4));
//!
//! let cache = BernoulliCache::new();
//! assert_eq!(cache.number(4).to_string(), "-1/30");
//! ```

pub mod bernoulli;
pub mod cli;
pub mod congruences;
mod error;
pub mod exact;
pub mod primes;
pub mod primesums;

pub use error::{Error, Result};
pub use exact::{Integer, Rational};
