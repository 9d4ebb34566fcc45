//! Combinatorics of repetitions in finite words: factor indexing,
//! right-special factor counting, maximal fractional exponents, distinct
//! k-power counting, and an empirical harness that stress-tests the bounds
//! relating them.
//!
//! The library is organized around five layers:
//!
//! * [`word`] — letters, words, periods, primitivity, rational powers;
//! * [`index`] — a suffix-automaton factor index with complexity profiles
//!   and right-special factor counting;
//! * [`power`] — maximal exponents `m(u)`, marker factors `u(i)`, the
//!   primitive-factor inventory and both k-power counters;
//! * [`verify`] — every bound and lemma as an executable check;
//! * [`search`] — exhaustive and seeded-random campaigns over word spaces.

pub mod error;
pub mod index;
pub mod parallel;
pub mod power;
pub mod rational;
pub mod report;
pub mod search;
pub mod verify;
pub mod word;

pub use error::Error;
pub use rational::RationalExponent;
pub use word::{Letter, Word};
