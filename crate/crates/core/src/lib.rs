//! A computability laboratory for properties that are computed "in the limit".
//!
//! A property is computed by a stage function `φ_p(s, t)`: at every stage `t`
//! it either emits a guess or emits nothing, and the property's value is the
//! guess that is eventually never revised. This crate provides
//!
//! * [`encodings`]: Rogers' pairing `τ`, its k-ary folds and sequence-prefix codes,
//! * [`machine`]: a Gödel-numbered machine universe with step-bounded simulation,
//! * [`normal_form`]: computation-history codes and the `T`, `U`, `T′`, `T″` predicates,
//! * [`limit_engine`]: stage-driven guess streams, stabilization reports and the
//!   constant-sequence class `A_Z`,
//! * [`properties`]: a catalog of limit-computable properties,
//! * [`oracle`]: brute-force, budget-relative ground truth used to certify streams.
//!
//! All integers that can grow are arbitrary precision ([`Nat`]). Step counts and
//! stage numbers are `u64`.

pub mod encodings;
mod error;
pub mod limit_engine;
pub mod machine;
pub mod normal_form;
pub mod oracle;
pub mod properties;
pub mod zoo;

pub use error::{Error, Result};

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;

/// Parses a decimal string into a [`Nat`].
pub fn parse_nat(text: &str) -> Result<Nat> {
    let trimmed = text.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidNumber(text.to_string()));
    }
    trimmed
        .parse::<Nat>()
        .map_err(|_| Error::InvalidNumber(text.to_string()))
}
