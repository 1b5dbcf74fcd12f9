use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::{Error, Nat, Result};

/// Exact non-negative rational, always in lowest terms.
pub type Rational = Ratio<Nat>;

/// `differences / t` in lowest terms; `t` must be positive.
pub fn error_fraction(differences: u64, t: u64) -> Rational {
    Rational::new(Nat::from(differences), Nat::from(t))
}

/// The fraction with the least denominator in `[lo, hi]`, and among those the
/// least numerator. Requires `0 <= lo <= hi <= 1`.
pub fn simplest_rational_in(lo: &Rational, hi: &Rational) -> Result<Rational> {
    if lo > hi {
        return Err(Error::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    if *hi > Rational::one() {
        return Err(Error::IntervalOutOfRange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(simplest_between(lo, hi))
}

/// Descends the Stern–Brocot tree by continued fractions: if an integer lies
/// in the interval the least one wins, otherwise both ends share the integer
/// part `f` and the answer is `f + 1/r` with `r` simplest in the reciprocal
/// interval.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let ceil = lo.ceil();
    if ceil <= *hi {
        return ceil;
    }
    let f = lo.floor();
    let r = simplest_between(&(hi - &f).recip(), &(lo - &f).recip());
    f + r.recip()
}

/// Subtraction clamped at zero.
pub(crate) fn saturating_sub(a: &Rational, b: &Rational) -> Rational {
    if a > b {
        a - b
    } else {
        Rational::zero()
    }
}

/// `(numerator, denominator)` in lowest terms.
pub(crate) fn parts(r: &Rational) -> (Nat, Nat) {
    (r.numer().clone(), r.denom().clone())
}
