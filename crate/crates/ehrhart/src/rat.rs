//! Exact rational scalars and small integer combinatorics.
//!
//! [`Rat`] is the coefficient field for every polynomial in this crate.
//! `BigRational` keeps values in lowest terms with a positive denominator,
//! which is exactly the representation invariant the rest of the crate
//! relies on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rat = BigRational;

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact binomial coefficient with the vanishing convention: the result is
/// 0 whenever `k < 0` or `k > n`. Several coefficient formulas downstream
/// rely on out-of-range binomials silently vanishing, so this is part of
/// the contract rather than an error.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || (k as u64) > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Sign of an exact value, as reported in coefficient tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rat) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Neg => write!(f, "NEG"),
            Sign::Zero => write!(f, "ZERO"),
            Sign::Pos => write!(f, "POS"),
        }
    }
}
