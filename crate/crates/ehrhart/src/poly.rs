//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored ascending by degree with no trailing zeros; the
//! zero polynomial is the empty coefficient vector. Degrees stay small
//! (≤ ~60) throughout this crate, so the representation is deliberately
//! dense and the algorithms quadratic.

use crate::error::{Error, Result};
use crate::rat::{binomial, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// Build from coefficients ascending by degree, trimming trailing zeros
    /// into the canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `n^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficients ascending by degree, without trailing zeros.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rat {
        self.eval(&Rat::from_integer(BigInt::from(x)))
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `(a·n + b)^e` expanded by the binomial theorem.
    pub fn pow_linear(a: i64, b: i64, e: u32) -> Polynomial {
        let a = BigInt::from(a);
        let b = BigInt::from(b);
        let coeffs = (0..=e)
            .map(|i| {
                let c = binomial(e as u64, i as i64) * a.pow(i) * b.pow(e - i);
                Rat::from_integer(c)
            })
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// The unique polynomial of degree < `samples.len()` through integer
    /// sample points. Abscissae must be pairwise distinct.
    pub fn interpolate(samples: &[(i64, BigInt)]) -> Result<Polynomial> {
        let rational: Vec<(Rat, Rat)> = samples
            .iter()
            .map(|(x, v)| {
                (
                    Rat::from_integer(BigInt::from(*x)),
                    Rat::from_integer(v.clone()),
                )
            })
            .collect();
        Polynomial::interpolate_rational(&rational)
    }

    /// Newton divided-difference interpolation over exact rationals.
    pub fn interpolate_rational(samples: &[(Rat, Rat)]) -> Result<Polynomial> {
        for (i, (xi, _)) in samples.iter().enumerate() {
            for (xj, _) in &samples[..i] {
                if xi == xj {
                    return Err(Error::DuplicateAbscissa(xi.to_string()));
                }
            }
        }
        if samples.is_empty() {
            return Ok(Polynomial::zero());
        }

        // Divided differences: after step j, table[i] = f[x_{i-j}, ..., x_i].
        let xs: Vec<&Rat> = samples.iter().map(|(x, _)| x).collect();
        let mut table: Vec<Rat> = samples.iter().map(|(_, v)| v.clone()).collect();
        for j in 1..table.len() {
            for i in (j..table.len()).rev() {
                let num = &table[i] - &table[i - 1];
                let den = xs[i] - xs[i - j];
                table[i] = num / den;
            }
        }

        // Expand the Newton form into monomial coefficients.
        let mut result = Polynomial::zero();
        let mut basis = Polynomial::one();
        for (i, coeff) in table.iter().enumerate() {
            result = &result + &basis.scale(coeff);
            if i + 1 < table.len() {
                let factor = Polynomial::from_coeffs(vec![-xs[i].clone(), Rat::one()]);
                basis = &basis * &factor;
            }
        }
        Ok(result)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient·divisor + remainder` and `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(c * &factor);
                }
                quot[k] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Polynomial::from_coeffs(quot), Polynomial { coeffs: rem })
    }

    /// Coefficients as exact `(numerator, denominator)` pairs ascending by
    /// degree — the wire form used by the CLI.
    pub fn to_coeff_pairs(&self) -> Vec<(BigInt, BigInt)> {
        self.coeffs
            .iter()
            .map(|c| (c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn from_coeff_pairs(pairs: &[(BigInt, BigInt)]) -> Result<Polynomial> {
        let mut coeffs = Vec::with_capacity(pairs.len());
        for (num, den) in pairs {
            if den.is_zero() {
                return Err(Error::InvalidParameter(
                    "zero denominator in coefficient pair".into(),
                ));
            }
            coeffs.push(Rat::new(num.clone(), den.clone()));
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

/// Renders like `13/6*n^3 + n^2 - 1/6*n + 1`: descending by degree, unit
/// coefficients elided, signs folded into the separators.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if !unit || i == 0 {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "n")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}
