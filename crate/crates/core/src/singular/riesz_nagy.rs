//! Riesz–Nagy singular functions `R_a`.
//!
//! `R_a` is the distribution function of the Bernoulli measure that gives
//! the left half of every dyadic cell the fraction `a` of the parent's mass:
//!
//! ```text
//! R(x) = a · R(2x)                 on [0, 1/2]
//! R(x) = a + (1 - a) · R(2x - 1)   on [1/2, 1]
//! ```
//!
//! For `a != 1/2` it is continuous, strictly increasing and has zero
//! derivative almost everywhere. Values at dyadic points are exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{DigitString, Rational};

pub(crate) fn check_weight(a: &Rational) -> Result<()> {
    if !a.is_positive() || *a >= 1 {
        return Err(Error::InvalidParameter(format!("Riesz–Nagy weight {a} must lie in (0,1)")));
    }
    Ok(())
}

/// `a^{#zeros} · (1 - a)^{#ones}`: the increase of `R_a` across the dyadic
/// cell addressed by `prefix`.
pub fn dyadic_increment(a: &Rational, prefix: &DigitString) -> Result<Rational> {
    check_weight(a)?;
    if prefix.base() != 2 {
        return Err(Error::InvalidParameter("dyadic prefix must be binary".into()));
    }
    let zeros = prefix.count(0) as u32;
    let ones = prefix.count(1) as u32;
    Ok(a.pow(zeros) * (Rational::one() - a).pow(ones))
}

/// Exact `R_a(x)` for dyadic `x ∈ [0,1]`.
pub fn eval_riesz_nagy(a: &Rational, x: &Rational) -> Result<Rational> {
    check_weight(a)?;
    if !x.in_unit_interval() {
        return Err(Error::OutsideDomain { what: "riesz_nagy", x: x.clone() });
    }
    let Some(k) = x.dyadic_exponent() else {
        return Err(Error::NotExactlyEvaluable { what: "riesz_nagy", x: x.clone() });
    };
    Ok(eval_at_index(a, x.numer(), k))
}

/// `R_a(n / 2^k)` for `0 <= n <= 2^k`.
pub(crate) fn eval_at_index(a: &Rational, n: &BigInt, k: u32) -> Rational {
    if n.is_zero() {
        return Rational::zero();
    }
    if *n == BigInt::one() << k as usize {
        return Rational::one();
    }
    let b = Rational::one() - a;
    let mut value = Rational::zero();
    let mut scale = Rational::one();
    for bit in (0..k).rev() {
        if n.bit(bit as u64) {
            value += &scale * a;
            scale *= &b;
        } else {
            scale *= a;
        }
    }
    value
}

/// Bracket for `R_a(x)` at arbitrary rational `x`, obtained from the
/// enclosing dyadic cell of width `2^{-bits}`.
pub fn enclose_riesz_nagy(a: &Rational, x: &Rational, bits: u32) -> Result<(Rational, Rational)> {
    check_weight(a)?;
    if !x.in_unit_interval() {
        return Err(Error::OutsideDomain { what: "riesz_nagy", x: x.clone() });
    }
    if x.is_dyadic() {
        let v = eval_riesz_nagy(a, x)?;
        return Ok((v.clone(), v));
    }
    let lo = x.floor_scaled(bits);
    let hi = x.ceil_scaled(bits);
    Ok((eval_at_index(a, &lo, bits), eval_at_index(a, &hi, bits)))
}

/// Exact `R_a^{-1}(y)`, available when `y` is the image of a dyadic point of
/// depth at most `max_bits`.
pub fn inverse_riesz_nagy(a: &Rational, y: &Rational, max_bits: u32) -> Result<Rational> {
    check_weight(a)?;
    if !y.in_unit_interval() {
        return Err(Error::OutsideDomain { what: "riesz_nagy inverse", x: y.clone() });
    }
    let b = Rational::one() - a;
    // y relative to the current cell, which starts at index/2^depth
    let mut t = y.clone();
    let mut index = BigInt::zero();
    for depth in 0..=max_bits {
        if t.is_zero() {
            return Ok(Rational::dyadic(index, depth));
        }
        if t.is_one() {
            return Ok(Rational::dyadic(index + 1, depth));
        }
        if depth == max_bits {
            break;
        }
        index <<= 1usize;
        if t < *a {
            t = &t / a;
        } else {
            t = (&t - a) / &b;
            index += 1;
        }
    }
    Err(Error::NotExactlyEvaluable { what: "riesz_nagy inverse", x: y.clone() })
}
