//! The Cantor function, evaluated exactly by mapping ternary digits to binary
//! ones.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Upper bound on ternary digits examined by [`eval_cantor`] while looking
/// for the period of an expansion.
pub const DEFAULT_DIGIT_BUDGET: usize = 1 << 16;

/// Exact value of the Cantor function at `x ∈ [0,1]`.
pub fn eval_cantor(x: &Rational) -> Result<Rational> {
    eval_cantor_with_budget(x, DEFAULT_DIGIT_BUDGET)
}

/// Like [`eval_cantor`] but fails with `NotExactlyEvaluable` when the ternary
/// expansion has neither hit a `1` nor closed its period within `budget`
/// digits.
pub fn eval_cantor_with_budget(x: &Rational, budget: usize) -> Result<Rational> {
    if !x.in_unit_interval() {
        return Err(Error::OutsideDomain { what: "cantor", x: x.clone() });
    }
    if x.is_one() {
        return Ok(Rational::one());
    }
    let denom = x.denom().clone();
    let mut rem = x.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    // binary digits produced so far
    let mut bits: Vec<bool> = Vec::new();
    loop {
        if rem.is_zero() {
            return Ok(binary_value(&bits, None));
        }
        if let Some(&start) = seen.get(&rem) {
            return Ok(binary_value(&bits, Some(start)));
        }
        if bits.len() >= budget {
            return Err(Error::NotExactlyEvaluable { what: "cantor", x: x.clone() });
        }
        seen.insert(rem.clone(), bits.len());
        rem *= 3u32;
        let (d, r) = rem.div_rem(&denom);
        rem = r;
        match d.to_u8() {
            Some(0) => bits.push(false),
            Some(2) => bits.push(true),
            Some(1) => {
                bits.push(true);
                return Ok(binary_value(&bits, None));
            }
            _ => unreachable!("ternary digit out of range"),
        }
    }
}

/// Value of `0.b_0 b_1 …` in binary; when `period_start` is given, the digits
/// from that index on repeat forever.
fn binary_value(bits: &[bool], period_start: Option<usize>) -> Rational {
    let as_int = |bs: &[bool]| bs.iter().fold(BigInt::zero(), |acc, &b| (acc << 1usize) + u32::from(b));
    match period_start {
        None => Rational::new(as_int(bits), BigInt::one() << bits.len()),
        Some(s) => {
            let pre = Rational::new(as_int(&bits[..s]), BigInt::one() << s);
            let period = &bits[s..];
            let len = period.len();
            let rep = Rational::new(as_int(period), (BigInt::one() << len) - 1);
            pre + rep * Rational::dyadic_unit(s as u32)
        }
    }
}

/// Cantor function of a terminating ternary fraction `Σ d_i 3^{-i}`.
fn cantor_of_ternary(digits: &[u8]) -> Rational {
    let mut bits = Vec::with_capacity(digits.len());
    for &d in digits {
        match d {
            0 => bits.push(false),
            2 => bits.push(true),
            _ => {
                bits.push(true);
                break;
            }
        }
    }
    binary_value(&bits, None)
}

/// Bracket `[lo, hi]` containing `c(x)` with `hi - lo <= 2^{-digits}`.
///
/// Returns a point bracket whenever a cheap exact evaluation succeeds.
pub fn enclose_cantor(x: &Rational, digits: usize) -> Result<(Rational, Rational)> {
    match eval_cantor_with_budget(x, digits.max(64)) {
        Ok(v) => return Ok((v.clone(), v)),
        Err(Error::NotExactlyEvaluable { .. }) => {}
        Err(e) => return Err(e),
    }
    let t = crate::numeric::expand_digits(x, 3, digits)?;
    let lo = cantor_of_ternary(t.digits());
    // x lies in the ternary cell [t, t + 3^{-digits}]
    let mut up = t.digits().to_vec();
    let mut i = up.len();
    let hi = loop {
        if i == 0 {
            break Rational::one();
        }
        i -= 1;
        if up[i] < 2 {
            up[i] += 1;
            up.truncate(i + 1);
            break cantor_of_ternary(&up);
        }
        up[i] = 0;
    };
    Ok((lo, hi))
}
