use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A finite positional digit string in base 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitString {
    base: u8,
    digits: Vec<u8>,
}

impl DigitString {
    pub fn new(base: u8, digits: Vec<u8>) -> Result<Self> {
        if base != 2 && base != 3 {
            return Err(Error::InvalidParameter(format!("unsupported base {base}")));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidParameter(format!("digit {d} out of range for base {base}")));
        }
        Ok(DigitString { base, digits })
    }

    pub fn binary(digits: Vec<u8>) -> Result<Self> {
        Self::new(2, digits)
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn count(&self, digit: u8) -> usize {
        self.digits.iter().filter(|&&d| d == digit).count()
    }

    /// `Σ d_i · base^{-i}`.
    pub fn value(&self) -> Rational {
        let mut numer = BigInt::zero();
        for &d in &self.digits {
            numer = numer * self.base + d;
        }
        Rational::new(numer, BigInt::from(self.base).pow(self.digits.len() as u32))
    }

    /// Index of the cell this string addresses at its own length, i.e. the
    /// digits read as an integer.
    pub fn cell_index(&self) -> BigInt {
        self.digits.iter().fold(BigInt::zero(), |acc, &d| acc * self.base + d)
    }
}

/// First `k` digits of `x ∈ [0,1]` in the given base.
///
/// Rationals with two expansions get the terminating one. The only point
/// whose expansion is forced to be non-terminating is `x = 1`, which yields
/// all-maximal digits.
pub fn expand_digits(x: &Rational, base: u8, k: usize) -> Result<DigitString> {
    if !x.in_unit_interval() {
        return Err(Error::InvalidParameter(format!("{x} is outside [0,1]")));
    }
    if base != 2 && base != 3 {
        return Err(Error::InvalidParameter(format!("unsupported base {base}")));
    }
    if x.is_one() {
        return DigitString::new(base, vec![base - 1; k]);
    }
    let denom = x.denom().clone();
    let mut rem = x.numer().clone();
    let mut digits = Vec::with_capacity(k);
    for _ in 0..k {
        rem *= base;
        let (d, r) = rem.div_rem(&denom);
        digits.push(d.to_u8().expect("digit fits in u8"));
        rem = r;
    }
    DigitString::new(base, digits)
}
