//! Exact arithmetic substrate: rationals, digit expansions, interval unions.
//!
//! Nothing in here touches floating point.

mod digits;
mod interval;
mod rational;

pub use digits::{expand_digits, DigitString};
pub use interval::{Interval, IntervalUnion, SetOp};
pub use rational::{q, Rational};
