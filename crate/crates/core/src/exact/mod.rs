//! Exact arithmetic: rationals, signs and determinants.

mod det;
mod matrix;
mod rational;
mod sign;

pub use det::{det, det_integer, sign_det, sign_of_int, ScaledRows};
pub use matrix::Matrix;
pub use rational::{format_exact, format_fixed, int, parse_rational, ratio, round_to_denominator, to_f64, Rational};
pub use sign::{permutation_parity, sort_with_parity, Sign};
