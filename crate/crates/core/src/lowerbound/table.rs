use std::f64::consts::{LN_10, PI};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{factorial, LowerBoundError};

/// Rows up to this `i` are compared with exact integers; beyond it the
/// Stirling series with its error term decides.
pub const EXACT_LEVEL_LIMIT: usize = 14;
const MAX_LEVEL: usize = 64;
/// Longer exact values are printed in scientific notation.
const MAX_PRINTED_DIGITS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Stirling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContradictionRow {
    pub i: usize,
    pub delta: u64,
    /// `(epsilon / 2) * (2^i)!`
    pub lhs: String,
    /// `delta^(5 * 2^i)`
    pub rhs: String,
    pub lhs_log10: f64,
    pub rhs_log10: f64,
    /// The lower bound exceeds the upper bound.
    pub verdict: bool,
    pub method: Method,
}

/// Compares `(epsilon/2) (2^i)!` against `delta^(5 * 2^i)` for
/// `i = 1..=i_max`.
pub fn contradiction_table(
    delta: u64,
    epsilon: &BigRational,
    i_max: usize,
) -> Result<Vec<ContradictionRow>, LowerBoundError> {
    if delta < 2 {
        return Err(LowerBoundError::BadDelta(delta));
    }
    if !epsilon.is_positive() || *epsilon > BigRational::one() {
        return Err(LowerBoundError::BadEpsilon(epsilon.clone()));
    }
    if i_max > MAX_LEVEL {
        return Err(LowerBoundError::TooLarge {
            i: i_max,
            max: MAX_LEVEL,
        });
    }
    let half_eps = epsilon / BigRational::from_integer(2.into());
    let eps_log10 = rational_log10(&half_eps);
    Ok((1..=i_max)
        .map(|i| {
            if i <= EXACT_LEVEL_LIMIT {
                exact_row(i, delta, &half_eps)
            } else {
                stirling_row(i, delta, eps_log10)
            }
        })
        .collect())
}

fn exact_row(i: usize, delta: u64, half_eps: &BigRational) -> ContradictionRow {
    let n = 1u64 << i;
    let lhs = half_eps * BigRational::from_integer(factorial(n).into());
    let rhs: BigUint = Pow::pow(BigUint::from(delta), 5 * n);
    let rhs_rational = BigRational::from_integer(rhs.clone().into());
    let lhs_log10 = rational_log10(&lhs);
    let rhs_log10 = biguint_log10(&rhs);
    ContradictionRow {
        i,
        delta,
        lhs: print_rational(&lhs, lhs_log10),
        rhs: print_integer(&rhs, rhs_log10),
        lhs_log10,
        rhs_log10,
        verdict: lhs > rhs_rational,
        method: Method::Exact,
    }
}

fn stirling_row(i: usize, delta: u64, eps_log10: f64) -> ContradictionRow {
    let n = 2f64.powi(i as i32);
    // ln n! = n ln n - n + ln(2 pi n)/2 + 1/(12n) - 1/(360n^3) + O(n^-5)
    let ln_fact =
        n * n.ln() - n + 0.5 * (2.0 * PI * n).ln() + 1.0 / (12.0 * n) - 1.0 / (360.0 * n.powi(3));
    let lhs_log10 = eps_log10 + ln_fact / LN_10;
    let rhs_log10 = 5.0 * n * (delta as f64).log10();
    ContradictionRow {
        i,
        delta,
        lhs: scientific(lhs_log10),
        rhs: scientific(rhs_log10),
        lhs_log10,
        rhs_log10,
        verdict: lhs_log10 > rhs_log10,
        method: Method::Stirling,
    }
}

/// Least `i` whose row reports a contradiction.
pub fn least_contradiction(rows: &[ContradictionRow]) -> Option<usize> {
    rows.iter().find(|r| r.verdict).map(|r| r.i)
}

fn biguint_log10(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("fits in f64");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn rational_log10(x: &BigRational) -> f64 {
    biguint_log10(x.numer().magnitude()) - biguint_log10(x.denom().magnitude())
}

fn scientific(log10: f64) -> String {
    let exponent = log10.floor();
    let mantissa = 10f64.powf(log10 - exponent);
    format!("{mantissa:.6}e{exponent}")
}

fn print_integer(x: &BigUint, log10: f64) -> String {
    let digits = x.to_string();
    if digits.len() <= MAX_PRINTED_DIGITS {
        digits
    } else {
        scientific(log10)
    }
}

fn print_rational(x: &BigRational, log10: f64) -> String {
    if x.is_integer() {
        print_integer(x.numer().magnitude(), log10)
    } else {
        let text = x.to_string();
        if text.len() <= MAX_PRINTED_DIGITS {
            text
        } else {
            scientific(log10)
        }
    }
}
