//! Exact rational scalars and their canonical text form.
//!
//! The canonical rendering is `p/q` with `q > 0` and `gcd(|p|, q) = 1`;
//! integers render without the `/1`. `num_rational::Ratio` maintains exactly
//! that normal form, so rendering is plain `Display` and parsing re-yields
//! the same reduced value.

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

/// Exact rational number, always reduced with positive denominator.
pub type Rat = Ratio<i64>;

/// Shorthand constructor. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational token")]
    Empty,
    #[error("invalid integer in rational token `{0}`")]
    BadInteger(String),
    #[error("zero denominator in rational token `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` into a reduced rational.
pub fn parse_rat(token: &str) -> Result<Rat, RationalParseError> {
    let t = token.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match t.split_once('/') {
        None => t
            .parse::<i64>()
            .map(Rat::from_integer)
            .map_err(|_| RationalParseError::BadInteger(t.to_owned())),
        Some((num, den)) => {
            let num = num
                .trim()
                .parse::<i64>()
                .map_err(|_| RationalParseError::BadInteger(t.to_owned()))?;
            let den = den
                .trim()
                .parse::<i64>()
                .map_err(|_| RationalParseError::BadInteger(t.to_owned()))?;
            if den == 0 {
                return Err(RationalParseError::ZeroDenominator(t.to_owned()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Least common multiple of the reduced denominators of `values`.
pub fn denominator_lcm(values: &[Rat]) -> u64 {
    values
        .iter()
        .fold(1i64, |acc, v| acc.lcm(v.denom()))
        .unsigned_abs()
}
