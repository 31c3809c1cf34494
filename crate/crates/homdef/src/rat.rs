//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in reduced form with a
//! positive denominator. Text form is `p/q`, or just `p` when the
//! denominator is 1; no other notations are accepted.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics on zero denominator.
pub fn ratq(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p`. Whitespace is not trimmed; signs only on the numerator.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    if s.is_empty() {
        return Err("empty rational literal".to_string());
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("`{s}` is not a rational literal (floats are not accepted)"));
    }
    match s.split('/').collect::<Vec<_>>()[..] {
        [n] => BigInt::from_str(n)
            .map(BigRational::from_integer)
            .map_err(|e| format!("bad integer `{n}`: {e}")),
        [n, d] => {
            let num = BigInt::from_str(n).map_err(|e| format!("bad numerator `{n}`: {e}"))?;
            let den = BigInt::from_str(d).map_err(|e| format!("bad denominator `{d}`: {e}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            if den.is_negative() {
                return Err(format!("denominator must be positive in `{s}`"));
            }
            Ok(BigRational::new(num, den))
        }
        _ => Err(format!("`{s}` is not of the form p or p/q")),
    }
}

/// Renders in the same `p/q` form `parse_rat` accepts.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-5/4", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(fmt_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(fmt_rat(&parse_rat("-4/2").unwrap()), "-2");
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for s in ["1.5", "1e3", "", "1/0", "1/-2", "a", "1/2/3"] {
            assert!(parse_rat(s).is_err(), "should reject {s:?}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = ratq(1, 3);
        let sum = &third + &third + &third;
        assert_eq!(sum, rat(1));
    }
}
