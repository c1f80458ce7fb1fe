//! Small exact-arithmetic helpers on `BigRational` shared across modules:
//! certified square-root upper bounds, ceilings, and the canonical `p/q`
//! string form used by every renderer.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational `p/q` from integer parts, reduced, denominator positive.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form `p/q` (always with the slash, lowest terms,
/// denominator positive), e.g. `"21/44"`, `"-1/2"`, `"3/1"`.
///
/// Keeping the `/1` makes the machine-readable output uniform; the table
/// renderers trim it for human eyes.
pub fn rat_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `"p/q"` or a bare integer `"p"` into a rational.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let parse_int = |part: &str| -> Result<BigInt> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidParameter(format!("malformed rational component {part:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Floor of the integer square root of a nonnegative `BigInt`.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Smallest rational of the form `m/denom(x)` that is `>= sqrt(x)`, for
/// nonnegative `x`.  Exact when `x` is a perfect rational square.
///
/// With `x = p/q` in lowest terms, `sqrt(x) = sqrt(p·q)/q`, so the certified
/// upper bound is `(isqrt(p·q) + 1)/q` unless `p·q` is a perfect square.
pub fn sqrt_upper(x: &BigRational) -> BigRational {
    debug_assert!(!x.is_negative());
    let pq = x.numer() * x.denom();
    let root = isqrt(&pq);
    let exact = &root * &root == pq;
    let num = if exact { root } else { root + BigInt::one() };
    BigRational::new(num, x.denom().clone())
}

/// Ceiling of a nonnegative rational as `u64`; errors if it does not fit.
pub fn ceil_u64(x: &BigRational) -> Result<u64> {
    debug_assert!(!x.is_negative());
    let c = x.ceil().to_integer();
    match c.to_u64_digits() {
        (Sign::NoSign, _) => Ok(0),
        (Sign::Plus, digits) if digits.len() <= 1 => Ok(digits.first().copied().unwrap_or(0)),
        _ => Err(Error::BoundTooLarge(format!("{c} exceeds u64"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_str_is_canonical() {
        assert_eq!(rat_str(&rat(42, 99)), "14/33");
        assert_eq!(rat_str(&rat(-3, -6)), "1/2");
        assert_eq!(rat_str(&rat(3, -6)), "-1/2");
        assert_eq!(rat_str(&rat(2, 1)), "2/1");
    }

    #[test]
    fn parse_rat_round_trips() {
        for s in ["21/44", "-1/2", "7", "0"] {
            let x = parse_rat(s).unwrap();
            let back = parse_rat(&rat_str(&x)).unwrap();
            assert_eq!(x, back);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
    }

    #[test]
    fn sqrt_upper_bounds_from_above() {
        // 47/16 = sqrt_upper(2209/256) exactly (perfect square).
        let exact = sqrt_upper(&rat(2209, 256));
        assert_eq!(exact, rat(47, 16));
        // Non-square: the bound must satisfy bound^2 >= x > (bound - 1/q)^2.
        let x = rat(2, 1);
        let b = sqrt_upper(&x);
        assert!(&b * &b >= x);
        let step = BigRational::new(BigInt::one(), x.denom().clone());
        let lower = &b - &step;
        assert!(&lower * &lower < x);
    }

    #[test]
    fn ceil_u64_rounds_up() {
        assert_eq!(ceil_u64(&rat(7, 2)).unwrap(), 4);
        assert_eq!(ceil_u64(&rat(4, 1)).unwrap(), 4);
        assert_eq!(ceil_u64(&rat(0, 5)).unwrap(), 0);
    }
}
