//! Exact-to-text rendering helpers.
//!
//! Every number the CLI prints comes from `BigRational` arithmetic; nothing
//! here goes through floating point.  Machine surfaces (json) use the
//! uniform `p/q` form from the core crate; tables trim the `/1` of integers;
//! the svg renderer is the one lossy surface and serializes decimals with a
//! fixed number of significant digits, square roots included.

use num::{BigInt, BigRational, One, Signed, Zero};

use k3walls::rational::isqrt;

/// Significant digits used for every decimal the svg renderer emits.
pub const SIG_DIGITS: u32 = 12;

/// Extra decimal digits carried through the square-root scaling so the
/// rounding step below never sees the truncation error.
const GUARD_DIGITS: u32 = 20;

/// Human form of an exact rational: `p/q`, with the `/1` of integers
/// trimmed (`"21/44"`, `"-3"`, `"0"`).
pub fn fmt_rat_human(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal form of `x` with `sig` significant digits, round half away from
/// zero, never in exponent notation (`1/3 → "0.333333333333"`, `2 → "2"`,
/// `-1/640 → "-0.0015625"`).
pub fn fmt_sig(x: &BigRational, sig: u32) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();

    // Decimal exponent e with 10^e <= num/den < 10^(e+1): the digit-count
    // difference is off by at most one, fixed by a single comparison.
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    if compare_scaled(&num, &den, e) == std::cmp::Ordering::Less {
        e -= 1;
    }

    // First `sig` digits, rounded: scaled = round(num/den · 10^(sig-1-e)).
    let shift = sig as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let mut scaled = (BigInt::from(2) * scaled_num + &scaled_den) / (BigInt::from(2) * scaled_den);
    if scaled == pow10(sig) {
        // Rounding carried into one more digit (…999 → 1000).
        scaled = pow10(sig - 1);
        e += 1;
    }
    let digits = scaled.to_string();
    debug_assert_eq!(digits.len(), sig as usize);

    let body = if e >= sig as i64 - 1 {
        // Pure integer: pad with the remaining zeros.
        let zeros = (e - sig as i64 + 1) as usize;
        format!("{digits}{}", "0".repeat(zeros))
    } else if e >= 0 {
        let (int_part, frac_part) = digits.split_at(e as usize + 1);
        trim_fraction(int_part, frac_part)
    } else {
        let leading = "0".repeat((-e - 1) as usize);
        trim_fraction("0", &format!("{leading}{digits}"))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Decimal form of `sqrt(x)` (`x >= 0`) with `sig` significant digits:
/// `sqrt(p/q) = isqrt(p·q·10^2g) / (q·10^g)` with `g` guard digits, then
/// rounded like any other rational.
pub fn sqrt_sig(x: &BigRational, sig: u32) -> String {
    assert!(!x.is_negative());
    if x.is_zero() {
        return "0".into();
    }
    let scale = pow10(GUARD_DIGITS);
    let root = isqrt(&(x.numer() * x.denom() * &scale * &scale));
    fmt_sig(&BigRational::new(root, x.denom() * scale), sig)
}

/// A rational upper bound for `sqrt(x)` accurate to `digits` decimals; used
/// for exact layout bookkeeping (canvas extents) rather than display.
pub fn sqrt_upper_approx(x: &BigRational, digits: u32) -> BigRational {
    assert!(!x.is_negative());
    let scale = pow10(digits);
    let root = isqrt(&(x.numer() * x.denom() * &scale * &scale)) + BigInt::one();
    BigRational::new(root, x.denom() * scale)
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Compare `num` against `den·10^e` without negative powers.
fn compare_scaled(num: &BigInt, den: &BigInt, e: i64) -> std::cmp::Ordering {
    if e >= 0 {
        num.cmp(&(den * pow10(e as u32)))
    } else {
        (num * pow10((-e) as u32)).cmp(den)
    }
}

fn trim_fraction(int_part: &str, frac_part: &str) -> String {
    let frac = frac_part.trim_end_matches('0');
    if frac.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3walls::rational::rat;

    #[test]
    fn integers_and_simple_fractions() {
        assert_eq!(fmt_rat_human(&rat(3, 1)), "3");
        assert_eq!(fmt_rat_human(&rat(21, 44)), "21/44");
        assert_eq!(fmt_rat_human(&rat(-1, 2)), "-1/2");
        assert_eq!(fmt_sig(&rat(2, 1), 12), "2");
        assert_eq!(fmt_sig(&rat(0, 1), 12), "0");
        assert_eq!(fmt_sig(&rat(-5, 4), 12), "-1.25");
        assert_eq!(fmt_sig(&rat(-1, 640), 12), "-0.0015625");
    }

    #[test]
    fn repeating_and_rounded_decimals() {
        assert_eq!(fmt_sig(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(fmt_sig(&rat(2, 3), 12), "0.666666666667");
        assert_eq!(fmt_sig(&rat(1, 7), 4), "0.1429");
        assert_eq!(fmt_sig(&rat(22, 7), 4), "3.143");
    }

    #[test]
    fn wide_magnitudes_avoid_exponent_notation() {
        assert_eq!(fmt_sig(&rat(123_456_789_012_345, 1), 12), "123456789012000");
        assert_eq!(fmt_sig(&rat(1, 100_000), 3), "0.00001");
        assert_eq!(fmt_sig(&rat(999, 1), 2), "1000");
    }

    #[test]
    fn carry_across_the_leading_digit() {
        // 0.9999999999999 rounds up to 1 at twelve significant digits.
        assert_eq!(fmt_sig(&rat(9_999_999_999_999, 10_000_000_000_000), 12), "1");
    }

    #[test]
    fn square_roots_match_known_expansions() {
        assert_eq!(sqrt_sig(&rat(2, 1), 12), "1.41421356237");
        assert_eq!(sqrt_sig(&rat(9, 1), 12), "3");
        assert_eq!(sqrt_sig(&rat(1, 4), 12), "0.5");
        assert_eq!(sqrt_sig(&rat(0, 1), 12), "0");
        assert_eq!(sqrt_sig(&rat(5, 49), 6), "0.319438");
    }

    #[test]
    fn upper_bounds_really_bound() {
        for (p, q) in [(2i64, 1i64), (5, 49), (7, 3), (1, 1)] {
            let x = rat(p, q);
            let u = sqrt_upper_approx(&x, 12);
            assert!(&u * &u >= x);
        }
    }
}
