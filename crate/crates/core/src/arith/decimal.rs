//! Deterministic decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `x` rounded half away from zero to `digits` fractional digits.
pub fn render_decimal(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

/// `x` in scientific notation with `sig` significant digits, e.g. `1.23e-9`.
pub fn render_scientific(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let mut m = x.abs();
    let ten = BigRational::from_integer(10.into());
    let one = BigRational::from_integer(1.into());
    let mut exp: i64 = 0;
    while m >= ten {
        m /= &ten;
        exp += 1;
    }
    while m < one {
        m *= &ten;
        exp -= 1;
    }
    let mut mant = render_decimal(&m, sig.saturating_sub(1));
    if mant.starts_with("10") {
        // rounding carried into a new digit
        m /= &ten;
        exp += 1;
        mant = render_decimal(&m, sig.saturating_sub(1));
    }
    format!("{sign}{mant}e{exp}")
}
