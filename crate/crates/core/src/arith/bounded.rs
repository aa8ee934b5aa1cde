//! Rigorous rational enclosures of real numbers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

use super::decimal::{render_decimal, render_scientific};

/// A closed interval `[lower, upper]` with rational endpoints known to
/// contain some real quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedReal {
    lower: BigRational,
    upper: BigRational,
}

impl BoundedReal {
    pub fn new(lower: BigRational, upper: BigRational) -> Result<Self> {
        if lower > upper {
            return Err(Error::InvalidArgument(format!("empty enclosure [{lower}, {upper}]")));
        }
        Ok(Self { lower, upper })
    }

    pub fn exact(x: BigRational) -> Self {
        Self { lower: x.clone(), upper: x }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// True when `self` lies inside `other`.
    pub fn is_within(&self, other: &Self) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }

    pub fn is_positive(&self) -> bool {
        self.lower.is_positive()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { lower: &self.lower + &other.lower, upper: &self.upper + &other.upper }
    }

    pub fn neg(&self) -> Self {
        Self { lower: -&self.upper, upper: -&self.lower }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lower * &other.lower,
            &self.lower * &other.upper,
            &self.upper * &other.lower,
            &self.upper * &other.upper,
        ];
        let lower = products.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let upper = products.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Self { lower, upper }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.mul(&Self::exact(k.clone()))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains(&BigRational::zero()) {
            return Err(Error::InvalidArgument("reciprocal of an enclosure containing 0".into()));
        }
        Ok(Self { lower: self.upper.recip(), upper: self.lower.recip() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::exact(BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Widens the endpoints outward onto the grid `1/den`, keeping denominators small.
    pub fn round_outward(&self, den: &BigInt) -> Self {
        let scale = BigRational::from_integer(den.clone());
        let lo = (&self.lower * &scale).floor();
        let hi = (&self.upper * &scale).ceil();
        Self { lower: lo / &scale, upper: hi / &scale }
    }

    /// Midpoint rendered with `digits` fractional digits.
    pub fn mid_string(&self, digits: usize) -> String {
        render_decimal(&self.midpoint(), digits)
    }

    pub fn width_string(&self) -> String {
        render_scientific(&self.width(), 3)
    }
}

impl fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid_string(12), render_scientific(&(self.width() / BigInt::from(2)), 2))
    }
}

/// Repeats `eval` with shrinking internal tolerances until the result is
/// narrower than `tol`.
pub(crate) fn refine<F>(tol: &BigRational, mut eval: F) -> Result<BoundedReal>
where
    F: FnMut(&BigRational) -> Result<BoundedReal>,
{
    let mut inner = tol / BigInt::from(64);
    for _ in 0..12 {
        let out = eval(&inner)?;
        if &out.width() <= tol {
            return Ok(out);
        }
        inner = inner / BigInt::from(1024);
    }
    Err(Error::InvalidArgument(format!("could not reach tolerance {tol}")))
}

/// Smallest power of ten `D` with `1/D ≤ tol`.
pub(crate) fn decimal_grid(tol: &BigRational) -> BigInt {
    let mut d = BigInt::one();
    let ten = BigInt::from(10);
    while BigRational::from_integer(d.clone()) * tol < BigRational::one() {
        d *= &ten;
    }
    d
}

/// Enclosure of the real `s`-th root of a nonnegative rational.
pub fn nth_root(r: &BigRational, s: u32, tol: &BigRational) -> Result<BoundedReal> {
    if r.is_negative() {
        return Err(Error::InvalidArgument("root of a negative rational".into()));
    }
    if s == 0 {
        return Err(Error::InvalidArgument("zeroth root".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let d = decimal_grid(tol);
    // floor(r * D^s), then its integer s-th root
    let scaled = (r * BigRational::from_integer(num_traits::pow(d.clone(), s as usize))).floor().to_integer();
    let root: BigUint = scaled.magnitude().nth_root(s);
    let lo = BigRational::new(BigInt::from(root.clone()), d.clone());
    if lo.pow(s as i32) == *r {
        return Ok(BoundedReal::exact(lo));
    }
    let hi = BigRational::new(BigInt::from(root + 1u32), d);
    BoundedReal::new(lo, hi)
}

fn arctan_recip(x: u64, tol: &BigRational) -> BoundedReal {
    // alternating series; consecutive partial sums bracket the value
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        if &term < tol {
            let (lo, hi) = if sum < next { (sum, next) } else { (next, sum) };
            return BoundedReal { lower: lo, upper: hi };
        }
        sum = next;
        power *= &x2;
        k += 1;
    }
}

/// Enclosure of π via Machin's formula.
pub fn pi(tol: &BigRational) -> Result<BoundedReal> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let inner = tol / BigInt::from(64);
    let a = arctan_recip(5, &inner).scale(&BigRational::from_integer(16.into()));
    let b = arctan_recip(239, &inner).scale(&BigRational::from_integer(4.into()));
    let grid = decimal_grid(&inner) * BigInt::from(16);
    Ok(a.sub(&b).round_outward(&grid))
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}
