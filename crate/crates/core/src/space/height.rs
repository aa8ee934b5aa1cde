use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{factor_u64, nth_root, BoundedReal, FactoredRational};
use crate::{Error, Result};

use super::point::{normalize, veronese, ProjectivePoint, WeightedPoint};

/// A positive real of the form `r^(1/s)` with `r` rational, stored with the
/// smallest possible `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactHeight {
    radicand: BigRational,
    root: u32,
}

fn exact_root(x: &BigUint, k: u32) -> Option<BigUint> {
    let r = x.nth_root(k);
    (r.pow(k) == *x).then_some(r)
}

impl ExactHeight {
    pub fn new(radicand: BigRational, root: u32) -> Result<Self> {
        if !radicand.is_positive() {
            return Err(Error::InvalidArgument("height radicand must be positive".into()));
        }
        if root == 0 {
            return Err(Error::InvalidArgument("zeroth root".into()));
        }
        let mut r = radicand;
        let mut s = root;
        for (p, _) in factor_u64(root as u64) {
            let p = p as u32;
            while s % p == 0 {
                let num = exact_root(r.numer().magnitude(), p);
                let den = exact_root(r.denom().magnitude(), p);
                match (num, den) {
                    (Some(n), Some(d)) => {
                        r = BigRational::new(n.into(), d.into());
                        s /= p;
                    }
                    _ => break,
                }
            }
        }
        Ok(Self { radicand: r, root: s })
    }

    pub fn one() -> Self {
        Self { radicand: BigRational::one(), root: 1 }
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// `self^k` for the given integer power, i.e. `r^(k/s)` when `s | k`.
    pub fn pow_to_rational(&self, k: u32) -> Option<BigRational> {
        (k % self.root == 0).then(|| self.radicand.pow((k / self.root) as i32))
    }

    /// Compares against a rational bound without leaving exact arithmetic.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if !x.is_positive() {
            return Ordering::Greater;
        }
        self.radicand.cmp(&x.pow(self.root as i32))
    }

    pub fn to_bounded(&self, tol: &BigRational) -> Result<BoundedReal> {
        nth_root(&self.radicand, self.root, tol)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.radicand.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / self.root as f64)
    }
}

impl Ord for ExactHeight {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare r1^(s2) with r2^(s1)
        let a = self.radicand.pow(other.root as i32);
        let b = other.radicand.pow(self.root as i32);
        a.cmp(&b)
    }
}

impl PartialOrd for ExactHeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.radicand)
        } else {
            write!(f, "{}^(1/{})", self.radicand, self.root)
        }
    }
}

impl Serialize for ExactHeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// Weighted height, computed from prime valuations:
/// `h^q = max_i |x_i|^{n_i} * prod_p p^{-min_i n_i v_p(x_i)}`.
pub fn weighted_height(p: &WeightedPoint) -> Result<ExactHeight> {
    let ws = p.system();
    let mut arch = BigRational::zero();
    let mut factored = Vec::new();
    for (c, &n) in p.coords().iter().zip(ws.exponents()) {
        if c.is_zero() {
            continue;
        }
        let a = c.abs().pow(n as i32);
        if a > arch {
            arch = a;
        }
        factored.push((FactoredRational::from_rational(c)?, n as i64));
    }
    let primes: BTreeSet<BigUint> = factored.iter().flat_map(|(f, _)| f.factors().keys().cloned()).collect();
    let local = FactoredRational::from_parts(
        1,
        primes.into_iter().map(|q| {
            let m = factored.iter().map(|(f, n)| n * f.exponent(&q)).min().unwrap_or(0);
            (q, -m)
        }),
    );
    ExactHeight::new(arch * local.to_rational(), ws.lcm() as u32)
}

/// Largest absolute coordinate of a primitive integer point.
pub fn max_abs_coord(y: &ProjectivePoint) -> BigInt {
    y.coords().iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Naive height of a projective point, `max_i |y_i|`.
pub fn weil_height(y: &ProjectivePoint) -> ExactHeight {
    ExactHeight { radicand: BigRational::from_integer(max_abs_coord(y)), root: 1 }
}

/// Weighted height recomputed through the Veronese image, `H(φ(x))^(1/q)`.
pub fn weighted_height_via_veronese(p: &WeightedPoint) -> Result<ExactHeight> {
    let h = max_abs_coord(&veronese(p)?);
    ExactHeight::new(BigRational::from_integer(h), p.system().lcm() as u32)
}

/// `max_i |x_i|^{1/q_i}` over the nonzero coordinates.
pub fn archimedean_height(p: &WeightedPoint) -> Result<ExactHeight> {
    let mut best: Option<ExactHeight> = None;
    for (c, &w) in p.coords().iter().zip(p.system().weights()) {
        if c.is_zero() {
            continue;
        }
        let h = ExactHeight::new(c.abs(), w as u32)?;
        if best.as_ref().is_none_or(|b| h > *b) {
            best = Some(h);
        }
    }
    best.ok_or(Error::ZeroPoint)
}

/// Archimedean height of the normalized representative.
pub fn size(p: &WeightedPoint) -> Result<ExactHeight> {
    archimedean_height(&normalize(p)?)
}
