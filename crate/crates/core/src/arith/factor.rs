//! Integer factorization and p-adic valuations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Trial division runs up to this bound before handing the cofactor to rho.
const TRIAL_BOUND: u64 = 1 << 16;

/// Miller-Rabin bases; deterministic below 3.3 * 10^24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// A nonzero rational written as `sign * prod p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    sign: i8,
    factors: BTreeMap<BigUint, i64>,
}

impl FactoredRational {
    pub fn one() -> Self {
        Self { sign: 1, factors: BTreeMap::new() }
    }

    /// Builds from raw parts, dropping zero exponents. Keys must be prime.
    pub fn from_parts(sign: i8, factors: impl IntoIterator<Item = (BigUint, i64)>) -> Self {
        let mut out = Self { sign: if sign < 0 { -1 } else { 1 }, factors: BTreeMap::new() };
        for (p, e) in factors {
            out.add_exponent(p, e);
        }
        out
    }

    pub fn from_rational(x: &BigRational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroFactorization);
        }
        let num = factorize(x.numer())?;
        let den = factorize(x.denom())?;
        Ok(num.div(&den))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, i64> {
        &self.factors
    }

    pub fn exponent(&self, p: &BigUint) -> i64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.factors.is_empty()
    }

    fn add_exponent(&mut self, p: BigUint, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(p.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&p);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sign *= other.sign;
        for (p, &e) in &other.factors {
            out.add_exponent(p.clone(), e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self {
            sign: self.sign,
            factors: self.factors.iter().map(|(p, &e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        Self { sign, factors: self.factors.iter().map(|(p, &e)| (p.clone(), e * k)).collect() }
    }

    /// Expands back to an exact rational.
    pub fn to_rational(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, &e) in &self.factors {
            let pp = BigInt::from(p.clone()).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pp;
            } else {
                den *= pp;
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        BigRational::new(num, den)
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, &e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Factors a nonzero integer.
pub fn factorize(n: &BigInt) -> Result<FactoredRational> {
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut out = FactoredRational { sign, factors: BTreeMap::new() };
    let mut m = n.magnitude().clone();
    for (p, e) in trial_divide(&mut m, TRIAL_BOUND) {
        out.add_exponent(BigUint::from(p), e);
    }
    if !m.is_one() {
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_probable_prime(&c) {
                out.add_exponent(c, 1);
                continue;
            }
            let d = pollard_brent(&c);
            let other = &c / &d;
            stack.push(d);
            stack.push(other);
        }
    }
    debug_assert_eq!(out.to_rational(), BigRational::from_integer(n.clone()));
    Ok(out)
}

/// Factors a nonzero machine integer by trial division; returns (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn trial_divide(m: &mut BigUint, bound: u64) -> Vec<(u64, i64)> {
    if let Some(small) = m.to_u64() {
        let found = factor_u64_bounded(small, bound);
        let mut rest = small;
        for &(p, e) in &found {
            rest /= p.pow(e as u32);
        }
        *m = BigUint::from(rest);
        return found;
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound {
        let bp = BigUint::from(p);
        if &bp * &bp > *m {
            break;
        }
        let mut e = 0i64;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            *m = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if !m.is_one() && m.bits() <= 32 {
        // cofactor below bound^2 with no small factor is prime
        out.push((m.to_u64().unwrap_or(0), 1));
        *m = BigUint::one();
    }
    out
}

fn factor_u64_bounded(mut n: u64, bound: u64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound && p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > 1 && (p.saturating_mul(p) > n) {
        out.push((n, 1));
    }
    out
}

/// Primality test: trial division for small inputs, Miller-Rabin otherwise.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small < TRIAL_BOUND * TRIAL_BOUND {
            return factor_u64_bounded(small, TRIAL_BOUND) == vec![(small, 1)];
        }
    }
    is_probable_prime(n)
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns a nontrivial divisor of the composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let m: u64 = 128;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &BigRational, p: &BigUint) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(int_valuation(x.numer().magnitude(), p) - int_valuation(x.denom().magnitude(), p))
}

pub(crate) fn int_valuation(n: &BigUint, p: &BigUint) -> i64 {
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() || m.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}
