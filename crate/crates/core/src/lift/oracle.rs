use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factorize;
use crate::space::{ProjectivePoint, WeightSystem};
use crate::{Error, Result};

use super::check::{witness_result, LiftResult, Obstruction, ObstructionKind};

/// Exact `n`-th root of a `u128`, found from a float estimate.
fn iroot(v: u128, n: u32) -> Option<u128> {
    if n == 1 || v < 2 {
        return Some(v);
    }
    let guess = (v as f64).powf(1.0 / n as f64) as u128;
    // the float estimate is good to about 50 bits; bisect the remainder
    let slack = (guess >> 40) + 2;
    let (mut lo, mut hi) = (guess.saturating_sub(slack), guess + slack);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(n) {
            Some(m) if m < v => lo = mid + 1,
            _ => hi = mid,
        }
    }
    (lo.checked_pow(n) == Some(v)).then_some(lo)
}

fn big_root(v: &BigUint, n: u32) -> Option<BigUint> {
    let r = v.nth_root(n);
    (r.pow(n) == *v).then_some(r)
}

/// Odometer over `[-bound, bound]^k`.
fn next_vector(t: &mut [i64], bound: i64) -> bool {
    for x in t.iter_mut() {
        if *x < bound {
            *x += 1;
            return true;
        }
        *x = -bound;
    }
    false
}

/// Exhaustive search for `λ = ±prod p^{t_p}`, `|t_p| ≤ exponent_bound`, over
/// the primes dividing `y`, such that every `λ y_i` is an `n_i`-th power.
///
/// A liftable verdict is always correct. A negative verdict only covers the
/// searched range.
pub fn lift_bruteforce_oracle(y: &ProjectivePoint, ws: &WeightSystem, exponent_bound: u32) -> Result<LiftResult> {
    if y.coords().len() != ws.arity() {
        return Err(Error::ArityMismatch { expected: ws.arity(), got: y.coords().len() });
    }
    let mut primes = BTreeSet::new();
    for c in y.coords().iter().filter(|c| !c.is_zero()) {
        primes.extend(factorize(c)?.factors().keys().cloned());
    }
    let primes: Vec<BigUint> = primes.into_iter().collect();
    let bound = exponent_bound as i64;
    let found = match small_search(y, ws, &primes, bound) {
        Some(r) => r,
        None => big_search(y, ws, &primes, bound),
    };
    match found {
        Some(coords) => witness_result(y, ws, coords),
        None => Ok(LiftResult::obstructed(Obstruction {
            kind: ObstructionKind::Exhausted,
            prime: None,
            residues: Vec::new(),
        })),
    }
}

/// `u128` search; `None` when the range might overflow.
fn small_search(
    y: &ProjectivePoint,
    ws: &WeightSystem,
    primes: &[BigUint],
    bound: i64,
) -> Option<Option<Vec<BigRational>>> {
    let ps: Vec<u128> = primes.iter().map(|p| p.to_u128()).collect::<Option<_>>()?;
    let ys: Vec<i128> = y.coords().iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
    let radical = ps.iter().try_fold(1u128, |a, &p| a.checked_mul(p))?;
    let ymax = ys.iter().map(|v| v.unsigned_abs()).max()?;
    radical.checked_pow(bound as u32)?.checked_mul(ymax)?;

    let exps = ws.exponents();
    let mut t = vec![-bound; ps.len()];
    loop {
        let (mut a, mut b) = (1u128, 1u128);
        for (&p, &e) in ps.iter().zip(&t) {
            if e > 0 {
                a *= p.pow(e as u32);
            } else {
                b *= p.pow((-e) as u32);
            }
        }
        for eps in [1i128, -1] {
            let mut coords = Vec::with_capacity(ys.len());
            for (&yi, &n) in ys.iter().zip(exps) {
                if yi == 0 {
                    coords.push(BigRational::zero());
                    continue;
                }
                let n = n as u32;
                let negative = (eps * yi) < 0;
                if negative && n % 2 == 0 {
                    break;
                }
                let num = a * yi.unsigned_abs();
                let g = num.gcd(&b);
                let (Some(rn), Some(rd)) = (iroot(num / g, n), iroot(b / g, n)) else {
                    break;
                };
                let x = BigRational::new(BigInt::from(rn), BigInt::from(rd));
                coords.push(if negative { -x } else { x });
            }
            if coords.len() == ys.len() {
                return Some(Some(coords));
            }
        }
        if !next_vector(&mut t, bound) {
            return Some(None);
        }
    }
}

fn big_search(y: &ProjectivePoint, ws: &WeightSystem, primes: &[BigUint], bound: i64) -> Option<Vec<BigRational>> {
    let exps = ws.exponents();
    let mut t = vec![-bound; primes.len()];
    loop {
        let mut lambda = BigRational::one();
        for (p, &e) in primes.iter().zip(&t) {
            lambda *= BigRational::from_integer(BigInt::from(p.clone())).pow(e as i32);
        }
        for eps in [BigRational::one(), -BigRational::one()] {
            let lam = &lambda * eps;
            let coords: Option<Vec<BigRational>> = y
                .coords()
                .iter()
                .zip(exps)
                .map(|(yi, &n)| {
                    let v = &lam * BigRational::from_integer(yi.clone());
                    let n = n as u32;
                    if v.is_negative() && n % 2 == 0 {
                        return None;
                    }
                    let rn = big_root(v.numer().magnitude(), n)?;
                    let rd = big_root(v.denom().magnitude(), n)?;
                    let x = BigRational::new(rn.into(), rd.into());
                    Some(if v.is_negative() { -x } else { x })
                })
                .collect();
            if coords.is_some() {
                return coords;
            }
        }
        if !next_vector(&mut t, bound) {
            return None;
        }
    }
}
