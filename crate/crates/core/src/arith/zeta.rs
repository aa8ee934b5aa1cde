//! Rigorous enclosures of ζ(s) at integers s ≥ 2.
//!
//! ζ(s) = S_N + T_N with S_N = Σ_{k≤N} k^{-s} and
//! (N+1)^{1-s}/(s-1) ≤ T_N ≤ N^{1-s}/(s-1). N runs over powers of two and
//! every term is rounded outward onto a grid fine enough that the enclosures
//! returned for shrinking tolerances are nested.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

use super::bounded::{ceil_div, BoundedReal};

pub fn zeta(s: i64, tol: &BigRational) -> Result<BoundedReal> {
    if s < 2 {
        return Err(Error::DivergentZeta(s));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let s = u32::try_from(s).map_err(|_| Error::InvalidArgument("zeta argument too large".into()))?;
    let n = truncation_point(s, tol);
    let grid = grid_for(n, s);
    let (sum_lo, sum_hi) = partial_sum(n, s, &grid);

    // tail bounds, rounded outward onto the grid
    let sm1 = BigInt::from(s - 1);
    let tail_lo_den = &sm1 * BigInt::from(n + 1).pow(s - 1);
    let tail_hi_den = &sm1 * BigInt::from(n).pow(s - 1);
    let tail_lo = grid.div_floor(&tail_lo_den);
    let tail_hi = ceil_div(&grid, &tail_hi_den);

    BoundedReal::new(
        BigRational::new(sum_lo + tail_lo, grid.clone()),
        BigRational::new(sum_hi + tail_hi, grid),
    )
}

/// Smallest power of two N with N^s ≥ 2/tol, so that the tail gap is ≤ tol/2.
fn truncation_point(s: u32, tol: &BigRational) -> u64 {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut n: u64 = 1;
    while BigRational::from_integer(BigInt::from(n).pow(s)) * tol < two {
        n *= 2;
    }
    n
}

/// Power of two ≥ 4 (N+1) (3N)^{s+1}; see the module comment.
fn grid_for(n: u64, s: u32) -> BigInt {
    let target = BigInt::from(4u64 * (n + 1)) * BigInt::from(3 * n).pow(s + 1);
    let bits = target.bits();
    BigInt::one() << bits
}

/// (Σ floor(G/k^s), Σ ceil(G/k^s)) for k = 1..=N.
fn partial_sum(n: u64, s: u32, grid: &BigInt) -> (BigInt, BigInt) {
    // sums stay below 2G + N, so G < 2^125 keeps the fast path in range
    if let (Some(g), true) = (grid.to_u128(), grid.bits() < 125) {
        let mut lo: u128 = 0;
        let mut hi: u128 = 0;
        for k in 1..=n {
            match (k as u128).checked_pow(s) {
                Some(ks) => {
                    lo += g / ks;
                    hi += g.div_ceil(ks);
                }
                // k^s > G: floor term vanishes, ceil term is 1
                None => hi += 1,
            }
        }
        return (BigInt::from(lo), BigInt::from(hi));
    }
    let g: BigUint = grid.magnitude().clone();
    let mut lo = BigUint::zero();
    let mut hi = BigUint::zero();
    for k in 1..=n {
        let ks = BigUint::from(k).pow(s);
        let (q, r) = g.div_rem(&ks);
        hi += &q + if r.is_zero() { 0u32 } else { 1u32 };
        lo += q;
    }
    (BigInt::from(lo), BigInt::from(hi))
}

#[cfg(test)]
mod tests {
    use super::super::bounded::pi;
    use super::*;

    fn tol(digits: u32) -> BigRational {
        BigRational::new(1.into(), BigInt::from(10).pow(digits))
    }

    fn dec(s: &str) -> BigRational {
        let (int, frac) = s.split_once('.').unwrap();
        let den = BigInt::from(10).pow(frac.len() as u32);
        BigRational::new(format!("{int}{frac}").parse::<BigInt>().unwrap(), den)
    }

    #[test]
    fn zeta_three() {
        let z = zeta(3, &tol(6)).unwrap();
        assert!(z.width() <= tol(6));
        assert!(z.contains(&dec("1.2020569031595942")));
    }

    #[test]
    fn zeta_two_against_closed_form() {
        let z = zeta(2, &tol(6)).unwrap();
        assert!(z.width() <= tol(6));
        let p = pi(&tol(20)).unwrap();
        let closed = p.powi(2).scale(&BigRational::new(1.into(), 6.into()));
        assert!(z.overlaps(&closed));
        assert!(z.contains(&dec("1.6449340668482264")));
    }

    #[test]
    fn zeta_twenty_two_is_close_to_one() {
        let z = zeta(22, &tol(6)).unwrap();
        let approx = BigRational::one() + BigRational::new(1.into(), BigInt::from(2).pow(22));
        assert!((z.midpoint() - approx).abs() <= tol(6));
        assert!(z.contains(&dec("1.000000238450502727")));
    }

    #[test]
    fn divergent_arguments_rejected() {
        assert_eq!(zeta(1, &tol(3)), Err(Error::DivergentZeta(1)));
        assert_eq!(zeta(-4, &tol(3)), Err(Error::DivergentZeta(-4)));
    }

    #[test]
    fn enclosures_nest() {
        for s in [2i64, 3, 5, 22] {
            let mut prev = zeta(s, &tol(1)).unwrap();
            for d in 2..=10 {
                let next = zeta(s, &tol(d)).unwrap();
                assert!(next.is_within(&prev), "s = {s}, tol = 1e-{d}");
                assert!(prev.contains(&next.midpoint()));
                prev = next;
            }
        }
    }
}
