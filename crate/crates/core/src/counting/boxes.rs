use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::mobius_sieve;
use crate::space::WeightSystem;
use crate::{Error, Result};

/// `floor((x / d)^k)` as a machine integer.
pub(crate) fn floor_power(x: &BigRational, d: u64, k: u64) -> Result<u128> {
    let base = x / BigInt::from(d);
    let v = base.pow(k as i32).floor().to_integer();
    v.to_u128().ok_or(Error::Overflow("coordinate bound"))
}

/// Coordinate bounds `floor(x^{q_i})`.
pub(crate) fn bounds(weights: &[u64], x: &BigRational) -> Result<Vec<u128>> {
    weights.iter().map(|&w| floor_power(x, 1, w)).collect()
}

fn check_x(x: &BigRational, at_least_one: bool) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!("bound {x} must be positive")));
    }
    if at_least_one && x < &BigRational::one() {
        return Err(Error::InvalidArgument(format!("bound {x} must be at least 1")));
    }
    Ok(())
}

fn box_from_bounds(bounds: &[u128]) -> Result<u128> {
    let prod = bounds.iter().try_fold(1u128, |acc, &b| {
        b.checked_mul(2).and_then(|v| v.checked_add(1)).and_then(|v| acc.checked_mul(v))
    });
    Ok(prod.ok_or(Error::Overflow("box count"))? - 1)
}

fn count_box_slice(weights: &[u64], t: &BigRational, d: u64) -> Result<u128> {
    let b: Vec<u128> = weights.iter().map(|&w| floor_power(t, d, w)).collect::<Result<_>>()?;
    box_from_bounds(&b)
}

/// Nonzero integer tuples with `|x_i| ≤ t^{q_i}`: `prod (2 floor(t^{q_i}) + 1) - 1`.
pub fn count_box(ws: &WeightSystem, t: &BigRational) -> Result<u128> {
    check_x(t, false)?;
    count_box_slice(ws.weights(), t, 1)
}

/// Primitive tuples (weighted gcd 1) in the box of radius `x`, by Möbius
/// inversion over the weighted divisor.
///
/// Works on any nonempty weight slice, including a single coordinate.
pub(crate) fn primitive_count(weights: &[u64], x: &BigRational) -> Result<u128> {
    if weights.is_empty() {
        return Ok(0);
    }
    let top = x.floor().to_integer().to_usize().ok_or(Error::Overflow("Möbius range"))?;
    if top == 0 {
        return Ok(0);
    }
    let mu = mobius_sieve(top)?;
    let mut total: i128 = 0;
    for d in 1..=top {
        let m = mu.get(d);
        if m == 0 {
            continue;
        }
        let c = count_box_slice(weights, x, d as u64)?;
        let c = i128::try_from(c).map_err(|_| Error::Overflow("Möbius sum"))?;
        total = total.checked_add(m as i128 * c).ok_or(Error::Overflow("Möbius sum"))?;
    }
    u128::try_from(total).map_err(|_| Error::Overflow("Möbius sum"))
}

/// `sum_{d ≤ X} μ(d) count_box(X / d)`.
pub fn count_primitive_fast(ws: &WeightSystem, x: &BigRational) -> Result<u128> {
    check_x(x, true)?;
    primitive_count(ws.weights(), x)
}

/// Primitive tuples fixed by `λ = -1`: every odd-weight coordinate vanishes,
/// so this is the primitive count of the even-weight coordinates alone.
pub fn fixed_tuple_count(ws: &WeightSystem, x: &BigRational) -> Result<u128> {
    check_x(x, true)?;
    let even: Vec<u64> = ws.weights().iter().copied().filter(|w| w % 2 == 0).collect();
    primitive_count(&even, x)
}

/// Burnside over `{±1}`: `(primitive + fixed) / 2`.
pub fn count_size_fast(ws: &WeightSystem, x: &BigRational) -> Result<u128> {
    let prim = count_primitive_fast(ws, x)?;
    let fixed = fixed_tuple_count(ws, x)?;
    debug_assert_eq!((prim + fixed) % 2, 0);
    Ok((prim + fixed) / 2)
}
