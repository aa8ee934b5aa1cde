use std::collections::HashSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::lift::{box_cost, small, sum_over_projective};
use crate::space::{canonicalize_geometric, weighted_height, WeightSystem, WeightedPoint};
use crate::{Error, Result};

use super::boxes::{bounds, count_size_fast, floor_power};
use super::direct::direct_size_count;

/// Default enumeration budget.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeMethod {
    Direct,
    Fast,
}

impl FromStr for SizeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "fast" => Ok(Self::Fast),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

fn require_at_least_one(x: &BigRational) -> Result<()> {
    if x < &BigRational::one() {
        return Err(Error::InvalidArgument(format!("bound {x} must be at least 1")));
    }
    Ok(())
}

/// Classes of rational points whose normalized representative has
/// Archimedean size at most `x`.
pub fn count_points_size(ws: &WeightSystem, x: &BigRational, method: SizeMethod, budget: u128) -> Result<u128> {
    require_at_least_one(x)?;
    match method {
        SizeMethod::Fast => count_size_fast(ws, x),
        SizeMethod::Direct => direct_size_count(ws.weights(), &bounds(ws.weights(), x)?, budget),
    }
}

/// Classes of rational points with weighted height at most `x`, as the sum
/// of rational fiber sizes over projective points of Weil height at most
/// `floor(x^q)`.
///
/// Classes are taken up to algebraic scalars acting rationally (see
/// `fiber_rational_points`); the count is finite only for that relation.
pub fn count_points_height(ws: &WeightSystem, x: &BigRational, budget: u128) -> Result<u128> {
    require_at_least_one(x)?;
    let t = floor_power(x, 1, ws.lcm())?;
    box_cost(ws.arity(), t.min(u64::MAX as u128) as u64, budget)?;
    let t = u64::try_from(t).map_err(|_| Error::Overflow("height bound"))?;
    let exps = ws.exponents();
    let (total, _) = sum_over_projective(ws.arity(), t, |y| (small::fiber_size(y, exps), 0));
    Ok(total as u128)
}

/// Height count by brute force: integer tuples with `|x_i| ≤ (slack x)^{q_i}`,
/// filtered by exact weighted height and deduplicated.
///
/// Every class found is genuine, but classes whose integral representatives
/// all lie outside the box are missed, so this is a lower bound that agrees
/// with [`count_points_height`] when the slack is large enough.
pub fn count_points_height_slack(ws: &WeightSystem, x: &BigRational, slack: u64, budget: u128) -> Result<u128> {
    require_at_least_one(x)?;
    let scaled = x * BigInt::from(slack);
    let b: Vec<u128> = ws.weights().iter().map(|&w| floor_power(&scaled, 1, w)).collect::<Result<_>>()?;
    let needed = b.iter().try_fold(1u128, |a, &v| a.checked_mul(2 * v + 1)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, limit: budget });
    }
    let b: Vec<i64> = b.iter().map(|&v| v.to_i64().ok_or(Error::Overflow("slack box"))).collect::<Result<_>>()?;
    let mut seen: HashSet<Vec<BigRational>> = HashSet::new();
    let mut t: Vec<i64> = b.iter().map(|v| -v).collect();
    loop {
        if t.iter().any(|&v| v != 0) {
            let p = WeightedPoint::from_integers(ws, &t)?;
            if weighted_height(&p)?.cmp_rational(x).is_le() {
                seen.insert(canonicalize_geometric(&p)?.coords().to_vec());
            }
        }
        let mut k = 0;
        while k < t.len() && t[k] == b[k] {
            t[k] = -b[k];
            k += 1;
        }
        if k == t.len() {
            return Ok(seen.len() as u128);
        }
        t[k] += 1;
    }
}
