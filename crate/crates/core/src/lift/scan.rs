use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::space::WeightSystem;
use crate::{Error, Result};

use super::small;

/// Liftability counts over projective points of bounded Weil height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityRecord {
    pub bound: u64,
    pub total: u64,
    pub liftable: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub density: BigRational,
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Checks `(2 bound + 1)^arity` against the enumeration budget.
pub(crate) fn box_cost(arity: usize, bound: u64, budget: u128) -> Result<()> {
    let side = 2 * bound as u128 + 1;
    let needed = (0..arity).try_fold(1u128, |a, _| a.checked_mul(side)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, limit: budget });
    }
    Ok(())
}

/// Sums `f` over the primitive integer tuples with `max |y_i| ≤ bound`
/// whose first nonzero coordinate is positive, i.e. over the points of
/// projective space of height at most `bound`.
///
/// Work is split on the first coordinate; the merge is an integer sum and
/// therefore independent of scheduling.
pub(crate) fn sum_over_projective<F>(arity: usize, bound: u64, f: F) -> (u64, u64)
where
    F: Fn(&[i64]) -> (u64, u64) + Sync,
{
    let b = bound as i64;
    (0..=b)
        .into_par_iter()
        .map(|first| {
            let mut acc = (0u64, 0u64);
            let mut y = vec![0i64; arity];
            y[0] = first;
            let rest = arity - 1;
            for v in y[1..].iter_mut() {
                *v = -b;
            }
            loop {
                let lead_ok = first > 0 || y[1..].iter().find(|&&v| v != 0).is_some_and(|&v| v > 0);
                if lead_ok && y.iter().fold(0i64, |g, v| g.gcd(v)) == 1 {
                    let (a, c) = f(&y);
                    acc.0 += a;
                    acc.1 += c;
                }
                // odometer over coordinates 1..arity
                let mut k = 0;
                while k < rest {
                    let slot = &mut y[arity - 1 - k];
                    if *slot < b {
                        *slot += 1;
                        break;
                    }
                    *slot = -b;
                    k += 1;
                }
                if k == rest {
                    break;
                }
            }
            acc
        })
        .reduce(|| (0, 0), |a, c| (a.0 + c.0, a.1 + c.1))
}

/// Counts points of projective space with Weil height at most `bound` and
/// how many of them lift to the weighted space.
pub fn sparsity_scan(ws: &WeightSystem, bound: u64, budget: u128) -> Result<SparsityRecord> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    box_cost(ws.arity(), bound, budget)?;
    if bound > i64::MAX as u64 / 4 {
        return Err(Error::Overflow("sparsity bound"));
    }
    let exps = ws.exponents();
    let (total, liftable) = sum_over_projective(ws.arity(), bound, |y| (1, u64::from(small::liftable(y, exps))));
    let density = BigRational::new(BigInt::from(liftable), BigInt::from(total));
    Ok(SparsityRecord { bound, total, liftable, density })
}
