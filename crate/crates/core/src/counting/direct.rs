//! Counting classes of bounded size one representative at a time.
//!
//! Every coordinate except the one with the widest range is enumerated. For
//! a fixed prefix the admissible values of the last coordinate are counted
//! by inclusion-exclusion over the primes that already divide the prefix to
//! the weighted power, so the widest range is never walked.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::mobius_sieve;
use crate::{Error, Result};

/// Smallest prime factor table, or trial division past the table.
struct PrimeFactors {
    spf: Vec<u32>,
}

impl PrimeFactors {
    const TABLE_LIMIT: u64 = 1 << 24;

    fn new(limit: u64) -> Self {
        let n = limit.min(Self::TABLE_LIMIT) as usize + 1;
        let mut spf = vec![0u32; n];
        for i in 2..n {
            if spf[i] == 0 {
                for j in (i..n).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Self { spf }
    }

    fn distinct(&self, mut n: u64, out: &mut Vec<u64>) {
        out.clear();
        while n > 1 && (n as usize) < self.spf.len() {
            let p = self.spf[n as usize] as u64;
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        let mut p = 2;
        while n > 1 && p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
    }
}

/// `#{1 ≤ v ≤ m : no modulus in `mods` divides v}`.
fn coprime_to_all(m: u64, mods: &[u64]) -> u64 {
    fn walk(m: u64, mods: &[u64], prod: u64, sign: i64, acc: &mut i64) {
        for (k, &d) in mods.iter().enumerate() {
            if let Some(next) = prod.checked_mul(d).filter(|&v| v <= m) {
                *acc -= sign * (m / next) as i64;
                walk(m, &mods[k + 1..], next, -sign, acc);
            }
        }
    }
    let mut acc = m as i64;
    walk(m, mods, 1, 1, &mut acc);
    acc as u64
}

/// `#{1 ≤ v ≤ m : v is k-th power free}`.
fn power_free(m: u64, k: u32) -> Result<u64> {
    let mut top = 1u64;
    while (top + 1).checked_pow(k).is_some_and(|v| v <= m) {
        top += 1;
    }
    let mu = mobius_sieve(top as usize)?;
    let mut acc: i64 = 0;
    for d in 1..=top {
        acc += mu.get(d as usize) as i64 * (m / d.pow(k)) as i64;
    }
    Ok(acc as u64)
}

/// Canonical primitive tuples with `|x_i| ≤ bounds[i]`.
///
/// The sign convention is the one of `canonicalize`: the first odd-weight
/// nonzero coordinate is positive.
pub(crate) fn direct_size_count(weights: &[u64], bounds: &[u128], budget: u128) -> Result<u128> {
    let k = weights.len();
    let limit = (i64::MAX / 4) as u128;
    if bounds.iter().any(|&b| b > limit) {
        return Err(Error::Overflow("direct enumeration bound"));
    }
    let b: Vec<i64> = bounds.iter().map(|&v| v as i64).collect();
    let last = (0..k).rev().max_by_key(|&i| b[i]).unwrap_or(0);
    let prefix: Vec<usize> = (0..k).filter(|&i| i != last).collect();
    let cost = prefix
        .iter()
        .try_fold(1u128, |a, &i| a.checked_mul(2 * bounds[i] + 1))
        .and_then(|c| c.checked_add(bounds[last]))
        .unwrap_or(u128::MAX);
    if cost > budget {
        return Err(Error::BudgetExceeded { needed: cost, limit: budget });
    }

    let m = b[last] as u64;
    let q_last = weights[last] as u32;
    let last_odd = weights[last] % 2 == 1;
    let prefix_max = prefix.iter().map(|&i| b[i] as u64).max().unwrap_or(0);
    let primes = PrimeFactors::new(prefix_max);

    let zero_prefix = {
        let c = power_free(m, q_last)? as u128;
        if last_odd {
            c
        } else {
            2 * c
        }
    };

    let head = prefix[0];
    let tail = &prefix[1..];
    let total: u128 = (-b[head]..=b[head])
        .into_par_iter()
        .map(|first| {
            let mut acc: u128 = 0;
            let mut vals: Vec<i64> = tail.iter().map(|&i| -b[i]).collect();
            let mut ps = Vec::new();
            let mut mods = Vec::new();
            loop {
                let nonzero = first != 0 || vals.iter().any(|&v| v != 0);
                if nonzero {
                    let coord = |idx: usize| -> i64 {
                        if idx == head {
                            first
                        } else {
                            vals[tail.iter().position(|&t| t == idx).expect("prefix index")]
                        }
                    };
                    let g = vals.iter().fold(first.unsigned_abs(), |g, v| g.gcd(&v.unsigned_abs()));
                    primes.distinct(g, &mut ps);
                    mods.clear();
                    let mut zero_good = true;
                    for &p in &ps {
                        let divides_all = prefix.iter().all(|&i| {
                            let x = coord(i);
                            x == 0 || p.checked_pow(weights[i] as u32).is_some_and(|pp| x.unsigned_abs() % pp == 0)
                        });
                        if divides_all {
                            zero_good = false;
                            if let Some(pp) = p.checked_pow(q_last).filter(|&pp| pp <= m) {
                                mods.push(pp);
                            }
                        }
                    }
                    let good_pos = coprime_to_all(m, &mods) as u128;
                    let zero_good = u128::from(zero_good);
                    let lead = prefix.iter().copied().find(|&i| weights[i] % 2 == 1 && coord(i) != 0);
                    let lead_ok = lead.is_none_or(|j| coord(j) > 0);
                    acc += if !last_odd || lead.is_some_and(|j| j < last) {
                        if lead_ok {
                            2 * good_pos + zero_good
                        } else {
                            0
                        }
                    } else {
                        good_pos + if lead_ok { zero_good } else { 0 }
                    };
                }
                let mut j = vals.len();
                loop {
                    if j == 0 {
                        return acc;
                    }
                    j -= 1;
                    if vals[j] < b[tail[j]] {
                        vals[j] += 1;
                        break;
                    }
                    vals[j] = -b[tail[j]];
                }
            }
        })
        .sum();
    Ok(total + zero_prefix)
}
