//! Machine-integer liftability for enumeration loops.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::arith::factor_u64;

fn valuation(mut v: u64, p: u64) -> u64 {
    let mut e = 0;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    e
}

/// Same decision as `lift_check` for coordinates that fit in `i64`.
pub(crate) fn liftable(y: &[i64], exps: &[u64]) -> bool {
    let support: Vec<usize> = (0..y.len()).filter(|&i| y[i] != 0).collect();
    let mut has_pos = false;
    let mut has_neg = false;
    for &i in &support {
        if exps[i] % 2 == 0 {
            has_pos |= y[i] > 0;
            has_neg |= y[i] < 0;
        }
    }
    if has_pos && has_neg {
        return false;
    }
    let mut primes = BTreeSet::new();
    for &i in &support {
        primes.extend(factor_u64(y[i].unsigned_abs()).into_iter().map(|(p, _)| p));
    }
    for p in primes {
        let res: Vec<(u64, u64)> = support
            .iter()
            .map(|&i| {
                let n = exps[i];
                ((n - valuation(y[i].unsigned_abs(), p) % n) % n, n)
            })
            .collect();
        for (k, &(a, m)) in res.iter().enumerate() {
            for &(b, n) in &res[k + 1..] {
                let g = m.gcd(&n);
                if a % g != b % g {
                    return false;
                }
            }
        }
    }
    true
}

/// Rational fiber size, as in `fiber_size`.
pub(crate) fn fiber_size(y: &[i64], exps: &[u64]) -> u64 {
    if !liftable(y, exps) {
        return 0;
    }
    let e = y.iter().zip(exps).filter(|&(&v, &n)| v != 0 && n % 2 == 0).count() as u32;
    if e == 0 {
        1
    } else {
        1 << (e - 1)
    }
}
