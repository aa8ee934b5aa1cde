use crate::{Error, Result};

use super::factor::factor_u64;

/// Möbius values μ(1..=N) from a linear sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    // index 0 is unused
    mu: Vec<i8>,
}

impl MobiusTable {
    /// μ(n) for 1 ≤ n ≤ N.
    pub fn get(&self, n: usize) -> i8 {
        assert!(n >= 1 && n < self.mu.len(), "μ({n}) outside sieved range");
        self.mu[n]
    }

    pub fn limit(&self) -> usize {
        self.mu.len() - 1
    }

    /// The table as the sequence μ(1), …, μ(N).
    pub fn values(&self) -> &[i8] {
        &self.mu[1..]
    }
}

pub fn mobius_sieve(n: usize) -> Result<MobiusTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("Möbius sieve needs N ≥ 1".into()));
    }
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let Some(ip) = i.checked_mul(p) else { break };
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    Ok(MobiusTable { mu })
}

pub fn euler_totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("φ(0) is undefined".into()));
    }
    Ok(factor_u64(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1)))
}
