use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Result};

/// A weight tuple `(q_0, …, q_n)` with its derived invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem {
    weights: Vec<u64>,
    lcm: u64,
    total: u64,
    gcd: u64,
    exponents: Vec<u64>,
    well_formed: bool,
}

impl WeightSystem {
    /// Validates a weight tuple: at least two entries, all positive.
    ///
    /// Systems that are not well formed are accepted; [`Self::is_well_formed`]
    /// reports it.
    pub fn new(weights: &[u64]) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        if weights.iter().any(|&w| w > u32::MAX as u64) {
            return Err(Error::InvalidWeights("weights must fit in 32 bits".into()));
        }
        let mut lcm: u64 = 1;
        for &w in weights {
            lcm = (lcm / lcm.gcd(&w)).checked_mul(w).ok_or(Error::Overflow("weight lcm"))?;
        }
        if lcm > u32::MAX as u64 {
            return Err(Error::Overflow("weight lcm"));
        }
        let total = weights.iter().try_fold(0u64, |a, &w| a.checked_add(w)).ok_or(Error::Overflow("weight sum"))?;
        let gcd = weights.iter().fold(0u64, |g, &w| g.gcd(&w));
        let exponents = weights.iter().map(|&w| lcm / w).collect();
        let well_formed = (0..weights.len()).all(|skip| {
            weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(0u64, |g, (_, &w)| g.gcd(&w))
                == 1
        });
        Ok(Self { weights: weights.to_vec(), lcm, total, gcd, exponents, well_formed })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    /// Number of coordinates, n + 1.
    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    /// Projective dimension n.
    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }

    /// q = lcm of the weights.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// Q = sum of the weights.
    pub fn total_weight(&self) -> u64 {
        self.total
    }

    /// d = gcd of the weights.
    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    /// Veronese exponents n_i = q / q_i.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_well_formed(&self) -> bool {
        self.well_formed
    }

    /// True when the weights have gcd 1.
    pub fn is_reduced(&self) -> bool {
        self.gcd == 1
    }

    pub fn min_weight(&self) -> u64 {
        self.weights.iter().copied().min().unwrap_or(1)
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    /// True when every weight is 1, i.e. classical projective space.
    pub fn is_classical(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

impl FromStr for WeightSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("weight {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&weights)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
