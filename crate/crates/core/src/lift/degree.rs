use num_integer::Integer;

use crate::space::WeightSystem;
use crate::{Error, Result};

/// Default state limit for [`orbit_count_oracle`].
pub const DEFAULT_ORBIT_BUDGET: u128 = 1_000_000;

/// Degree of the Veronese morphism, `q^n d / prod q_i`.
pub fn veronese_degree(ws: &WeightSystem) -> Result<u128> {
    let q = ws.lcm() as u128;
    let mut num: u128 = ws.gcd() as u128;
    for _ in 0..ws.dimension() {
        num = num.checked_mul(q).ok_or(Error::Overflow("veronese degree"))?;
    }
    let den = ws
        .weights()
        .iter()
        .try_fold(1u128, |a, &w| a.checked_mul(w as u128))
        .ok_or(Error::Overflow("veronese degree"))?;
    let (deg, rem) = num.div_rem(&den);
    if rem != 0 {
        return Err(Error::InvalidWeights(format!("non-integral Veronese degree {num}/{den}")));
    }
    Ok(deg)
}

/// Counts orbits of exponent tuples `prod_i Z/n_i` under the generator
/// `c_i -> c_i + 1 (mod n_i)`, i.e. the fiber of a general point.
pub fn orbit_count_oracle(ws: &WeightSystem, budget: u128) -> Result<u128> {
    let moduli: Vec<usize> = ws.exponents().iter().map(|&n| n as usize).collect();
    let size = moduli.iter().try_fold(1u128, |a, &n| a.checked_mul(n as u128));
    let size = match size {
        Some(s) if s <= budget => s as usize,
        Some(s) => return Err(Error::OracleTooLarge { size: s, limit: budget }),
        None => return Err(Error::OracleTooLarge { size: u128::MAX, limit: budget }),
    };
    let mut seen = vec![false; size];
    let mut orbits = 0u128;
    let mut digits = vec![0usize; moduli.len()];
    for start in 0..size {
        if seen[start] {
            continue;
        }
        orbits += 1;
        // mixed-radix decode, little end last
        let mut rest = start;
        for (d, &m) in digits.iter_mut().zip(&moduli).rev() {
            *d = rest % m;
            rest /= m;
        }
        let mut idx = start;
        while !seen[idx] {
            seen[idx] = true;
            idx = 0;
            for (d, &m) in digits.iter_mut().zip(&moduli) {
                *d = (*d + 1) % m;
                idx = idx * m + *d;
            }
        }
    }
    Ok(orbits)
}
