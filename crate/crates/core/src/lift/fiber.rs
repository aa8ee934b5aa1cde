use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::space::{canonicalize_geometric, ProjectivePoint, WeightSystem, WeightedPoint};
use crate::{Error, Result};

use super::check::{assemble_lambda, rational_root, solve_exponents, solve_sign};

/// All rational preimages of `y`, one per class.
///
/// Points are identified when some algebraic scalar relates them while
/// keeping every coordinate rational. Without this identification fibers
/// over points with zero coordinates would be infinite (every `[p : 0]` in
/// weights `(2, 3)` maps to `[1 : 0]`).
///
/// The scalar is unique up to sign modulo `lcm(n_i)`-th powers on the
/// support, so the fiber is found by trying both signs and every choice of
/// square-root sign on coordinates with even `n_i`.
pub fn fiber_rational_points(y: &ProjectivePoint, ws: &WeightSystem) -> Result<Vec<WeightedPoint>> {
    if y.coords().len() != ws.arity() {
        return Err(Error::ArityMismatch { expected: ws.arity(), got: y.coords().len() });
    }
    let Ok(exps) = solve_exponents(y, ws)? else {
        return Ok(Vec::new());
    };
    if solve_sign(y, ws).is_err() {
        return Ok(Vec::new());
    }
    let base = assemble_lambda(1, &exps);
    let n = ws.exponents();
    let even: Vec<usize> = (0..y.coords().len()).filter(|&i| !y.coords()[i].is_zero() && n[i] % 2 == 0).collect();

    let mut seen = BTreeSet::new();
    for lambda in [base.clone(), -base] {
        let powered: Vec<BigRational> =
            y.coords().iter().map(|c| &lambda * BigRational::from_integer(c.clone())).collect();
        if even.iter().any(|&i| powered[i].is_negative()) {
            continue;
        }
        let roots: Option<Vec<BigRational>> =
            powered.iter().zip(n).map(|(v, &k)| rational_root(v, k as u32)).collect();
        let roots = roots.expect("solved scalar makes every coordinate a power");
        for mask in 0u64..(1 << even.len()) {
            let mut coords = roots.clone();
            for (bit, &i) in even.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    coords[i] = -&coords[i];
                }
            }
            let x = canonicalize_geometric(&WeightedPoint::new(ws, coords)?)?;
            seen.insert(x.coords().to_vec());
        }
    }
    seen.into_iter().map(|c| WeightedPoint::new(ws, c)).collect()
}

/// Number of classes in the rational fiber over `y`.
///
/// With `E` the number of nonzero coordinates whose `n_i` is even, a
/// liftable point has `max(1, 2^(E-1))` preimage classes.
pub fn fiber_size(y: &ProjectivePoint, ws: &WeightSystem) -> Result<u64> {
    if y.coords().len() != ws.arity() {
        return Err(Error::ArityMismatch { expected: ws.arity(), got: y.coords().len() });
    }
    if solve_exponents(y, ws)?.is_err() || solve_sign(y, ws).is_err() {
        return Ok(0);
    }
    let e = (0..y.coords().len())
        .filter(|&i| !y.coords()[i].is_zero() && ws.exponents()[i] % 2 == 0)
        .count() as u32;
    Ok(if e == 0 { 1 } else { 1 << (e - 1) })
}
