use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{factorize, int_valuation};
use crate::space::{canonicalize, veronese, ProjectivePoint, WeightSystem, WeightedPoint};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    /// Two congruences on the exponent of one prime are incompatible.
    Congruence,
    /// Even exponents force contradictory signs on the scalar.
    Sign,
    /// A bounded search found no scalar; not a proof.
    Exhausted,
}

/// `t ≡ residue (mod modulus)` imposed by coordinate `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub index: usize,
    pub residue: u64,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    #[serde(rename = "type")]
    pub kind: ObstructionKind,
    /// `None` for the sign condition, which is a congruence on the sign bit.
    #[serde(serialize_with = "ser_prime")]
    pub prime: Option<BigUint>,
    pub residues: Vec<Residue>,
}

/// Outcome of a liftability query for a point of ordinary projective space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub liftable: bool,
    #[serde(serialize_with = "ser_rational")]
    pub lambda: Option<BigRational>,
    pub witness: Option<WeightedPoint>,
    pub obstruction: Option<Obstruction>,
}

fn ser_prime<S: Serializer>(p: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => match p.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&p.to_string()),
        },
        None => s.serialize_none(),
    }
}

fn ser_rational<S: Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl LiftResult {
    pub(crate) fn lifted(lambda: BigRational, witness: WeightedPoint) -> Self {
        Self { liftable: true, lambda: Some(lambda), witness: Some(witness), obstruction: None }
    }

    pub(crate) fn obstructed(obstruction: Obstruction) -> Self {
        Self { liftable: false, lambda: None, witness: None, obstruction: Some(obstruction) }
    }

    /// Re-checks the result against the query without trusting the solver.
    ///
    /// A witness must satisfy `x_i^{n_i} = λ y_i` and map onto `y`. A
    /// congruence or sign certificate must restate the query's own
    /// conditions and contain two residues that no integer satisfies.
    pub fn verify(&self, y: &ProjectivePoint, ws: &WeightSystem) -> bool {
        if self.liftable {
            let (Some(lambda), Some(x)) = (&self.lambda, &self.witness) else {
                return false;
            };
            if x.system() != ws || y.coords().len() != ws.arity() {
                return false;
            }
            let exact = x.coords().iter().zip(y.coords()).zip(ws.exponents()).all(|((xi, yi), &n)| {
                xi.pow(n as i32) == lambda * BigRational::from_integer(yi.clone())
            });
            return exact && veronese(x).is_ok_and(|img| img == *y);
        }
        let Some(ob) = &self.obstruction else {
            return false;
        };
        let stated = ob.residues.iter().all(|r| {
            let Some(yi) = y.coords().get(r.index) else {
                return false;
            };
            let n = ws.exponents()[r.index];
            if yi.is_zero() || r.modulus != n {
                return false;
            }
            match (&ob.kind, &ob.prime) {
                (ObstructionKind::Congruence, Some(p)) => {
                    let v = int_valuation(yi.magnitude(), p);
                    r.residue == (-v).rem_euclid(n as i64) as u64
                }
                (ObstructionKind::Sign, None) => n % 2 == 0 && r.residue == u64::from(yi.is_negative()),
                _ => false,
            }
        });
        let clash = ob.residues.iter().enumerate().any(|(k, a)| {
            ob.residues[k + 1..].iter().any(|b| {
                let g = match ob.kind {
                    ObstructionKind::Sign => 2,
                    _ => a.modulus.gcd(&b.modulus),
                };
                a.residue % g != b.residue % g
            })
        });
        stated && clash
    }
}

/// Combines `t ≡ a (mod m)` with `t ≡ b (mod n)`; `None` if incompatible.
pub(crate) fn crt(a: u64, m: u64, b: u64, n: u64) -> Option<(u64, u64)> {
    let g = m.gcd(&n);
    if a % g != b % g {
        return None;
    }
    let l = m / g * n;
    // solve a + m k ≡ b (mod n)
    let (m_, n_) = ((m / g) as i128, (n / g) as i128);
    let ext = m_.extended_gcd(&n_);
    let inv = ext.x.rem_euclid(n_);
    let diff = (b as i128 - a as i128) / g as i128;
    let k = (diff.rem_euclid(n_) * inv).rem_euclid(n_);
    let t = (a as i128 + m as i128 * k).rem_euclid(l as i128);
    Some((t as u64, l))
}

/// Required exponent of the scalar at each prime, modulo `lcm(n_i)` over the
/// support, or the first obstruction met.
pub(crate) fn solve_exponents(
    y: &ProjectivePoint,
    ws: &WeightSystem,
) -> Result<std::result::Result<Vec<(BigUint, u64, u64)>, Obstruction>> {
    let support: Vec<usize> = (0..y.coords().len()).filter(|&i| !y.coords()[i].is_zero()).collect();
    let mut primes = BTreeSet::new();
    for &i in &support {
        primes.extend(factorize(&y.coords()[i])?.factors().keys().cloned());
    }
    let exps = ws.exponents();
    let mut out = Vec::new();
    for p in primes {
        let residues: Vec<Residue> = support
            .iter()
            .map(|&i| {
                let v = int_valuation(y.coords()[i].magnitude(), &p);
                Residue { index: i, residue: (-v).rem_euclid(exps[i] as i64) as u64, modulus: exps[i] }
            })
            .collect();
        for (k, a) in residues.iter().enumerate() {
            for b in &residues[k + 1..] {
                let g = a.modulus.gcd(&b.modulus);
                if a.residue % g != b.residue % g {
                    return Ok(Err(Obstruction {
                        kind: ObstructionKind::Congruence,
                        prime: Some(p),
                        residues: vec![a.clone(), b.clone()],
                    }));
                }
            }
        }
        let (mut t, mut l) = (0u64, 1u64);
        for r in &residues {
            (t, l) = crt(t, l, r.residue, r.modulus).expect("pairwise compatible residues combine");
        }
        out.push((p, t, l));
    }
    Ok(Ok(out))
}

/// Sign `ε` with `ε y_i > 0` whenever `n_i` is even, or the clashing pair.
pub(crate) fn solve_sign(y: &ProjectivePoint, ws: &WeightSystem) -> std::result::Result<i8, Obstruction> {
    let even: Vec<usize> = (0..y.coords().len())
        .filter(|&i| !y.coords()[i].is_zero() && ws.exponents()[i] % 2 == 0)
        .collect();
    let pos = even.iter().find(|&&i| y.coords()[i].is_positive());
    let neg = even.iter().find(|&&i| y.coords()[i].is_negative());
    match (pos, neg) {
        (Some(&i), Some(&j)) => Err(Obstruction {
            kind: ObstructionKind::Sign,
            prime: None,
            residues: vec![
                Residue { index: i, residue: 0, modulus: ws.exponents()[i] },
                Residue { index: j, residue: 1, modulus: ws.exponents()[j] },
            ],
        }),
        (None, Some(_)) => Ok(-1),
        _ => Ok(1),
    }
}

/// Exact real `n`-th root of a rational, if it is rational.
pub(crate) fn rational_root(r: &BigRational, n: u32) -> Option<BigRational> {
    if r.is_zero() {
        return Some(r.clone());
    }
    if r.is_negative() && n % 2 == 0 {
        return None;
    }
    let root = |m: &BigUint| {
        let s = m.nth_root(n);
        (s.pow(n) == *m).then_some(s)
    };
    let num = root(r.numer().magnitude())?;
    let den = root(r.denom().magnitude())?;
    let x = BigRational::new(BigInt::from(num), BigInt::from(den));
    Some(if r.is_negative() { -x } else { x })
}

fn check_arity(y: &ProjectivePoint, ws: &WeightSystem) -> Result<()> {
    if y.coords().len() != ws.arity() {
        return Err(Error::ArityMismatch { expected: ws.arity(), got: y.coords().len() });
    }
    Ok(())
}

/// Scalar `ε prod p^{t_p}` built from solved exponents.
pub(crate) fn assemble_lambda(sign: i8, exps: &[(BigUint, u64, u64)]) -> BigRational {
    let mut num = BigInt::one();
    for (p, t, _) in exps {
        num *= BigInt::from(p.clone()).pow(*t as u32);
    }
    if sign < 0 {
        num = -num;
    }
    BigRational::from_integer(num)
}

/// Takes `x_i = (λ y_i)^{1/n_i}`, with the positive root for even `n_i`.
pub(crate) fn roots_for(y: &ProjectivePoint, ws: &WeightSystem, lambda: &BigRational) -> Option<Vec<BigRational>> {
    y.coords()
        .iter()
        .zip(ws.exponents())
        .map(|(yi, &n)| rational_root(&(lambda * BigRational::from_integer(yi.clone())), n as u32))
        .collect()
}

/// Decides whether `y` has a rational preimage under the Veronese map,
/// returning a canonical witness or a verifiable obstruction.
pub fn lift_check(y: &ProjectivePoint, ws: &WeightSystem) -> Result<LiftResult> {
    check_arity(y, ws)?;
    let exps = match solve_exponents(y, ws)? {
        Ok(e) => e,
        Err(ob) => return Ok(LiftResult::obstructed(ob)),
    };
    let sign = match solve_sign(y, ws) {
        Ok(s) => s,
        Err(ob) => return Ok(LiftResult::obstructed(ob)),
    };
    let lambda = assemble_lambda(sign, &exps);
    let coords = roots_for(y, ws, &lambda).expect("solved scalar makes every coordinate a power");
    witness_result(y, ws, coords)
}

/// Canonicalizes a preimage and recomputes its scalar.
pub(crate) fn witness_result(y: &ProjectivePoint, ws: &WeightSystem, coords: Vec<BigRational>) -> Result<LiftResult> {
    let x = canonicalize(&WeightedPoint::new(ws, coords)?)?;
    let i = (0..y.coords().len()).find(|&i| !y.coords()[i].is_zero()).ok_or(Error::ZeroPoint)?;
    let lambda = x.coord(i).pow(ws.exponents()[i] as i32) / BigRational::from_integer(y.coords()[i].clone());
    Ok(LiftResult::lifted(lambda, x))
}
