use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::FactoredRational;
use crate::{Error, Result};

use super::WeightSystem;

/// A nonzero tuple of rationals read in a weighted projective space.
///
/// Equality is tuple equality; use [`equivalent`] for the projective
/// relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPoint {
    system: WeightSystem,
    coords: Vec<BigRational>,
}

impl WeightedPoint {
    pub fn new(system: &WeightSystem, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != system.arity() {
            return Err(Error::ArityMismatch { expected: system.arity(), got: coords.len() });
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(Self { system: system.clone(), coords })
    }

    pub fn from_integers(system: &WeightSystem, coords: &[i64]) -> Result<Self> {
        Self::new(system, coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(system: &WeightSystem, coords: Vec<BigInt>) -> Result<Self> {
        Self::new(system, coords.into_iter().map(BigRational::from_integer).collect())
    }

    /// Parses a comma separated list such as `9,81,729/1,59049`.
    pub fn parse(system: &WeightSystem, s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(system, coords)
    }

    pub fn system(&self) -> &WeightSystem {
        &self.system
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigRational {
        &self.coords[i]
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// The action of `λ`: coordinate `i` is multiplied by `λ^{q_i}`.
    pub fn scale(&self, lambda: &BigRational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("scaling by zero".into()));
        }
        let coords = self
            .coords
            .iter()
            .zip(self.system.weights())
            .map(|(c, &w)| c * lambda.pow(w as i32))
            .collect();
        Ok(Self { system: self.system.clone(), coords })
    }

    /// Integral with weighted gcd 1.
    pub fn is_normalized(&self) -> bool {
        self.integer_coords().is_some() && wgcd(self).map(|g| g.is_one()).unwrap_or(false)
    }
}

impl fmt::Display for WeightedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl Serialize for WeightedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        parts.serialize(s)
    }
}

pub(crate) fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = |e: String| Error::Parse(format!("coordinate {t:?}: {e}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let d: BigInt = d.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if d.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|e| bad(format!("{e}")))?)),
    }
}

/// A point of ordinary projective space with coprime integer coordinates,
/// first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn from_integers(coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let mut coords: Vec<BigInt> = coords.into_iter().map(|c| c / &g).collect();
        if coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            coords.iter_mut().for_each(|c| *c = -&*c);
        }
        Ok(Self { coords })
    }

    pub fn from_rationals(coords: &[BigRational]) -> Result<Self> {
        let den = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::from_integers(coords.iter().map(|c| (c * &den).to_integer()).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        parts.serialize(s)
    }
}

/// Weighted gcd over the given effective weights. Zero coordinates are skipped.
fn wgcd_with(coords: &[BigRational], weights: &[u64]) -> Result<FactoredRational> {
    let mut factored = Vec::new();
    for (c, &w) in coords.iter().zip(weights) {
        if !c.is_zero() {
            factored.push((FactoredRational::from_rational(c)?, w as i64));
        }
    }
    let primes: BTreeSet<BigUint> = factored.iter().flat_map(|(f, _)| f.factors().keys().cloned()).collect();
    let exps = primes.into_iter().map(|p| {
        let e = factored.iter().map(|(f, w)| Integer::div_floor(&f.exponent(&p), w)).min().unwrap_or(0);
        (p, e)
    });
    Ok(FactoredRational::from_parts(1, exps))
}

fn normal_form(coords: &[BigRational], weights: &[u64]) -> Result<Vec<BigRational>> {
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let lambda = wgcd_with(coords, weights)?.inv();
    let mut out: Vec<BigRational> = coords
        .iter()
        .zip(weights)
        .map(|(c, &w)| if c.is_zero() { c.clone() } else { c * lambda.pow(w as i64).to_rational() })
        .collect();
    let lead = (0..out.len()).find(|&i| weights[i] % 2 == 1 && !out[i].is_zero());
    if lead.is_some_and(|i| out[i].is_negative()) {
        for (c, &w) in out.iter_mut().zip(weights) {
            if w % 2 == 1 {
                *c = -&*c;
            }
        }
    }
    Ok(out)
}

/// Weighted gcd: `prod p^{e_p}` with `e_p = min_i floor(v_p(x_i) / q_i)`
/// over the nonzero coordinates. Exponents may be negative.
pub fn wgcd(p: &WeightedPoint) -> Result<FactoredRational> {
    wgcd_with(&p.coords, p.system.weights())
}

/// Rescales by `1 / wgcd`, giving an integral representative with wgcd 1.
pub fn normalize(p: &WeightedPoint) -> Result<WeightedPoint> {
    let lambda = wgcd(p)?.inv();
    let coords = p
        .coords
        .iter()
        .zip(p.system.weights())
        .map(|(c, &w)| if c.is_zero() { c.clone() } else { c * lambda.pow(w as i64).to_rational() })
        .collect();
    Ok(WeightedPoint { system: p.system.clone(), coords })
}

/// The unique normalized representative whose first odd-weight nonzero
/// coordinate is positive.
pub fn canonicalize(p: &WeightedPoint) -> Result<WeightedPoint> {
    let coords = normal_form(&p.coords, p.system.weights())?;
    Ok(WeightedPoint { system: p.system.clone(), coords })
}

/// Canonical form for the coarser relation that also identifies points
/// related by an algebraic scalar whose action is rational on the support.
///
/// On the support the relevant weights are `q_i / g` with
/// `g = gcd(q_i : x_i != 0)`.
pub fn canonicalize_geometric(p: &WeightedPoint) -> Result<WeightedPoint> {
    let support = p.support();
    let g = support.iter().fold(0u64, |g, &i| g.gcd(&p.system.weight(i)));
    let reduced: Vec<u64> = p.system.weights().iter().map(|&w| (w / g).max(1)).collect();
    let coords = normal_form(&p.coords, &reduced)?;
    Ok(WeightedPoint { system: p.system.clone(), coords })
}

/// Whether two points are related by some `λ ∈ ℚ^*`.
pub fn equivalent(a: &WeightedPoint, b: &WeightedPoint) -> Result<bool> {
    if a.system != b.system {
        return Err(Error::InvalidArgument(format!(
            "points live in different spaces {} and {}",
            a.system, b.system
        )));
    }
    Ok(canonicalize(a)?.coords == canonicalize(b)?.coords)
}

/// The Veronese image `[x_0^{n_0} : … : x_n^{n_n}]` in ordinary projective space.
pub fn veronese(p: &WeightedPoint) -> Result<ProjectivePoint> {
    let powered: Vec<BigRational> = p
        .coords
        .iter()
        .zip(p.system.exponents())
        .map(|(c, &n)| c.pow(n as i32))
        .collect();
    ProjectivePoint::from_rationals(&powered)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::new(w).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(p: &WeightedPoint) -> Vec<i64> {
        p.coords.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    /// Searches `λ = ±a/b` with `a, b ≤ 8` for `b = λ * a`.
    fn brute_equivalent(a: &WeightedPoint, b: &WeightedPoint) -> bool {
        for num in 1..=8i64 {
            for den in 1..=8i64 {
                for s in [1, -1] {
                    if a.scale(&rat(s * num, den)).unwrap() == *b {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn wgcd_with_fractional_coordinate() {
        let w = ws(&[2, 4, 6, 10]);
        let p = WeightedPoint::new(&w, vec![rat(1, 1), rat(1, 3), rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(wgcd(&p).unwrap().to_rational(), rat(1, 3));
        let n = normalize(&p).unwrap();
        assert_eq!(ints(&n), vec![9, 27, 729, 59049]);
        assert!(n.is_normalized());
        assert_eq!(canonicalize(&p).unwrap(), n);
    }

    #[test]
    fn integral_wgcd() {
        let w = ws(&[1, 2]);
        let p = WeightedPoint::from_integers(&w, &[6, 36]).unwrap();
        assert_eq!(wgcd(&p).unwrap().to_rational(), rat(6, 1));
        assert_eq!(ints(&normalize(&p).unwrap()), vec![1, 1]);
        let w = ws(&[2, 3]);
        let p = WeightedPoint::from_integers(&w, &[4, 8]).unwrap();
        assert_eq!(ints(&normalize(&p).unwrap()), vec![1, 1]);
    }

    #[test]
    fn sign_rule() {
        let w = ws(&[1, 2]);
        let p = WeightedPoint::from_integers(&w, &[-1, 3]).unwrap();
        assert_eq!(ints(&canonicalize(&p).unwrap()), vec![1, 3]);
        let w = ws(&[2, 4]);
        // no odd weight: both signs are distinct classes
        let a = WeightedPoint::from_integers(&w, &[-1, 1]).unwrap();
        let b = WeightedPoint::from_integers(&w, &[1, 1]).unwrap();
        assert!(!equivalent(&a, &b).unwrap());
        let w = ws(&[2, 3]);
        let p = WeightedPoint::from_integers(&w, &[1, -1]).unwrap();
        assert_eq!(ints(&canonicalize(&p).unwrap()), vec![1, 1]);
    }

    #[test]
    fn equivalence_matches_brute_force() {
        for w in [[1u64, 2], [2, 3], [2, 4]] {
            let w = ws(&w);
            let pts: Vec<WeightedPoint> = (-4i64..=4)
                .flat_map(|a| (-4i64..=4).map(move |b| [a, b]))
                .filter(|c| c != &[0, 0])
                .map(|c| WeightedPoint::from_integers(&w, &c).unwrap())
                .collect();
            for a in &pts {
                for b in &pts {
                    assert_eq!(equivalent(a, b).unwrap(), brute_equivalent(a, b), "{w} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn geometric_form_merges_support_classes() {
        let w = ws(&[2, 3]);
        let a = canonicalize_geometric(&WeightedPoint::from_integers(&w, &[2, 0]).unwrap()).unwrap();
        let b = canonicalize_geometric(&WeightedPoint::from_integers(&w, &[3, 0]).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(ints(&a), vec![1, 0]);
        let w = ws(&[2, 2]);
        let c = canonicalize_geometric(&WeightedPoint::from_integers(&w, &[5, 5]).unwrap()).unwrap();
        assert_eq!(ints(&c), vec![1, 1]);
        let d = canonicalize_geometric(&WeightedPoint::from_integers(&w, &[-5, 5]).unwrap()).unwrap();
        assert_eq!(ints(&d), vec![1, -1]);
    }

    #[test]
    fn veronese_is_primitive() {
        let w = ws(&[2, 4, 6, 10]);
        let p = WeightedPoint::new(&w, vec![rat(1, 1), rat(1, 3), rat(1, 1), rat(1, 1)]).unwrap();
        let y = veronese(&p).unwrap();
        let expect: Vec<BigInt> = vec![3u32.pow(15).into(), 1.into(), 3u32.pow(15).into(), 3u32.pow(15).into()];
        assert_eq!(y.coords(), expect.as_slice());
        let w = ws(&[1, 2]);
        let y = veronese(&WeightedPoint::from_integers(&w, &[-2, -6]).unwrap()).unwrap();
        assert_eq!(y.coords(), &[BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn parsing() {
        let w = ws(&[2, 4, 6, 10]);
        let p = WeightedPoint::parse(&w, "9, 81,729/1,59049").unwrap();
        assert_eq!(ints(&p), vec![9, 81, 729, 59049]);
        assert!(WeightedPoint::parse(&w, "1,2,3").is_err());
        assert!(WeightedPoint::parse(&w, "0,0,0,0").is_err());
        assert!(WeightedPoint::parse(&w, "1/0,1,1,1").is_err());
    }
}
