use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::arith::{decimal_grid, euler_totient, nth_root, pi, refine, zeta, BoundedReal};
use crate::lift::veronese_degree;
use crate::space::WeightSystem;
use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Where values of the Dedekind zeta function come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaSource {
    /// The field is ℚ; values come from the Riemann zeta evaluator.
    Riemann,
    /// Caller-supplied enclosures keyed by integer argument.
    Table(BTreeMap<i64, BoundedReal>),
}

/// Arithmetic invariants of a number field `K` with `[K:ℚ] = m e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldInvariants {
    pub m: u64,
    pub e: u64,
    pub class_number: u64,
    pub regulator: BoundedReal,
    pub roots_of_unity: u64,
    pub discriminant: u64,
    pub real_embeddings: u64,
    pub complex_embeddings: u64,
    pub zeta: ZetaSource,
}

impl FieldInvariants {
    pub fn rationals() -> Self {
        Self {
            m: 1,
            e: 1,
            class_number: 1,
            regulator: BoundedReal::from_integer(1),
            roots_of_unity: 2,
            discriminant: 1,
            real_embeddings: 1,
            complex_embeddings: 0,
            zeta: ZetaSource::Riemann,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentInvariants(msg));
        if self.m == 0 || self.e == 0 {
            return bad("degrees must be positive".into());
        }
        if self.real_embeddings + 2 * self.complex_embeddings != self.m * self.e {
            return bad(format!(
                "r + 2s = {} but m e = {}",
                self.real_embeddings + 2 * self.complex_embeddings,
                self.m * self.e
            ));
        }
        if self.roots_of_unity < 2 {
            return bad("a number field has at least two roots of unity".into());
        }
        if self.class_number < 1 || self.discriminant < 1 {
            return bad("class number and discriminant must be at least 1".into());
        }
        if !self.regulator.is_positive() {
            return bad("regulator must be positive".into());
        }
        if self.zeta == ZetaSource::Riemann && (self.m * self.e != 1 || self.discriminant != 1) {
            return bad("the Riemann zeta source requires the field ℚ".into());
        }
        Ok(())
    }

    pub fn zeta_at(&self, s: i64, tol: &BigRational) -> Result<BoundedReal> {
        match &self.zeta {
            ZetaSource::Riemann => zeta(s, tol),
            ZetaSource::Table(t) => t
                .get(&s)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("no zeta value supplied at {s}"))),
        }
    }
}

/// Runs `eval` to tolerance when every input can be refined; with tabulated
/// zeta values the table's precision is final.
fn evaluate<F>(inv: &FieldInvariants, tol: &BigRational, mut eval: F) -> Result<BoundedReal>
where
    F: FnMut(&BigRational) -> Result<BoundedReal>,
{
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    match inv.zeta {
        ZetaSource::Riemann => refine(tol, eval),
        ZetaSource::Table(_) => eval(&(tol / BigInt::from(64))),
    }
}

/// A leading constant with the exponents of its asymptotic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantReport {
    pub constant: BoundedReal,
    pub exponent: BigRational,
    pub error_exponent: BigRational,
    pub log_power: u32,
    pub digits: usize,
}

impl ConstantReport {
    fn new(constant: BoundedReal, exponent: BigRational, error_exponent: BigRational, log_power: u32, tol: &BigRational) -> Self {
        let digits = decimal_grid(tol).to_string().len() + 1;
        Self { constant, exponent, error_exponent, log_power, digits }
    }
}

impl Serialize for ConstantReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConstantReport", 5)?;
        st.serialize_field("constant_mid", &self.constant.mid_string(self.digits))?;
        st.serialize_field("constant_width", &self.constant.width_string())?;
        st.serialize_field("exponent", &self.exponent.to_string())?;
        st.serialize_field("error_exponent", &self.error_exponent.to_string())?;
        st.serialize_field("log_power", &self.log_power)?;
        st.end()
    }
}

/// `2^n / ζ(Q)`, the leading constant for counting points over ℚ.
pub fn rational_leading_constant(ws: &WeightSystem, tol: &BigRational) -> Result<ConstantReport> {
    let q_total = ws.total_weight() as i64;
    if q_total < 2 {
        return Err(Error::DivergentZeta(q_total));
    }
    let two_n = BigRational::from_integer(BigInt::one() << ws.dimension());
    let c = evaluate(&FieldInvariants::rationals(), tol, |t| zeta(q_total, t)?.recip().map(|z| z.scale(&two_n)))?;
    Ok(ConstantReport::new(c, rat(q_total), rat(q_total - ws.min_weight() as i64), 0, tol))
}

/// `(2^r (2π)^s / sqrt Δ)`, the lattice covolume factor.
fn covolume_factor(inv: &FieldInvariants, t: &BigRational) -> Result<BoundedReal> {
    let two_pi = pi(t)?.scale(&rat(2));
    let sqrt_delta = nth_root(&rat(inv.discriminant as i64), 2, t)?;
    BoundedReal::from_integer(2).powi(inv.real_embeddings as u32).mul(&two_pi.powi(inv.complex_embeddings as u32)).div(&sqrt_delta)
}

/// `h R / (w ζ_K(s))`.
fn class_factor(inv: &FieldInvariants, s: i64, t: &BigRational) -> Result<BoundedReal> {
    let hr = inv.regulator.scale(&rat(inv.class_number as i64));
    let wz = inv.zeta_at(s, t)?.scale(&rat(inv.roots_of_unity as i64));
    hr.div(&wz)
}

/// Schanuel's constant
/// `(h R / (w ζ_K(n+1))) (2^r (2π)^s / sqrt Δ)^{n+1} (n+1)^{r+s-1}`.
pub fn schanuel_constant(n: u32, inv: &FieldInvariants, tol: &BigRational) -> Result<BoundedReal> {
    inv.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let poly = rat(n as i64 + 1).pow((inv.real_embeddings + inv.complex_embeddings - 1) as i32);
    evaluate(inv, tol, |t| {
        let cls = class_factor(inv, n as i64 + 1, t)?;
        let vol = covolume_factor(inv, t)?.powi(n + 1);
        Ok(cls.mul(&vol).scale(&poly))
    })
}

/// Leading constant over a number field `k`:
/// `(h R / (w ζ_k(Q))) (2^r (2π)^s / sqrt Δ)^{n+1}` with exponent `m Q`.
pub fn numberfield_leading_constant(ws: &WeightSystem, inv: &FieldInvariants, tol: &BigRational) -> Result<ConstantReport> {
    inv.validate()?;
    let q_total = ws.total_weight() as i64;
    let arity = ws.arity() as u32;
    let c = evaluate(inv, tol, |t| {
        let cls = class_factor(inv, q_total, t)?;
        Ok(cls.mul(&covolume_factor(inv, t)?.powi(arity)))
    })?;
    let m = inv.m as i64;
    let exponent = rat(m * q_total);
    let error = &exponent - ratio(1, m);
    Ok(ConstantReport::new(c, exponent, error, 1, tol))
}

/// `1 / gcd(q, φ(m e))`.
pub fn sparsity_factor(q: u64, m: u64, e: u64) -> Result<BigRational> {
    if q == 0 || m == 0 || e == 0 {
        return Err(Error::InvalidArgument("arguments must be positive".into()));
    }
    let me = m.checked_mul(e).ok_or(Error::Overflow("m e"))?;
    let g = q.gcd(&euler_totient(me)?);
    Ok(ratio(1, g as i64))
}

/// Single-field contribution to the degree-`e` leading constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeEReport {
    pub report: ConstantReport,
    /// `V_K`.
    pub volume_factor: BoundedReal,
    pub sparsity: BigRational,
    /// The divisor `q^n / prod q_i` used in the constant.
    pub divisor: BigRational,
    /// The Veronese degree `q^n d / prod q_i`.
    pub veronese_degree: BigRational,
    /// Set when the two divisors differ, i.e. when `d > 1`.
    pub divisor_discrepancy: bool,
}

impl Serialize for DegreeEReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DegreeEReport", 10)?;
        st.serialize_field("constant_mid", &self.report.constant.mid_string(self.report.digits))?;
        st.serialize_field("constant_width", &self.report.constant.width_string())?;
        st.serialize_field("exponent", &self.report.exponent.to_string())?;
        st.serialize_field("error_exponent", &self.report.error_exponent.to_string())?;
        st.serialize_field("log_power", &self.report.log_power)?;
        st.serialize_field("volume_factor_mid", &self.volume_factor.mid_string(self.report.digits))?;
        st.serialize_field("sparsity_factor", &self.sparsity.to_string())?;
        st.serialize_field("divisor", &self.divisor.to_string())?;
        st.serialize_field("veronese_degree", &self.veronese_degree.to_string())?;
        st.serialize_field("divisor_discrepancy", &self.divisor_discrepancy)?;
        st.end()
    }
}

/// `D_K / (q^n / prod q_i)` with `D_K = V_K S_K(n)` and
/// `V_K = 2^{-s(n+1)} Δ^{(n+1)/2} / gcd(q, φ(m e))`, for `n` the dimension of `ws`.
pub fn degree_e_constant_term(ws: &WeightSystem, inv: &FieldInvariants, tol: &BigRational) -> Result<DegreeEReport> {
    inv.validate()?;
    let n = ws.dimension() as u32;
    let q = ws.lcm();
    let prod: BigInt = ws.weights().iter().map(|&w| BigInt::from(w)).product();
    let divisor = BigRational::new(BigInt::from(q).pow(n), prod);
    let degree = BigRational::from_integer(BigInt::from(veronese_degree(ws)?));
    let sparsity = sparsity_factor(q, inv.m, inv.e)?;

    let half = (n + 1) / 2;
    let volume = |t: &BigRational| -> Result<BoundedReal> {
        let delta = rat(inv.discriminant as i64);
        let mut v = BoundedReal::exact(delta.pow(half as i32));
        if (n + 1) % 2 == 1 {
            v = v.mul(&nth_root(&delta, 2, t)?);
        }
        let two_s = BigRational::from_integer(BigInt::one() << (inv.complex_embeddings * (n as u64 + 1)));
        Ok(v.scale(&(&sparsity / two_s)))
    };
    let c = evaluate(inv, tol, |t| {
        let dk = volume(t)?.mul(&schanuel_constant(n, inv, t)?);
        Ok(dk.scale(&divisor.recip()))
    })?;
    let volume_factor = evaluate(inv, tol, volume)?;

    let me = (inv.m * inv.e) as i64;
    let exponent = rat(me * ws.total_weight() as i64);
    let error = &exponent - ratio(ws.min_weight() as i64, inv.m as i64);
    let log_power = if me == 1 && n == 1 { 2 } else { 1 };
    Ok(DegreeEReport {
        report: ConstantReport::new(c, exponent, error, log_power, tol),
        volume_factor,
        sparsity,
        divisor_discrepancy: divisor != degree,
        divisor,
        veronese_degree: degree,
    })
}

/// Exponents governing the tail bounds over degree-`e` extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub gamma: BigRational,
    pub mu: BigRational,
    pub beta: BigRational,
    pub converges: bool,
}

impl Serialize for BoundsReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BoundsReport", 4)?;
        st.serialize_field("gamma", &self.gamma.to_string())?;
        st.serialize_field("mu", &self.mu.to_string())?;
        st.serialize_field("beta", &self.beta.to_string())?;
        st.serialize_field("converges", &self.converges)?;
        st.end()
    }
}

/// `γ_g = m(g² + g + e²/g + e)`, `μ_g = m e (e - g) Q - 1`,
/// `β = m e (e - 1) + 1`, and whether `n > e`.
pub fn bounds_evaluators(g: u64, e: u64, m: u64, q_total: u64, n: u64) -> Result<BoundsReport> {
    if g == 0 || e == 0 || m == 0 || q_total == 0 {
        return Err(Error::InvalidArgument("arguments must be positive".into()));
    }
    if e % g != 0 {
        return Err(Error::InvalidArgument(format!("{g} does not divide {e}")));
    }
    let (g, e, m, qt) = (g as i64, e as i64, m as i64, q_total as i64);
    let gamma = rat(m) * (rat(g * g + g + e) + ratio(e * e, g));
    let mu = rat(m * e * (e - g) * qt - 1);
    let beta = rat(m * e * (e - 1) + 1);
    Ok(BoundsReport { gamma, mu, beta, converges: n as i64 > e })
}

/// Side-by-side asymptotics from the neighbouring results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    /// Size-count constant `2^n / ζ(Q)` and its exponent `Q`.
    pub size_count: ConstantReport,
    /// Height-count constant, identical over ℚ.
    pub height_count: ConstantReport,
    pub morphism_degree: u64,
    /// `Q / e` in the target-height variable `T`.
    pub target_exponent: BigRational,
    /// The same exponent after `T = X^q`.
    pub target_exponent_in_x: BigRational,
    /// Schanuel's constant when every weight is 1.
    pub schanuel: Option<BoundedReal>,
    /// Predicted `a_W = m (dim + 1)` and `b_W = 0`.
    pub predicted_a: u64,
    pub predicted_b: u64,
    pub digits: usize,
}

impl Serialize for ComparisonReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ComparisonReport", 8)?;
        st.serialize_field("size_count", &self.size_count)?;
        st.serialize_field("height_count", &self.height_count)?;
        st.serialize_field("morphism_degree", &self.morphism_degree)?;
        st.serialize_field("target_exponent", &self.target_exponent.to_string())?;
        st.serialize_field("target_exponent_in_x", &self.target_exponent_in_x.to_string())?;
        st.serialize_field("schanuel_mid", &self.schanuel.as_ref().map(|c| c.mid_string(self.digits)))?;
        st.serialize_field("predicted_a", &self.predicted_a)?;
        st.serialize_field("predicted_b", &self.predicted_b)?;
        st.end()
    }
}

/// Compares the size and height asymptotics with the exponent obtained by
/// counting through a morphism of degree `e` into a target of size `T`.
pub fn comparison_constants(ws: &WeightSystem, e: u64, tol: &BigRational) -> Result<ComparisonReport> {
    if e == 0 {
        return Err(Error::InvalidArgument("morphism degree must be positive".into()));
    }
    let size_count = rational_leading_constant(ws, tol)?;
    let height_count = numberfield_leading_constant(ws, &FieldInvariants::rationals(), tol)?;
    let target_exponent = ratio(ws.total_weight() as i64, e as i64);
    let target_exponent_in_x = &target_exponent * rat(ws.lcm() as i64);
    let schanuel = if ws.is_classical() {
        Some(schanuel_constant(ws.dimension() as u32, &FieldInvariants::rationals(), tol)?)
    } else {
        None
    };
    let digits = size_count.digits;
    Ok(ComparisonReport {
        size_count,
        height_count,
        morphism_degree: e,
        target_exponent,
        target_exponent_in_x,
        schanuel,
        predicted_a: ws.arity() as u64,
        predicted_b: 0,
        digits,
    })
}

/// Midpoint of an enclosure as `f64`, for logging and tests.
pub fn approx(b: &BoundedReal) -> f64 {
    b.midpoint().to_f64().unwrap_or(f64::NAN)
}
