//! Reference values that this crate does not reproduce.
//!
//! Each fixture names a quantity, a reference value and the inputs. Running
//! a fixture reports both values side by side; disagreement is expected and
//! is not an error.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::counting::{approx, degree_e_constant_term, rational_leading_constant, FieldInvariants};
use crate::lift::lift_check;
use crate::space::{parse_rational, size, weighted_height, wgcd, ExactHeight, ProjectivePoint, WeightSystem, WeightedPoint};
use crate::{Error, Result};

const SOURCES: [&str; 6] = [
    include_str!("../fixtures/disputed/fractional-wgcd.json"),
    include_str!("../fixtures/disputed/fractional-size.json"),
    include_str!("../fixtures/disputed/leading-coefficient.json"),
    include_str!("../fixtures/disputed/two-three-lift.json"),
    include_str!("../fixtures/disputed/height-size-order.json"),
    include_str!("../fixtures/disputed/degree-divisor.json"),
];

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub check: String,
    pub weights: Vec<u64>,
    pub point: Option<String>,
    pub target: Option<String>,
    pub reference: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub check: String,
    pub reference: String,
    pub computed: String,
    pub agrees: bool,
}

pub fn disputed_fixtures() -> Result<Vec<Fixture>> {
    SOURCES
        .iter()
        .map(|s| serde_json::from_str(s).map_err(|e| Error::Parse(format!("fixture: {e}"))))
        .collect()
}

fn point_of(f: &Fixture, ws: &WeightSystem) -> Result<WeightedPoint> {
    let p = f.point.as_deref().ok_or_else(|| Error::Parse(format!("fixture {} needs a point", f.name)))?;
    WeightedPoint::parse(ws, p)
}

pub fn evaluate(f: &Fixture) -> Result<FixtureOutcome> {
    let ws = WeightSystem::new(&f.weights)?;
    let (computed, agrees) = match f.check.as_str() {
        "wgcd" => {
            let g = wgcd(&point_of(f, &ws)?)?.to_rational();
            (g.to_string(), g == parse_rational(&f.reference)?)
        }
        "size" => {
            let s = size(&point_of(f, &ws)?)?;
            let r = ExactHeight::new(parse_rational(&f.reference)?, 1)?;
            (s.to_string(), s == r)
        }
        "leading_coefficient" => {
            let tol = BigRational::new(1.into(), 1_000_000.into());
            let c = approx(&rational_leading_constant(&ws, &tol)?.constant);
            let r: f64 = f.reference.parse().map_err(|e| Error::Parse(format!("{e}")))?;
            // a two-decimal reference agrees within half a unit in its last place
            (format!("{c:.6}"), (c - r).abs() <= 0.005)
        }
        "liftable" => {
            let t = f.target.as_deref().ok_or_else(|| Error::Parse(format!("fixture {} needs a target", f.name)))?;
            let coords = t.split(',').map(|c| parse_rational(c.trim())).collect::<Result<Vec<_>>>()?;
            let r = lift_check(&ProjectivePoint::from_rationals(&coords)?, &ws)?;
            let computed = match (&r.lambda, &r.witness) {
                (Some(l), Some(w)) => format!("true (lambda {l}, witness {w})"),
                _ => "false".to_string(),
            };
            (computed, r.liftable.to_string() == f.reference)
        }
        "size_le_height" => {
            let p = point_of(f, &ws)?;
            let (s, h) = (size(&p)?, weighted_height(&p)?);
            let holds = s <= h;
            (format!("{holds} (size {s}, height {h})"), holds.to_string() == f.reference)
        }
        "degree_divisor" => {
            let tol = BigRational::new(1.into(), 1000.into());
            let r = degree_e_constant_term(&ws, &FieldInvariants::rationals(), &tol)?;
            (r.divisor.to_string(), r.divisor == parse_rational(&f.reference)?)
        }
        other => return Err(Error::Parse(format!("unknown fixture check {other:?}"))),
    };
    Ok(FixtureOutcome { name: f.name.clone(), check: f.check.clone(), reference: f.reference.clone(), computed, agrees })
}

pub fn run_disputed() -> Result<Vec<FixtureOutcome>> {
    disputed_fixtures()?.iter().map(evaluate).collect()
}
