use std::io::Write;

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{decimal_grid, BoundedReal};
use crate::space::WeightSystem;
use crate::{Error, Result};

use super::constants::rational_leading_constant;
use super::points::{count_points_height, count_points_size, SizeMethod};

pub const CSV_HEADER: &str =
    "X, direct_size, fast_size, height_count, predicted_mid, predicted_width, ratio_mid, ratio_width";

/// Which counters to run besides the fast size count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub direct: bool,
    pub height: bool,
}

/// Counts at one bound next to the predicted leading term `c X^Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    #[serde(serialize_with = "ser_rational")]
    pub x: BigRational,
    pub direct_size: Option<u128>,
    pub fast_size: u128,
    pub height_count: Option<u128>,
    #[serde(skip)]
    pub predicted: BoundedReal,
    #[serde(skip)]
    pub ratio: BoundedReal,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl CountRecord {
    pub fn csv_row(&self, digits: usize) -> String {
        let opt = |v: Option<u128>| v.map(|c| c.to_string()).unwrap_or_default();
        [
            self.x.to_string(),
            opt(self.direct_size),
            self.fast_size.to_string(),
            opt(self.height_count),
            self.predicted.mid_string(digits),
            self.predicted.width_string(),
            self.ratio.mid_string(digits),
            self.ratio.width_string(),
        ]
        .join(", ")
    }
}

/// One record per bound. Bounds must be ascending.
pub fn asymptotic_report(
    ws: &WeightSystem,
    xs: &[BigRational],
    counters: Counters,
    budget: u128,
    tol: &BigRational,
) -> Result<Vec<CountRecord>> {
    if xs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("bounds must be ascending".into()));
    }
    let c = rational_leading_constant(ws, tol)?.constant;
    let q_total = ws.total_weight() as i32;
    xs.iter()
        .map(|x| {
            let fast_size = count_points_size(ws, x, SizeMethod::Fast, budget)?;
            let direct_size =
                counters.direct.then(|| count_points_size(ws, x, SizeMethod::Direct, budget)).transpose()?;
            let height_count = counters.height.then(|| count_points_height(ws, x, budget)).transpose()?;
            let predicted = c.scale(&x.pow(q_total));
            let ratio = BoundedReal::exact(BigRational::from_integer(fast_size.into())).div(&predicted)?;
            Ok(CountRecord { x: x.clone(), direct_size, fast_size, height_count, predicted, ratio })
        })
        .collect()
}

/// Fractional digits matching a tolerance.
pub fn digits_for(tol: &BigRational) -> usize {
    decimal_grid(tol).to_string().len() - 1
}

pub fn write_csv<W: Write>(out: &mut W, records: &[CountRecord], tol: &BigRational) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let digits = digits_for(tol);
    for r in records {
        writeln!(out, "{}", r.csv_row(digits))?;
    }
    Ok(())
}
