//! Exact integer and rational utilities.

mod bounded;
pub mod decimal;
mod factor;
mod sieve;
mod zeta;

pub use bounded::{nth_root, pi, BoundedReal};
pub(crate) use bounded::{decimal_grid, refine};
pub use factor::{factor_u64, factorize, is_prime, valuation, FactoredRational};
pub(crate) use factor::int_valuation;
pub use sieve::{euler_totient, mobius_sieve, MobiusTable};
pub use zeta::zeta;
