//! Exact arithmetic on weighted projective spaces over the rationals.
//!
//! The crate is organised in four layers:
//!
//! * [`arith`]: factorization, valuations, Möbius and totient tables, and
//!   rigorous rational enclosures ([`BoundedReal`]) for ζ(s), π and roots.
//! * [`space`]: weight systems, weighted points, the weighted gcd and its
//!   normal forms, exact heights and the Veronese map.
//! * [`lift`]: the Veronese degree, rational liftability with witnesses or
//!   certificates, rational fibers and liftability density scans.
//! * [`counting`]: exact counts of points of bounded size or height and the
//!   closed-form leading constants they are compared against.
//!
//! [`cli`] wires everything into the `wpcount` binary.

pub mod arith;
pub mod cli;
pub mod counting;
mod error;
pub mod fixtures;
pub mod lift;
pub mod space;

pub use arith::{BoundedReal, FactoredRational};
pub use error::{Error, Result};
pub use space::{ExactHeight, ProjectivePoint, WeightSystem, WeightedPoint};
