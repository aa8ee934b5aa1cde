//! Arithmetic of the Veronese morphism: degree, liftability, fibers and
//! density of liftable points.

mod check;
mod degree;
mod fiber;
mod oracle;
mod scan;
pub(crate) mod small;

pub use check::{lift_check, LiftResult, Obstruction, ObstructionKind, Residue};
pub use degree::{orbit_count_oracle, veronese_degree, DEFAULT_ORBIT_BUDGET};
pub use fiber::{fiber_rational_points, fiber_size};
pub use oracle::lift_bruteforce_oracle;
pub use scan::{sparsity_scan, SparsityRecord};
pub(crate) use scan::{box_cost, sum_over_projective};
