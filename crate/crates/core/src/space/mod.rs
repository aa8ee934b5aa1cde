//! Weighted projective space over ℚ: weights, points, normal forms and heights.

mod height;
mod point;
mod weights;

pub use height::{
    archimedean_height, max_abs_coord, size, weighted_height, weighted_height_via_veronese, weil_height, ExactHeight,
};
pub use point::{
    canonicalize, canonicalize_geometric, equivalent, normalize, veronese, wgcd, ProjectivePoint, WeightedPoint,
};
pub(crate) use point::parse_rational;
pub use weights::WeightSystem;
