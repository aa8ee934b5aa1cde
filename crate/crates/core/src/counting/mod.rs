//! Counting rational points of bounded size or height, and the leading
//! constants their growth is compared against.

mod boxes;
mod constants;
mod direct;
mod points;
mod report;

pub use boxes::{count_box, count_primitive_fast, count_size_fast, fixed_tuple_count};
pub use constants::{
    approx, bounds_evaluators, comparison_constants, degree_e_constant_term, numberfield_leading_constant,
    rational_leading_constant, schanuel_constant, sparsity_factor, BoundsReport, ComparisonReport, ConstantReport,
    DegreeEReport, FieldInvariants, ZetaSource,
};
pub use points::{
    count_points_height, count_points_height_slack, count_points_size, SizeMethod, DEFAULT_BUDGET,
};
pub use report::{asymptotic_report, digits_for, write_csv, CountRecord, Counters, CSV_HEADER};
