//! Exact continuous geometry of `H₃(ℝ)` and `ℝ × H₃(ℝ)` with their Pansu
//! limit metrics.

pub mod control;
pub mod geodesic;
pub mod metric;
pub mod point;

pub use control::{
    develop_path, gronwall_gap, sample_gronwall, ControlPiece, DevelopedPath, GronwallGap,
    GronwallSample, HorizontalControl,
};
pub use geodesic::{
    plan_defect,
    classify_geodesic, develop_segments, synthesize_geodesic, Direction, GeodesicPlan, Segment,
};
pub use metric::{d3, d3_between, d3_formulas, dinf, dinf_between, horizontal_norm, GeodesicKind};
pub use point::{coords_convert, dilate, heis_mul, CoordDirection, Dilate, HeisPoint, ProdPoint};
