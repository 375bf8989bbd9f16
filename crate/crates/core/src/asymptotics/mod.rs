//! Limit norms, volumes, fits and the convergence experiments.

pub mod experiments;
pub mod fit;
pub mod norm;
pub mod report;
pub mod volume;

pub use experiments::*;
pub use fit::{fit_rate, fit_volume, RateFit, VolumeFit};
pub use norm::{homogeneous_dimension, pansu_norm, PolyhedralNorm};
pub use report::{ExperimentReport, FitSummary};
pub use volume::{unit_ball_volume, z_max, Metric};
