//! Integer lattices, generating sets and exact word metrics.

pub(crate) mod census;
mod element;
mod genset;
mod oracle;
mod search;

pub use census::{enumerate_ball, enumerate_ball_partial, enumerate_ball_with, BallCensus, CensusOutcome, EnumerateOptions};
pub use element::{lat_inv, lat_mul, Group, LatticeElement};
pub use genset::{builtin_genset, Builtin, GenSet};
pub use oracle::{AreaTable, BuiltinOracle};
pub use search::{split_word_distance, word_distance};
