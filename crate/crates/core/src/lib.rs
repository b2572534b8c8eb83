//! Topological tipping-point detection for evolving point clouds.
//!
//! Each snapshot of a sequence becomes a measure topological network: a
//! metric-measure space on the points together with its most persistent
//! one-dimensional cycles and the point/cycle incidence. Snapshots are
//! compared with topological-pattern optimal transport (TpOT), the resulting
//! couplings drive a geodesic between consecutive snapshots, and hypergraph
//! entropies evaluated along that geodesic expose abrupt reorganizations.

pub mod assignment;
pub mod entropy;
pub mod error;
pub mod geodesic;
pub mod mtn;
pub mod persistence;
pub mod point_data;
pub mod synth;
pub mod tpot;

pub use error::{Error, Result};
