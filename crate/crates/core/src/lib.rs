//! Discrete phytoplankton-zooplankton dynamics with Holling type II and III
//! predator responses.
//!
//! The crate evaluates the two-dimensional map, enumerates and classifies its
//! fixed points, checks the invariant regions and parameter classes of the
//! type II model, iterates trajectories to a limit verdict, and scans for the
//! Neimark-Sacker crossing of the lower interior fixed point.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fixed_points;
pub mod model;
pub mod regions;
pub mod roots;
pub mod stability;

pub use error::{Error, Result};
pub use fixed_points::{FixedPoint, FixedPointLabel};
pub use model::{apply_map, ParamName, Params, ResponseOrder, State};
pub use stability::{StabilityClass, StabilityReport};
